#include "enrichfp/spaces.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <limits>

#include "enrichfp/error.hpp"

namespace enrichfp {

std::string to_string(const Point& p) {
    std::string out = "(";
    for (std::size_t i = 0; i < p.dim(); ++i) {
        if (i) out += ", ";
        std::array<char, 32> buf{};
        auto res = std::to_chars(buf.data(), buf.data() + buf.size(), p[i]);
        out.append(buf.data(), res.ptr);
    }
    out += ")";
    return out;
}

namespace {

constexpr std::array<std::pair<MetricKind, std::string_view>, 5> kMetricNames{{
    {MetricKind::euclidean, "euclidean"},
    {MetricKind::taxicab, "taxicab"},
    {MetricKind::chebyshev, "chebyshev"},
    {MetricKind::nonnormed, "nonnormed"},
    {MetricKind::order_piecewise, "order-piecewise"},
}};

constexpr std::array<std::pair<StructureKind, std::string_view>, 2> kStructureNames{{
    {StructureKind::affine, "affine"},
    {StructureKind::nonnormed, "nonnormed"},
}};

constexpr std::array<std::pair<RelationKind, std::string_view>, 3> kRelationNames{{
    {RelationKind::universal, "universal"},
    {RelationKind::diagonal, "diagonal"},
    {RelationKind::componentwise_le, "componentwise-le"},
}};

constexpr std::array<std::pair<PairSampling, std::string_view>, 4> kPairSamplingNames{{
    {PairSampling::mixed, "mixed"},
    {PairSampling::uniform, "uniform"},
    {PairSampling::related, "related"},
    {PairSampling::unrelated, "unrelated"},
}};

template <typename E, std::size_t N>
std::string_view name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
    for (const auto& [k, n] : table) {
        if (k == e) return n;
    }
    return "unknown";
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) {
    for (const auto& [k, n] : table) {
        if (n == s) return k;
    }
    return std::nullopt;
}

Box square(std::size_t dim, double lo, double hi) { return Box(dim, Interval{lo, hi}); }

const std::vector<SpaceSpec>& registry() {
    static const std::vector<SpaceSpec> spaces = [] {
        std::vector<SpaceSpec> v;
        v.push_back({"r2-euclidean", 2, MetricKind::euclidean, StructureKind::affine,
                     RelationKind::universal, square(2, -10, 10), true,
                     "the plane with the Euclidean norm and affine structure, R = X x X"});
        v.push_back({"r2-taxicab-diag", 2, MetricKind::taxicab, StructureKind::affine,
                     RelationKind::diagonal, square(2, -10, 10), true,
                     "the plane with the l1 metric, affine structure, x R y iff x, y on the diagonal"});
        v.push_back({"r2-nonnormed", 2, MetricKind::nonnormed, StructureKind::nonnormed,
                     RelationKind::universal, Box{{0.1, 10}, {-10, 10}}, true,
                     "half-plane x1 > 0 with d = |x1-y1| + |x1 x2 - y1 y2| and the matching "
                     "non-affine structure"});
        v.push_back({"r2-order-piecewise", 2, MetricKind::order_piecewise, StructureKind::affine,
                     RelationKind::componentwise_le, square(2, -10, 10), true,
                     "the plane ordered componentwise; Euclidean distance between comparable "
                     "points, Chebyshev otherwise"});
        v.push_back({"r1-interval", 1, MetricKind::euclidean, StructureKind::affine,
                     RelationKind::universal, square(1, 0, 1), true,
                     "the unit interval [0, 1] with |x - y|"});
        return v;
    }();
    return spaces;
}

bool is_diagonal(const Point& x) {
    for (std::size_t i = 1; i < x.dim(); ++i) {
        if (x[i] != x[0]) return false;
    }
    return true;
}

bool componentwise_le(const Point& x, const Point& y) {
    for (std::size_t i = 0; i < x.dim(); ++i) {
        if (!(x[i] <= y[i])) return false;
    }
    return true;
}

bool relate_unchecked(const SpaceSpec& space, const Point& x, const Point& y) {
    switch (space.relation) {
        case RelationKind::universal: return true;
        case RelationKind::diagonal: return is_diagonal(x) && is_diagonal(y);
        case RelationKind::componentwise_le: return componentwise_le(x, y);
    }
    return false;
}

double euclidean(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) {
        const double d = x[i] - y[i];
        s += d * d;
    }
    return std::sqrt(s);
}

double taxicab(const Point& x, const Point& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) s += std::abs(x[i] - y[i]);
    return s;
}

double chebyshev(const Point& x, const Point& y) {
    double m = 0.0;
    for (std::size_t i = 0; i < x.dim(); ++i) m = std::max(m, std::abs(x[i] - y[i]));
    return m;
}

double metric_unchecked(const SpaceSpec& space, const Point& x, const Point& y) {
    switch (space.metric) {
        case MetricKind::euclidean: return euclidean(x, y);
        case MetricKind::taxicab: return taxicab(x, y);
        case MetricKind::chebyshev: return chebyshev(x, y);
        case MetricKind::nonnormed:
            return std::abs(x[0] - y[0]) + std::abs(x[0] * x[1] - y[0] * y[1]);
        case MetricKind::order_piecewise: {
            bool euclid = componentwise_le(x, y);
            if (space.symmetrize) euclid = euclid || componentwise_le(y, x);
            return euclid ? euclidean(x, y) : chebyshev(x, y);
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

void check_lambda_closed(double lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
        throw Error(ErrorKind::input, "lambda must lie in [0,1], got " + show(lambda));
    }
}

Point combine_unchecked(const SpaceSpec& space, const Point& x, const Point& y, double lambda) {
    const double mu = 1.0 - lambda;
    if (space.structure == StructureKind::nonnormed) {
        if (!(x[0] > 0.0) || !(y[0] > 0.0)) {
            throw Error(ErrorKind::singularity,
                        "nonnormed structure requires positive first coordinates, got " +
                            to_string(x) + " and " + to_string(y));
        }
        const double first = lambda * x[0] + mu * y[0];
        return Point{first, (lambda * x[0] * x[1] + mu * y[0] * y[1]) / first};
    }
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = lambda * x[i] + mu * y[i];
    return out;
}

const Box& effective_box(const SpaceSpec& space, const std::optional<Box>& box) {
    const Box& b = box ? *box : space.domain;
    validate_box(space, b);
    return b;
}

}  // namespace

std::string_view to_string(MetricKind k) noexcept { return name_of(kMetricNames, k); }
std::string_view to_string(StructureKind k) noexcept { return name_of(kStructureNames, k); }
std::string_view to_string(RelationKind k) noexcept { return name_of(kRelationNames, k); }
std::string_view to_string(PairSampling p) noexcept { return name_of(kPairSamplingNames, p); }

std::optional<MetricKind> parse_metric_kind(std::string_view s) noexcept {
    return lookup(kMetricNames, s);
}
std::optional<StructureKind> parse_structure_kind(std::string_view s) noexcept {
    return lookup(kStructureNames, s);
}
std::optional<RelationKind> parse_relation_kind(std::string_view s) noexcept {
    return lookup(kRelationNames, s);
}
std::optional<PairSampling> parse_pair_sampling(std::string_view s) noexcept {
    return lookup(kPairSamplingNames, s);
}

bool SpaceSpec::is_linear() const noexcept {
    return structure == StructureKind::affine &&
           (metric == MetricKind::euclidean || metric == MetricKind::taxicab ||
            metric == MetricKind::chebyshev);
}

std::span<const SpaceSpec> builtin_spaces() { return registry(); }

const SpaceSpec& builtin_space(std::string_view name) {
    for (const auto& s : registry()) {
        if (s.name == name) return s;
    }
    std::string known;
    for (const auto& s : registry()) known += (known.empty() ? "" : ", ") + s.name;
    throw Error(ErrorKind::lookup,
                "unknown space '" + std::string(name) + "'; known spaces: " + known);
}

std::vector<std::string> builtin_space_names() {
    std::vector<std::string> out;
    for (const auto& s : registry()) out.push_back(s.name);
    return out;
}

void validate_point(const SpaceSpec& space, const Point& x) {
    if (x.dim() != space.dimension) {
        throw Error(ErrorKind::input, "point " + to_string(x) + " has dimension " +
                                          std::to_string(x.dim()) + ", space '" + space.name +
                                          "' has dimension " + std::to_string(space.dimension));
    }
    if (!x.is_finite()) {
        throw Error(ErrorKind::input, "point " + to_string(x) + " has a non-finite coordinate");
    }
}

void validate_box(const SpaceSpec& space, const Box& box) {
    if (box.size() != space.dimension) {
        throw Error(ErrorKind::configuration,
                    "sampling box has " + std::to_string(box.size()) + " intervals, space '" +
                        space.name + "' has dimension " + std::to_string(space.dimension));
    }
    for (const auto& iv : box) {
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
            throw Error(ErrorKind::configuration, "sampling box is empty or unbounded");
        }
    }
}

double domain_scale(const Box& box) noexcept {
    double m = 0.0;
    for (const auto& iv : box) m = std::max({m, std::abs(iv.lo), std::abs(iv.hi)});
    return m;
}

double metric_eval(const SpaceSpec& space, const Point& x, const Point& y) {
    validate_point(space, x);
    validate_point(space, y);
    return metric_unchecked(space, x, y);
}

Point convex_combine(const SpaceSpec& space, const Point& x, const Point& y, double lambda) {
    check_lambda_closed(lambda);
    validate_point(space, x);
    validate_point(space, y);
    return combine_unchecked(space, x, y, lambda);
}

bool relate(const SpaceSpec& space, const Point& x, const Point& y) {
    validate_point(space, x);
    validate_point(space, y);
    return relate_unchecked(space, x, y);
}

double norm_eval(const SpaceSpec& space, const Point& v) {
    if (!space.is_linear()) {
        throw Error(ErrorKind::unsupported_family,
                    "space '" + space.name + "' is not a normed linear space");
    }
    validate_point(space, v);
    return metric_unchecked(space, v, Point::zeros(v.dim()));
}

bool check_relation_chain(const SpaceSpec& space, std::span<const Point> points) {
    for (const auto& p : points) validate_point(space, p);
    const std::size_t n = points.size();
    const std::size_t band = n > kFullChainLimit ? kChainBand : n;
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t end = std::min(n, i + band + 1);
        for (std::size_t j = i + 1; j < end; ++j) {
            if (!relate_unchecked(space, points[i], points[j])) return false;
        }
    }
    return true;
}

CheckReport check_metric_axioms(const SpaceSpec& space, std::size_t n_samples, double tol,
                                std::uint64_t seed, const std::optional<Box>& box) {
    if (n_samples == 0) throw Error(ErrorKind::input, "n_samples must be at least 1");
    const Box& b = effective_box(space, box);
    MarginTracker tracker("metric-axioms", tol, seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i, 0x4d455452);
        const Point x = sample_point(space, b, rng);
        const Point y = sample_point(space, b, rng);
        const Point z = sample_point(space, b, rng);
        const double dxy = metric_unchecked(space, x, y);
        const double dyx = metric_unchecked(space, y, x);
        const double dxx = metric_unchecked(space, x, x);
        const double dxz = metric_unchecked(space, x, z);
        const double dzy = metric_unchecked(space, z, y);
        tracker.observe("nonnegativity", dxy, [&] { return Witness{{}, {x, y}, {}, 0.0, dxy}; });
        tracker.observe("identity", -dxx, [&] { return Witness{{}, {x, x}, {}, dxx, 0.0}; });
        tracker.observe("symmetry", -std::abs(dxy - dyx),
                        [&] { return Witness{{}, {x, y}, {}, dxy, dyx}; });
        tracker.observe("triangle", dxz + dzy - dxy,
                        [&] { return Witness{{}, {x, z, y}, {}, dxy, dxz + dzy}; });
    }
    return std::move(tracker).finish();
}

CheckReport check_convexity_inequality(const SpaceSpec& space, std::size_t n_samples, double tol,
                                       std::uint64_t seed, const std::optional<Box>& box) {
    if (n_samples == 0) throw Error(ErrorKind::input, "n_samples must be at least 1");
    const Box& b = effective_box(space, box);
    MarginTracker tracker("convexity-inequality", tol, seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i, 0x434f4e56);
        const Point u = sample_point(space, b, rng);
        const Point x = sample_point(space, b, rng);
        const Point y = sample_point(space, b, rng);
        double lambda = rng.uniform01();
        switch (i % 4) {
            case 0: lambda = 0.0; break;
            case 1: lambda = 0.5; break;
            case 2: lambda = 1.0; break;
            default: break;
        }
        Point w;
        try {
            w = combine_unchecked(space, x, y, lambda);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::singularity) throw;
            tracker.skip();
            continue;
        }
        const double lhs = metric_unchecked(space, u, w);
        const double rhs =
            lambda * metric_unchecked(space, u, x) + (1.0 - lambda) * metric_unchecked(space, u, y);
        tracker.observe("convexity", rhs - lhs,
                        [&] { return Witness{{}, {u, x, y}, lambda, lhs, rhs}; });
    }
    return std::move(tracker).finish();
}

Point sample_point(const SpaceSpec& space, const Box& box, SampleStream& rng) {
    std::vector<double> c(space.dimension);
    for (std::size_t i = 0; i < space.dimension; ++i) c[i] = rng.uniform(box[i].lo, box[i].hi);
    return c;
}

std::pair<Point, Point> sample_related_pair(const SpaceSpec& space, const Box& box,
                                            SampleStream& rng) {
    switch (space.relation) {
        case RelationKind::universal: {
            Point x = sample_point(space, box, rng);
            Point y = sample_point(space, box, rng);
            return {std::move(x), std::move(y)};
        }
        case RelationKind::diagonal: {
            double lo = -std::numeric_limits<double>::infinity();
            double hi = std::numeric_limits<double>::infinity();
            for (const auto& iv : box) {
                lo = std::max(lo, iv.lo);
                hi = std::min(hi, iv.hi);
            }
            if (lo > hi) {
                throw Error(ErrorKind::configuration,
                            "sampling box does not meet the diagonal of '" + space.name + "'");
            }
            const double t = rng.uniform(lo, hi);
            const double s = rng.uniform(lo, hi);
            return {Point(std::vector<double>(space.dimension, t)),
                    Point(std::vector<double>(space.dimension, s))};
        }
        case RelationKind::componentwise_le: {
            Point a = sample_point(space, box, rng);
            Point b = sample_point(space, box, rng);
            std::vector<double> lo(space.dimension), hi(space.dimension);
            for (std::size_t i = 0; i < space.dimension; ++i) {
                lo[i] = std::min(a[i], b[i]);
                hi[i] = std::max(a[i], b[i]);
            }
            return {Point(std::move(lo)), Point(std::move(hi))};
        }
    }
    throw Error(ErrorKind::configuration, "unknown relation");
}

std::optional<std::pair<Point, Point>> sample_pair(const SpaceSpec& space, const Box& box,
                                                   PairSampling mode, std::size_t index,
                                                   SampleStream& rng) {
    switch (mode) {
        case PairSampling::related: return sample_related_pair(space, box, rng);
        case PairSampling::mixed:
            if (index % 2 == 0) return sample_related_pair(space, box, rng);
            [[fallthrough]];
        case PairSampling::uniform: {
            Point x = sample_point(space, box, rng);
            Point y = sample_point(space, box, rng);
            return std::make_pair(std::move(x), std::move(y));
        }
        case PairSampling::unrelated: {
            constexpr int kAttempts = 64;
            for (int k = 0; k < kAttempts; ++k) {
                Point x = sample_point(space, box, rng);
                Point y = sample_point(space, box, rng);
                if (!relate_unchecked(space, x, y)) return std::make_pair(std::move(x), std::move(y));
            }
            return std::nullopt;
        }
    }
    return std::nullopt;
}

}  // namespace enrichfp

#include "enrichfp/maps.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include "enrichfp/error.hpp"

namespace enrichfp {

namespace {

constexpr std::array<std::pair<Family, std::string_view>, 7> kFamilyNames{{
    {Family::banach, "banach"},
    {Family::kannan, "kannan"},
    {Family::interpolative_kannan, "interpolative-kannan"},
    {Family::noorwali_pair, "noorwali-pair"},
    {Family::enriched_kannan, "enriched-kannan"},
    {Family::modified_enriched_kannan_pair, "modified-enriched-kannan-pair"},
    {Family::enriched_interpolative_pair, "enriched-interpolative-pair"},
}};

constexpr std::array<Family, 7> kFamilies{
    Family::banach,
    Family::kannan,
    Family::interpolative_kannan,
    Family::noorwali_pair,
    Family::enriched_kannan,
    Family::modified_enriched_kannan_pair,
    Family::enriched_interpolative_pair,
};

bool on_diagonal(const Point& x) {
    for (std::size_t i = 1; i < x.dim(); ++i) {
        if (x[i] != x[0]) return false;
    }
    return true;
}

Point paper_t(const Point& x) {
    if (x.dim() != 2) return {};  // defined on R^2 only; apply_map rejects the image
    if (on_diagonal(x)) return Point{-x[0], -x[1]};
    return Point{x[0], 2.0 * x[0] - x[1]};
}

Point paper_s(const Point& x) {
    if (x.dim() != 2) return {};
    if (on_diagonal(x)) return Point{-x[0], -x[1]};
    return Point{6.0 * x[1] - x[0], 5.0 * x[1]};
}

Point one_minus(const Point& x) {
    std::vector<double> out(x.dim());
    for (std::size_t i = 0; i < x.dim(); ++i) out[i] = 1.0 - x[i];
    return out;
}

Point negate(const Point& x) { return -1.0 * x; }

Point identity(const Point& x) { return x; }

const std::vector<MapPair>& registry() {
    static const std::vector<MapPair> pairs = [] {
        std::vector<MapPair> v;
        v.push_back({"paper-main-pair", paper_t, paper_s, "builtin", "r2-taxicab-diag",
                     "T = (-x1,-x2) on the diagonal, (x1, 2x1 - x2) off it; "
                     "S = (-x1,-x2) on the diagonal, (6x2 - x1, 5x2) off it"});
        v.push_back({"one-minus-x", one_minus, one_minus, "builtin", "r1-interval",
                     "T = S = 1 - x on [0, 1]"});
        v.push_back({"negation", negate, negate, "builtin", "r2-euclidean", "T = S = -x"});
        v.push_back({"identity", identity, identity, "builtin", "r2-euclidean",
                     "T = S = x; every point is fixed (negative control)"});
        return v;
    }();
    return pairs;
}

void require_linear(const SpaceSpec& space, Family f) {
    if (!space.is_linear()) {
        throw Error(ErrorKind::unsupported_family,
                    std::string(to_string(f)) + " needs a normed linear space; '" + space.name +
                        "' is not one");
    }
}

std::string render(const MapText& m) {
    std::ostringstream os;
    for (const auto& c : m.cases) {
        os << "if (" << c.guard << ") " << c.op << " 0: (";
        for (std::size_t i = 0; i < c.components.size(); ++i) {
            os << (i ? ", " : "") << c.components[i];
        }
        os << "); ";
    }
    os << (m.cases.empty() ? "(" : "else (");
    for (std::size_t i = 0; i < m.components.size(); ++i) {
        os << (i ? ", " : "") << m.components[i];
    }
    os << ")";
    return os.str();
}

}  // namespace

std::span<const MapPair> builtin_pairs() { return registry(); }

const MapPair& builtin_pair(std::string_view name) {
    for (const auto& p : registry()) {
        if (p.name == name) return p;
    }
    std::string known;
    for (const auto& p : registry()) known += (known.empty() ? "" : ", ") + p.name;
    throw Error(ErrorKind::lookup,
                "unknown pair '" + std::string(name) + "'; known pairs: " + known);
}

std::vector<std::string> builtin_pair_names() {
    std::vector<std::string> out;
    for (const auto& p : registry()) out.push_back(p.name);
    return out;
}

MapPair compile_pair(std::string name, const MapText& t, const MapText& s, std::size_t dim) {
    auto compile_side = [dim](const MapText& text, const char* side) {
        try {
            return PiecewiseMap::compile(text, dim);
        } catch (const ParseError& e) {
            throw ParseError(e.column(), e.detail(), std::string(side) + " " + e.context());
        }
    };
    PiecewiseMap tm = compile_side(t, "t");
    PiecewiseMap sm = compile_side(s, "s");
    MapPair p;
    p.name = std::move(name);
    p.t = std::move(tm);
    p.s = std::move(sm);
    p.source = "t = " + render(t) + "; s = " + render(s);
    return p;
}

Point apply_map(const SpaceSpec& space, const SelfMap& f, const Point& x) {
    Point y = f(x);
    if (y.dim() != space.dimension) {
        throw Error(ErrorKind::input, "map image of " + to_string(x) + " has dimension " +
                                          std::to_string(y.dim()) + ", expected " +
                                          std::to_string(space.dimension));
    }
    if (!y.is_finite()) {
        throw Error(ErrorKind::divergence,
                    "map image of " + to_string(x) + " is not finite: " + to_string(y));
    }
    return y;
}

std::string_view to_string(Family f) noexcept {
    for (const auto& [k, n] : kFamilyNames) {
        if (k == f) return n;
    }
    return "unknown";
}

std::optional<Family> parse_family(std::string_view s) noexcept {
    for (const auto& [k, n] : kFamilyNames) {
        if (n == s) return k;
    }
    return std::nullopt;
}

std::span<const Family> all_families() noexcept { return kFamilies; }

bool uses_both_maps(Family f) noexcept {
    return f == Family::noorwali_pair || f == Family::modified_enriched_kannan_pair ||
           f == Family::enriched_interpolative_pair;
}

bool is_norm_form(Family f) noexcept {
    return f == Family::enriched_kannan || f == Family::modified_enriched_kannan_pair;
}

bool uses_alpha(Family f) noexcept {
    return f == Family::interpolative_kannan || f == Family::noorwali_pair ||
           f == Family::enriched_interpolative_pair;
}

bool uses_lambda(Family f) noexcept { return f == Family::enriched_interpolative_pair; }

bool uses_b(Family f) noexcept { return is_norm_form(f); }

double max_coefficient(Family f) noexcept {
    return (f == Family::kannan || f == Family::enriched_kannan ||
            f == Family::modified_enriched_kannan_pair)
               ? 0.5
               : 1.0;
}

void validate(const ContractionSpec& spec, bool check_a) {
    const std::string fam(to_string(spec.family));
    if (check_a) {
        const double hi = max_coefficient(spec.family);
        if (!(spec.a >= 0.0 && spec.a < hi)) {
            throw Error(ErrorKind::validation, "a must lie in [0," + std::string(hi == 0.5 ? "0.5" : "1") +
                                                   ") for " + fam + ", got " + show(spec.a));
        }
    }
    if (uses_alpha(spec.family) && !(spec.alpha > 0.0 && spec.alpha < 1.0)) {
        throw Error(ErrorKind::validation,
                    "alpha must lie in (0,1) for " + fam + ", got " + show(spec.alpha));
    }
    if (uses_lambda(spec.family) && !(spec.lambda >= 0.0 && spec.lambda < 1.0)) {
        throw Error(ErrorKind::validation,
                    "lambda must lie in [0,1) for " + fam + ", got " + show(spec.lambda));
    }
    if (uses_b(spec.family) && !(spec.b >= 0.0 && std::isfinite(spec.b))) {
        throw Error(ErrorKind::validation,
                    "b must lie in [0,inf) for " + fam + ", got " + show(spec.b));
    }
}

Point averaged_map(const SpaceSpec& space, const SelfMap& f, double lambda, const Point& x) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw Error(ErrorKind::input, "lambda must lie in [0,1), got " + show(lambda));
    }
    validate_point(space, x);
    return convex_combine(space, x, apply_map(space, f, x), lambda);
}

MapPair averaged_pair(const SpaceSpec& space, const MapPair& pair, double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw Error(ErrorKind::input, "lambda must lie in [0,1), got " + show(lambda));
    }
    MapPair out = pair;
    out.name = pair.name + "@averaged";
    out.t = [space, t = pair.t, lambda](const Point& x) { return averaged_map(space, t, lambda, x); };
    out.s = [space, s = pair.s, lambda](const Point& x) { return averaged_map(space, s, lambda, x); };
    return out;
}

double b_to_lambda(double b) {
    if (!(b >= 0.0) || !std::isfinite(b)) {
        throw Error(ErrorKind::input, "b must be a finite nonnegative number, got " + show(b));
    }
    return 1.0 / (b + 1.0);
}

double averaging_weight_for_b(double b) {
    (void)b_to_lambda(b);  // validates b
    return b / (b + 1.0);
}

double interpolative_product(double u, double v, double alpha) noexcept {
    if (u == 0.0 || v == 0.0) return 0.0;
    return std::pow(u, alpha) * std::pow(v, 1.0 - alpha);
}

double fixed_point_threshold(const SpaceSpec& space) noexcept {
    return 1e-12 * (1.0 + domain_scale(space.domain));
}

Residual condition_terms(const SpaceSpec& space, const MapPair& pair, const ContractionSpec& spec,
                         const Point& x, const Point& y) {
    validate(spec, false);
    validate_point(space, x);
    validate_point(space, y);
    const SelfMap& second = uses_both_maps(spec.family) ? pair.s : pair.t;
    const double thr = fixed_point_threshold(space);
    auto d = [&](const Point& p, const Point& q) { return metric_eval(space, p, q); };

    Residual r;
    switch (spec.family) {
        case Family::banach: {
            r.lhs = d(apply_map(space, pair.t, x), apply_map(space, second, y));
            r.rhs = d(x, y);
            break;
        }
        case Family::kannan: {
            const Point tx = apply_map(space, pair.t, x);
            const Point sy = apply_map(space, second, y);
            r.lhs = d(tx, sy);
            r.rhs = d(x, tx) + d(y, sy);
            break;
        }
        case Family::interpolative_kannan:
        case Family::noorwali_pair: {
            const Point tx = apply_map(space, pair.t, x);
            const Point sy = apply_map(space, second, y);
            const double dx = d(x, tx);
            const double dy = d(y, sy);
            r.lhs = d(tx, sy);
            r.rhs = interpolative_product(dx, dy, spec.alpha);
            r.applicable = dx >= thr && dy >= thr;
            break;
        }
        case Family::enriched_kannan:
        case Family::modified_enriched_kannan_pair: {
            require_linear(space, spec.family);
            const Point tx = apply_map(space, pair.t, x);
            const Point sy = apply_map(space, second, y);
            r.lhs = norm_eval(space, spec.b * (x - y) + (tx - sy));
            r.rhs = norm_eval(space, x - tx) + norm_eval(space, y - sy);
            break;
        }
        case Family::enriched_interpolative_pair: {
            const Point tx = averaged_map(space, pair.t, spec.lambda, x);
            const Point sy = averaged_map(space, pair.s, spec.lambda, y);
            r.lhs = d(tx, sy);
            r.rhs = interpolative_product(d(x, tx), d(y, sy), spec.alpha);
            r.applicable = relate(space, x, y);
            break;
        }
    }
    return r;
}

Residual condition_residual(const SpaceSpec& space, const MapPair& pair,
                            const ContractionSpec& spec, const Point& x, const Point& y) {
    validate(spec);
    Residual r = condition_terms(space, pair, spec, x, y);
    r.rhs *= spec.a;
    return r;
}

CheckReport check_contraction(const SpaceSpec& space, const MapPair& pair,
                              const ContractionSpec& spec, std::size_t n_samples, double tol,
                              std::uint64_t seed, const SamplingOptions& sampling) {
    validate(spec);
    if (n_samples == 0) throw Error(ErrorKind::input, "n_samples must be at least 1");
    if (is_norm_form(spec.family)) require_linear(space, spec.family);
    const Box& box = sampling.box ? *sampling.box : space.domain;
    validate_box(space, box);

    MarginTracker tracker(std::string(to_string(spec.family)), tol, seed);
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i, 0x434f4e54);
        auto xy = sample_pair(space, box, sampling.pairs, i, rng);
        if (!xy) {
            tracker.skip();
            continue;
        }
        const auto& [x, y] = *xy;
        const Residual r = condition_residual(space, pair, spec, x, y);
        if (!r.applicable) {
            tracker.skip();
            continue;
        }
        tracker.observe(to_string(spec.family), r.margin(), [&] {
            return Witness{{}, {x, y}, uses_lambda(spec.family) ? std::optional(spec.lambda) : std::nullopt,
                           r.lhs, r.rhs};
        });
    }
    const bool none = tracker.current().checked == 0;
    return std::move(tracker).finish(none ? "no applicable samples" : "");
}

double estimate_min_coefficient(const SpaceSpec& space, const MapPair& pair,
                                const ContractionSpec& fixed_params, std::size_t n_samples,
                                std::uint64_t seed, const SamplingOptions& sampling) {
    validate(fixed_params, false);
    if (n_samples == 0) throw Error(ErrorKind::input, "n_samples must be at least 1");
    if (is_norm_form(fixed_params.family)) require_linear(space, fixed_params.family);
    const Box& box = sampling.box ? *sampling.box : space.domain;
    validate_box(space, box);

    double sup = 0.0;
    std::size_t applicable = 0;
    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i, 0x45535449);
        auto xy = sample_pair(space, box, sampling.pairs, i, rng);
        if (!xy) continue;
        const Residual r = condition_terms(space, pair, fixed_params, xy->first, xy->second);
        if (!r.applicable) continue;
        ++applicable;
        double ratio = 0.0;
        if (r.lhs > 0.0) {
            ratio = r.rhs > 0.0 ? r.lhs / r.rhs : std::numeric_limits<double>::infinity();
        }
        sup = std::max(sup, ratio);
    }
    if (applicable == 0) {
        throw Error(ErrorKind::inconclusive, "no applicable samples for " +
                                                 std::string(to_string(fixed_params.family)) +
                                                 " on pair '" + pair.name + "'");
    }
    return sup;
}

}  // namespace enrichfp

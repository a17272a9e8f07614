#include "enrichfp/stability.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "enrichfp/error.hpp"

namespace enrichfp {

namespace {

constexpr std::array<std::pair<DecayKind, std::string_view>, 3> kDecayNames{{
    {DecayKind::harmonic, "harmonic"},
    {DecayKind::geometric, "geometric"},
    {DecayKind::zero, "zero"},
}};

void check_lambda(double lambda) {
    if (!(lambda >= 0.0 && lambda < 1.0)) {
        throw Error(ErrorKind::input, "lambda must lie in [0,1), got " + show(lambda));
    }
}

void require_common_fixed_point(const SpaceSpec& space, const MapPair& pair, const Point& p) {
    validate_point(space, p);
    const double dt = metric_eval(space, p, apply_map(space, pair.t, p));
    const double ds = metric_eval(space, p, apply_map(space, pair.s, p));
    if (dt > kFixedPointCheck || ds > kFixedPointCheck) {
        throw Error(ErrorKind::precondition,
                    to_string(p) + " is not a common fixed point of '" + pair.name +
                        "' (d(p,Tp) = " + show(dt) + ", d(p,Sp) = " + show(ds) + ")");
    }
}

bool nonincreasing_step(double prev, double next) {
    return next <= prev * (1.0 + 1e-12) + 1e-300;
}

/// Inconclusive report when the sequence's residuals have not come down to tol.
std::optional<CheckReport> precondition_report(const std::string& name,
                                               const PerturbedSequence& seq, double tol) {
    CheckReport r;
    r.name = name;
    r.tolerance = tol;
    r.status = CheckStatus::inconclusive;
    if (seq.points.empty()) {
        r.note = "empty sequence";
        return r;
    }
    if (seq.t_residuals.size() != seq.points.size() || seq.s_residuals.size() != seq.points.size()) {
        r.note = "residual lists do not match the points";
        return r;
    }
    if (seq.t_residuals.back() > tol || seq.s_residuals.back() > tol) {
        r.note = "final residuals exceed tol; the sequence is not asymptotically fixed";
        return r;
    }
    return std::nullopt;
}

}  // namespace

DecayFn harmonic_decay() {
    return [](std::size_t n) { return 1.0 / (static_cast<double>(n) + 1.0); };
}

DecayFn geometric_decay() {
    return [](std::size_t n) { return std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(n, 2000))); };
}

DecayFn zero_decay() {
    return [](std::size_t) { return 0.0; };
}

std::string_view to_string(DecayKind k) noexcept {
    for (const auto& [kind, name] : kDecayNames) {
        if (kind == k) return name;
    }
    return "unknown";
}

std::optional<DecayKind> parse_decay_kind(std::string_view s) noexcept {
    for (const auto& [kind, name] : kDecayNames) {
        if (name == s) return kind;
    }
    return std::nullopt;
}

DecayFn make_decay(DecayKind k) {
    switch (k) {
        case DecayKind::harmonic: return harmonic_decay();
        case DecayKind::geometric: return geometric_decay();
        case DecayKind::zero: return zero_decay();
    }
    return zero_decay();
}

std::size_t tail_start(std::size_t n_terms) noexcept {
    const std::size_t width = std::max<std::size_t>(1, n_terms / 10);
    return n_terms > width ? n_terms - width : 0;
}

PerturbedSequence residual_sequence(const SpaceSpec& space, const MapPair& pair, double lambda,
                                    std::vector<Point> points) {
    check_lambda(lambda);
    PerturbedSequence seq;
    seq.points = std::move(points);
    seq.t_residuals.reserve(seq.points.size());
    seq.s_residuals.reserve(seq.points.size());
    for (const auto& x : seq.points) {
        seq.t_residuals.push_back(metric_eval(space, averaged_map(space, pair.t, lambda, x), x));
        seq.s_residuals.push_back(metric_eval(space, x, averaged_map(space, pair.s, lambda, x)));
    }
    std::size_t k = seq.points.empty() ? 0 : seq.points.size() - 1;
    while (k > 0 && nonincreasing_step(seq.t_residuals[k - 1], seq.t_residuals[k]) &&
           nonincreasing_step(seq.s_residuals[k - 1], seq.s_residuals[k])) {
        --k;
    }
    seq.monotone_from = k;
    return seq;
}

PerturbedSequence make_asymptotic_sequence(const SpaceSpec& space, const MapPair& pair,
                                           double lambda, const Point& p, const DecayFn& decay,
                                           std::size_t n_terms, std::uint64_t seed,
                                           const std::optional<Point>& direction) {
    check_lambda(lambda);
    if (n_terms == 0) throw Error(ErrorKind::input, "n_terms must be at least 1");
    require_common_fixed_point(space, pair, p);

    Point v;
    if (direction) {
        validate_point(space, *direction);
        v = *direction;
    } else {
        // The difference of a related pair: for the bundled relations this
        // keeps p R x_n whenever p R p, which is where the contraction bites.
        Box unit_box(space.dimension, Interval{-1.0, 1.0});
        for (std::uint64_t attempt = 0;; ++attempt) {
            SampleStream rng(seed, attempt, 0x44495245);
            auto [x, y] = sample_related_pair(space, unit_box, rng);
            v = y - x;
            if (std::any_of(v.coords().begin(), v.coords().end(), [](double c) { return c != 0.0; })) break;
        }
    }
    const double unit = metric_eval(space, p, p + v);
    if (!(unit > 0.0)) throw Error(ErrorKind::input, "perturbation direction has zero length");

    std::vector<Point> points;
    points.reserve(n_terms);
    for (std::size_t n = 0; n < n_terms; ++n) {
        const double delta = decay(n);
        if (!(delta >= 0.0) || !std::isfinite(delta)) {
            throw Error(ErrorKind::input, "decay(" + std::to_string(n) + ") is not a finite nonnegative number");
        }
        if (delta == 0.0) {
            points.push_back(p);
            continue;
        }
        double t = delta / unit;
        Point x = p + t * v;
        // Only the nonnormed metric is not homogeneous along a ray.
        for (int k = 0; k < 64 && metric_eval(space, p, x) > delta; ++k) {
            t *= 0.5;
            x = p + t * v;
        }
        points.push_back(std::move(x));
    }
    return residual_sequence(space, pair, lambda, std::move(points));
}

CheckReport well_posedness_probe(const SpaceSpec& space, const MapPair& pair, double lambda,
                                 const Point& p, const PerturbedSequence& seq, double tol,
                                 const InterpolativeParams& params) {
    check_lambda(lambda);
    validate_point(space, p);
    if (auto r = precondition_report("well-posedness", seq, tol)) return *r;

    const double p_residual = metric_eval(space, p, averaged_map(space, pair.t, lambda, p));
    MarginTracker tracker("well-posedness", tol, 0);
    for (std::size_t n = tail_start(seq.points.size()); n < seq.points.size(); ++n) {
        const Point& x = seq.points[n];
        const double s_res = metric_eval(space, x, averaged_map(space, pair.s, lambda, x));
        const double bound =
            s_res + params.a * interpolative_product(p_residual, s_res, params.alpha);
        const double dist = metric_eval(space, x, p);
        tracker.observe("distance-to-fixed-point", bound - dist,
                        [&] { return Witness{{}, {x, p}, lambda, dist, bound}; });
    }
    return std::move(tracker).finish();
}

CheckReport limit_shadowing_probe(const SpaceSpec& space, const MapPair& pair, double lambda,
                                  const PerturbedSequence& seq, const Point& z, double tol) {
    check_lambda(lambda);
    validate_point(space, z);
    if (auto r = precondition_report("limit-shadowing", seq, tol)) return *r;

    // Margins are -distance, so the tracker's tolerance is the shadowing bound.
    MarginTracker tracker("limit-shadowing", tol, 0);
    Point orbit_t = z;
    Point orbit_s = z;
    const std::size_t tail = tail_start(seq.points.size());
    for (std::size_t n = 0; n < seq.points.size(); ++n) {
        const Point& x = seq.points[n];
        if (n >= tail) {
            const double dt = metric_eval(space, orbit_t, x);
            const double ds = metric_eval(space, x, orbit_s);
            tracker.observe("t-orbit", -dt, [&] { return Witness{{}, {orbit_t, x}, lambda, dt, 0.0}; });
            tracker.observe("s-orbit", -ds, [&] { return Witness{{}, {x, orbit_s}, lambda, ds, 0.0}; });
        }
        if (n + 1 == seq.points.size()) break;
        orbit_t = averaged_map(space, pair.t, lambda, orbit_t);
        orbit_s = averaged_map(space, pair.s, lambda, orbit_s);
        if (!orbit_t.is_finite() || !orbit_s.is_finite()) {
            throw Error(ErrorKind::divergence, "orbit of " + to_string(z) + " is not finite at step " +
                                                   std::to_string(n + 1));
        }
    }
    return std::move(tracker).finish();
}

UlamHyersReport ulam_hyers_probe(const SpaceSpec& space, const MapPair& pair, double lambda,
                                 const Point& p, std::span<const double> epsilons,
                                 std::size_t n_samples, std::uint64_t seed) {
    check_lambda(lambda);
    if (n_samples == 0) throw Error(ErrorKind::input, "n_samples must be at least 1");
    if (epsilons.empty()) throw Error(ErrorKind::input, "at least one epsilon is required");
    require_common_fixed_point(space, pair, p);
    validate_box(space, space.domain);

    UlamHyersReport report;
    report.seed = seed;
    for (double eps : epsilons) {
        if (!(eps > 0.0) || !std::isfinite(eps)) {
            throw Error(ErrorKind::input, "epsilon must be positive, got " + show(eps));
        }
        UlamHyersEntry entry;
        entry.epsilon = eps;

        auto consider = [&](const Point& w) {
            ++entry.sampled;
            double rt = 0.0, rs = 0.0;
            try {
                rt = metric_eval(space, w, averaged_map(space, pair.t, lambda, w));
                rs = metric_eval(space, w, averaged_map(space, pair.s, lambda, w));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::singularity && e.kind() != ErrorKind::divergence) throw;
                return;
            }
            if (rt > eps || rs > eps) return;
            ++entry.accepted;
            const double ratio = metric_eval(space, p, w) / eps;
            if (!entry.witness || ratio > entry.worst_ratio) {
                entry.worst_ratio = ratio;
                entry.witness = w;
            }
        };

        for (std::size_t i = 0; i < n_samples; ++i) {
            SampleStream rng(seed, i, 0x55484131);
            consider(sample_point(space, space.domain, rng));
        }

        Box local(space.dimension);
        bool local_ok = true;
        for (std::size_t k = 0; k < space.dimension; ++k) {
            local[k] = {std::max(space.domain[k].lo, p[k] - 10.0 * eps),
                        std::min(space.domain[k].hi, p[k] + 10.0 * eps)};
            local_ok = local_ok && local[k].lo <= local[k].hi;
        }
        if (local_ok) {
            for (std::size_t i = 0; i < n_samples; ++i) {
                SampleStream rng(seed, i, 0x55484132);
                consider(sample_point(space, local, rng));
            }
        }

        entry.vacuous = entry.accepted == 0;
        if (!entry.vacuous) report.estimated_c = std::max(report.estimated_c, entry.worst_ratio);
        report.entries.push_back(std::move(entry));
    }
    const bool any = std::any_of(report.entries.begin(), report.entries.end(),
                                 [](const UlamHyersEntry& e) { return !e.vacuous; });
    report.stable = any && std::isfinite(report.estimated_c);
    report.ratio_exceeds_one = report.estimated_c > 1.0;
    return report;
}

}  // namespace enrichfp

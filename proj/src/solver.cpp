#include "enrichfp/solver.hpp"

#include <algorithm>
#include <cmath>

#include "enrichfp/error.hpp"

namespace enrichfp {

namespace {

void check_coefficient(double a) {
    if (!(a >= 0.0 && a < 1.0)) {
        throw Error(ErrorKind::input, "a must lie in [0,1), got " + show(a));
    }
}

}  // namespace

std::string_view to_string(SolveStatus s) noexcept {
    switch (s) {
        case SolveStatus::converged: return "converged";
        case SolveStatus::max_iters: return "max-iters";
        case SolveStatus::singularity: return "singularity";
        case SolveStatus::divergence: return "divergence";
    }
    return "unknown";
}

void validate(const SolveOptions& opts) {
    if (!(opts.lambda >= 0.0 && opts.lambda < 1.0)) {
        throw Error(ErrorKind::validation,
                    "lambda must lie in [0,1), got " + show(opts.lambda));
    }
    if (!(opts.tol > 0.0) || !std::isfinite(opts.tol)) {
        throw Error(ErrorKind::validation, "tol must be positive, got " + show(opts.tol));
    }
    if (opts.max_iters < 1) throw Error(ErrorKind::validation, "max_iters must be at least 1");
    if (opts.a_hint && !(*opts.a_hint >= 0.0 && *opts.a_hint < 1.0)) {
        throw Error(ErrorKind::validation,
                    "a_hint must lie in [0,1), got " + show(*opts.a_hint));
    }
}

double residual_tolerance(const SolveOptions& opts) noexcept {
    const double slack = opts.lambda / (1.0 - opts.lambda);
    return std::min(opts.tol * (1.0 + slack), 10.0 * opts.tol);
}

IterationTrace iterate_pair(const SpaceSpec& space, const MapPair& pair, const Point& x0,
                            const SolveOptions& opts) {
    validate(opts);
    validate_point(space, x0);

    IterationTrace trace;
    trace.points.push_back(x0);
    const double residual_tol = residual_tolerance(opts);
    std::optional<std::size_t> apriori_stop;

    auto residuals = [&](const Point& x) {
        return std::make_pair(metric_eval(space, x, apply_map(space, pair.t, x)),
                              metric_eval(space, x, apply_map(space, pair.s, x)));
    };

    try {
        for (std::size_t n = 0; n < opts.max_iters; ++n) {
            const SelfMap& f = n % 2 == 0 ? pair.t : pair.s;
            Point next = averaged_map(space, f, opts.lambda, trace.points.back());
            if (!next.is_finite()) {
                throw Error(ErrorKind::divergence, "iterate " + std::to_string(n + 1) + " is not finite");
            }
            trace.step_dist.push_back(metric_eval(space, trace.points.back(), next));
            trace.points.push_back(std::move(next));
            if (n == 0 && opts.a_hint) {
                apriori_stop = stop_index(*opts.a_hint, trace.step_dist[0], opts.tol);
            }

            const std::size_t k = trace.step_dist.size();
            const bool steps_small =
                k >= 2 && trace.step_dist[k - 1] <= opts.tol && trace.step_dist[k - 2] <= opts.tol;
            const bool apriori_done = apriori_stop && trace.iterations() >= *apriori_stop;
            if (steps_small || apriori_done) {
                trace.residuals_at_last = residuals(trace.points.back());
                if (trace.residuals_at_last.first <= residual_tol &&
                    trace.residuals_at_last.second <= residual_tol) {
                    trace.converged = true;
                    trace.status = SolveStatus::converged;
                    break;
                }
            }
        }
        if (!trace.converged) trace.residuals_at_last = residuals(trace.points.back());
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::singularity) {
            trace.status = SolveStatus::singularity;
        } else if (e.kind() == ErrorKind::divergence) {
            trace.status = SolveStatus::divergence;
        } else {
            throw;
        }
        trace.converged = false;
        trace.error = e.what();
    }

    if (opts.a_hint) {
        const double d01 = trace.step_dist.empty() ? 0.0 : trace.step_dist[0];
        trace.bound.reserve(trace.points.size());
        for (std::size_t n = 0; n < trace.points.size(); ++n) {
            trace.bound.push_back(a_priori_bound(*opts.a_hint, n, d01));
        }
    }
    trace.relation_ok = check_relation_chain(space, trace.points);
    return trace;
}

double a_priori_bound(double a, std::size_t n, double d01) {
    check_coefficient(a);
    if (!(d01 >= 0.0)) throw Error(ErrorKind::input, "d01 must be nonnegative");
    return std::pow(a, static_cast<double>(n)) * d01 / (1.0 - a);
}

std::size_t stop_index(double a, double d01, double tol) {
    check_coefficient(a);
    if (!(d01 >= 0.0)) throw Error(ErrorKind::input, "d01 must be nonnegative");
    if (!(tol > 0.0)) throw Error(ErrorKind::input, "tol must be positive");
    if (a_priori_bound(a, 0, d01) <= tol) return 0;
    if (a == 0.0) return 1;

    const double guess = std::ceil(std::log(tol * (1.0 - a) / d01) / std::log(a));
    auto n = static_cast<std::size_t>(std::max(guess, 1.0));
    while (n > 1 && a_priori_bound(a, n - 1, d01) <= tol) --n;
    while (a_priori_bound(a, n, d01) > tol) ++n;
    return n;
}

CheckReport verify_hypotheses(const SpaceSpec& space, const MapPair& pair, double lambda,
                              const Point& x0, std::size_t n_samples, std::uint64_t seed,
                              const std::optional<Box>& box) {
    if (n_samples == 0) throw Error(ErrorKind::input, "n_samples must be at least 1");
    validate_point(space, x0);
    const Box& b = box ? *box : space.domain;
    validate_box(space, b);

    MarginTracker tracker("hypotheses", 0.0, seed);
    const Point x1 = averaged_map(space, pair.t, lambda, x0);
    const bool start_ok = relate(space, x0, x1);
    tracker.observe("start-related", start_ok ? 0.0 : -1.0,
                    [&] { return Witness{{}, {x0, x1}, lambda, 0.0, 0.0}; });

    for (std::size_t i = 0; i < n_samples; ++i) {
        SampleStream rng(seed, i, 0x48595054);
        auto [x, y] = sample_related_pair(space, b, rng);
        try {
            const Point tx = averaged_map(space, pair.t, lambda, x);
            const Point sy = averaged_map(space, pair.s, lambda, y);
            bool ok = relate(space, tx, sy);
            if (!ok) {
                const Point sx = averaged_map(space, pair.s, lambda, x);
                const Point ty = averaged_map(space, pair.t, lambda, y);
                ok = relate(space, sx, ty);
            }
            tracker.observe("images-related", ok ? 0.0 : -1.0,
                            [&] { return Witness{{}, {x, y}, lambda, 0.0, 0.0}; });
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::singularity) throw;
            tracker.skip();
        }
    }
    return std::move(tracker).finish();
}

UniquenessReport uniqueness_probe(const SpaceSpec& space, const MapPair& pair,
                                  const SolveOptions& opts, std::span<const Point> starts) {
    if (starts.size() < 2) throw Error(ErrorKind::input, "uniqueness_probe needs at least 2 starts");
    UniquenessReport report;
    std::vector<Point> converged_limits;
    for (std::size_t i = 0; i < starts.size(); ++i) {
        IterationTrace t = iterate_pair(space, pair, starts[i], opts);
        report.limits.push_back(t.last());
        if (t.converged) {
            converged_limits.push_back(t.last());
        } else {
            report.failed_starts.push_back(i);
        }
    }
    for (std::size_t i = 0; i < converged_limits.size(); ++i) {
        for (std::size_t j = i + 1; j < converged_limits.size(); ++j) {
            report.max_pairwise_distance =
                std::max(report.max_pairwise_distance,
                         metric_eval(space, converged_limits[i], converged_limits[j]));
        }
    }
    const bool agree = report.max_pairwise_distance <= 10.0 * opts.tol;
    report.uniqueness_consistent = report.failed_starts.empty() && agree;
    if (!report.failed_starts.empty()) {
        report.status = CheckStatus::inconclusive;
    } else {
        report.status = agree ? CheckStatus::pass : CheckStatus::fail;
    }
    return report;
}

}  // namespace enrichfp

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "enrichfp/check_report.hpp"
#include "enrichfp/maps.hpp"
#include "enrichfp/spaces.hpp"

namespace enrichfp {

struct SolveOptions {
    double lambda = 0.5;
    double tol = 1e-10;
    std::size_t max_iters = 1'000'000;
    /// Enables the bound column and a-priori stopping.
    std::optional<double> a_hint;

    friend bool operator==(const SolveOptions&, const SolveOptions&) = default;
};

/// Throws Error(validation) naming the offending field.
void validate(const SolveOptions& opts);

enum class SolveStatus { converged, max_iters, singularity, divergence };

std::string_view to_string(SolveStatus s) noexcept;

/// x1 = W(x0, T x0; l), x2 = W(x1, S x1; l), alternating thereafter.
struct IterationTrace {
    std::vector<Point> points;
    /// step_dist[n] = d(x_n, x_{n+1}).
    std::vector<double> step_dist;
    /// bound[n] = a^n / (1 - a) * d(x0, x1); empty without an a_hint.
    std::vector<double> bound;
    bool relation_ok = false;
    bool converged = false;
    /// (d(x_N, T x_N), d(x_N, S x_N)) at the last iterate.
    std::pair<double, double> residuals_at_last{0.0, 0.0};
    SolveStatus status = SolveStatus::max_iters;
    std::string error;

    std::size_t iterations() const noexcept { return points.empty() ? 0 : points.size() - 1; }
    const Point& last() const { return points.back(); }
};

/// Runs the alternating averaged iteration from x0.
///
/// Stops once the two most recent steps (one through T_l, one through S_l) are
/// both within tol and both map residuals at the last iterate are within
/// residual_tolerance(opts). With an a_hint it also stops at stop_index once the
/// residuals agree. A singularity or non-finite iterate ends the run with a
/// partial trace and the matching status instead of throwing.
IterationTrace iterate_pair(const SpaceSpec& space, const MapPair& pair, const Point& x0,
                            const SolveOptions& opts);

/// tol * (1 + l / (1 - l)), capped at 10 tol. In a linear space a step of size
/// tol through T_l means d(x, T x) = tol / (1 - l).
double residual_tolerance(const SolveOptions& opts) noexcept;

/// a^n / (1 - a) * d01.
double a_priori_bound(double a, std::size_t n, double d01);

/// Smallest n with a_priori_bound(a, n, d01) <= tol.
std::size_t stop_index(double a, double d01, double tol);

/// Checks x0 R W(x0, T x0; l) at x0 and, on sampled related pairs (x, y),
/// that W(x,Tx;l) R W(y,Sy;l) or W(x,Sx;l) R W(y,Ty;l).
CheckReport verify_hypotheses(const SpaceSpec& space, const MapPair& pair, double lambda,
                              const Point& x0, std::size_t n_samples, std::uint64_t seed,
                              const std::optional<Box>& box = std::nullopt);

struct UniquenessReport {
    std::vector<Point> limits;
    double max_pairwise_distance = 0.0;
    /// All runs converged and the limits agree to within 10 tol.
    bool uniqueness_consistent = false;
    CheckStatus status = CheckStatus::inconclusive;
    std::vector<std::size_t> failed_starts;
};

UniquenessReport uniqueness_probe(const SpaceSpec& space, const MapPair& pair,
                                  const SolveOptions& opts, std::span<const Point> starts);

}  // namespace enrichfp

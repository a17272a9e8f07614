#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "enrichfp/check_report.hpp"
#include "enrichfp/maps.hpp"
#include "enrichfp/spaces.hpp"

namespace enrichfp {

using DecayFn = std::function<double(std::size_t)>;

/// 1 / (n + 1)
DecayFn harmonic_decay();
/// 2^-n
DecayFn geometric_decay();
DecayFn zero_decay();

enum class DecayKind { harmonic, geometric, zero };
std::string_view to_string(DecayKind k) noexcept;
std::optional<DecayKind> parse_decay_kind(std::string_view s) noexcept;
DecayFn make_decay(DecayKind k);

/// A sequence whose averaged-map residuals vanish.
struct PerturbedSequence {
    std::vector<Point> points;
    /// d(W(x_n, T x_n; l), x_n)
    std::vector<double> t_residuals;
    /// d(x_n, W(x_n, S x_n; l))
    std::vector<double> s_residuals;
    /// First index from which both residual lists are nonincreasing.
    std::size_t monotone_from = 0;
};

/// Distance below which a candidate counts as a common fixed point.
inline constexpr double kFixedPointCheck = 1e-10;

/// x_n = p + t_n v along one ray, with t_n chosen so d(p, x_n) <= decay(n). The
/// direction v is drawn from the seed unless supplied, as y - x for a sampled
/// related pair x R y, so the points stay related to p. Keeping a single ray
/// makes the residuals nonincreasing for maps that are piecewise linear near p;
/// monotone_from records where that actually starts.
///
/// Throws Error(precondition) unless both residuals at p are <= 1e-10.
PerturbedSequence make_asymptotic_sequence(const SpaceSpec& space, const MapPair& pair,
                                           double lambda, const Point& p, const DecayFn& decay,
                                           std::size_t n_terms, std::uint64_t seed,
                                           const std::optional<Point>& direction = std::nullopt);

/// Recomputes both residual lists (and monotone_from) for arbitrary points.
PerturbedSequence residual_sequence(const SpaceSpec& space, const MapPair& pair, double lambda,
                                    std::vector<Point> points);

/// Tail window used by the probes: the last 10% of terms, at least one.
std::size_t tail_start(std::size_t n_terms) noexcept;

/// a and alpha of the interpolative bound used by well_posedness_probe.
struct InterpolativeParams {
    double a = 0.5;
    double alpha = 0.5;
};

/// Checks, over the tail, d(x_n, p) <= d(x_n, S_l x_n) + a [d(p, T_l p)]^alpha
/// [d(x_n, S_l x_n)]^(1-alpha) + tol. Inconclusive when the final residuals
/// exceed tol.
CheckReport well_posedness_probe(const SpaceSpec& space, const MapPair& pair, double lambda,
                                 const Point& p, const PerturbedSequence& seq, double tol,
                                 const InterpolativeParams& params = {});

/// Follows the orbits T_l^n z and S_l^n z alongside the sequence and checks
/// that both stay within tol of x_n over the tail.
CheckReport limit_shadowing_probe(const SpaceSpec& space, const MapPair& pair, double lambda,
                                  const PerturbedSequence& seq, const Point& z, double tol);

struct UlamHyersEntry {
    double epsilon = 0.0;
    std::size_t sampled = 0;
    std::size_t accepted = 0;
    /// max d(p, w) / epsilon over accepted epsilon-solutions w.
    double worst_ratio = 0.0;
    std::optional<Point> witness;
    bool vacuous = false;
};

struct UlamHyersReport {
    std::vector<UlamHyersEntry> entries;
    /// max over non-vacuous entries of worst_ratio.
    double estimated_c = 0.0;
    bool stable = false;
    /// Set when some measured ratio exceeds 1.
    bool ratio_exceeds_one = false;
    std::uint64_t seed = 0;
};

/// For each epsilon, rejection-samples epsilon-solutions w (both averaged
/// residuals <= epsilon): n_samples uniform over the domain box, then n_samples
/// more from the box p +- 10 epsilon (clipped to the domain). The second pass
/// reuses the same streams at every epsilon so ratios are comparable across
/// scales.
UlamHyersReport ulam_hyers_probe(const SpaceSpec& space, const MapPair& pair, double lambda,
                                 const Point& p, std::span<const double> epsilons,
                                 std::size_t n_samples, std::uint64_t seed);

}  // namespace enrichfp

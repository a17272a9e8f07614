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
#include "enrichfp/expr.hpp"
#include "enrichfp/point.hpp"
#include "enrichfp/spaces.hpp"

namespace enrichfp {

using SelfMap = std::function<Point(const Point&)>;

/// Two self-maps (T, S) on a space.
struct MapPair {
    std::string name;
    SelfMap t;
    SelfMap s;
    /// "builtin" or a textual rendering of the defining expressions.
    std::string source;
    /// Registry pairs name the space they were written for.
    std::string home_space;
    std::string description;
};

/// Builtin pairs in listing order: paper-main-pair, one-minus-x, negation, identity.
std::span<const MapPair> builtin_pairs();
const MapPair& builtin_pair(std::string_view name);
std::vector<std::string> builtin_pair_names();

/// Compiles expression-defined maps; throws ParseError / Error(configuration).
MapPair compile_pair(std::string name, const MapText& t, const MapText& s, std::size_t dim);

/// Evaluates f(x) and checks the image: wrong dimension -> input error,
/// non-finite coordinate -> divergence error.
Point apply_map(const SpaceSpec& space, const SelfMap& f, const Point& x);

enum class Family {
    banach,
    kannan,
    interpolative_kannan,
    noorwali_pair,
    enriched_kannan,
    modified_enriched_kannan_pair,
    enriched_interpolative_pair,
};

std::string_view to_string(Family f) noexcept;
std::optional<Family> parse_family(std::string_view s) noexcept;
std::span<const Family> all_families() noexcept;

/// Families stated for a single map use T only; the pair families use (T, S).
bool uses_both_maps(Family f) noexcept;
/// Norm-form families need a linear space.
bool is_norm_form(Family f) noexcept;
bool uses_alpha(Family f) noexcept;
bool uses_lambda(Family f) noexcept;
bool uses_b(Family f) noexcept;
/// Upper bound (exclusive) on a: 0.5 for the Kannan-sum families, 1 otherwise.
double max_coefficient(Family f) noexcept;

struct ContractionSpec {
    Family family = Family::enriched_interpolative_pair;
    double a = 0.5;
    double alpha = 0.5;
    double lambda = 0.5;
    double b = 0.0;

    friend bool operator==(const ContractionSpec&, const ContractionSpec&) = default;
};

/// Throws Error(validation) naming the field and its legal range.
void validate(const ContractionSpec& spec, bool check_a = true);

/// T_l x = W(x, f(x); l), l in [0, 1).
Point averaged_map(const SpaceSpec& space, const SelfMap& f, double lambda, const Point& x);

/// (T_l, S_l) as a pair of its own.
MapPair averaged_pair(const SpaceSpec& space, const MapPair& pair, double lambda);

/// The image-side weight 1/(b+1) that an enriched norm-form parameter b
/// puts on the map image. Negative b -> input error.
double b_to_lambda(double b);

/// The first-argument weight of W that realises b: T_l x = l x + (1-l) T x with
/// l = 1 - b_to_lambda(b) = b/(b+1).
double averaging_weight_for_b(double b);

/// Both sides of a family's inequality at (x, y).
struct Residual {
    double lhs = 0.0;
    double rhs = 0.0;
    bool applicable = true;

    double margin() const noexcept { return rhs - lhs; }
};

/// u^alpha v^(1-alpha), taken as 0 when either factor is 0.
double interpolative_product(double u, double v, double alpha) noexcept;

/// Threshold below which d(x, Tx) counts as x in Fix(T).
double fixed_point_threshold(const SpaceSpec& space) noexcept;

Residual condition_residual(const SpaceSpec& space, const MapPair& pair,
                            const ContractionSpec& spec, const Point& x, const Point& y);

/// The right-hand side with a = 1, alongside the left-hand side.
Residual condition_terms(const SpaceSpec& space, const MapPair& pair, const ContractionSpec& spec,
                         const Point& x, const Point& y);

struct SamplingOptions {
    PairSampling pairs = PairSampling::mixed;
    /// Overrides the space's domain box.
    std::optional<Box> box;
};

/// Violation when lhs - rhs > tol. Zero applicable samples -> inconclusive.
CheckReport check_contraction(const SpaceSpec& space, const MapPair& pair,
                              const ContractionSpec& spec, std::size_t n_samples, double tol,
                              std::uint64_t seed, const SamplingOptions& sampling = {});

/// sup over applicable samples of lhs / (rhs with a = 1), with 0/0 = 0 and
/// x/0 = inf. Throws Error(inconclusive) when nothing was applicable.
double estimate_min_coefficient(const SpaceSpec& space, const MapPair& pair,
                                const ContractionSpec& fixed_params, std::size_t n_samples,
                                std::uint64_t seed, const SamplingOptions& sampling = {});

}  // namespace enrichfp

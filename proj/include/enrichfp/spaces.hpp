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
#include "enrichfp/point.hpp"
#include "enrichfp/sampling.hpp"

namespace enrichfp {

enum class MetricKind {
    euclidean,
    taxicab,
    chebyshev,
    /// |x1 - y1| + |x1 x2 - y1 y2| on the half-plane x1 > 0.
    nonnormed,
    /// Euclidean between related points, Chebyshev otherwise.
    order_piecewise,
};

enum class StructureKind {
    /// W(x, y; l) = l x + (1 - l) y.
    affine,
    /// Affine in the coordinates (x1, x1 x2); needs x1 > 0.
    nonnormed,
};

enum class RelationKind {
    universal,
    /// x R y iff both x and y have all coordinates equal.
    diagonal,
    /// x R y iff x <= y in every coordinate.
    componentwise_le,
};

std::string_view to_string(MetricKind k) noexcept;
std::string_view to_string(StructureKind k) noexcept;
std::string_view to_string(RelationKind k) noexcept;
std::optional<MetricKind> parse_metric_kind(std::string_view s) noexcept;
std::optional<StructureKind> parse_structure_kind(std::string_view s) noexcept;
std::optional<RelationKind> parse_relation_kind(std::string_view s) noexcept;

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    friend bool operator==(const Interval&, const Interval&) = default;
};

using Box = std::vector<Interval>;

/// A convex metric space with a binary relation, plus the box used for sampling.
///
/// The convex structure weights its FIRST argument by lambda, so
/// W(x, y; 1) = x and W(x, y; 0) = y.
struct SpaceSpec {
    std::string name;
    std::size_t dimension = 0;
    MetricKind metric = MetricKind::euclidean;
    StructureKind structure = StructureKind::affine;
    RelationKind relation = RelationKind::universal;
    Box domain;
    /// Only meaningful for order_piecewise: use the Euclidean branch when x R y
    /// OR y R x. Disabled = the one-sided rule, which is not symmetric.
    bool symmetrize = true;
    std::string description;

    /// Affine structure with a norm-induced metric, so ||v|| = d(v, 0).
    bool is_linear() const noexcept;

    friend bool operator==(const SpaceSpec&, const SpaceSpec&) = default;
};

/// Builtin registry, in stable listing order.
std::span<const SpaceSpec> builtin_spaces();
/// Throws Error(lookup) listing the known names.
const SpaceSpec& builtin_space(std::string_view name);
std::vector<std::string> builtin_space_names();

/// Throws Error(input) on dimension mismatch or non-finite coordinates.
void validate_point(const SpaceSpec& space, const Point& x);
/// Throws Error(configuration) for a box of the wrong arity or with lo > hi.
void validate_box(const SpaceSpec& space, const Box& box);
/// Largest absolute bound of the box; used to scale absolute tolerances.
double domain_scale(const Box& box) noexcept;

double metric_eval(const SpaceSpec& space, const Point& x, const Point& y);

/// W(x, y; lambda). Errors: lambda outside [0,1] -> input; nonnormed structure
/// with a non-positive first coordinate -> singularity.
Point convex_combine(const SpaceSpec& space, const Point& x, const Point& y, double lambda);

bool relate(const SpaceSpec& space, const Point& x, const Point& y);

/// ||v|| for linear spaces; Error(unsupported_family) otherwise.
double norm_eval(const SpaceSpec& space, const Point& v);

/// True iff points[i] R points[j] for every i < j. Traces longer than
/// kFullChainLimit are checked on the band j - i <= kChainBand instead.
bool check_relation_chain(const SpaceSpec& space, std::span<const Point> points);
inline constexpr std::size_t kFullChainLimit = 4096;
inline constexpr std::size_t kChainBand = 256;

/// Sampled verification of nonnegativity, identity at coincident points,
/// symmetry and the triangle inequality.
CheckReport check_metric_axioms(const SpaceSpec& space, std::size_t n_samples, double tol,
                                std::uint64_t seed, const std::optional<Box>& box = std::nullopt);

/// Sampled verification of d(u, W(x,y;l)) <= l d(u,x) + (1-l) d(u,y). Every
/// fourth sample uses l = 0, 0.5, 1 in turn; the rest draw l uniformly.
CheckReport check_convexity_inequality(const SpaceSpec& space, std::size_t n_samples, double tol,
                                       std::uint64_t seed,
                                       const std::optional<Box>& box = std::nullopt);

/// How sampled checkers choose (x, y) pairs.
enum class PairSampling {
    /// Even sample indices draw a related pair, odd ones a uniform pair.
    mixed,
    uniform,
    related,
    /// Rejection-sampled with a bounded number of attempts; misses are skipped.
    unrelated,
};

std::string_view to_string(PairSampling p) noexcept;
std::optional<PairSampling> parse_pair_sampling(std::string_view s) noexcept;

Point sample_point(const SpaceSpec& space, const Box& box, SampleStream& rng);
/// A pair with x R y, drawn according to the relation's shape.
std::pair<Point, Point> sample_related_pair(const SpaceSpec& space, const Box& box,
                                            SampleStream& rng);
/// Nullopt when the attempt budget runs out (e.g. a universal relation).
std::optional<std::pair<Point, Point>> sample_pair(const SpaceSpec& space, const Box& box,
                                                   PairSampling mode, std::size_t index,
                                                   SampleStream& rng);

}  // namespace enrichfp

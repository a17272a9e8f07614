#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "enrichfp/expr.hpp"
#include "enrichfp/json.hpp"
#include "enrichfp/maps.hpp"
#include "enrichfp/solver.hpp"
#include "enrichfp/spaces.hpp"
#include "enrichfp/stability.hpp"

namespace enrichfp {

enum class Mode { solve, verify, stability, estimate };

std::string_view to_string(Mode m) noexcept;
std::optional<Mode> parse_mode(std::string_view s) noexcept;

/// A builtin pair name, or expression-defined maps.
struct PairConfig {
    std::string name;
    bool builtin = true;
    MapText t;
    MapText s;

    friend bool operator==(const PairConfig&, const PairConfig&) = default;
};

struct SolveSection {
    SolveOptions options;
    std::optional<Point> x0;
    /// Extra starts; two or more also run the uniqueness probe.
    std::vector<Point> starts;

    friend bool operator==(const SolveSection&, const SolveSection&) = default;
};

struct VerifySection {
    std::size_t n_samples = 10'000;
    double tol = 1e-9;
    PairSampling pairs = PairSampling::mixed;
    /// Start point for the hypothesis check; falls back to solve.x0.
    std::optional<Point> x0;
    /// Averaging weight for the hypothesis check; falls back to the first
    /// enriched-interpolative contraction, then solve.lambda.
    std::optional<double> lambda;
    bool space_axioms = false;

    friend bool operator==(const VerifySection&, const VerifySection&) = default;
};

struct StabilitySection {
    double lambda = 0.5;
    std::optional<Point> p;
    DecayKind decay = DecayKind::harmonic;
    std::size_t n_terms = 200;
    double tol = 1e-2;
    std::vector<double> epsilons{1e-1, 1e-2, 1e-3};
    std::size_t n_samples = 10'000;
    std::size_t shadow_points = 10;
    std::optional<Point> direction;
    double a = 0.5;
    double alpha = 0.5;

    friend bool operator==(const StabilitySection&, const StabilitySection&) = default;
};

struct EstimateSection {
    std::size_t n_samples = 10'000;
    PairSampling pairs = PairSampling::mixed;

    friend bool operator==(const EstimateSection&, const EstimateSection&) = default;
};

/// A fully default-filled run description.
struct RunConfig {
    SpaceSpec space;
    PairConfig pair;
    Mode mode = Mode::solve;
    std::vector<ContractionSpec> contractions;
    SolveSection solve;
    VerifySection verify;
    StabilitySection stability;
    EstimateSection estimate;
    std::uint64_t seed = 0;
    std::string output = "enrichfp-out";

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parses and validates a JSON configuration document. Unknown keys are
/// errors. `mode` may come from the document or from `mode_override`; when
/// both are given they must agree.
///
/// Errors: malformed document -> parse; unknown space or pair -> lookup;
/// expression grammar -> parse (with column); out-of-range values ->
/// validation naming the field; missing mode-required sections ->
/// configuration.
RunConfig parse_config(std::string_view text, std::optional<Mode> mode_override = std::nullopt);

/// The echo written next to every run. parse_config(dump_document(echo))
/// reproduces the same RunConfig.
Json config_to_json(const RunConfig& cfg);

/// The space and pair a config refers to, compiled.
MapPair resolve_pair(const RunConfig& cfg);

}  // namespace enrichfp

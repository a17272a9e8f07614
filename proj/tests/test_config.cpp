#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "enrichfp/config.hpp"
#include "enrichfp/error.hpp"
#include "enrichfp/report.hpp"
#include "enrichfp/run.hpp"

using namespace enrichfp;

namespace {

constexpr const char* kMainSolve = R"({
  "space": "r2-taxicab-diag",
  "pair": "paper-main-pair",
  "mode": "solve",
  "solve": {"lambda": 0.5, "x0": [2, 2]},
  "seed": 42
})";

ErrorKind kind_of(std::string_view text, std::optional<Mode> mode = std::nullopt) {
    try {
        (void)parse_config(text, mode);
    } catch (const Error& e) {
        return e.kind();
    }
    ADD_FAILURE() << "config was accepted:\n" << text;
    return ErrorKind::input;
}

std::string message_of(std::string_view text) {
    try {
        (void)parse_config(text);
    } catch (const Error& e) {
        return e.what();
    }
    return {};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("enrichfp-test-" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(Parse, MainPairSolveConfig) {
    const RunConfig c = parse_config(kMainSolve);
    EXPECT_EQ(c.mode, Mode::solve);
    EXPECT_EQ(c.space, builtin_space("r2-taxicab-diag"));
    EXPECT_TRUE(c.pair.builtin);
    EXPECT_EQ(c.pair.name, "paper-main-pair");
    EXPECT_EQ(c.solve.options.lambda, 0.5);
    EXPECT_EQ(c.solve.x0, (Point{2, 2}));
    EXPECT_EQ(c.seed, 42u);
    EXPECT_EQ(c.solve.options.tol, 1e-10);
}

TEST(Parse, LambdaOneRejected) {
    const std::string text = R"({"space": "r2-taxicab-diag", "pair": "paper-main-pair", "mode": "solve",
                                 "solve": {"lambda": 1.0, "x0": [2, 2]}})";
    EXPECT_EQ(kind_of(text), ErrorKind::validation);
    const std::string msg = message_of(text);
    EXPECT_NE(msg.find("solve.lambda"), std::string::npos) << msg;
    EXPECT_NE(msg.find("must lie in [0,1)"), std::string::npos) << msg;
}

TEST(Parse, UnknownKeysAreErrors) {
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "solve",
                          "solve": {"x0": [0], "lamda": 0.5}})"),
              ErrorKind::configuration);
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "solve",
                          "solve": {"x0": [0]}, "colour": 1})"),
              ErrorKind::configuration);
}

TEST(Parse, MalformedJsonIsParseError) {
    EXPECT_EQ(kind_of("{\"space\": "), ErrorKind::parse);
}

TEST(Parse, UnknownNamesAreLookupErrors) {
    EXPECT_EQ(kind_of(R"({"space": "r9", "pair": "one-minus-x", "mode": "solve", "solve": {"x0": [0]}})"),
              ErrorKind::lookup);
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "nope", "mode": "solve", "solve": {"x0": [0]}})"),
              ErrorKind::lookup);
}

TEST(Parse, ModeRequiredSections) {
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "solve"})"),
              ErrorKind::configuration);
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "verify"})"),
              ErrorKind::configuration);
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "stability"})"),
              ErrorKind::configuration);
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "solve": {"x0": [0]}})"),
              ErrorKind::configuration);
}

TEST(Parse, ModeOverrideMustAgree) {
    EXPECT_EQ(kind_of(kMainSolve, Mode::verify), ErrorKind::configuration);
    const std::string no_mode = R"({"space": "r1-interval", "pair": "one-minus-x", "solve": {"x0": [0]}})";
    EXPECT_EQ(parse_config(no_mode, Mode::solve).mode, Mode::solve);
}

TEST(Parse, PointDimensionChecked) {
    EXPECT_EQ(kind_of(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "solve",
                          "solve": {"x0": [0, 1]}})"),
              ErrorKind::validation);
}

TEST(Parse, ContractionRanges) {
    const std::string base = R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "verify", "contraction": )";
    EXPECT_EQ(kind_of(base + R"({"family": "kannan", "a": 0.5}})"), ErrorKind::validation);
    EXPECT_EQ(kind_of(base + R"({"family": "kanan", "a": 0.4}})"), ErrorKind::validation);
    EXPECT_EQ(kind_of(base + R"({"family": "interpolative-kannan", "alpha": 1}})"), ErrorKind::validation);
    const RunConfig ok = parse_config(base + R"({"family": "kannan", "a": 0.45}})");
    ASSERT_EQ(ok.contractions.size(), 1u);
    EXPECT_EQ(ok.contractions[0].family, Family::kannan);
    EXPECT_EQ(ok.contractions[0].a, 0.45);
}

TEST(Parse, EstimateModeIgnoresA) {
    const RunConfig c = parse_config(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "estimate",
                                         "contraction": {"family": "kannan"}})");
    EXPECT_EQ(c.contractions[0].family, Family::kannan);
}

TEST(Parse, ExpressionPair) {
    const RunConfig c = parse_config(R"({"space": "r1-interval", "mode": "solve", "solve": {"x0": [0]},
                                         "pair": {"name": "mine", "t": ["1 - x1"]}})");
    EXPECT_FALSE(c.pair.builtin);
    EXPECT_EQ(c.pair.t.components, (std::vector<std::string>{"1 - x1"}));
    EXPECT_EQ(c.pair.s, c.pair.t);
    const MapPair p = resolve_pair(c);
    for (double x : {0.0, 0.2, 0.5, 0.73, 1.0}) {
        EXPECT_EQ(p.t(Point{x}), builtin_pair("one-minus-x").t(Point{x}));
    }
}

TEST(Parse, PiecewiseExpressionPair) {
    const RunConfig c = parse_config(R"({
      "space": "r2-taxicab-diag", "mode": "solve", "solve": {"x0": [3, 1]},
      "pair": {"t": {"cases": [{"guard": "x1 - x2", "op": "==", "components": ["-x1", "-x2"]}],
                     "otherwise": ["x1", "2*x1 - x2"]},
               "s": {"cases": [{"guard": "x1 - x2", "op": "==", "components": ["-x1", "-x2"]}],
                     "otherwise": ["6*x2 - x1", "5*x2"]}}})");
    const MapPair p = resolve_pair(c);
    const MapPair& b = builtin_pair("paper-main-pair");
    for (Point x : {Point{2, 2}, Point{3, 1}, Point{1, 2}, Point{-3.5, 0.25}}) {
        EXPECT_EQ(p.t(x), b.t(x));
        EXPECT_EQ(p.s(x), b.s(x));
    }
}

TEST(Parse, ExpressionErrorReportsColumn) {
    try {
        (void)parse_config(R"({"space": "r1-interval", "mode": "solve", "solve": {"x0": [0]},
                               "pair": {"t": ["1 - * x1"]}})");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.column(), 5u);
        EXPECT_NE(std::string(e.what()).find("column 5"), std::string::npos);
    }
}

TEST(Parse, BuiltinPairOnWrongSpace) {
    const RunConfig c = parse_config(R"({"space": "r1-interval", "pair": "paper-main-pair", "mode": "solve",
                                         "solve": {"x0": [0]}})");
    try {
        (void)resolve_pair(c);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.kind(), ErrorKind::configuration);
    }
}

TEST(Parse, InlineSpace) {
    const RunConfig c = parse_config(R"({
      "space": {"name": "box-taxicab", "dimension": 2, "metric": "taxicab", "structure": "affine",
                "relation": "componentwise-le", "domain": [[0, 1], [0, 2]]},
      "pair": "negation", "mode": "solve", "solve": {"x0": [0.5, 0.5]}})");
    EXPECT_EQ(c.space.name, "box-taxicab");
    EXPECT_EQ(c.space.metric, MetricKind::taxicab);
    EXPECT_EQ(c.space.relation, RelationKind::componentwise_le);
    EXPECT_EQ(c.space.domain, (Box{{0, 1}, {0, 2}}));
}

TEST(Parse, InlineSpaceFromBaseAndStrictFlag) {
    const RunConfig c = parse_config(R"({
      "space": {"name": "strict", "base": "r2-order-piecewise", "strict-paper-metric": true},
      "pair": "identity", "mode": "verify", "contraction": {"family": "banach", "a": 0.5}})");
    EXPECT_FALSE(c.space.symmetrize);
    EXPECT_EQ(c.space.metric, MetricKind::order_piecewise);
}

TEST(Parse, IncompleteCustomSpace) {
    EXPECT_EQ(kind_of(R"({"space": {"name": "x", "dimension": 2}, "pair": "negation", "mode": "solve",
                          "solve": {"x0": [0, 0]}})"),
              ErrorKind::configuration);
}

TEST(RoundTrip, EchoReparsesToSameConfig) {
    const std::vector<std::string> configs{
        kMainSolve,
        R"({"space": {"name": "strict", "base": "r2-order-piecewise", "strict-paper-metric": true},
            "pair": "identity", "mode": "verify",
            "contractions": [{"family": "banach", "a": 0.5}, "enriched-interpolative-pair"],
            "verify": {"n_samples": 10, "pairs": "related", "lambda": 0.25}, "seed": 3})",
        R"({"space": "r2-taxicab-diag", "pair": "paper-main-pair", "mode": "stability",
            "stability": {"p": [0, 0], "epsilons": [0.5], "decay": "geometric", "direction": [1, 1]}})",
        R"({"space": "r1-interval", "mode": "solve", "solve": {"x0": [0], "a_hint": 0.25, "starts": [[1], [0.3]]},
            "pair": {"name": "mine", "t": {"cases": [{"guard": "x1 - 0.5", "op": "<", "components": ["1 - x1"]}],
                                           "otherwise": ["1 - x1"]}}})",
    };
    for (const auto& text : configs) {
        const RunConfig a = parse_config(text);
        const std::string echo = dump_document(config_to_json(a));
        const RunConfig b = parse_config(echo);
        EXPECT_EQ(a, b) << echo;
        EXPECT_EQ(echo, dump_document(config_to_json(b)));
    }
}

TEST(Run, MainPairSolveWritesArtifacts) {
    RunConfig c = parse_config(kMainSolve);
    c.output = scratch("solve").string();
    const RunResult r = run(c);
    EXPECT_EQ(r.exit_status, kExitOk);
    namespace fs = std::filesystem;
    for (const char* f : {"config.json", "report.json", "trace.csv", "manifest.json"}) {
        EXPECT_TRUE(fs::exists(fs::path(c.output) / f)) << f;
    }
    const std::string trace = slurp(fs::path(c.output) / "trace.csv");
    EXPECT_NE(trace.find("seed=42"), std::string::npos);
    EXPECT_NE(trace.find("n,x1,x2,step_dist,bound,relation_flag\n0,2,2,4,,1\n"), std::string::npos) << trace;
    const Json report = Json::parse(slurp(fs::path(c.output) / "report.json"));
    EXPECT_EQ(report["seed"], 42);
    EXPECT_EQ(report["result"]["trace"]["limit"], Json::array({0, 0}));
    EXPECT_EQ(report["version"], std::string(version()));
    EXPECT_TRUE(report.contains("config"));
}

TEST(Run, ReportsAreByteIdentical) {
    RunConfig c = parse_config(R"({"space": "r2-taxicab-diag", "pair": "paper-main-pair", "mode": "stability",
                                   "stability": {"p": [0, 0], "n_samples": 500}, "seed": 9})");
    c.output = scratch("det-a").string();
    (void)run(c);
    const std::string a = slurp(std::filesystem::path(c.output) / "report.json");
    c.output = scratch("det-b").string();
    (void)run(c);
    // The output path is part of the echo; compare with it normalised.
    std::string b = slurp(std::filesystem::path(c.output) / "report.json");
    const auto pos = b.find("det-b");
    ASSERT_NE(pos, std::string::npos);
    b.replace(pos, 5, "det-a");
    EXPECT_EQ(a, b);
}

TEST(Run, VerifyWithZeroCoefficientFails) {
    RunConfig c = parse_config(R"({"space": "r1-interval", "pair": "one-minus-x", "mode": "verify",
                                   "contraction": {"family": "banach", "a": 0}, "verify": {"n_samples": 200}})");
    const RunResult r = run(c, {true, false});
    EXPECT_EQ(r.exit_status, kExitFailure);
    const Json& rep = r.report["result"]["contractions"][0];
    EXPECT_EQ(rep["status"], "fail");
    EXPECT_FALSE(rep["witness"].is_null());
}

TEST(Run, MainPairVerifyPasses) {
    RunConfig c = parse_config(R"({"space": "r2-taxicab-diag", "pair": "paper-main-pair", "mode": "verify",
                                   "contraction": {"family": "enriched-interpolative-pair", "a": 0.5, "alpha": 0.5,
                                                   "lambda": 0.5},
                                   "verify": {"n_samples": 2000, "x0": [0, 0]}})");
    const RunResult r = run(c, {true, false});
    EXPECT_EQ(r.exit_status, kExitOk) << dump_document(r.report);
}

TEST(Run, ModuleErrorSurfacesWithCategory) {
    // Norm-form family on a space without a norm.
    RunConfig c = parse_config(R"({"space": "r2-nonnormed", "pair": "identity", "mode": "verify",
                                   "contraction": {"family": "enriched-kannan", "a": 0.25, "b": 1},
                                   "verify": {"n_samples": 50}})");
    const RunResult r = run(c, {true, false});
    EXPECT_EQ(r.exit_status, kExitFailure);
    EXPECT_EQ(r.report["result"]["contractions"][0]["error"]["category"], "unsupported-family");
}

TEST(Run, WrongDimensionPairIsConfigError) {
    RunConfig c = parse_config(R"({"space": "r1-interval", "pair": "paper-main-pair", "mode": "solve",
                                   "solve": {"x0": [0]}})");
    const RunResult r = run(c, {true, false});
    EXPECT_EQ(r.exit_status, kExitConfig);
    EXPECT_EQ(r.report["error"]["category"], "configuration");
}

TEST(Registry, ListingIsStable) {
    const std::string a = list_registry();
    EXPECT_EQ(a, list_registry());
    EXPECT_NE(a.find("r2-taxicab-diag"), std::string::npos);
    EXPECT_NE(a.find("paper-main-pair"), std::string::npos);
    EXPECT_LT(a.find("r2-euclidean"), a.find("r1-interval"));
}

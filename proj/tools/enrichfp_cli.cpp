// enrichfp: config-driven runs of the fixed-point experiments.
//
//   enrichfp solve     --config run.json [--seed N] [--out DIR] [--quiet]
//   enrichfp verify    --config run.json ...
//   enrichfp stability --config run.json ...
//   enrichfp estimate  --config run.json ...
//   enrichfp list
//
// Exit status: 0 pass/converged, 1 violation or non-convergence, 2 bad config.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "enrichfp/config.hpp"
#include "enrichfp/error.hpp"
#include "enrichfp/run.hpp"

namespace {

struct Args {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    bool quiet = false;
};

void add_run_options(CLI::App* cmd, Args& args) {
    cmd->add_option("--config", args.config, "JSON run configuration")->required();
    cmd->add_option("--seed", args.seed, "Sampling seed (overrides the config)");
    cmd->add_option("--out", args.out, "Output directory (overrides the config)");
    cmd->add_flag("--quiet", args.quiet, "Print nothing but errors");
}

int execute(enrichfp::Mode mode, const Args& args) {
    using namespace enrichfp;
    std::ifstream in(args.config);
    if (!in) {
        std::cerr << "enrichfp: cannot read " << args.config << "\n";
        return kExitConfig;
    }
    std::ostringstream text;
    text << in.rdbuf();

    RunConfig cfg;
    try {
        cfg = parse_config(text.str(), mode);
    } catch (const Error& e) {
        std::cerr << "enrichfp: " << args.config << ": " << to_string(e.kind()) << " error: " << e.what() << "\n";
        return is_config_error(e.kind()) ? kExitConfig : kExitFailure;
    }
    if (args.seed) cfg.seed = *args.seed;
    if (args.out) cfg.output = *args.out;

    RunResult result;
    try {
        result = run(cfg, {args.quiet, true});
    } catch (const Error& e) {
        std::cerr << "enrichfp: " << to_string(e.kind()) << " error: " << e.what() << "\n";
        return is_config_error(e.kind()) ? kExitConfig : kExitFailure;
    }
    if (!args.quiet) {
        for (const auto& l : result.summary) std::cout << l << "\n";
        std::cout << "outcome: " << result.report["outcome"].get<std::string>() << " (exit "
                  << result.exit_status << "), artifacts in " << cfg.output << "\n";
    } else if (result.report.contains("error")) {
        std::cerr << "enrichfp: " << result.report["error"]["message"].get<std::string>() << "\n";
    }
    return result.exit_status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Enriched interpolative contractions: solve, verify and probe stability"};
    app.set_version_flag("--version", std::string(enrichfp::version()));
    app.require_subcommand(1);

    Args args;
    std::optional<enrichfp::Mode> mode;
    for (auto m : {enrichfp::Mode::solve, enrichfp::Mode::verify, enrichfp::Mode::stability,
                   enrichfp::Mode::estimate}) {
        static const char* help[] = {"Run the alternating averaged iteration",
                                     "Check contraction conditions and hypotheses",
                                     "Run the well-posedness, shadowing and Ulam-Hyers probes",
                                     "Estimate the smallest admissible coefficient"};
        auto* cmd = app.add_subcommand(std::string(enrichfp::to_string(m)), help[static_cast<int>(m)]);
        add_run_options(cmd, args);
        cmd->callback([&mode, m] { mode = m; });
    }
    bool list = false;
    app.add_subcommand("list", "List builtin spaces, pairs and families")->callback([&list] { list = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return enrichfp::kExitConfig;
    }

    if (list) {
        std::cout << enrichfp::list_registry();
        return enrichfp::kExitOk;
    }
    return execute(*mode, args);
}

#include "enrichfp/run.hpp"

#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "enrichfp/error.hpp"
#include "enrichfp/report.hpp"

#ifndef ENRICHFP_VERSION
#define ENRICHFP_VERSION "0.0.0"
#endif

namespace enrichfp {

namespace {

constexpr std::uint64_t kShadowSalt = 0x5a534841;

std::string status_word(CheckStatus s) { return std::string(to_string(s)); }

std::string line(const std::string& label, const CheckReport& r) {
    std::ostringstream os;
    os << label << ": " << to_string(r.status) << " (" << r.checked << " checked, " << r.violations
       << " violations";
    if (r.checked > 0) os << ", worst margin " << format_number(r.worst_margin);
    os << ")";
    return os.str();
}

/// Runs `f`, turning an Error into a JSON error entry instead of propagating.
template <class F>
Json guarded(F&& f, bool& ok, std::vector<std::string>& summary, const std::string& label) {
    try {
        return f();
    } catch (const Error& e) {
        if (is_config_error(e.kind())) throw;
        ok = false;
        summary.push_back(label + ": error (" + std::string(to_string(e.kind())) + ") " + e.what());
        Json j;
        j["error"] = {{"category", std::string(to_string(e.kind()))}, {"message", e.what()}};
        return j;
    }
}

Json run_solve(const RunConfig& cfg, const MapPair& pair, RunResult& out, bool& ok) {
    const auto& space = cfg.space;
    IterationTrace trace = iterate_pair(space, pair, *cfg.solve.x0, cfg.solve.options);
    out.tables.emplace_back("trace.csv", trace_csv(space, trace));
    ok = ok && trace.converged;

    Json j;
    j["trace"] = to_json(trace);
    j["trace_file"] = "trace.csv";
    std::ostringstream os;
    if (trace.converged) {
        os << "solve: converged after " << trace.iterations() << " iterations at " << to_string(trace.last());
    } else {
        os << "solve: " << to_string(trace.status) << " after " << trace.iterations()
           << " iterations, last iterate " << to_string(trace.last());
    }
    out.summary.push_back(os.str());

    if (!cfg.solve.starts.empty()) {
        std::vector<Point> starts{*cfg.solve.x0};
        starts.insert(starts.end(), cfg.solve.starts.begin(), cfg.solve.starts.end());
        const UniquenessReport u = uniqueness_probe(space, pair, cfg.solve.options, starts);
        ok = ok && u.status == CheckStatus::pass;
        j["uniqueness"] = to_json(u);
        out.summary.push_back("uniqueness: " + status_word(u.status) + " over " +
                              std::to_string(starts.size()) + " starts (max distance " +
                              format_number(u.max_pairwise_distance) + ")");
    } else {
        j["uniqueness"] = nullptr;
    }
    return j;
}

double hypothesis_lambda(const RunConfig& cfg) {
    if (cfg.verify.lambda) return *cfg.verify.lambda;
    for (const auto& c : cfg.contractions) {
        if (c.family == Family::enriched_interpolative_pair) return c.lambda;
    }
    return cfg.solve.options.lambda;
}

Json run_verify(const RunConfig& cfg, const MapPair& pair, RunResult& out, bool& ok) {
    const auto& space = cfg.space;
    const auto& v = cfg.verify;
    Json j;

    if (v.space_axioms) {
        Json axioms = Json::array();
        for (const auto& r : {check_metric_axioms(space, v.n_samples, v.tol, cfg.seed),
                              check_convexity_inequality(space, v.n_samples, v.tol, cfg.seed)}) {
            ok = ok && r.passed();
            out.summary.push_back(line(r.name, r));
            axioms.push_back(to_json(r));
        }
        j["space_axioms"] = axioms;
    }

    Json reports = Json::array();
    const SamplingOptions sampling{v.pairs, std::nullopt};
    for (const auto& c : cfg.contractions) {
        const std::string label = std::string(to_string(c.family));
        reports.push_back(guarded(
            [&]() -> Json {
                const CheckReport r = check_contraction(space, pair, c, v.n_samples, v.tol, cfg.seed, sampling);
                ok = ok && r.passed();
                out.summary.push_back(line(label, r));
                Json rj = to_json(r);
                rj["contraction"] = {{"family", label},       {"a", number_json(c.a)},
                                     {"alpha", number_json(c.alpha)}, {"lambda", number_json(c.lambda)},
                                     {"b", number_json(c.b)}};
                return rj;
            },
            ok, out.summary, label));
    }
    j["contractions"] = reports;

    const std::optional<Point>& x0 = v.x0 ? v.x0 : cfg.solve.x0;
    if (x0) {
        const double lambda = hypothesis_lambda(cfg);
        j["hypotheses"] = guarded(
            [&]() -> Json {
                const CheckReport r = verify_hypotheses(space, pair, lambda, *x0, v.n_samples, cfg.seed);
                ok = ok && r.passed();
                out.summary.push_back(line("hypotheses", r));
                Json rj = to_json(r);
                rj["lambda"] = number_json(lambda);
                rj["x0"] = to_json(*x0);
                return rj;
            },
            ok, out.summary, "hypotheses");
    } else {
        j["hypotheses"] = nullptr;
        out.summary.push_back("hypotheses: skipped (no verify.x0 or solve.x0)");
    }
    return j;
}

Json run_stability(const RunConfig& cfg, const MapPair& pair, RunResult& out, bool& ok) {
    const auto& space = cfg.space;
    const auto& st = cfg.stability;
    const Point& p = *st.p;

    const PerturbedSequence seq = make_asymptotic_sequence(space, pair, st.lambda, p, make_decay(st.decay),
                                                           st.n_terms, cfg.seed, st.direction);
    out.tables.emplace_back("sequence.csv", sequence_csv(space, seq, p));

    Json j;
    j["sequence"] = to_json(seq);
    j["sequence_file"] = "sequence.csv";

    const CheckReport wp = well_posedness_probe(space, pair, st.lambda, p, seq, st.tol, {st.a, st.alpha});
    ok = ok && wp.passed();
    out.summary.push_back(line("well-posedness", wp));
    j["well_posedness"] = to_json(wp);

    Json shadow = Json::array();
    std::size_t shadow_passed = 0;
    for (std::size_t i = 0; i < st.shadow_points; ++i) {
        SampleStream rng(cfg.seed, i, kShadowSalt);
        const Point z = sample_point(space, space.domain, rng);
        shadow.push_back(guarded(
            [&]() -> Json {
                const CheckReport r = limit_shadowing_probe(space, pair, st.lambda, seq, z, st.tol);
                if (r.passed()) ++shadow_passed;
                ok = ok && r.passed();
                Json rj = to_json(r);
                rj["z"] = to_json(z);
                return rj;
            },
            ok, out.summary, "limit-shadowing"));
    }
    j["limit_shadowing"] = shadow;
    out.summary.push_back("limit-shadowing: " + std::to_string(shadow_passed) + "/" +
                          std::to_string(st.shadow_points) + " starting points pass");

    const UlamHyersReport uh = ulam_hyers_probe(space, pair, st.lambda, p, st.epsilons, st.n_samples, cfg.seed);
    ok = ok && uh.stable;
    j["ulam_hyers"] = to_json(uh);
    out.summary.push_back(std::string("ulam-hyers: ") + (uh.stable ? "stable" : "not established") +
                          ", estimated c = " + format_number(uh.estimated_c) +
                          (uh.ratio_exceeds_one ? " (exceeds 1)" : ""));
    return j;
}

Json run_estimate(const RunConfig& cfg, const MapPair& pair, RunResult& out, bool& ok) {
    const SamplingOptions sampling{cfg.estimate.pairs, std::nullopt};
    Json entries = Json::array();
    for (const auto& c : cfg.contractions) {
        const std::string label(to_string(c.family));
        entries.push_back(guarded(
            [&]() -> Json {
                const double est = estimate_min_coefficient(cfg.space, pair, c, cfg.estimate.n_samples,
                                                            cfg.seed, sampling);
                const double limit = max_coefficient(c.family);
                const bool admissible = est < limit;
                ok = ok && admissible;
                out.summary.push_back(label + ": smallest a = " + format_number(est) +
                                      (admissible ? " (below " : " (not below ") + format_number(limit) + ")");
                Json e;
                e["family"] = label;
                if (uses_alpha(c.family)) e["alpha"] = number_json(c.alpha);
                if (uses_lambda(c.family)) e["lambda"] = number_json(c.lambda);
                if (uses_b(c.family)) e["b"] = number_json(c.b);
                e["estimate"] = number_json(est);
                e["limit"] = number_json(limit);
                e["admissible"] = admissible;
                return e;
            },
            ok, out.summary, label));
    }
    Json j;
    j["estimates"] = entries;
    return j;
}

std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::configuration, "cannot write " + path.string());
    f << body;
    if (!f) throw Error(ErrorKind::configuration, "failed writing " + path.string());
}

void write_outputs(const RunConfig& cfg, const RunResult& result) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.output);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error(ErrorKind::configuration, "cannot create output directory " + dir.string() + ": " + ec.message());

    std::vector<std::string> files{"config.json", "report.json"};
    write_file(dir / "config.json", dump_document(config_to_json(cfg)));
    write_file(dir / "report.json", dump_document(result.report));
    // Tables carry the version and seed on a leading comment line.
    const std::string stamp = "# enrichfp " + std::string(version()) + " seed=" + std::to_string(cfg.seed) + "\n";
    for (const auto& [name, body] : result.tables) {
        write_file(dir / name, stamp + body);
        files.push_back(name);
    }

    Json manifest;
    manifest["tool"] = "enrichfp";
    manifest["version"] = std::string(version());
    manifest["created"] = timestamp_utc();
    manifest["mode"] = std::string(to_string(cfg.mode));
    manifest["seed"] = cfg.seed;
    manifest["exit_status"] = result.exit_status;
    manifest["files"] = files;
    write_file(dir / "manifest.json", dump_document(manifest));
}

}  // namespace

std::string_view version() noexcept { return ENRICHFP_VERSION; }

RunResult run(const RunConfig& cfg, const RunOptions& opts) {
    RunResult out;
    Json& report = out.report;
    report["tool"] = "enrichfp";
    report["version"] = std::string(version());
    report["mode"] = std::string(to_string(cfg.mode));
    report["seed"] = cfg.seed;
    report["config"] = config_to_json(cfg);

    bool ok = true;
    try {
        const MapPair pair = resolve_pair(cfg);
        switch (cfg.mode) {
            case Mode::solve: report["result"] = run_solve(cfg, pair, out, ok); break;
            case Mode::verify: report["result"] = run_verify(cfg, pair, out, ok); break;
            case Mode::stability: report["result"] = run_stability(cfg, pair, out, ok); break;
            case Mode::estimate: report["result"] = run_estimate(cfg, pair, out, ok); break;
        }
        out.exit_status = ok ? kExitOk : kExitFailure;
    } catch (const Error& e) {
        out.exit_status = is_config_error(e.kind()) ? kExitConfig : kExitFailure;
        report["result"] = nullptr;
        report["error"] = {{"category", std::string(to_string(e.kind()))}, {"message", e.what()}};
        out.tables.clear();
        out.summary.push_back("error (" + std::string(to_string(e.kind())) + "): " + e.what());
    }
    report["outcome"] = out.exit_status == kExitOk ? "pass" : "fail";
    report["exit_status"] = out.exit_status;

    if (opts.write_files) write_outputs(cfg, out);
    (void)opts.quiet;  // printing is the caller's business
    return out;
}

std::string list_registry() {
    std::ostringstream os;
    os << "spaces:\n";
    for (const auto& s : builtin_spaces()) {
        os << "  " << s.name << "  (dim " << s.dimension << ", " << to_string(s.metric) << ", "
           << to_string(s.structure) << ", " << to_string(s.relation) << ")\n";
        os << "      " << s.description << "\n";
    }
    os << "pairs:\n";
    for (const auto& p : builtin_pairs()) {
        os << "  " << p.name << "  (home space " << p.home_space << ")\n";
        os << "      " << p.description << "\n";
    }
    os << "families:\n";
    for (Family f : all_families()) {
        os << "  " << to_string(f) << "  (a < " << format_number(max_coefficient(f));
        if (uses_alpha(f)) os << ", alpha";
        if (uses_lambda(f)) os << ", lambda";
        if (uses_b(f)) os << ", b";
        if (is_norm_form(f)) os << ", normed spaces only";
        os << (uses_both_maps(f) ? ", uses T and S" : ", uses T") << ")\n";
    }
    os << "decays:\n  harmonic  geometric  zero\n";
    return os.str();
}

}  // namespace enrichfp

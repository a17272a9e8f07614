// Acceptance gate: one PASS/FAIL line per criterion, exit status 1 if any fails.
//
// Every criterion produces a JSON body alongside its verdict; AC9 reruns all
// of them with the same seeds and compares the serialized bodies byte for byte.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "enrichfp/config.hpp"
#include "enrichfp/error.hpp"
#include "enrichfp/maps.hpp"
#include "enrichfp/report.hpp"
#include "enrichfp/run.hpp"
#include "enrichfp/solver.hpp"
#include "enrichfp/spaces.hpp"
#include "enrichfp/stability.hpp"

using namespace enrichfp;

namespace {

constexpr std::uint64_t kSeed = 1729;

struct Outcome {
    bool pass = false;
    std::string detail;
    Json body;
};

struct Criterion {
    const char* id;
    const char* title;
    double budget_s;  // 0 = no runtime limit
    std::function<Outcome()> run;
};

const SpaceSpec& sp(std::string_view name) { return builtin_space(name); }
const MapPair& pr(std::string_view name) { return builtin_pair(name); }

std::string fmt(double v) { return format_number(v); }

// ---------------------------------------------------------------------- AC1
Outcome ac1() {
    SolveOptions o;
    o.lambda = 0.5;
    o.tol = 1e-10;
    const IterationTrace t = iterate_pair(sp("r2-taxicab-diag"), pr("paper-main-pair"), {2, 2}, o);
    const CheckReport h = verify_hypotheses(sp("r2-taxicab-diag"), pr("paper-main-pair"), 0.5, {0, 0}, 10'000, kSeed);
    const bool exact = t.converged && t.last() == Point{0, 0} && t.iterations() <= 3;
    Outcome out;
    out.pass = exact && h.passed();
    out.detail = "limit " + to_string(t.last()) + " after " + std::to_string(t.iterations()) +
                 " iterations; hypotheses at (0,0): " + std::string(to_string(h.status));
    out.body = {{"trace", to_json(t)}, {"hypotheses", to_json(h)}};
    return out;
}

// ---------------------------------------------------------------------- AC2
Outcome ac2() {
    const ContractionSpec spec{Family::enriched_interpolative_pair, 0.5, 0.5, 0.5, 0.0};
    const CheckReport r = check_contraction(sp("r2-taxicab-diag"), pr("paper-main-pair"), spec, 10'000, 1e-9, kSeed,
                                            {PairSampling::related, std::nullopt});
    Outcome out;
    out.pass = r.checked == 10'000 && r.violations == 0 && r.worst_margin >= 0.0;
    out.detail = std::to_string(r.checked) + " related pairs, " + std::to_string(r.violations) +
                 " violations, worst margin " + fmt(r.worst_margin);
    out.body = to_json(r);
    return out;
}

// ---------------------------------------------------------------------- AC3
// Starts are drawn among points satisfying the first hypothesis x0 R T_l x0;
// outside it the bound is not claimed (off-diagonal main-pair starts exceed it).
Point hypothesis_start(const SpaceSpec& s, const MapPair& pair, double l, std::size_t i) {
    for (std::uint64_t salt = 0x41433300;; ++salt) {
        SampleStream rng(kSeed, i, salt);
        Point x = s.relation == RelationKind::diagonal
                      ? Point(std::vector<double>(s.dimension, rng.uniform(s.domain[0].lo, s.domain[0].hi)))
                      : sample_point(s, s.domain, rng);
        if (relate(s, x, averaged_map(s, pair.t, l, x))) return x;
    }
}

Outcome ac3() {
    struct Case {
        const char* space;
        const char* pair;
        double lambda;
        double a;
    };
    const Case cases[] = {{"r2-taxicab-diag", "paper-main-pair", 0.5, 0.5},
                          {"r1-interval", "one-minus-x", b_to_lambda(1.0), 0.25}};
    Outcome out;
    out.pass = true;
    double worst = std::numeric_limits<double>::infinity();
    std::size_t traces = 0, comparisons = 0;
    Json body = Json::array();
    for (const auto& c : cases) {
        const SpaceSpec& s = sp(c.space);
        const MapPair& pair = pr(c.pair);
        SolveOptions o;
        o.lambda = c.lambda;
        o.a_hint = c.a;
        for (std::size_t i = 0; i < 20; ++i) {
            const IterationTrace t = iterate_pair(s, pair, hypothesis_start(s, pair, c.lambda, i), o);
            ++traces;
            out.pass = out.pass && t.converged;
            const double d01 = t.step_dist.empty() ? 0.0 : t.step_dist[0];
            for (std::size_t n = 0; n < t.points.size(); ++n) {
                for (std::size_t m = n + 1; m < t.points.size(); ++m) {
                    const double margin = a_priori_bound(c.a, n, d01) + 1e-9 - metric_eval(s, t.points[n], t.points[m]);
                    worst = std::min(worst, margin);
                    ++comparisons;
                    out.pass = out.pass && margin >= 0.0;
                }
            }
            body.push_back({{"pair", c.pair}, {"x0", to_json(t.points.front())}, {"trace", to_json(t)}});
        }
    }
    out.detail = std::to_string(traces) + " traces, " + std::to_string(comparisons) +
                 " pairs (n, n+r), worst slack " + fmt(worst);
    out.body = body;
    return out;
}

// ---------------------------------------------------------------------- AC4
Outcome ac4() {
    std::size_t checked = 0, counterexamples = 0;
    Json witnesses = Json::array();
    for (const auto& pair : builtin_pairs()) {
        const SpaceSpec& s = sp(pair.home_space);
        for (int k = 1; k <= 9; ++k) {
            const double l = k / 10.0;
            for (std::size_t i = 0; i < 1'000; ++i) {
                SampleStream rng(kSeed, i, 0x41433400);
                Point x = sample_point(s, s.domain, rng);
                // Every tenth sample is a common fixed point, so both sides of
                // the equivalence are exercised.
                if (i % 10 == 0) x = pair.name == "one-minus-x" ? Point{0.5} : Point::zeros(s.dimension);
                for (const SelfMap* f : {&pair.t, &pair.s}) {
                    ++checked;
                    const bool fixed = metric_eval(s, x, apply_map(s, *f, x)) < 1e-9;
                    const bool avg = metric_eval(s, x, averaged_map(s, *f, l, x)) < (1 - l) * 1e-9;
                    if (fixed != avg) {
                        ++counterexamples;
                        if (witnesses.size() < 5) witnesses.push_back({{"pair", pair.name}, {"x", to_json(x)}});
                    }
                }
            }
        }
    }
    Outcome out;
    out.pass = counterexamples == 0;
    out.detail = std::to_string(checked) + " (pair, lambda, point, map) cases, " + std::to_string(counterexamples) +
                 " counterexamples";
    out.body = {{"checked", checked}, {"counterexamples", counterexamples}, {"witnesses", witnesses}};
    return out;
}

// ---------------------------------------------------------------------- AC5
Outcome ac5() {
    Outcome out;
    out.pass = true;
    Json body = Json::array();
    std::string detail;
    for (const char* name : {"r2-euclidean", "r2-taxicab-diag", "r2-nonnormed", "r2-order-piecewise"}) {
        for (const CheckReport& r : {check_metric_axioms(sp(name), 100'000, 1e-9, kSeed),
                                     check_convexity_inequality(sp(name), 100'000, 1e-9, kSeed)}) {
            out.pass = out.pass && r.passed() && r.violations == 0;
            if (r.violations) detail += std::string(name) + " " + r.name + " has violations; ";
            Json j = to_json(r);
            j["space"] = name;
            body.push_back(j);
        }
    }
    SpaceSpec strict = sp("r2-order-piecewise");
    strict.symmetrize = false;
    const CheckReport r = check_metric_axioms(strict, 100'000, 1e-9, kSeed);
    std::size_t symmetry = 0;
    for (const auto& [kind, n] : r.breakdown) {
        if (kind == "symmetry") symmetry = n;
    }
    out.pass = out.pass && symmetry >= 1 && r.witness.has_value();
    Json j = to_json(r);
    j["space"] = "r2-order-piecewise (strict-paper-metric)";
    body.push_back(j);
    out.detail = detail + "8 suites clean; strict-paper-metric: " + std::to_string(symmetry) +
                 " symmetry violations" + (r.witness ? ", witness " + r.witness->what : "");
    out.body = body;
    return out;
}

// ---------------------------------------------------------------------- AC6
Outcome ac6() {
    double worst = 0.0;
    std::size_t checked = 0;
    for (const char* space : {"r1-interval", "r2-euclidean"}) {
        const SpaceSpec& s = sp(space);
        for (const auto& pair : builtin_pairs()) {
            if (pair.home_space != space) continue;
            for (double b : {0.0, 0.5, 1.0, 3.0}) {
                const ContractionSpec ek{Family::enriched_kannan, 0.25, 0.5, 0.5, b};
                const ContractionSpec k{Family::kannan, 0.25, 0.5, 0.5, 0.0};
                const MapPair avg = averaged_pair(s, pair, averaging_weight_for_b(b));
                for (std::size_t i = 0; i < 10'000; ++i) {
                    SampleStream rng(kSeed, i, 0x41433600);
                    const Point x = sample_point(s, s.domain, rng), y = sample_point(s, s.domain, rng);
                    const Residual re = condition_residual(s, pair, ek, x, y);
                    const Residual rk = condition_residual(s, avg, k, x, y);
                    for (auto [u, v] : {std::pair{re.lhs, (b + 1) * rk.lhs}, std::pair{re.rhs, (b + 1) * rk.rhs}}) {
                        worst = std::max(worst, std::abs(u - v) / std::max({std::abs(u), std::abs(v), 1.0}));
                    }
                    ++checked;
                }
            }
        }
    }
    Outcome out;
    out.pass = worst <= 1e-12;
    out.detail = std::to_string(checked) + " (pair, b, x, y) cases, worst relative error " + fmt(worst);
    out.body = {{"checked", checked}, {"worst_relative_error", number_json(worst)}};
    return out;
}

// ---------------------------------------------------------------------- AC7
Outcome ac7() {
    const SpaceSpec& s = sp("r2-taxicab-diag");
    const MapPair& pair = pr("paper-main-pair");
    const Point p{0, 0};
    const PerturbedSequence seq = make_asymptotic_sequence(s, pair, 0.5, p, harmonic_decay(), 200, kSeed);
    const CheckReport wp = well_posedness_probe(s, pair, 0.5, p, seq, 1e-2);
    std::size_t shadow_ok = 0;
    Json shadow = Json::array();
    for (std::size_t i = 0; i < 10; ++i) {
        SampleStream rng(kSeed, i, 0x41433700);
        const Point z = sample_point(s, s.domain, rng);
        const CheckReport r = limit_shadowing_probe(s, pair, 0.5, seq, z, 1e-2);
        shadow_ok += r.passed() ? 1 : 0;
        Json j = to_json(r);
        j["z"] = to_json(z);
        shadow.push_back(j);
    }
    const std::vector<double> eps{1e-1, 1e-2, 1e-3};
    const UlamHyersReport uh = ulam_hyers_probe(s, pair, 0.5, p, eps, 10'000, kSeed);

    Outcome out;
    out.pass = wp.passed() && shadow_ok == 10 && uh.stable && std::isfinite(uh.estimated_c) && uh.estimated_c <= 4.0;
    out.detail = "well-posedness " + std::string(to_string(wp.status)) + ", shadowing " + std::to_string(shadow_ok) +
                 "/10, Ulam-Hyers c = " + fmt(uh.estimated_c) + (uh.ratio_exceeds_one ? " (> 1)" : "");
    out.body = {{"sequence", to_json(seq)}, {"well_posedness", to_json(wp)}, {"limit_shadowing", shadow},
                {"ulam_hyers", to_json(uh)}};
    return out;
}

// ---------------------------------------------------------------------- AC8
Outcome ac8() {
    const ContractionSpec kannan{Family::kannan, 0.45, 0.5, 0.5, 0.0};
    const CheckReport k = check_contraction(sp("r1-interval"), pr("one-minus-x"), kannan, 10'000, 1e-9, kSeed,
                                            {PairSampling::uniform, Box{{0.49, 0.51}}});
    const bool near_half = k.witness && std::abs(k.witness->points[0][0] - 0.5) <= 0.01 &&
                           std::abs(k.witness->points[1][0] - 0.5) <= 0.01;

    const RunConfig cfg = parse_config(R"({
      "space": "r2-euclidean", "pair": "negation", "mode": "verify",
      "contraction": {"family": "banach", "a": 0},
      "verify": {"n_samples": 2000}, "seed": 1729, "output": "unused"})");
    const RunResult r = run(cfg, {true, false});
    const Json& rep = r.report["result"]["contractions"][0];
    const bool witnessed = rep.contains("witness") && !rep["witness"].is_null();

    Outcome out;
    out.pass = k.violations >= 1 && near_half && r.exit_status == kExitFailure && witnessed;
    out.detail = "kannan a=0.45: " + std::to_string(k.violations) + " violations" +
                 (near_half ? " near x=y=0.5" : "") + "; verify a=0 exit " + std::to_string(r.exit_status) +
                 (witnessed ? " with witness" : " without witness");
    out.body = {{"kannan", to_json(k)}, {"verify_run", r.report}};
    return out;
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {"AC1", "worked example reproduction", 1.0, ac1},
        {"AC2", "condition verification", 5.0, ac2},
        {"AC3", "bound domination", 0.0, ac3},
        {"AC4", "fixed-set invariance of the averaged map", 0.0, ac4},
        {"AC5", "axiom suites", 30.0, ac5},
        {"AC6", "b <-> lambda transform consistency", 0.0, ac6},
        {"AC7", "stability suite", 10.0, ac7},
        {"AC8", "negative controls", 0.0, ac8},
    };

    bool all = true;
    std::vector<std::string> first_bodies;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const Error& e) {
            o.pass = false;
            o.detail = std::string("error (") + std::string(to_string(e.kind())) + "): " + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.budget_s == 0.0 || secs < c.budget_s;
        const bool ok = o.pass && in_time;
        all = all && ok;
        first_bodies.push_back(dump_document(o.body));
        std::printf("%s %s  %s: %s [%.2f s%s]\n", c.id, ok ? "PASS" : "FAIL", c.title, o.detail.c_str(), secs,
                    in_time ? "" : ", over budget");
        std::fflush(stdout);
    }

    // AC9: rerun everything and compare serialized bodies.
    std::size_t identical = 0;
    std::string differing;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string again;
        try {
            again = dump_document(criteria[i].run().body);
        } catch (const Error&) {
            again = "<error>";
        }
        if (again == first_bodies[i] && !again.empty()) {
            ++identical;
        } else {
            differing += std::string(differing.empty() ? "" : ", ") + criteria[i].id;
        }
    }
    const bool ac9 = identical == criteria.size();
    all = all && ac9;
    std::printf("AC9 %s  reproducibility: %zu/%zu criteria gave byte-identical report bodies on rerun%s\n",
                ac9 ? "PASS" : "FAIL", identical, criteria.size(),
                differing.empty() ? "" : (" (differ: " + differing + ")").c_str());
    return all ? 0 : 1;
}

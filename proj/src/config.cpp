#include "enrichfp/config.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "enrichfp/error.hpp"
#include "enrichfp/report.hpp"

namespace enrichfp {

namespace {

constexpr std::array<std::pair<Mode, std::string_view>, 4> kModeNames{{
    {Mode::solve, "solve"},
    {Mode::verify, "verify"},
    {Mode::stability, "stability"},
    {Mode::estimate, "estimate"},
}};

[[noreturn]] void fail(ErrorKind kind, const std::string& path, const std::string& what) {
    throw Error(kind, path.empty() ? what : path + ": " + what);
}

std::string join(const std::string& path, std::string_view key) {
    return path.empty() ? std::string(key) : path + "." + std::string(key);
}

/// Reader for one JSON object that rejects keys outside `allowed`.
class Section {
public:
    Section(const Json& j, std::string path, std::initializer_list<std::string_view> allowed)
        : j_(j), path_(std::move(path)) {
        if (!j.is_object()) fail(ErrorKind::configuration, path_, "expected an object");
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (std::find(allowed.begin(), allowed.end(), it.key()) == allowed.end()) {
                std::string known;
                for (auto k : allowed) known += (known.empty() ? "" : ", ") + std::string(k);
                fail(ErrorKind::configuration, path_,
                     "unknown key '" + it.key() + "' (allowed: " + known + ")");
            }
        }
    }

    const Json* get(std::string_view key) const {
        auto it = j_.find(std::string(key));
        if (it == j_.end() || it->is_null()) return nullptr;
        return &*it;
    }
    bool has(std::string_view key) const { return get(key) != nullptr; }
    std::string path(std::string_view key) const { return join(path_, key); }

    double number(std::string_view key, double def) const {
        const Json* v = get(key);
        return v ? as_number(*v, path(key)) : def;
    }
    std::optional<double> optional_number(std::string_view key) const {
        const Json* v = get(key);
        if (!v) return std::nullopt;
        return as_number(*v, path(key));
    }
    std::size_t count(std::string_view key, std::size_t def) const {
        const Json* v = get(key);
        if (!v) return def;
        if (v->is_number_unsigned()) return v->get<std::size_t>();
        if (v->is_number_integer()) fail(ErrorKind::validation, path(key), "must be nonnegative");
        fail(ErrorKind::configuration, path(key), "expected an integer");
    }
    bool boolean(std::string_view key, bool def) const {
        const Json* v = get(key);
        if (!v) return def;
        if (!v->is_boolean()) fail(ErrorKind::configuration, path(key), "expected true or false");
        return v->get<bool>();
    }
    std::string text(std::string_view key, std::string def) const {
        const Json* v = get(key);
        if (!v) return def;
        if (!v->is_string()) fail(ErrorKind::configuration, path(key), "expected a string");
        return v->get<std::string>();
    }

    static double as_number(const Json& v, const std::string& path) {
        if (v.is_number()) return v.get<double>();
        // The report writer spells non-finite values as strings.
        if (v.is_string()) {
            const auto& s = v.get_ref<const std::string&>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
            if (s == "-inf") return -std::numeric_limits<double>::infinity();
            if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
        }
        fail(ErrorKind::configuration, path, "expected a number");
    }

private:
    const Json& j_;
    std::string path_;
};

template <class E, class Parse>
E parse_enum(const Section& sec, std::string_view key, E def, Parse parse, std::string_view legal) {
    const Json* v = sec.get(key);
    if (!v) return def;
    if (!v->is_string()) fail(ErrorKind::configuration, sec.path(key), "expected a string");
    auto e = parse(v->get<std::string>());
    if (!e) {
        fail(ErrorKind::validation, sec.path(key),
             "'" + v->get<std::string>() + "' is not one of " + std::string(legal));
    }
    return *e;
}

Point parse_point(const Json& v, const std::string& path, std::size_t dim) {
    if (!v.is_array()) fail(ErrorKind::configuration, path, "expected a list of numbers");
    std::vector<double> c;
    for (std::size_t i = 0; i < v.size(); ++i) {
        c.push_back(Section::as_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    if (c.size() != dim) {
        fail(ErrorKind::validation, path,
             "has " + std::to_string(c.size()) + " coordinates, the space has dimension " +
                 std::to_string(dim));
    }
    Point p(std::move(c));
    if (!p.is_finite()) fail(ErrorKind::validation, path, "coordinates must be finite");
    return p;
}

std::optional<Point> optional_point(const Section& sec, std::string_view key, std::size_t dim) {
    const Json* v = sec.get(key);
    if (!v) return std::nullopt;
    return parse_point(*v, sec.path(key), dim);
}

/// Re-throws a library validation error with the config path in front.
template <class F>
void with_path(const std::string& path, F&& f) {
    try {
        f();
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::validation) fail(ErrorKind::validation, "", path + "." + e.what());
        throw;
    }
}

std::string positive_real(const std::string& path, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) fail(ErrorKind::validation, path, "must be a positive real");
    return path;
}

// ---------------------------------------------------------------- space

SpaceSpec parse_space(const Json& j) {
    if (j.is_string()) return builtin_space(j.get<std::string>());
    Section sec(j, "space",
                {"name", "base", "dimension", "metric", "structure", "relation", "domain",
                 "strict-paper-metric"});
    const std::string name = sec.text("name", "");
    if (name.empty()) fail(ErrorKind::configuration, "space", "'name' is required");

    const auto known = builtin_space_names();
    const bool name_is_builtin = std::find(known.begin(), known.end(), name) != known.end();
    SpaceSpec s;
    bool have_base = false;
    if (sec.has("base")) {
        s = builtin_space(sec.text("base", ""));
        have_base = true;
    } else if (name_is_builtin) {
        s = builtin_space(name);
        have_base = true;
    }
    if (!have_base) {
        for (auto key : {"dimension", "metric", "structure", "relation", "domain"}) {
            if (!sec.has(key)) {
                fail(ErrorKind::configuration, "space",
                     "a custom space needs '" + std::string(key) + "' (or a builtin 'base')");
            }
        }
    }
    s.name = name;
    s.description = name_is_builtin ? builtin_space(name).description : "user-defined space";
    s.dimension = sec.count("dimension", s.dimension);
    if (s.dimension < 1) fail(ErrorKind::validation, "space.dimension", "must be at least 1");
    s.metric = parse_enum(sec, "metric", s.metric, parse_metric_kind,
                          "euclidean, taxicab, chebyshev, nonnormed, order-piecewise");
    s.structure = parse_enum(sec, "structure", s.structure, parse_structure_kind, "affine, nonnormed");
    s.relation = parse_enum(sec, "relation", s.relation, parse_relation_kind,
                            "universal, diagonal, componentwise-le");
    s.symmetrize = !sec.boolean("strict-paper-metric", !s.symmetrize);

    if (const Json* d = sec.get("domain")) {
        if (!d->is_array()) fail(ErrorKind::configuration, "space.domain", "expected a list of [lo, hi] pairs");
        Box box;
        for (std::size_t i = 0; i < d->size(); ++i) {
            const std::string p = "space.domain[" + std::to_string(i) + "]";
            const Json& iv = (*d)[i];
            if (!iv.is_array() || iv.size() != 2) fail(ErrorKind::configuration, p, "expected [lo, hi]");
            box.push_back({Section::as_number(iv[0], p), Section::as_number(iv[1], p)});
        }
        s.domain = std::move(box);
    }
    if (s.domain.size() != s.dimension) {
        fail(ErrorKind::validation, "space.domain",
             "has " + std::to_string(s.domain.size()) + " intervals for dimension " +
                 std::to_string(s.dimension));
    }
    for (std::size_t i = 0; i < s.domain.size(); ++i) {
        const auto& iv = s.domain[i];
        if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || iv.lo > iv.hi) {
            fail(ErrorKind::validation, "space.domain[" + std::to_string(i) + "]",
                 "must be a finite interval with lo <= hi");
        }
    }
    if (s.structure == StructureKind::nonnormed && (s.dimension != 2 || s.domain[0].lo <= 0.0)) {
        fail(ErrorKind::validation, "space",
             "the nonnormed structure needs dimension 2 and a domain with x1 > 0");
    }
    if (s.metric == MetricKind::nonnormed && s.dimension != 2) {
        fail(ErrorKind::validation, "space.metric", "nonnormed needs dimension 2");
    }
    return s;
}

Json space_json(const SpaceSpec& s) {
    Json j;
    j["name"] = s.name;
    j["dimension"] = s.dimension;
    j["metric"] = std::string(to_string(s.metric));
    j["structure"] = std::string(to_string(s.structure));
    j["relation"] = std::string(to_string(s.relation));
    j["domain"] = to_json(s.domain);
    j["strict-paper-metric"] = !s.symmetrize;
    return j;
}

// ----------------------------------------------------------------- pair

std::vector<std::string> string_list(const Json& j, const std::string& path) {
    if (!j.is_array()) fail(ErrorKind::configuration, path, "expected a list of expressions");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_string()) {
            fail(ErrorKind::configuration, path + "[" + std::to_string(i) + "]", "expected a string");
        }
        out.push_back(j[i].get<std::string>());
    }
    return out;
}

MapText parse_map_text(const Json& j, const std::string& path) {
    MapText m;
    if (j.is_array()) {
        m.components = string_list(j, path);
        return m;
    }
    Section sec(j, path, {"cases", "otherwise"});
    if (!sec.has("otherwise")) fail(ErrorKind::configuration, path, "'otherwise' is required");
    m.components = string_list(*sec.get("otherwise"), sec.path("otherwise"));
    if (const Json* cases = sec.get("cases")) {
        if (!cases->is_array()) fail(ErrorKind::configuration, sec.path("cases"), "expected a list");
        for (std::size_t i = 0; i < cases->size(); ++i) {
            const std::string cp = sec.path("cases") + "[" + std::to_string(i) + "]";
            Section cs((*cases)[i], cp, {"guard", "op", "components"});
            MapText::Case c;
            c.guard = cs.text("guard", "");
            if (c.guard.empty()) fail(ErrorKind::configuration, cp, "'guard' is required");
            c.op = cs.text("op", "!=");
            if (!parse_guard_op(c.op)) {
                fail(ErrorKind::validation, cs.path("op"), "'" + c.op + "' is not one of ==, !=, <, <=, >, >=");
            }
            if (!cs.has("components")) fail(ErrorKind::configuration, cp, "'components' is required");
            c.components = string_list(*cs.get("components"), cs.path("components"));
            m.cases.push_back(std::move(c));
        }
    }
    return m;
}

Json map_text_json(const MapText& m) {
    if (m.cases.empty()) return Json(m.components);
    Json j;
    Json cases = Json::array();
    for (const auto& c : m.cases) {
        Json cj;
        cj["guard"] = c.guard;
        cj["op"] = c.op;
        cj["components"] = c.components;
        cases.push_back(cj);
    }
    j["cases"] = cases;
    j["otherwise"] = m.components;
    return j;
}

PairConfig parse_pair(const Json& j, std::size_t dim) {
    PairConfig p;
    if (j.is_string()) {
        p.name = j.get<std::string>();
        (void)builtin_pair(p.name);
        return p;
    }
    Section sec(j, "pair", {"name", "t", "s"});
    p.builtin = false;
    p.name = sec.text("name", "custom-pair");
    if (!sec.has("t")) fail(ErrorKind::configuration, "pair", "'t' is required");
    p.t = parse_map_text(*sec.get("t"), "pair.t");
    // S defaults to T, which covers the single-map families.
    p.s = sec.has("s") ? parse_map_text(*sec.get("s"), "pair.s") : p.t;
    (void)compile_pair(p.name, p.t, p.s, dim);
    return p;
}

// ---------------------------------------------------------- contractions

// Estimate mode searches for a, so a given (or default) a is not checked there.
ContractionSpec parse_contraction(const Json& j, const std::string& path, bool check_a) {
    if (j.is_string()) {
        auto f = parse_family(j.get<std::string>());
        if (!f) fail(ErrorKind::validation, path, "unknown family '" + j.get<std::string>() + "'");
        ContractionSpec c;
        c.family = *f;
        with_path(path, [&] { validate(c, check_a); });
        return c;
    }
    Section sec(j, path, {"family", "a", "alpha", "lambda", "b"});
    ContractionSpec c;
    if (!sec.has("family")) fail(ErrorKind::configuration, path, "'family' is required");
    std::string legal;
    for (Family f : all_families()) legal += (legal.empty() ? "" : ", ") + std::string(to_string(f));
    c.family = parse_enum(sec, "family", c.family, parse_family, legal);
    c.a = sec.number("a", c.a);
    c.alpha = sec.number("alpha", c.alpha);
    c.lambda = sec.number("lambda", c.lambda);
    c.b = sec.number("b", c.b);
    with_path(path, [&] { validate(c, check_a); });
    return c;
}

Json contraction_json(const ContractionSpec& c) {
    Json j;
    j["family"] = std::string(to_string(c.family));
    j["a"] = number_json(c.a);
    j["alpha"] = number_json(c.alpha);
    j["lambda"] = number_json(c.lambda);
    j["b"] = number_json(c.b);
    return j;
}

// -------------------------------------------------------------- sections

SolveSection parse_solve(const Json& j, std::size_t dim) {
    Section sec(j, "solve", {"lambda", "tol", "max_iters", "a_hint", "x0", "starts"});
    SolveSection s;
    s.options.lambda = sec.number("lambda", s.options.lambda);
    s.options.tol = sec.number("tol", s.options.tol);
    s.options.max_iters = sec.count("max_iters", s.options.max_iters);
    s.options.a_hint = sec.optional_number("a_hint");
    with_path("solve", [&] { validate(s.options); });
    s.x0 = optional_point(sec, "x0", dim);
    if (const Json* st = sec.get("starts")) {
        if (!st->is_array()) fail(ErrorKind::configuration, "solve.starts", "expected a list of points");
        for (std::size_t i = 0; i < st->size(); ++i) {
            s.starts.push_back(parse_point((*st)[i], "solve.starts[" + std::to_string(i) + "]", dim));
        }
    }
    return s;
}

VerifySection parse_verify(const Json& j, std::size_t dim) {
    Section sec(j, "verify", {"n_samples", "tol", "pairs", "x0", "lambda", "space_axioms"});
    VerifySection v;
    v.n_samples = sec.count("n_samples", v.n_samples);
    if (v.n_samples < 1) fail(ErrorKind::validation, "verify.n_samples", "must be at least 1");
    v.tol = sec.number("tol", v.tol);
    if (!(v.tol >= 0.0) || !std::isfinite(v.tol)) fail(ErrorKind::validation, "verify.tol", "must be a nonnegative real");
    v.pairs = parse_enum(sec, "pairs", v.pairs, parse_pair_sampling, "mixed, uniform, related, unrelated");
    v.x0 = optional_point(sec, "x0", dim);
    v.lambda = sec.optional_number("lambda");
    if (v.lambda && !(*v.lambda >= 0.0 && *v.lambda < 1.0)) {
        fail(ErrorKind::validation, "verify.lambda", "λ must lie in [0,1)");
    }
    v.space_axioms = sec.boolean("space_axioms", v.space_axioms);
    return v;
}

StabilitySection parse_stability(const Json& j, std::size_t dim) {
    Section sec(j, "stability",
                {"lambda", "p", "decay", "n_terms", "tol", "epsilons", "n_samples", "shadow_points",
                 "direction", "a", "alpha"});
    StabilitySection s;
    s.lambda = sec.number("lambda", s.lambda);
    if (!(s.lambda >= 0.0 && s.lambda < 1.0)) fail(ErrorKind::validation, "stability.lambda", "λ must lie in [0,1)");
    s.p = optional_point(sec, "p", dim);
    s.decay = parse_enum(sec, "decay", s.decay, parse_decay_kind, "harmonic, geometric, zero");
    s.n_terms = sec.count("n_terms", s.n_terms);
    if (s.n_terms < 1) fail(ErrorKind::validation, "stability.n_terms", "must be at least 1");
    s.tol = sec.number("tol", s.tol);
    positive_real("stability.tol", s.tol);
    if (const Json* e = sec.get("epsilons")) {
        if (!e->is_array() || e->empty()) {
            fail(ErrorKind::configuration, "stability.epsilons", "expected a non-empty list of numbers");
        }
        s.epsilons.clear();
        for (std::size_t i = 0; i < e->size(); ++i) {
            const std::string p = "stability.epsilons[" + std::to_string(i) + "]";
            s.epsilons.push_back(Section::as_number((*e)[i], p));
            positive_real(p, s.epsilons.back());
        }
    }
    s.n_samples = sec.count("n_samples", s.n_samples);
    if (s.n_samples < 1) fail(ErrorKind::validation, "stability.n_samples", "must be at least 1");
    s.shadow_points = sec.count("shadow_points", s.shadow_points);
    s.direction = optional_point(sec, "direction", dim);
    s.a = sec.number("a", s.a);
    if (!(s.a >= 0.0 && s.a < 1.0)) fail(ErrorKind::validation, "stability.a", "must lie in [0,1)");
    s.alpha = sec.number("alpha", s.alpha);
    if (!(s.alpha > 0.0 && s.alpha < 1.0)) fail(ErrorKind::validation, "stability.alpha", "must lie in (0,1)");
    return s;
}

EstimateSection parse_estimate(const Json& j) {
    Section sec(j, "estimate", {"n_samples", "pairs"});
    EstimateSection e;
    e.n_samples = sec.count("n_samples", e.n_samples);
    if (e.n_samples < 1) fail(ErrorKind::validation, "estimate.n_samples", "must be at least 1");
    e.pairs = parse_enum(sec, "pairs", e.pairs, parse_pair_sampling, "mixed, uniform, related, unrelated");
    return e;
}

Json optional_json(const std::optional<Point>& p) { return p ? to_json(*p) : Json(nullptr); }

}  // namespace

std::string_view to_string(Mode m) noexcept {
    for (const auto& [mode, name] : kModeNames) {
        if (mode == m) return name;
    }
    return "unknown";
}

std::optional<Mode> parse_mode(std::string_view s) noexcept {
    for (const auto& [mode, name] : kModeNames) {
        if (name == s) return mode;
    }
    return std::nullopt;
}

RunConfig parse_config(std::string_view text, std::optional<Mode> mode_override) {
    Json doc;
    try {
        doc = Json::parse(text.begin(), text.end());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::parse, std::string("config is not valid JSON: ") + e.what());
    }
    Section top(doc, "",
                {"space", "pair", "mode", "contraction", "contractions", "solve", "verify",
                 "stability", "estimate", "seed", "output"});

    RunConfig cfg;
    std::optional<Mode> mode = mode_override;
    if (top.has("mode")) {
        const auto m = parse_enum(top, "mode", Mode::solve, parse_mode, "solve, verify, stability, estimate");
        if (mode && *mode != m) {
            fail(ErrorKind::configuration, "mode",
                 "config says '" + std::string(to_string(m)) + "' but the command asked for '" +
                     std::string(to_string(*mode)) + "'");
        }
        mode = m;
    }
    if (!mode) fail(ErrorKind::configuration, "mode", "is required");
    cfg.mode = *mode;

    if (!top.has("space")) fail(ErrorKind::configuration, "space", "is required");
    if (!top.has("pair")) fail(ErrorKind::configuration, "pair", "is required");
    cfg.space = parse_space(*top.get("space"));
    cfg.pair = parse_pair(*top.get("pair"), cfg.space.dimension);

    const bool check_a = cfg.mode != Mode::estimate;
    if (top.has("contraction") && top.has("contractions")) {
        fail(ErrorKind::configuration, "", "give either 'contraction' or 'contractions', not both");
    }
    if (const Json* c = top.get("contraction")) {
        cfg.contractions.push_back(parse_contraction(*c, "contraction", check_a));
    } else if (const Json* cs = top.get("contractions")) {
        if (!cs->is_array()) fail(ErrorKind::configuration, "contractions", "expected a list");
        for (std::size_t i = 0; i < cs->size(); ++i) {
            cfg.contractions.push_back(parse_contraction((*cs)[i], "contractions[" + std::to_string(i) + "]", check_a));
        }
    }

    const std::size_t dim = cfg.space.dimension;
    if (const Json* s = top.get("solve")) cfg.solve = parse_solve(*s, dim);
    if (const Json* v = top.get("verify")) cfg.verify = parse_verify(*v, dim);
    if (const Json* s = top.get("stability")) cfg.stability = parse_stability(*s, dim);
    if (const Json* e = top.get("estimate")) cfg.estimate = parse_estimate(*e);

    if (const Json* s = top.get("seed")) {
        if (!s->is_number_integer()) fail(ErrorKind::configuration, "seed", "expected an integer");
        if (!s->is_number_unsigned()) fail(ErrorKind::validation, "seed", "must be nonnegative");
        cfg.seed = s->get<std::uint64_t>();
    }
    cfg.output = top.text("output", cfg.output);
    if (cfg.output.empty()) fail(ErrorKind::validation, "output", "must not be empty");

    switch (cfg.mode) {
        case Mode::solve:
            if (!top.has("solve") || !cfg.solve.x0) {
                fail(ErrorKind::configuration, "solve", "solve mode needs a 'solve' section with 'x0'");
            }
            break;
        case Mode::verify:
        case Mode::estimate:
            if (cfg.contractions.empty()) {
                fail(ErrorKind::configuration, "contraction",
                     std::string(to_string(cfg.mode)) + " mode needs at least one contraction");
            }
            break;
        case Mode::stability:
            if (!cfg.stability.p) {
                fail(ErrorKind::configuration, "stability", "stability mode needs 'p' (the common fixed point)");
            }
            break;
    }
    return cfg;
}

Json config_to_json(const RunConfig& cfg) {
    Json j;
    j["mode"] = std::string(to_string(cfg.mode));
    j["space"] = space_json(cfg.space);
    if (cfg.pair.builtin) {
        j["pair"] = cfg.pair.name;
    } else {
        Json p;
        p["name"] = cfg.pair.name;
        p["t"] = map_text_json(cfg.pair.t);
        p["s"] = map_text_json(cfg.pair.s);
        j["pair"] = p;
    }
    Json cs = Json::array();
    for (const auto& c : cfg.contractions) cs.push_back(contraction_json(c));
    j["contractions"] = cs;

    Json solve;
    solve["lambda"] = number_json(cfg.solve.options.lambda);
    solve["tol"] = number_json(cfg.solve.options.tol);
    solve["max_iters"] = cfg.solve.options.max_iters;
    solve["a_hint"] = cfg.solve.options.a_hint ? number_json(*cfg.solve.options.a_hint) : Json(nullptr);
    solve["x0"] = optional_json(cfg.solve.x0);
    Json starts = Json::array();
    for (const auto& p : cfg.solve.starts) starts.push_back(to_json(p));
    solve["starts"] = starts;
    j["solve"] = solve;

    Json verify;
    verify["n_samples"] = cfg.verify.n_samples;
    verify["tol"] = number_json(cfg.verify.tol);
    verify["pairs"] = std::string(to_string(cfg.verify.pairs));
    verify["x0"] = optional_json(cfg.verify.x0);
    verify["lambda"] = cfg.verify.lambda ? number_json(*cfg.verify.lambda) : Json(nullptr);
    verify["space_axioms"] = cfg.verify.space_axioms;
    j["verify"] = verify;

    const auto& st = cfg.stability;
    Json stab;
    stab["lambda"] = number_json(st.lambda);
    stab["p"] = optional_json(st.p);
    stab["decay"] = std::string(to_string(st.decay));
    stab["n_terms"] = st.n_terms;
    stab["tol"] = number_json(st.tol);
    Json eps = Json::array();
    for (double e : st.epsilons) eps.push_back(number_json(e));
    stab["epsilons"] = eps;
    stab["n_samples"] = st.n_samples;
    stab["shadow_points"] = st.shadow_points;
    stab["direction"] = optional_json(st.direction);
    stab["a"] = number_json(st.a);
    stab["alpha"] = number_json(st.alpha);
    j["stability"] = stab;

    Json est;
    est["n_samples"] = cfg.estimate.n_samples;
    est["pairs"] = std::string(to_string(cfg.estimate.pairs));
    j["estimate"] = est;

    j["seed"] = cfg.seed;
    j["output"] = cfg.output;
    return j;
}

MapPair resolve_pair(const RunConfig& cfg) {
    MapPair pair = cfg.pair.builtin
                       ? builtin_pair(cfg.pair.name)
                       : compile_pair(cfg.pair.name, cfg.pair.t, cfg.pair.s, cfg.space.dimension);
    // A builtin written for another dimension would only fail at the first
    // evaluation; catch it here as a configuration problem instead.
    std::vector<double> mid;
    for (const auto& iv : cfg.space.domain) mid.push_back(0.5 * (iv.lo + iv.hi));
    const Point probe(std::move(mid));
    for (const SelfMap* f : {&pair.t, &pair.s}) {
        try {
            (void)apply_map(cfg.space, *f, probe);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::input) {
                throw Error(ErrorKind::configuration, "pair '" + pair.name + "' does not fit space '" +
                                                          cfg.space.name + "': " + e.what());
            }
        }
    }
    return pair;
}

}  // namespace enrichfp

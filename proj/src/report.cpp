#include "enrichfp/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace enrichfp {

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Json number_json(double v) {
    if (!std::isfinite(v)) return format_number(v);
    return v;
}

namespace {

void dump(const Json& j, std::string& out, int indent) {
    const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
    const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
    switch (j.type()) {
        case Json::value_t::object: {
            if (j.empty()) {
                out += "{}";
                return;
            }
            out += "{\n";
            bool first = true;
            for (auto it = j.begin(); it != j.end(); ++it) {
                if (!first) out += ",\n";
                first = false;
                out += inner + Json(it.key()).dump() + ": ";
                dump(it.value(), out, indent + 1);
            }
            out += "\n" + pad + "}";
            return;
        }
        case Json::value_t::array: {
            if (j.empty()) {
                out += "[]";
                return;
            }
            // Short numeric arrays (points, intervals) stay on one line.
            bool scalars = j.size() <= 8;
            for (const auto& e : j) scalars = scalars && e.is_number();
            if (scalars) {
                out += "[";
                for (std::size_t i = 0; i < j.size(); ++i) {
                    if (i) out += ", ";
                    dump(j[i], out, indent + 1);
                }
                out += "]";
                return;
            }
            out += "[\n";
            for (std::size_t i = 0; i < j.size(); ++i) {
                if (i) out += ",\n";
                out += inner;
                dump(j[i], out, indent + 1);
            }
            out += "\n" + pad + "]";
            return;
        }
        case Json::value_t::number_float:
            out += format_number(j.get<double>());
            return;
        default:
            out += j.dump();
            return;
    }
}

std::string csv_number(double v) { return format_number(v); }

}  // namespace

std::string dump_document(const Json& doc) {
    std::string out;
    dump(doc, out, 0);
    out += "\n";
    return out;
}

Json to_json(const Point& p) {
    Json a = Json::array();
    for (double c : p.coords()) a.push_back(number_json(c));
    return a;
}

Json to_json(const Box& box) {
    Json a = Json::array();
    for (const auto& iv : box) a.push_back(Json::array({number_json(iv.lo), number_json(iv.hi)}));
    return a;
}

Json to_json(const CheckReport& r) {
    Json j;
    j["name"] = r.name;
    j["status"] = std::string(to_string(r.status));
    j["checked"] = r.checked;
    j["violations"] = r.violations;
    j["skipped"] = r.skipped;
    j["worst_margin"] = number_json(r.worst_margin);
    j["tolerance"] = number_json(r.tolerance);
    if (r.witness) {
        Json w;
        w["what"] = r.witness->what;
        Json pts = Json::array();
        for (const auto& p : r.witness->points) pts.push_back(to_json(p));
        w["points"] = pts;
        if (r.witness->lambda) w["lambda"] = number_json(*r.witness->lambda);
        w["lhs"] = number_json(r.witness->lhs);
        w["rhs"] = number_json(r.witness->rhs);
        j["witness"] = w;
    } else {
        j["witness"] = nullptr;
    }
    Json b = Json::object();
    for (const auto& [k, n] : r.breakdown) b[k] = n;
    j["violations_by_kind"] = b;
    j["seed"] = r.seed;
    if (!r.note.empty()) j["note"] = r.note;
    return j;
}

Json to_json(const IterationTrace& t) {
    Json j;
    j["status"] = std::string(to_string(t.status));
    j["converged"] = t.converged;
    j["iterations"] = t.iterations();
    j["limit"] = to_json(t.last());
    j["residuals_at_last"] = Json::array({number_json(t.residuals_at_last.first),
                                          number_json(t.residuals_at_last.second)});
    j["relation_ok"] = t.relation_ok;
    j["first_step"] = t.step_dist.empty() ? Json(nullptr) : number_json(t.step_dist.front());
    j["last_step"] = t.step_dist.empty() ? Json(nullptr) : number_json(t.step_dist.back());
    if (!t.error.empty()) j["error"] = t.error;
    return j;
}

Json to_json(const UniquenessReport& r) {
    Json j;
    j["status"] = std::string(to_string(r.status));
    j["uniqueness_consistent"] = r.uniqueness_consistent;
    j["max_pairwise_distance"] = number_json(r.max_pairwise_distance);
    Json limits = Json::array();
    for (const auto& p : r.limits) limits.push_back(to_json(p));
    j["limits"] = limits;
    j["failed_starts"] = r.failed_starts;
    return j;
}

Json to_json(const UlamHyersReport& r) {
    Json j;
    j["stable"] = r.stable;
    j["estimated_c"] = number_json(r.estimated_c);
    j["ratio_exceeds_one"] = r.ratio_exceeds_one;
    Json entries = Json::array();
    for (const auto& e : r.entries) {
        Json ej;
        ej["epsilon"] = number_json(e.epsilon);
        ej["sampled"] = e.sampled;
        ej["accepted"] = e.accepted;
        ej["vacuous"] = e.vacuous;
        ej["worst_ratio"] = number_json(e.worst_ratio);
        ej["witness"] = e.witness ? to_json(*e.witness) : Json(nullptr);
        entries.push_back(ej);
    }
    j["entries"] = entries;
    j["seed"] = r.seed;
    return j;
}

Json to_json(const PerturbedSequence& s) {
    Json j;
    j["n_terms"] = s.points.size();
    j["monotone_from"] = s.monotone_from;
    if (!s.points.empty()) {
        j["first"] = to_json(s.points.front());
        j["last"] = to_json(s.points.back());
        j["final_t_residual"] = number_json(s.t_residuals.back());
        j["final_s_residual"] = number_json(s.s_residuals.back());
    }
    return j;
}

std::string trace_csv(const SpaceSpec& space, const IterationTrace& t) {
    std::ostringstream os;
    os << "n";
    for (std::size_t k = 0; k < space.dimension; ++k) os << ",x" << k + 1;
    os << ",step_dist,bound,relation_flag\n";
    for (std::size_t n = 0; n < t.points.size(); ++n) {
        os << n;
        for (double c : t.points[n].coords()) os << ',' << csv_number(c);
        os << ',';
        if (n < t.step_dist.size()) os << csv_number(t.step_dist[n]);
        os << ',';
        if (n < t.bound.size()) os << csv_number(t.bound[n]);
        os << ',';
        if (n + 1 < t.points.size()) os << (relate(space, t.points[n], t.points[n + 1]) ? 1 : 0);
        os << '\n';
    }
    return os.str();
}

std::string sequence_csv(const SpaceSpec& space, const PerturbedSequence& s, const Point& p) {
    std::ostringstream os;
    os << "n";
    for (std::size_t k = 0; k < space.dimension; ++k) os << ",x" << k + 1;
    os << ",dist_to_p,t_residual,s_residual\n";
    for (std::size_t n = 0; n < s.points.size(); ++n) {
        os << n;
        for (double c : s.points[n].coords()) os << ',' << csv_number(c);
        os << ',' << csv_number(metric_eval(space, s.points[n], p)) << ','
           << csv_number(s.t_residuals[n]) << ',' << csv_number(s.s_residuals[n]) << '\n';
    }
    return os.str();
}

}  // namespace enrichfp

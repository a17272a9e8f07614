#pragma once

#include <string>

#include "enrichfp/check_report.hpp"
#include "enrichfp/json.hpp"
#include "enrichfp/solver.hpp"
#include "enrichfp/stability.hpp"

namespace enrichfp {

/// Seventeen significant digits ("%.17g"); non-finite values as inf, -inf, nan.
std::string format_number(double v);

/// A JSON number, or the format_number string for non-finite values.
Json number_json(double v);

/// Pretty-prints with two-space indentation and every floating-point value in
/// format_number form, so equal inputs give byte-identical documents.
std::string dump_document(const Json& doc);

Json to_json(const Point& p);
Json to_json(const Box& box);
Json to_json(const CheckReport& r);
Json to_json(const IterationTrace& t);
Json to_json(const UniquenessReport& r);
Json to_json(const UlamHyersReport& r);
/// Summary only; per-term tables go through sequence_csv.
Json to_json(const PerturbedSequence& s);

/// Header `n,x1..xd,step_dist,bound,relation_flag`. step_dist and
/// relation_flag (x_n R x_{n+1}) are blank on the last row; bound is blank
/// without an a_hint.
std::string trace_csv(const SpaceSpec& space, const IterationTrace& t);

/// Header `n,x1..xd,dist_to_p,t_residual,s_residual`.
std::string sequence_csv(const SpaceSpec& space, const PerturbedSequence& s, const Point& p);

}  // namespace enrichfp

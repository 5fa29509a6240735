#pragma once

// JSON views of the public types. Serialization is deterministic: keys
// are emitted sorted and serialize(parse(s)) reproduces s byte for byte
// for every report produced here.

#include <string>
#include <vector>

#include "scd/diagnostics.hpp"
#include "scd/generalized_equation.hpp"
#include "scd/newton.hpp"
#include "scd/polyhedral.hpp"
#include "scd/subspace.hpp"

namespace scd::io {

// {"n": int, "basis": [2n*n numbers, row-major]}
std::string to_json(const Subspace& l);
Subspace subspace_from_json(const std::string& text);

// {"A": [[...]], "b": [...], "E": [[...]]?, "e": [...]?} with unit rows.
std::string to_json(const PolyhedralSet& set);
PolyhedralSet set_from_json(const std::string& text, int n);

// {"n": int, "smooth": {"kind": "affine", "M": [[...]], "q": [...]} |
//  {"kind": "named", "name": str}, "C": {...}, "y_target": [...]}
std::string to_json(const GeneralizedEquation& ge);
GeneralizedEquation problem_from_json(const std::string& text);

// {"status": str, "iterations": [{"x", "xhat", "yhat", "c_norm",
//  "residual"}], "rate_ratios": [...], "realized_eta": [...],
//  "final_x": [...], "final_residual": num}. The selected subspaces stay
// on the in-memory trace only.
std::string to_json(const NewtonTrace& trace);
NewtonTrace trace_from_json(const std::string& text);

std::string to_json(const RegularityReport& report);
RegularityReport report_from_json(const std::string& text);

// Face listing for a cone in R^n along with the bundle subspaces the
// faces induce. Generators and span bases serialize as column lists.
struct FacesReport {
  int n = 0;
  std::vector<Face> faces;
  std::vector<Subspace> subspaces;
};

std::string to_json(const FacesReport& report);
FacesReport faces_report_from_json(const std::string& text);

}  // namespace scd::io

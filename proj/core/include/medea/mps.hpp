#pragma once

// Fixed-format MPS export and import.
//
// Rows are named R000000.., columns C000000.., the objective row COST. The
// semantic names live in a two-column CSV sidecar (generated_name,
// semantic_name). Numbers are written in shortest round-trip form, so reading
// a written file reproduces every coefficient bit for bit.

#include <filesystem>
#include <iosfwd>
#include <stdexcept>
#include <string>

#include "medea/lp_problem.hpp"

namespace medea {

class MpsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string mps_row_name(int row);
std::string mps_column_name(int col);

/// Throws MpsError naming the offending entry when a value cannot be encoded
/// (NaN, infinite coefficient, or magnitude >= 1e30).
void write_mps(const LpProblem& problem, std::ostream& out);
std::string to_mps(const LpProblem& problem);

void write_name_map(const LpProblem& problem, std::ostream& out);

/// Parses fixed or free MPS as written above (names without blanks). Throws
/// MpsError with the line number on malformed input.
LpProblem read_mps(std::istream& in);
LpProblem parse_mps(const std::string& text);

/// Writes `<stem>.mps` and `<stem>.names.csv`; returns the MPS path.
std::filesystem::path write_interchange(const LpProblem& problem, const std::filesystem::path& stem);

}  // namespace medea

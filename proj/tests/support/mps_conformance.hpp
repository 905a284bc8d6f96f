#pragma once

#include <string>
#include <vector>

namespace medea::testing {

/// Independent check of an MPS text against the fixed-format layout:
/// section order NAME, ROWS, COLUMNS, [RHS], [RANGES], [BOUNDS], ENDATA;
/// data lines indented; code field in columns 2-3, name fields in columns
/// 5-12 and 15-22 (at most 8 characters, no blanks), a numeric field from
/// column 25; one objective row; all references declared; columns
/// contiguous; bound types valid with the value present exactly when
/// required. A number may extend past column 36 only as the last field of
/// its line. Returns one message per violation.
std::vector<std::string> check_mps_conformance(const std::string& text);

}  // namespace medea::testing

#include "mps_conformance.hpp"

#include <cstdlib>
#include <map>
#include <set>
#include <sstream>

namespace medea::testing {

namespace {

std::string field(const std::string& line, std::size_t first_col, std::size_t last_col) {
  if (line.size() < first_col) return {};
  return line.substr(first_col - 1, last_col - first_col + 1);
}

std::string rtrim(std::string s) {
  while (!s.empty() && s.back() == ' ') s.pop_back();
  return s;
}

bool valid_number(const std::string& s) {
  if (s.empty()) return false;
  char* end = nullptr;
  std::strtod(s.c_str(), &end);
  return end == s.c_str() + s.size();
}

bool valid_name(const std::string& s) { return !s.empty() && s.size() <= 8 && s.find(' ') == std::string::npos; }

}  // namespace

std::vector<std::string> check_mps_conformance(const std::string& text) {
  std::vector<std::string> bad;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  auto err = [&](const std::string& msg) { bad.push_back("line " + std::to_string(lineno) + ": " + msg); };

  const std::vector<std::string> order{"NAME", "ROWS", "COLUMNS", "RHS", "RANGES", "BOUNDS", "ENDATA"};
  const std::set<std::string> optional{"RHS", "RANGES", "BOUNDS"};
  std::size_t next_section = 0;
  std::string section;
  std::map<std::string, char> rows;
  int objective_rows = 0;
  std::set<std::string> columns;
  std::string current_column;
  bool ended = false;

  // Name in 5-12, name in 15-22, number from 25; blanks elsewhere.
  auto data_fields = [&](const std::string& l, bool need_number, std::string& n1, std::string& n2, std::string& num) {
    if (l.size() >= 4 && l[3] != ' ') err("column 4 must be blank");
    n1 = rtrim(field(l, 5, 12));
    if (l.size() > 12 && field(l, 13, 14) != std::string(std::min<std::size_t>(2, l.size() - 12), ' ')) {
      err("columns 13-14 must be blank");
    }
    n2 = rtrim(field(l, 15, 22));
    if (l.size() > 22 && field(l, 23, 24) != std::string(std::min<std::size_t>(2, l.size() - 22), ' ')) {
      err("columns 23-24 must be blank");
    }
    num = l.size() >= 25 ? l.substr(24) : std::string();
    if (need_number) {
      if (!valid_number(num)) err("numeric field '" + num + "' is not a number starting at column 25");
    } else if (!rtrim(num).empty()) {
      err("unexpected numeric field");
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') err("carriage return");
    if (line.empty()) {
      err("empty line");
      continue;
    }
    if (ended) {
      err("content after ENDATA");
      continue;
    }
    if (line[0] != ' ') {
      const std::string head = line.substr(0, line.find(' '));
      std::size_t k = next_section;
      while (k < order.size() && order[k] != head && optional.count(order[k])) ++k;
      if (k >= order.size() || order[k] != head) {
        err("unexpected section '" + head + "'");
        continue;
      }
      next_section = k + 1;
      section = head;
      if (head == "NAME") {
        if (line.size() > 4 && rtrim(field(line, 15, line.size())).empty()) err("NAME without a model name");
      } else if (line != head) {
        err("section header '" + head + "' carries extra text");
      }
      if (head == "ENDATA") ended = true;
      continue;
    }
    if (section == "ROWS") {
      const std::string type = rtrim(field(line, 2, 3));
      const std::string name = rtrim(field(line, 5, 12));
      if (line.size() > 12 && !rtrim(line.substr(12)).empty()) err("row name exceeds column 12");
      if (type.size() != 1 || std::string("NELG").find(type[0]) == std::string::npos) err("bad row type '" + type + "'");
      if (!valid_name(name)) err("bad row name '" + name + "'");
      if (!rows.emplace(name, type.empty() ? '?' : type[0]).second) err("duplicate row '" + name + "'");
      if (type == "N") ++objective_rows;
    } else if (section == "COLUMNS") {
      if (!rtrim(field(line, 2, 3)).empty()) err("code field must be blank in COLUMNS");
      std::string col, row, num;
      data_fields(line, true, col, row, num);
      if (!valid_name(col)) err("bad column name '" + col + "'");
      if (!rows.count(row)) err("undeclared row '" + row + "'");
      if (col != current_column) {
        if (columns.count(col)) err("column '" + col + "' is not contiguous");
        columns.insert(col);
        current_column = col;
      }
    } else if (section == "RHS") {
      if (!rtrim(field(line, 2, 3)).empty()) err("code field must be blank in RHS");
      std::string set, row, num;
      data_fields(line, true, set, row, num);
      if (!valid_name(set)) err("bad RHS set name");
      if (!rows.count(row)) err("undeclared row '" + row + "'");
    } else if (section == "RANGES") {
      std::string set, row, num;
      data_fields(line, true, set, row, num);
      auto it = rows.find(row);
      if (it == rows.end()) err("undeclared row '" + row + "'");
      else if (it->second == 'N') err("range on objective row");
    } else if (section == "BOUNDS") {
      const std::string type = rtrim(field(line, 2, 3));
      static const std::set<std::string> with_value{"UP", "LO", "FX", "LI", "UI"};
      static const std::set<std::string> without_value{"FR", "MI", "PL", "BV"};
      const bool needs = with_value.count(type) > 0;
      if (!needs && !without_value.count(type)) err("bad bound type '" + type + "'");
      std::string set, col, num;
      data_fields(line, needs, set, col, num);
      if (!valid_name(set)) err("bad bound set name");
      if (!columns.count(col)) err("bound on undeclared column '" + col + "'");
    } else {
      err("data line outside a data section");
    }
  }
  if (!ended) bad.push_back("missing ENDATA");
  if (objective_rows != 1) bad.push_back("expected exactly one N row, found " + std::to_string(objective_rows));
  if (next_section < 3) bad.push_back("missing ROWS or COLUMNS section");
  return bad;
}

}  // namespace medea::testing

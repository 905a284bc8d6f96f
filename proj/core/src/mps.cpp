#include "medea/mps.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

namespace medea {

namespace {

constexpr double kMaxMagnitude = 1e30;
constexpr const char* kObjectiveRow = "COST";

std::string format_number(double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void check_encodable(double v, const std::string& what) {
  if (!std::isfinite(v) || std::abs(v) >= kMaxMagnitude) {
    throw MpsError("MPS: cannot encode " + what + " = " + format_number(v));
  }
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

// Field 1 at col 2, name at col 5, name at col 15, number at col 25.
std::string data_line(std::string_view code, const std::string& name1, const std::string& name2,
                      const std::string& number) {
  std::string line = " ";
  line += pad(std::string(code), 2);
  line += ' ';
  line += pad(name1, 8);
  line += "  ";
  if (name2.empty() && number.empty()) return line;
  line += pad(name2, 8);
  line += "  ";
  line += number;
  return line;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + '"';
}

}  // namespace

std::string mps_row_name(int row) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "R%06d", row);
  return buf;
}

std::string mps_column_name(int col) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "C%06d", col);
  return buf;
}

void write_mps(const LpProblem& p, std::ostream& out) {
  p.check_well_formed();
  if (p.num_rows() > 999999 || p.num_cols() > 999999) {
    throw MpsError("MPS: problem exceeds the 8-character name space");
  }
  std::vector<std::vector<std::pair<int, double>>> by_col(static_cast<std::size_t>(p.num_cols()));
  for (const auto& e : p.entries) {
    check_encodable(e.value, "A[" + mps_row_name(e.row) + "," + mps_column_name(e.col) + "]");
    by_col[static_cast<std::size_t>(e.col)].emplace_back(e.row, e.value);
  }
  for (auto& c : by_col) {
    std::stable_sort(c.begin(), c.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  std::string name = p.name.empty() ? "MEDEA" : p.name;
  for (char& c : name) {
    if (c == ' ') c = '_';
  }
  out << "NAME          " << name << '\n';
  out << "ROWS\n";
  out << " N  " << kObjectiveRow << '\n';
  for (int i = 0; i < p.num_rows(); ++i) {
    out << ' ' << static_cast<char>(p.senses[static_cast<std::size_t>(i)]) << "  " << mps_row_name(i) << '\n';
  }

  out << "COLUMNS\n";
  for (int j = 0; j < p.num_cols(); ++j) {
    const auto cj = static_cast<std::size_t>(j);
    const std::string cname = mps_column_name(j);
    const double c = p.objective[cj];
    check_encodable(c, "c[" + cname + "]");
    if (c != 0.0 || by_col[cj].empty()) {
      out << data_line("", cname, kObjectiveRow, format_number(c)) << '\n';
    }
    for (const auto& [row, v] : by_col[cj]) {
      out << data_line("", cname, mps_row_name(row), format_number(v)) << '\n';
    }
  }

  out << "RHS\n";
  if (p.objective_offset != 0.0) {
    check_encodable(p.objective_offset, "objective offset");
    out << data_line("", "RHS", kObjectiveRow, format_number(-p.objective_offset)) << '\n';
  }
  for (int i = 0; i < p.num_rows(); ++i) {
    const double b = p.rhs[static_cast<std::size_t>(i)];
    if (b == 0.0) continue;
    check_encodable(b, "b[" + mps_row_name(i) + "]");
    out << data_line("", "RHS", mps_row_name(i), format_number(b)) << '\n';
  }

  out << "RANGES\n";

  out << "BOUNDS\n";
  for (int j = 0; j < p.num_cols(); ++j) {
    const auto cj = static_cast<std::size_t>(j);
    const double lo = p.lower[cj];
    const double hi = p.upper[cj];
    const std::string cname = mps_column_name(j);
    const bool lo_inf = lo == -kInf;
    const bool hi_inf = hi == kInf;
    if (!lo_inf) check_encodable(lo, "lower[" + cname + "]");
    if (!hi_inf) check_encodable(hi, "upper[" + cname + "]");
    if (lo_inf && hi_inf) {
      out << data_line("FR", "BND", cname, "") << '\n';
    } else if (lo == hi) {
      out << data_line("FX", "BND", cname, format_number(lo)) << '\n';
    } else {
      if (lo_inf) {
        out << data_line("MI", "BND", cname, "") << '\n';
      } else if (lo != 0.0) {
        out << data_line("LO", "BND", cname, format_number(lo)) << '\n';
      }
      if (!hi_inf) out << data_line("UP", "BND", cname, format_number(hi)) << '\n';
    }
  }
  out << "ENDATA\n";
}

std::string to_mps(const LpProblem& problem) {
  std::ostringstream os;
  write_mps(problem, os);
  return os.str();
}

void write_name_map(const LpProblem& p, std::ostream& out) {
  out << "generated_name,semantic_name\n";
  const bool named = p.index.num_rows() == p.num_rows() && p.index.num_columns() == p.num_cols();
  for (int i = 0; i < p.num_rows(); ++i) {
    out << mps_row_name(i) << ',' << csv_field(named ? p.index.row_name(i) : mps_row_name(i)) << '\n';
  }
  for (int j = 0; j < p.num_cols(); ++j) {
    out << mps_column_name(j) << ',' << csv_field(named ? p.index.column_name(j) : mps_column_name(j)) << '\n';
  }
}

namespace {

enum class Section { None, Name, Rows, Columns, Rhs, Ranges, Bounds, End };

double parse_number(const std::string& tok, int line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && tok[0] == '+') ++first;
  auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc() || res.ptr != last) {
    throw MpsError("MPS line " + std::to_string(line) + ": bad number '" + tok + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream is(s);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

}  // namespace

LpProblem read_mps(std::istream& in) {
  LpProblem p;
  Section sec = Section::None;
  std::string objective_name;
  std::map<std::string, int> rows;
  std::map<std::string, int> cols;
  std::string line;
  int lineno = 0;
  std::vector<bool> lower_set;

  auto err = [&](const std::string& msg) { return MpsError("MPS line " + std::to_string(lineno) + ": " + msg); };
  auto row_of = [&](const std::string& name) -> int {
    auto it = rows.find(name);
    if (it == rows.end()) throw err("unknown row '" + name + "'");
    return it->second;
  };
  auto col_of = [&](const std::string& name) -> int {
    auto it = cols.find(name);
    if (it == cols.end()) throw err("unknown column '" + name + "'");
    return it->second;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '*') continue;
    auto tok = split(line);
    if (tok.empty()) continue;
    if (line[0] != ' ' && line[0] != '\t') {
      const std::string& head = tok[0];
      if (head == "NAME") {
        sec = Section::Name;
        p.name = tok.size() > 1 ? tok[1] : "";
      } else if (head == "ROWS") {
        sec = Section::Rows;
      } else if (head == "COLUMNS") {
        sec = Section::Columns;
      } else if (head == "RHS") {
        sec = Section::Rhs;
      } else if (head == "RANGES") {
        sec = Section::Ranges;
      } else if (head == "BOUNDS") {
        sec = Section::Bounds;
      } else if (head == "ENDATA") {
        sec = Section::End;
        break;
      } else {
        throw err("unknown section '" + head + "'");
      }
      continue;
    }
    switch (sec) {
      case Section::Rows: {
        if (tok.size() != 2) throw err("expected '<type> <name>'");
        const std::string& type = tok[0];
        if (type == "N") {
          if (!objective_name.empty()) throw err("second objective row");
          objective_name = tok[1];
          continue;
        }
        RowSense s;
        if (type == "L") s = RowSense::LessEqual;
        else if (type == "G") s = RowSense::GreaterEqual;
        else if (type == "E") s = RowSense::Equal;
        else throw err("bad row type '" + type + "'");
        if (!rows.emplace(tok[1], p.num_rows()).second) throw err("duplicate row '" + tok[1] + "'");
        p.add_row(s, 0.0);
        break;
      }
      case Section::Columns: {
        if (tok.size() != 3 && tok.size() != 5) throw err("expected '<col> <row> <value> [<row> <value>]'");
        auto it = cols.find(tok[0]);
        int j;
        if (it == cols.end()) {
          j = p.add_column(0.0);
          cols.emplace(tok[0], j);
          lower_set.push_back(false);
        } else {
          j = it->second;
          if (j != p.num_cols() - 1) throw err("column '" + tok[0] + "' is not contiguous");
        }
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_number(tok[k + 1], lineno);
          if (tok[k] == objective_name) {
            p.objective[static_cast<std::size_t>(j)] = v;
          } else {
            p.add_entry(row_of(tok[k]), j, v);
          }
        }
        break;
      }
      case Section::Rhs: {
        if (tok.size() != 3 && tok.size() != 5) throw err("expected '<set> <row> <value>'");
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_number(tok[k + 1], lineno);
          if (tok[k] == objective_name) {
            p.objective_offset = -v;
          } else {
            p.rhs[static_cast<std::size_t>(row_of(tok[k]))] = v;
          }
        }
        break;
      }
      case Section::Ranges:
        throw err("RANGES entries are not supported");
      case Section::Bounds: {
        if (tok.size() < 3) throw err("expected '<type> <set> <col> [value]'");
        const std::string& type = tok[0];
        const auto j = static_cast<std::size_t>(col_of(tok[2]));
        const bool has_value = tok.size() >= 4;
        const double v = has_value ? parse_number(tok[3], lineno) : 0.0;
        if (type == "FR") {
          p.lower[j] = -kInf;
          p.upper[j] = kInf;
        } else if (type == "MI") {
          p.lower[j] = -kInf;
        } else if (type == "PL") {
          p.upper[j] = kInf;
        } else {
          if (!has_value) throw err("bound '" + type + "' needs a value");
          if (type == "FX") {
            p.lower[j] = v;
            p.upper[j] = v;
          } else if (type == "LO") {
            p.lower[j] = v;
            lower_set[j] = true;
          } else if (type == "UP") {
            // Classic rule: a negative upper bound with no explicit lower bound
            // makes the lower bound -inf.
            if (v < 0.0 && !lower_set[j] && p.lower[j] == 0.0) p.lower[j] = -kInf;
            p.upper[j] = v;
          } else {
            throw err("unsupported bound type '" + type + "'");
          }
        }
        break;
      }
      case Section::Name:
      case Section::None:
      case Section::End:
        throw err("data outside a section");
    }
  }
  if (sec != Section::End) throw MpsError("MPS: missing ENDATA");
  if (objective_name.empty()) throw MpsError("MPS: no objective row");
  p.canonicalize();
  p.check_well_formed();
  return p;
}

LpProblem parse_mps(const std::string& text) {
  std::istringstream is(text);
  return read_mps(is);
}

std::filesystem::path write_interchange(const LpProblem& problem, const std::filesystem::path& stem) {
  auto mps_path = stem;
  mps_path += ".mps";
  auto map_path = stem;
  map_path += ".names.csv";
  if (stem.has_parent_path()) std::filesystem::create_directories(stem.parent_path());
  {
    std::ofstream out(mps_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + mps_path.string());
    write_mps(problem, out);
  }
  {
    std::ofstream out(map_path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + map_path.string());
    write_name_map(problem, out);
  }
  return mps_path;
}

}  // namespace medea

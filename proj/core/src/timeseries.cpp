#include "medea/timeseries.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace medea {

namespace {

int digits(std::string_view s, std::size_t pos, std::size_t n) {
  if (pos + n > s.size()) throw std::invalid_argument("truncated timestamp");
  int v = 0;
  for (std::size_t k = pos; k < pos + n; ++k) {
    if (s[k] < '0' || s[k] > '9') throw std::invalid_argument("bad digit in timestamp");
    v = v * 10 + (s[k] - '0');
  }
  return v;
}

void expect(std::string_view s, std::size_t pos, char c) {
  if (pos >= s.size() || s[pos] != c) throw std::invalid_argument("malformed timestamp");
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (quoted) {
      if (c == '"' && k + 1 < line.size() && line[k + 1] == '"') {
        cur += '"';
        ++k;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  for (auto& f : out) {
    const auto b = f.find_first_not_of(" \t");
    const auto e = f.find_last_not_of(" \t");
    f = b == std::string::npos ? std::string() : f.substr(b, e - b + 1);
  }
  return out;
}

}  // namespace

TimePoint parse_timestamp(std::string_view s) {
  using namespace std::chrono;
  try {
    const int y = digits(s, 0, 4);
    expect(s, 4, '-');
    const int mo = digits(s, 5, 2);
    expect(s, 7, '-');
    const int d = digits(s, 8, 2);
    int hh = 0, mm = 0, ss = 0;
    std::size_t pos = 10;
    if (pos < s.size() && (s[pos] == 'T' || s[pos] == ' ')) {
      hh = digits(s, pos + 1, 2);
      expect(s, pos + 3, ':');
      mm = digits(s, pos + 4, 2);
      pos += 6;
      if (pos < s.size() && s[pos] == ':') {
        ss = digits(s, pos + 1, 2);
        pos += 3;
      }
    }
    if (pos < s.size() && s[pos] == 'Z') ++pos;
    else if (s.substr(pos) == "+00:00") pos += 6;
    if (pos != s.size()) throw std::invalid_argument("trailing characters");
    const year_month_day ymd{year{y}, month{static_cast<unsigned>(mo)}, day{static_cast<unsigned>(d)}};
    if (!ymd.ok() || hh > 23 || mm > 59 || ss > 59) throw std::invalid_argument("out-of-range field");
    return sys_days{ymd} + hours{hh} + minutes{mm} + seconds{ss};
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument("bad timestamp '" + std::string(s) + "': " + e.what());
  }
}

std::string format_timestamp(TimePoint t) {
  using namespace std::chrono;
  const auto day_point = floor<days>(t);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{t - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

std::string_view to_string(Frequency f) {
  switch (f) {
    case Frequency::Hourly: return "hourly";
    case Frequency::Weekly: return "weekly";
    case Frequency::Monthly: return "monthly";
  }
  return "?";
}

std::optional<Unit> parse_unit(std::string_view s) {
  if (s == "GW") return Unit::GW;
  if (s == "MW") return Unit::MW;
  if (s == "ratio") return Unit::Ratio;
  if (s == "currency/MWh" || s == "EUR/MWh") return Unit::CurrencyPerMWh;
  if (s == "currency/t" || s == "EUR/t") return Unit::CurrencyPerTonne;
  if (s == "GWh") return Unit::GWh;
  if (s == "MWh") return Unit::MWh;
  return std::nullopt;
}

std::string_view to_string(Unit u) {
  switch (u) {
    case Unit::GW: return "GW";
    case Unit::MW: return "MW";
    case Unit::Ratio: return "ratio";
    case Unit::CurrencyPerMWh: return "currency/MWh";
    case Unit::CurrencyPerTonne: return "currency/t";
    case Unit::GWh: return "GWh";
    case Unit::MWh: return "MWh";
  }
  return "?";
}

const TimeSeriesColumn& TimeSeriesFile::column(const std::string& name) const {
  auto it = columns.find(name);
  if (it == columns.end()) {
    throw TimeSeriesError(path.string() + ": no column '" + name + "'");
  }
  return it->second;
}

TimeSeriesFile read_time_series(std::istream& in, const std::filesystem::path& label) {
  TimeSeriesFile f;
  f.path = label;
  const std::string where = label.empty() ? std::string("<stream>") : label.string();
  auto fail = [&](int line, const std::string& msg) {
    return TimeSeriesError(where + ":" + std::to_string(line) + ": " + msg);
  };

  std::string line;
  int lineno = 0;
  auto next = [&]() -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };

  if (!next()) throw fail(lineno, "empty file");
  const auto units = split_csv(line);
  if (units.empty() || units[0] != "unit") throw fail(lineno, "first line must declare units ('unit,...')");
  if (!next()) throw fail(lineno, "missing header line");
  const auto header = split_csv(line);
  if (header.empty() || header[0] != "timestamp") throw fail(lineno, "header must start with 'timestamp'");
  if (header.size() != units.size()) throw fail(lineno, "header and unit line differ in width");

  std::vector<double> factor;
  for (std::size_t k = 1; k < header.size(); ++k) {
    auto u = parse_unit(units[k]);
    if (!u) throw fail(1, "unknown unit '" + units[k] + "' for column '" + header[k] + "'");
    Unit stored = *u;
    double mult = 1.0;
    if (*u == Unit::MW) {
      stored = Unit::GW;
      mult = 1e-3;
    } else if (*u == Unit::MWh) {
      stored = Unit::GWh;
      mult = 1e-3;
    }
    if (header[k].empty()) throw fail(2, "empty column name");
    if (!f.columns.emplace(header[k], TimeSeriesColumn{stored, {}}).second) {
      throw fail(2, "duplicate column '" + header[k] + "'");
    }
    f.order.push_back(header[k]);
    factor.push_back(mult);
  }

  while (next()) {
    const auto cells = split_csv(line);
    if (cells.size() != header.size()) throw fail(lineno, "expected " + std::to_string(header.size()) + " fields");
    try {
      f.timestamps.push_back(parse_timestamp(cells[0]));
    } catch (const std::invalid_argument& e) {
      throw fail(lineno, e.what());
    }
    for (std::size_t k = 1; k < cells.size(); ++k) {
      double v = 0.0;
      const auto& c = cells[k];
      auto res = std::from_chars(c.data(), c.data() + c.size(), v);
      if (c.empty() || res.ec != std::errc() || res.ptr != c.data() + c.size() || !std::isfinite(v)) {
        throw fail(lineno, "bad value '" + c + "' in column '" + header[k] + "'");
      }
      f.columns[header[k]].values.push_back(v * factor[k - 1]);
    }
  }

  using namespace std::chrono;
  const auto& ts = f.timestamps;
  for (std::size_t k = 1; k < ts.size(); ++k) {
    if (!(ts[k] > ts[k - 1])) throw fail(static_cast<int>(k) + 3, "timestamps must be strictly increasing");
  }
  if (ts.size() >= 2) {
    const auto step = ts[1] - ts[0];
    bool monthly = true;
    for (std::size_t k = 0; k < ts.size() && monthly; ++k) {
      const auto dp = floor<days>(ts[k]);
      const year_month_day ymd{dp};
      if (ymd.day() != day{1} || ts[k] != dp) monthly = false;
      if (k > 0) {
        const year_month_day prev{floor<days>(ts[k - 1])};
        const year_month next = year_month{prev.year(), prev.month()} + months{1};
        if (ymd.year() != next.year() || ymd.month() != next.month()) monthly = false;
      }
    }
    if (step == hours{1}) {
      f.frequency = Frequency::Hourly;
    } else if (step == days{7}) {
      f.frequency = Frequency::Weekly;
    } else if (monthly) {
      f.frequency = Frequency::Monthly;
    } else {
      throw fail(4, "cannot infer frequency (hourly, weekly or monthly)");
    }
    if (f.frequency != Frequency::Monthly) {
      for (std::size_t k = 1; k < ts.size(); ++k) {
        if (ts[k] - ts[k - 1] != step) {
          throw fail(static_cast<int>(k) + 3, "gap or irregular step at " + format_timestamp(ts[k]));
        }
      }
    }
  }
  return f;
}

TimeSeriesFile load_time_series(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw TimeSeriesError("cannot open time series '" + path.string() + "'");
  return read_time_series(in, path);
}

void write_time_series(std::ostream& out, const TimeSeriesFile& file) {
  out << "unit";
  for (const auto& name : file.order) out << ',' << to_string(file.column(name).unit);
  out << "\ntimestamp";
  for (const auto& name : file.order) out << ',' << name;
  out << '\n';
  char buf[32];
  for (std::size_t r = 0; r < file.timestamps.size(); ++r) {
    out << format_timestamp(file.timestamps[r]);
    for (const auto& name : file.order) {
      auto res = std::to_chars(buf, buf + sizeof buf, file.column(name).values.at(r));
      out << ',' << std::string_view(buf, static_cast<std::size_t>(res.ptr - buf));
    }
    out << '\n';
  }
}

std::vector<TimePoint> hourly_stamps(TimePoint start, int hours) {
  std::vector<TimePoint> out;
  out.reserve(static_cast<std::size_t>(std::max(hours, 0)));
  for (int t = 0; t < hours; ++t) out.push_back(start + std::chrono::hours{t});
  return out;
}

}  // namespace medea

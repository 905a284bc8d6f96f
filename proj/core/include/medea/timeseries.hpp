#pragma once

// Time-series CSV files.
//
// Line 1 declares units ("unit,GW,ratio,..."), line 2 is the header
// ("timestamp,<column>,..."), then one row per ISO-8601 UTC timestamp.
// Values are converted to model units on load: MW -> GW, MWh -> GWh.

#include <chrono>
#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace medea {

using TimePoint = std::chrono::sys_seconds;

/// Accepts "YYYY-MM-DDTHH:MM[:SS][Z]" and "YYYY-MM-DD"; throws std::invalid_argument.
TimePoint parse_timestamp(std::string_view text);
std::string format_timestamp(TimePoint t);

enum class Frequency { Hourly, Weekly, Monthly };
std::string_view to_string(Frequency f);

enum class Unit { GW, MW, Ratio, CurrencyPerMWh, CurrencyPerTonne, GWh, MWh };
std::optional<Unit> parse_unit(std::string_view s);
std::string_view to_string(Unit u);

class TimeSeriesError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TimeSeriesColumn {
  Unit unit = Unit::GW;  // unit after conversion (GW, GWh, ratio, prices)
  std::vector<double> values;
};

struct TimeSeriesFile {
  std::filesystem::path path;
  std::vector<TimePoint> timestamps;
  Frequency frequency = Frequency::Hourly;
  std::vector<std::string> order;  // column order as in the file
  std::map<std::string, TimeSeriesColumn> columns;

  const TimeSeriesColumn& column(const std::string& name) const;
  std::size_t size() const { return timestamps.size(); }
};

/// Parses and validates: strictly increasing timestamps, no gaps at the
/// inferred frequency, known units, finite values.
TimeSeriesFile read_time_series(std::istream& in, const std::filesystem::path& label = {});
TimeSeriesFile load_time_series(const std::filesystem::path& path);

/// Writes columns in `order` with their current units.
void write_time_series(std::ostream& out, const TimeSeriesFile& file);

std::vector<TimePoint> hourly_stamps(TimePoint start, int hours);

}  // namespace medea

#pragma once

// Numerical preprocessing of raw input series.

#include <stdexcept>
#include <string>
#include <vector>

#include "medea/timeseries.hpp"

namespace medea {

class ProfileScalingError : public std::runtime_error {
 public:
  ProfileScalingError(const std::string& msg, double peak, std::size_t index)
      : std::runtime_error(msg), peak(peak), index(index) {}
  double peak;
  std::size_t index;
};

/// Scales a capacity-factor series so that capacity * sum(series) * 1 h equals
/// the target energy (same energy unit as capacity * h). Throws
/// ProfileScalingError if a scaled value would exceed 1, and
/// std::invalid_argument on a non-positive capacity, an out-of-range input
/// or an all-zero series with a positive target.
std::vector<double> scale_profile(const std::vector<double>& series, double target_energy, double capacity);

struct InflowEstimate {
  std::vector<double> hourly;         // GW
  std::vector<double> weekly_energy;  // GWh, after clamping
  std::vector<std::string> warnings;  // one per clamped week
};

/// Reservoir inflows from weekly fill levels (GWh, one observation per week
/// boundary, so N+1 levels for N weeks) and hourly generation and pumping (GW,
/// N*168 hours). Weekly energy = fill change + generation / eta_out
/// - eta_in * pumping, clamped at zero. Weekly mean powers are interpolated
/// to hours with a monotone cubic through the week midpoints, then rescaled so
/// each week's hours sum to its energy. Throws std::invalid_argument when the
/// spans disagree.
InflowEstimate estimate_inflows(const std::vector<double>& weekly_fill, const std::vector<double>& generation,
                                const std::vector<double>& pumping, double eta_in, double eta_out);

/// Hourly values from anchors at given hour offsets, by monotone cubic
/// interpolation; held constant outside the anchors. One anchor yields a
/// constant series.
std::vector<double> resample_to_hours(const std::vector<double>& anchor_hours, const std::vector<double>& values,
                                      int hours);

/// Monthly values anchored at the start of each month (first at
/// `first_month`), evaluated on `hours` hourly steps starting at `start`.
std::vector<double> resample_monthly_prices(const std::vector<double>& monthly, TimePoint first_month,
                                            TimePoint start, int hours);

}  // namespace medea

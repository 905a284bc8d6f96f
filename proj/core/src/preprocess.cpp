#include "medea/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "medea/interpolation.hpp"

namespace medea {

std::vector<double> scale_profile(const std::vector<double>& series, double target_energy, double capacity) {
  if (!(capacity > 0.0) || !std::isfinite(capacity)) throw std::invalid_argument("scale_profile: capacity must be positive");
  if (!(target_energy >= 0.0) || !std::isfinite(target_energy)) {
    throw std::invalid_argument("scale_profile: target must be nonnegative");
  }
  double sum = 0.0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    const double v = series[t];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("scale_profile: value " + std::to_string(v) + " at index " + std::to_string(t) +
                                  " outside [0, 1]");
    }
    sum += v;
  }
  if (sum == 0.0) {
    if (target_energy == 0.0) return series;
    throw std::invalid_argument("scale_profile: all-zero profile cannot reach a positive target");
  }
  const double k = target_energy / (capacity * sum);
  std::vector<double> out(series.size());
  double peak = 0.0;
  std::size_t peak_at = 0;
  for (std::size_t t = 0; t < series.size(); ++t) {
    out[t] = series[t] * k;
    if (out[t] > peak) {
      peak = out[t];
      peak_at = t;
    }
  }
  if (peak > 1.0) {
    throw ProfileScalingError("scale_profile: scaled peak " + std::to_string(peak) + " at index " +
                                  std::to_string(peak_at) + " exceeds 1 (factor " + std::to_string(k) + ")",
                              peak, peak_at);
  }
  return out;
}

InflowEstimate estimate_inflows(const std::vector<double>& fill, const std::vector<double>& generation,
                                const std::vector<double>& pumping, double eta_in, double eta_out) {
  constexpr std::size_t kWeek = 168;
  if (fill.size() < 2) throw std::invalid_argument("estimate_inflows: need at least two fill levels");
  const std::size_t weeks = fill.size() - 1;
  if (generation.size() != weeks * kWeek || pumping.size() != weeks * kWeek) {
    throw std::invalid_argument("estimate_inflows: span mismatch: " + std::to_string(fill.size()) +
                                " fill levels need " + std::to_string(weeks * kWeek) +
                                " hours of generation and pumping, got " + std::to_string(generation.size()) +
                                " and " + std::to_string(pumping.size()));
  }
  if (!(eta_out > 0.0) || !(eta_in >= 0.0)) throw std::invalid_argument("estimate_inflows: bad efficiencies");

  InflowEstimate est;
  est.weekly_energy.resize(weeks);
  for (std::size_t w = 0; w < weeks; ++w) {
    double gen = 0.0, pump = 0.0;
    for (std::size_t h = w * kWeek; h < (w + 1) * kWeek; ++h) {
      gen += generation[h];
      pump += pumping[h];
    }
    double e = fill[w + 1] - fill[w] + gen / eta_out - eta_in * pump;
    if (e < 0.0) {
      est.warnings.push_back("week " + std::to_string(w + 1) + ": negative inflow estimate " + std::to_string(e) +
                             " GWh clamped to 0");
      e = 0.0;
    }
    est.weekly_energy[w] = e;
  }

  std::vector<double> mid(weeks), power(weeks);
  for (std::size_t w = 0; w < weeks; ++w) {
    mid[w] = static_cast<double>(w * kWeek) + kWeek / 2.0;
    power[w] = est.weekly_energy[w] / static_cast<double>(kWeek);
  }
  const Pchip shape(mid, power);
  est.hourly.resize(weeks * kWeek);
  for (std::size_t w = 0; w < weeks; ++w) {
    double sum = 0.0;
    for (std::size_t h = w * kWeek; h < (w + 1) * kWeek; ++h) {
      est.hourly[h] = std::max(0.0, shape(static_cast<double>(h) + 0.5));
      sum += est.hourly[h];
    }
    const double e = est.weekly_energy[w];
    for (std::size_t h = w * kWeek; h < (w + 1) * kWeek; ++h) {
      est.hourly[h] = sum > 0.0 ? est.hourly[h] * (e / sum) : e / static_cast<double>(kWeek);
    }
  }
  return est;
}

std::vector<double> resample_to_hours(const std::vector<double>& anchor_hours, const std::vector<double>& values,
                                      int hours) {
  if (values.empty()) throw std::invalid_argument("resample: no anchors");
  const Pchip f(anchor_hours, values);
  std::vector<double> out(static_cast<std::size_t>(std::max(hours, 0)));
  for (std::size_t t = 0; t < out.size(); ++t) out[t] = f(static_cast<double>(t));
  return out;
}

std::vector<double> resample_monthly_prices(const std::vector<double>& monthly, TimePoint first_month,
                                            TimePoint start, int hours) {
  using namespace std::chrono;
  std::vector<double> anchors;
  anchors.reserve(monthly.size());
  const year_month_day first{floor<days>(first_month)};
  const year_month ym0{first.year(), first.month()};
  for (std::size_t k = 0; k < monthly.size(); ++k) {
    const year_month ym = ym0 + months{static_cast<int>(k)};
    const TimePoint at = sys_days{ym / 1};
    anchors.push_back(static_cast<double>(duration_cast<std::chrono::hours>(at - start).count()));
  }
  return resample_to_hours(anchors, monthly, hours);
}

}  // namespace medea

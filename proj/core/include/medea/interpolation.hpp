#pragma once

#include <vector>

namespace medea {

/// Monotone piecewise cubic Hermite interpolant (Fritsch-Carlson slopes with
/// the three-point, shape-preserving end conditions). Passes through every
/// knot, is C1, and does not overshoot on monotone stretches. Outside the
/// knot range the end values are held constant.
class Pchip {
 public:
  Pchip(std::vector<double> x, std::vector<double> y);

  double operator()(double x) const;
  double derivative(double x) const;

  const std::vector<double>& knots() const { return x_; }
  const std::vector<double>& slopes() const { return d_; }

 private:
  std::size_t segment(double x) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> d_;
};

}  // namespace medea

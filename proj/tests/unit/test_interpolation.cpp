#include <gtest/gtest.h>

#include <array>
#include <cmath>

#include "medea/interpolation.hpp"

namespace medea {
namespace {

const std::vector<double> kx{0.0, 1.0, 2.5, 4.0, 7.0};
const std::vector<double> ky{1.0, 3.0, 3.5, 2.0, 2.2};

// Reference values from scipy.interpolate.PchipInterpolator on the same knots.
TEST(Pchip, MatchesReferenceImplementation) {
  const Pchip p(kx, ky);
  const std::vector<std::array<double, 3>> ref{
      {0.3, 1.7862, 2.5086666666666666},
      {1.7, 3.3445037037037038, 0.36977777777777776},
      {3.1, 2.972, -1.44},
      {5.5, 2.025, 0.05},
      {6.9, 2.1806592592592597, 0.18688888888888908},
  };
  for (const auto& [x, y, dy] : ref) {
    EXPECT_NEAR(p(x), y, 1e-12) << x;
    EXPECT_NEAR(p.derivative(x), dy, 1e-12) << x;
  }
  const std::vector<double> slopes{2.666666666666667, 0.6, 0.0, 0.0, 0.2};
  for (std::size_t k = 0; k < slopes.size(); ++k) EXPECT_NEAR(p.slopes()[k], slopes[k], 1e-12);
}

TEST(Pchip, InterpolatesKnotsAndHoldsEnds) {
  const Pchip p(kx, ky);
  for (std::size_t k = 0; k < kx.size(); ++k) EXPECT_DOUBLE_EQ(p(kx[k]), ky[k]);
  EXPECT_DOUBLE_EQ(p(-5.0), 1.0);
  EXPECT_DOUBLE_EQ(p(50.0), 2.2);
}

TEST(Pchip, NoOvershootOnMonotoneData) {
  const Pchip p({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 0.1, 5.0, 5.1, 9.0});
  double prev = p(0.0);
  for (int k = 1; k <= 400; ++k) {
    const double v = p(k * 0.01);
    EXPECT_GE(v, prev - 1e-12);
    prev = v;
  }
}

TEST(Pchip, DegenerateKnotCounts) {
  EXPECT_DOUBLE_EQ(Pchip({2.0}, {7.0})(10.0), 7.0);
  const Pchip line({0.0, 2.0}, {1.0, 5.0});
  EXPECT_DOUBLE_EQ(line(0.5), 2.0);
  EXPECT_THROW(Pchip({}, {}), std::invalid_argument);
  EXPECT_THROW(Pchip({0.0, 0.0}, {1.0, 2.0}), std::invalid_argument);
  EXPECT_THROW(Pchip({0.0, 1.0}, {1.0, NAN}), std::invalid_argument);
}

}  // namespace
}  // namespace medea

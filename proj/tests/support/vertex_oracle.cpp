#include "vertex_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace medea::testing {

namespace {

struct Plane {
  std::vector<long double> a;
  long double b;
};

bool solve_square(std::vector<std::vector<long double>> m, std::vector<long double> rhs,
                  std::vector<long double>& x) {
  const std::size_t n = rhs.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(m[r][c]) > std::fabs(m[piv][c])) piv = r;
    }
    if (std::fabs(m[piv][c]) < 1e-12L) return false;
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c) continue;
      const long double f = m[r][c] / m[c][c];
      if (f == 0) continue;
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  x.resize(n);
  for (std::size_t c = 0; c < n; ++c) x[c] = rhs[c] / m[c][c];
  return true;
}

}  // namespace

std::optional<double> vertex_enumeration_optimum(const LpProblem& p, double tol) {
  const auto n = static_cast<std::size_t>(p.num_cols());
  const auto m = static_cast<std::size_t>(p.num_rows());
  std::vector<std::vector<long double>> rows(m, std::vector<long double>(n, 0.0L));
  for (const auto& e : p.entries) rows[static_cast<std::size_t>(e.row)][static_cast<std::size_t>(e.col)] += e.value;

  std::vector<Plane> planes;
  for (std::size_t i = 0; i < m; ++i) planes.push_back({rows[i], p.rhs[i]});
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<long double> a(n, 0.0L);
    a[j] = 1.0L;
    planes.push_back({a, p.lower[j]});
    planes.push_back({a, p.upper[j]});
  }

  auto feasible = [&](const std::vector<long double>& x) {
    for (std::size_t j = 0; j < n; ++j) {
      if (x[j] < p.lower[j] - tol * (1 + std::fabs(p.lower[j]))) return false;
      if (x[j] > p.upper[j] + tol * (1 + std::fabs(p.upper[j]))) return false;
    }
    for (std::size_t i = 0; i < m; ++i) {
      long double act = 0;
      for (std::size_t j = 0; j < n; ++j) act += rows[i][j] * x[j];
      const long double slack = tol * (1 + std::fabs(static_cast<long double>(p.rhs[i])));
      switch (p.senses[i]) {
        case RowSense::LessEqual:
          if (act > p.rhs[i] + slack) return false;
          break;
        case RowSense::GreaterEqual:
          if (act < p.rhs[i] - slack) return false;
          break;
        case RowSense::Equal:
          if (std::fabs(act - p.rhs[i]) > slack) return false;
          break;
      }
    }
    return true;
  };

  std::optional<double> best;
  if (n == 0) {
    std::vector<long double> x;
    if (feasible(x)) best = p.objective_offset;
    return best;
  }
  const std::size_t k = planes.size();
  std::vector<std::size_t> pick(n);
  for (std::size_t q = 0; q < n; ++q) pick[q] = q;
  std::vector<long double> x;
  while (true) {
    std::vector<std::vector<long double>> a;
    std::vector<long double> b;
    for (std::size_t q : pick) {
      a.push_back(planes[q].a);
      b.push_back(planes[q].b);
    }
    if (solve_square(a, b, x) && feasible(x)) {
      long double obj = p.objective_offset;
      for (std::size_t j = 0; j < n; ++j) obj += p.objective[j] * x[j];
      if (!best || obj < *best) best = static_cast<double>(obj);
    }
    // Next combination.
    std::size_t q = n;
    while (q > 0 && pick[q - 1] == k - n + (q - 1)) --q;
    if (q == 0) break;
    ++pick[q - 1];
    for (std::size_t r = q; r < n; ++r) pick[r] = pick[r - 1] + 1;
  }
  return best;
}

LpProblem random_lp(std::mt19937_64& rng, const RandomLpShape& shape) {
  std::uniform_int_distribution<int> nv(1, shape.max_vars);
  std::uniform_int_distribution<int> coin(0, 9);
  std::uniform_int_distribution<int> small(-5, 5);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);

  LpProblem p;
  const int n = nv(rng);
  const int rows = std::uniform_int_distribution<int>(1, shape.max_rows)(rng);
  for (int j = 0; j < n; ++j) {
    const double lo = coin(rng) < 6 ? 0.0 : static_cast<double>(small(rng));
    const double hi = lo + std::uniform_int_distribution<int>(0, 10)(rng) + (coin(rng) < 5 ? 0.5 : 0.0);
    p.add_column(static_cast<double>(small(rng)) + 0.25 * unit(rng), lo, hi);
  }
  // A feasible reference point keeps most instances feasible.
  std::vector<double> ref(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const auto ju = static_cast<std::size_t>(j);
    ref[ju] = p.lower[ju] + (p.upper[ju] - p.lower[ju]) * (0.5 + 0.5 * unit(rng));
  }
  const bool make_infeasible = coin(rng) == 0;
  int built = 0;
  while (built < rows) {
    std::vector<double> a(static_cast<std::size_t>(n), 0.0);
    double act = 0.0;
    for (int j = 0; j < n; ++j) {
      if (coin(rng) < 3) continue;
      a[static_cast<std::size_t>(j)] = static_cast<double>(small(rng));
      act += a[static_cast<std::size_t>(j)] * ref[static_cast<std::size_t>(j)];
    }
    const int s = coin(rng);
    RowSense sense = s < 4 ? RowSense::LessEqual : (s < 8 ? RowSense::GreaterEqual : RowSense::Equal);
    double rhs = std::round(act);
    if (sense == RowSense::LessEqual) rhs = std::ceil(act) + std::uniform_int_distribution<int>(0, 3)(rng);
    if (sense == RowSense::GreaterEqual) rhs = std::floor(act) - std::uniform_int_distribution<int>(0, 3)(rng);
    if (sense == RowSense::Equal) rhs = act;
    const int r = p.add_row(sense, rhs);
    for (int j = 0; j < n; ++j) p.add_entry(r, j, a[static_cast<std::size_t>(j)]);
    ++built;
    if (shape.allow_degenerate && built < rows && coin(rng) < 2) {
      const double g = 1.0 + std::uniform_int_distribution<int>(0, 2)(rng);
      const int r2 = p.add_row(sense, rhs * g);
      for (int j = 0; j < n; ++j) p.add_entry(r2, j, a[static_cast<std::size_t>(j)] * g);
      ++built;
    }
  }
  if (make_infeasible) {
    // x_0 >= upper + 1 cannot hold.
    const int r = p.add_row(RowSense::GreaterEqual, p.upper[0] + 1.0);
    p.add_entry(r, 0, 1.0);
    if (p.num_rows() > shape.max_rows) {
      p.senses.erase(p.senses.begin());
      p.rhs.erase(p.rhs.begin());
      std::erase_if(p.entries, [](const Triplet& e) { return e.row == 0; });
      for (auto& e : p.entries) --e.row;
    }
  }
  p.canonicalize();
  return p;
}

}  // namespace medea::testing

#include "medea/simplex.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>

#include "medea/verify.hpp"

namespace medea {

std::string_view to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::Optimal: return "Optimal";
    case SolveStatus::Infeasible: return "Infeasible";
    case SolveStatus::Unbounded: return "Unbounded";
    case SolveStatus::IterationLimit: return "IterationLimit";
  }
  return "?";
}

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;

double pow2_near(double v) {
  if (!(v > 0.0) || !std::isfinite(v)) return 1.0;
  return std::ldexp(1.0, static_cast<int>(std::lround(std::log2(v))));
}

// Powers-of-two geometric scaling; exact to undo.
struct Scaling {
  std::vector<double> row;
  std::vector<double> col;
  double objective = 1.0;
};

Scaling compute_scaling(const LpProblem& p, bool enabled) {
  Scaling s;
  s.row.assign(static_cast<std::size_t>(p.num_rows()), 1.0);
  s.col.assign(static_cast<std::size_t>(p.num_cols()), 1.0);
  if (!enabled) return s;
  const auto m = s.row.size();
  const auto n = s.col.size();
  for (int pass = 0; pass < 4; ++pass) {
    std::vector<double> lo(m, kInf), hi(m, 0.0);
    for (const auto& e : p.entries) {
      const double a = std::abs(e.value) * s.col[static_cast<std::size_t>(e.col)];
      auto r = static_cast<std::size_t>(e.row);
      lo[r] = std::min(lo[r], a);
      hi[r] = std::max(hi[r], a);
    }
    for (std::size_t i = 0; i < m; ++i) {
      if (hi[i] > 0.0) s.row[i] = pow2_near(1.0 / std::sqrt(lo[i] * hi[i]));
    }
    std::vector<double> clo(n, kInf), chi(n, 0.0);
    for (const auto& e : p.entries) {
      const double a = std::abs(e.value) * s.row[static_cast<std::size_t>(e.row)];
      auto c = static_cast<std::size_t>(e.col);
      clo[c] = std::min(clo[c], a);
      chi[c] = std::max(chi[c], a);
    }
    for (std::size_t j = 0; j < n; ++j) {
      if (chi[j] > 0.0) s.col[j] = pow2_near(1.0 / std::sqrt(clo[j] * chi[j]));
    }
  }
  double cmax = 0.0;
  for (std::size_t j = 0; j < n; ++j) cmax = std::max(cmax, std::abs(p.objective[j] * s.col[j]));
  if (cmax > 0.0) s.objective = pow2_near(1.0 / cmax);
  return s;
}

constexpr double kEps = std::numeric_limits<double>::epsilon();

enum class State : std::uint8_t { Basic, Lower, Upper, Zero };

class RevisedSimplex {
 public:
  RevisedSimplex(const LpProblem& p, const SolverOptions& opt)
      : opt_(opt), m_(p.num_rows()), n_(p.num_cols()), scale_(compute_scaling(p, opt.scaling)) {
    load(p);
  }

  LpSolution run(const LpProblem& p);

 private:
  struct Eta {
    int pos;
    double pivot;
    std::vector<int> idx;
    std::vector<double> val;
  };

  void load(const LpProblem& p);
  void crash();
  template <class F>
  void for_column(int j, F&& f) const {
    if (j < n_) {
      for (int k = cstart_[j]; k < cstart_[j + 1]; ++k) f(cidx_[k], cval_[k]);
    } else if (j < n_ + m_) {
      f(j - n_, -1.0);
    } else {
      const int a = j - n_ - m_;
      f(art_row_[a], art_sign_[a]);
    }
  }
  double dot_column(int j, const std::vector<double>& y) const {
    double s = 0.0;
    for_column(j, [&](int i, double v) { s += v * y[i]; });
    return s;
  }

  void refactor();
  void recompute_basics();
  std::vector<double> ftran(std::vector<double> rhs) const;
  std::vector<double> btran(std::vector<double> rhs) const;
  std::vector<double> duals() const;

  SolveStatus run_phase(int phase);
  int price(const std::vector<double>& y, bool bland, int phase) const;

  const SolverOptions& opt_;
  int m_;
  int n_;
  int total_ = 0;  // structurals + logicals + artificials
  Scaling scale_;

  std::vector<int> cstart_, cidx_;
  std::vector<double> cval_;
  std::vector<int> art_row_;
  std::vector<double> art_sign_;

  std::vector<double> lb_, ub_, cost_, x_;
  std::vector<double> phase2_cost_;
  std::vector<double> unscale_;  // scaled reduced cost per unit of unscaled one
  std::vector<State> state_;
  std::vector<int> head_;   // basis position -> variable
  std::vector<int> where_;  // variable -> basis position or -1

  mutable Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>> lu_;
  bool have_lu_ = false;
  std::vector<Eta> etas_;

  long iterations_ = 0;
  std::vector<double> phase1_duals_;
  std::vector<double> ray_;
};

void RevisedSimplex::load(const LpProblem& p) {
  const auto m = static_cast<std::size_t>(m_);
  const auto n = static_cast<std::size_t>(n_);
  // Structural columns in CSC, scaled.
  std::vector<int> count(n + 1, 0);
  for (const auto& e : p.entries) ++count[static_cast<std::size_t>(e.col) + 1];
  cstart_.assign(n + 1, 0);
  for (std::size_t j = 0; j < n; ++j) cstart_[j + 1] = cstart_[j] + count[j + 1];
  cidx_.resize(p.entries.size());
  cval_.resize(p.entries.size());
  std::vector<int> fill(cstart_.begin(), cstart_.end() - 1);
  for (const auto& e : p.entries) {
    const int k = fill[static_cast<std::size_t>(e.col)]++;
    cidx_[k] = e.row;
    cval_[k] = e.value * scale_.row[static_cast<std::size_t>(e.row)] * scale_.col[static_cast<std::size_t>(e.col)];
  }

  lb_.assign(n + m, 0.0);
  ub_.assign(n + m, 0.0);
  phase2_cost_.assign(n + m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    lb_[j] = p.lower[j] / scale_.col[j];
    ub_[j] = p.upper[j] / scale_.col[j];
    phase2_cost_[j] = p.objective[j] * scale_.col[j] * scale_.objective;
  }
  unscale_.assign(n + m, 1.0);
  for (std::size_t j = 0; j < n; ++j) unscale_[j] = scale_.col[j] * scale_.objective;
  for (std::size_t i = 0; i < m; ++i) unscale_[n + i] = scale_.objective / scale_.row[i];
  for (std::size_t i = 0; i < m; ++i) {
    const double b = p.rhs[i] * scale_.row[i];
    switch (p.senses[i]) {
      case RowSense::LessEqual: lb_[n + i] = -kInf; ub_[n + i] = b; break;
      case RowSense::GreaterEqual: lb_[n + i] = b; ub_[n + i] = kInf; break;
      case RowSense::Equal: lb_[n + i] = b; ub_[n + i] = b; break;
    }
  }
  crash();
}

void RevisedSimplex::crash() {
  const auto m = static_cast<std::size_t>(m_);
  const auto n = static_cast<std::size_t>(n_);
  x_.assign(n + m, 0.0);
  state_.assign(n + m, State::Lower);
  for (std::size_t j = 0; j < n; ++j) {
    if (std::isfinite(lb_[j])) {
      x_[j] = lb_[j];
      state_[j] = State::Lower;
    } else if (std::isfinite(ub_[j])) {
      x_[j] = ub_[j];
      state_[j] = State::Upper;
    } else {
      x_[j] = 0.0;
      state_[j] = State::Zero;
    }
  }
  std::vector<double> act(m, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    if (x_[j] == 0.0) continue;
    for (int k = cstart_[j]; k < cstart_[j + 1]; ++k) act[static_cast<std::size_t>(cidx_[k])] += cval_[k] * x_[j];
  }
  head_.assign(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t logical = n + i;
    const double tol = opt_.feasibility_tolerance;
    if (act[i] >= lb_[logical] - tol && act[i] <= ub_[logical] + tol) {
      state_[logical] = State::Basic;
      x_[logical] = act[i];
      head_[i] = static_cast<int>(logical);
      continue;
    }
    // Logical pinned at the violated bound; an artificial absorbs the gap.
    const bool below = act[i] < lb_[logical];
    const double bound = below ? lb_[logical] : ub_[logical];
    state_[logical] = below ? State::Lower : State::Upper;
    x_[logical] = bound;
    const double gap = bound - act[i];
    art_row_.push_back(static_cast<int>(i));
    art_sign_.push_back(gap > 0 ? 1.0 : -1.0);
    const auto a = x_.size();
    x_.push_back(std::abs(gap));
    lb_.push_back(0.0);
    ub_.push_back(kInf);
    phase2_cost_.push_back(0.0);
    unscale_.push_back(1.0);
    state_.push_back(State::Basic);
    head_[i] = static_cast<int>(a);
  }
  total_ = static_cast<int>(x_.size());
  where_.assign(x_.size(), -1);
  for (std::size_t pos = 0; pos < m; ++pos) where_[static_cast<std::size_t>(head_[pos])] = static_cast<int>(pos);
}

void RevisedSimplex::refactor() {
  etas_.clear();
  if (m_ == 0) return;
  std::vector<Eigen::Triplet<double, int>> trips;
  trips.reserve(static_cast<std::size_t>(m_) * 3);
  for (int pos = 0; pos < m_; ++pos) {
    for_column(head_[pos], [&](int i, double v) { trips.emplace_back(i, pos, v); });
  }
  SpMat b(m_, m_);
  b.setFromTriplets(trips.begin(), trips.end());
  b.makeCompressed();
  lu_.analyzePattern(b);
  lu_.factorize(b);
  if (lu_.info() != Eigen::Success) {
    throw std::runtime_error("simplex: basis factorization failed (singular basis)");
  }
  have_lu_ = true;
}

std::vector<double> RevisedSimplex::ftran(std::vector<double> rhs) const {
  if (m_ == 0) return rhs;
  Eigen::Map<Eigen::VectorXd> in(rhs.data(), m_);
  Eigen::VectorXd out = lu_.solve(in);
  std::vector<double> v(out.data(), out.data() + m_);
  for (const auto& eta : etas_) {
    const double xp = v[eta.pos] / eta.pivot;
    v[eta.pos] = xp;
    if (xp == 0.0) continue;
    for (std::size_t k = 0; k < eta.idx.size(); ++k) v[eta.idx[k]] -= eta.val[k] * xp;
  }
  return v;
}

std::vector<double> RevisedSimplex::btran(std::vector<double> rhs) const {
  if (m_ == 0) return rhs;
  for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
    double s = rhs[it->pos];
    for (std::size_t k = 0; k < it->idx.size(); ++k) s -= it->val[k] * rhs[it->idx[k]];
    rhs[it->pos] = s / it->pivot;
  }
  Eigen::Map<Eigen::VectorXd> in(rhs.data(), m_);
  Eigen::VectorXd out = lu_.transpose().solve(in);
  return std::vector<double>(out.data(), out.data() + m_);
}

void RevisedSimplex::recompute_basics() {
  if (m_ == 0) return;
  std::vector<double> rhs(static_cast<std::size_t>(m_), 0.0);
  for (int j = 0; j < total_; ++j) {
    if (state_[j] == State::Basic || x_[j] == 0.0) continue;
    const double xj = x_[j];
    for_column(j, [&](int i, double v) { rhs[i] -= v * xj; });
  }
  auto xb = ftran(std::move(rhs));
  for (int pos = 0; pos < m_; ++pos) x_[head_[pos]] = xb[pos];
}

std::vector<double> RevisedSimplex::duals() const {
  std::vector<double> cb(static_cast<std::size_t>(m_));
  for (int pos = 0; pos < m_; ++pos) cb[pos] = cost_[head_[pos]];
  return btran(std::move(cb));
}

int RevisedSimplex::price(const std::vector<double>& y, bool bland, int phase) const {
  int best = -1;
  double best_score = 0.0;
  for (int j = 0; j < total_; ++j) {
    const State st = state_[j];
    if (st == State::Basic || lb_[j] == ub_[j]) continue;
    double d = cost_[j];
    double mag = std::abs(cost_[j]);
    for_column(j, [&](int i, double v) {
      d -= v * y[i];
      mag += std::abs(v * y[i]);
    });
    // Phase 2 judges optimality on unscaled reduced costs, but never below
    // the rounding noise of the terms that make up d.
    const double tol = phase == 2 ? std::max(opt_.optimality_tolerance * unscale_[j], 1e3 * kEps * mag)
                                  : opt_.optimality_tolerance;
    double score = 0.0;
    if (st == State::Lower) {
      if (d < -tol) score = -d;
    } else if (st == State::Upper) {
      if (d > tol) score = d;
    } else if (std::abs(d) > tol) {
      score = std::abs(d);
    }
    if (score <= 0.0) continue;
    if (bland) return j;
    if (score > best_score) {
      best_score = score;
      best = j;
    }
  }
  return best;
}

SolveStatus RevisedSimplex::run_phase(int phase) {
  constexpr double kPivotTol = 1e-9;
  const double ftol = opt_.feasibility_tolerance;
  bool fresh = false;
  bool bland = opt_.bland_rule;
  long degenerate_run = 0;
  const long stall_limit = std::max<long>(50, m_ / 4);

  refactor();
  recompute_basics();
  fresh = true;

  while (true) {
    if (iterations_ >= opt_.iteration_limit) return SolveStatus::IterationLimit;
    if (static_cast<int>(etas_.size()) >= opt_.refactor_interval) {
      refactor();
      recompute_basics();
      fresh = true;
    }
    const auto y = duals();
    const int q = price(y, bland, phase);
    if (q < 0) {
      if (!fresh) {
        refactor();
        recompute_basics();
        fresh = true;
        continue;
      }
      if (phase == 1) phase1_duals_ = y;
      return SolveStatus::Optimal;
    }
    fresh = false;

    const double dq = cost_[q] - dot_column(q, y);
    const double dir = state_[q] == State::Upper ? -1.0 : (state_[q] == State::Zero ? (dq < 0 ? 1.0 : -1.0) : 1.0);

    std::vector<double> col(static_cast<std::size_t>(m_), 0.0);
    for_column(q, [&](int i, double v) { col[i] = v; });
    const auto alpha = ftran(std::move(col));

    // Ratio test. Basic at position p moves at rate g = -dir * alpha[p].
    const double range = ub_[q] - lb_[q];
    int leave = -1;
    double theta = kInf;
    if (!bland) {
      double theta_max = range;
      for (int p = 0; p < m_; ++p) {
        const double a = alpha[p];
        if (std::abs(a) <= kPivotTol) continue;
        const int var = head_[p];
        const double g = -dir * a;
        if (g < 0 && std::isfinite(lb_[var])) {
          theta_max = std::min(theta_max, (x_[var] - lb_[var] + ftol) / -g);
        } else if (g > 0 && std::isfinite(ub_[var])) {
          theta_max = std::min(theta_max, (ub_[var] + ftol - x_[var]) / g);
        }
      }
      if (!std::isfinite(theta_max)) {
        ray_.assign(static_cast<std::size_t>(n_), 0.0);
        if (q < n_) ray_[q] = dir;
        for (int p = 0; p < m_; ++p) {
          if (head_[p] < n_) ray_[head_[p]] = -dir * alpha[p];
        }
        return SolveStatus::Unbounded;
      }
      if (range <= theta_max) {
        theta = range;
      } else {
        double best_abs = 0.0;
        for (int p = 0; p < m_; ++p) {
          const double a = alpha[p];
          if (std::abs(a) <= kPivotTol) continue;
          const int var = head_[p];
          const double g = -dir * a;
          double ratio;
          if (g < 0 && std::isfinite(lb_[var])) {
            ratio = (x_[var] - lb_[var]) / -g;
          } else if (g > 0 && std::isfinite(ub_[var])) {
            ratio = (ub_[var] - x_[var]) / g;
          } else {
            continue;
          }
          if (ratio <= theta_max && std::abs(a) > best_abs) {
            best_abs = std::abs(a);
            leave = p;
            theta = std::max(ratio, 0.0);
          }
        }
      }
    } else {
      theta = range;
      int best_var = total_;
      for (int p = 0; p < m_; ++p) {
        const double a = alpha[p];
        if (std::abs(a) <= kPivotTol) continue;
        const int var = head_[p];
        const double g = -dir * a;
        double ratio;
        if (g < 0 && std::isfinite(lb_[var])) {
          ratio = std::max((x_[var] - lb_[var]) / -g, 0.0);
        } else if (g > 0 && std::isfinite(ub_[var])) {
          ratio = std::max((ub_[var] - x_[var]) / g, 0.0);
        } else {
          continue;
        }
        if (ratio < theta - 1e-12 || (ratio <= theta + 1e-12 && leave >= 0 && var < best_var)) {
          theta = ratio;
          leave = p;
          best_var = var;
        }
      }
      if (leave >= 0 && range <= theta) leave = -1, theta = range;
      if (!std::isfinite(theta)) {
        ray_.assign(static_cast<std::size_t>(n_), 0.0);
        if (q < n_) ray_[q] = dir;
        for (int p = 0; p < m_; ++p) {
          if (head_[p] < n_) ray_[head_[p]] = -dir * alpha[p];
        }
        return SolveStatus::Unbounded;
      }
    }

    ++iterations_;
    if (theta > 1e-12) {
      degenerate_run = 0;
      if (bland && !opt_.bland_rule) bland = false;
    } else if (++degenerate_run > stall_limit) {
      bland = true;
    }

    if (theta != 0.0) {
      for (int p = 0; p < m_; ++p) {
        if (alpha[p] != 0.0) x_[head_[p]] -= dir * theta * alpha[p];
      }
      x_[q] += dir * theta;
    }

    if (leave < 0) {
      // Bound flip.
      if (dir > 0) {
        x_[q] = ub_[q];
        state_[q] = State::Upper;
      } else {
        x_[q] = lb_[q];
        state_[q] = State::Lower;
      }
      continue;
    }

    const int out = head_[leave];
    const double g = -dir * alpha[leave];
    if (g < 0) {
      x_[out] = lb_[out];
      state_[out] = State::Lower;
    } else {
      x_[out] = ub_[out];
      state_[out] = State::Upper;
    }
    where_[out] = -1;
    head_[leave] = q;
    where_[q] = leave;
    state_[q] = State::Basic;

    Eta eta{leave, alpha[leave], {}, {}};
    for (int p = 0; p < m_; ++p) {
      if (p != leave && std::abs(alpha[p]) > 1e-14) {
        eta.idx.push_back(p);
        eta.val.push_back(alpha[p]);
      }
    }
    etas_.push_back(std::move(eta));
  }
}

LpSolution RevisedSimplex::run(const LpProblem& p) {
  LpSolution sol;
  const int n_art = total_ - n_ - m_;

  SolveStatus status = SolveStatus::Optimal;
  if (n_art > 0) {
    cost_.assign(static_cast<std::size_t>(total_), 0.0);
    for (int a = n_ + m_; a < total_; ++a) cost_[a] = 1.0;
    status = run_phase(1);
    if (status == SolveStatus::Optimal) {
      double worst = 0.0;
      for (int a = n_ + m_; a < total_; ++a) worst = std::max(worst, x_[a]);
      if (worst > 10.0 * opt_.feasibility_tolerance) {
        status = SolveStatus::Infeasible;
      }
    }
    // Artificials are fixed at zero from here on.
    for (int a = n_ + m_; a < total_; ++a) {
      ub_[a] = 0.0;
      if (state_[a] != State::Basic) {
        x_[a] = 0.0;
        state_[a] = State::Lower;
      }
    }
  }
  if (status == SolveStatus::Optimal) {
    cost_ = phase2_cost_;
    status = run_phase(2);
  }

  sol.status = status;
  sol.iterations = iterations_;

  const auto m = static_cast<std::size_t>(m_);
  const auto n = static_cast<std::size_t>(n_);
  if (status != SolveStatus::Infeasible && have_lu_) {
    refactor();
    recompute_basics();
  }
  sol.primal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double v = x_[j] * scale_.col[j];
    // Snap nonbasic values onto their bounds exactly.
    if (state_[j] == State::Lower) v = p.lower[j];
    if (state_[j] == State::Upper) v = p.upper[j];
    sol.primal[j] = v;
  }

  std::vector<double> y_scaled;
  if (status == SolveStatus::Infeasible) {
    y_scaled = phase1_duals_;
  } else if (have_lu_ || m_ == 0) {
    if (cost_.size() != static_cast<std::size_t>(total_)) cost_ = phase2_cost_;
    y_scaled = duals();
  }
  sol.dual.assign(m, 0.0);
  if (status != SolveStatus::Infeasible) {
    for (std::size_t i = 0; i < m && i < y_scaled.size(); ++i) {
      sol.dual[i] = y_scaled[i] * scale_.row[i] / scale_.objective;
    }
  } else {
    sol.ray.assign(m, 0.0);
    for (std::size_t i = 0; i < m && i < y_scaled.size(); ++i) sol.ray[i] = y_scaled[i] * scale_.row[i];
  }
  if (status == SolveStatus::Unbounded) {
    sol.ray = ray_;
    for (std::size_t j = 0; j < n && j < sol.ray.size(); ++j) sol.ray[j] *= scale_.col[j];
  }

  sol.row_activity = p.row_activity(sol.primal);
  sol.reduced_costs = p.objective;
  for (const auto& e : p.entries) {
    sol.reduced_costs[static_cast<std::size_t>(e.col)] -= e.value * sol.dual[static_cast<std::size_t>(e.row)];
  }
  sol.objective = p.evaluate_objective(sol.primal);

  const auto report = verify_solution(p, sol, opt_.feasibility_tolerance);
  sol.max_primal_residual = report.max_primal_residual();
  sol.max_dual_residual = report.max_dual_infeasibility;
  return sol;
}

}  // namespace

LpSolution solve(const LpProblem& problem, const SolverOptions& options) {
  problem.check_well_formed();
  if (!(options.feasibility_tolerance > 0.0) || !(options.optimality_tolerance > 0.0)) {
    throw std::invalid_argument("solver tolerances must be positive");
  }
  if (options.refactor_interval < 1) throw std::invalid_argument("refactor interval must be >= 1");
  RevisedSimplex simplex(problem, options);
  return simplex.run(problem);
}

}  // namespace medea

#include "fluidcorr/lp.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fluidcorr::opt {

const char* to_string(LPStatus s) {
  switch (s) {
    case LPStatus::Optimal: return "optimal";
    case LPStatus::Infeasible: return "infeasible";
    case LPStatus::Unbounded: return "unbounded";
    case LPStatus::NumericalFailure: return "numerical-failure";
  }
  return "?";
}

double lp_violation(const LinearProgram& lp, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    worst = std::max(worst, lp.lower[j] - x[j]);
    if (lp.upper[j] < kInf) worst = std::max(worst, x[j] - lp.upper[j]);
  }
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    double lhs = 0.0;
    for (std::size_t j = 0; j < lp.num_vars; ++j) lhs += lp.rows[i][j] * x[j];
    worst = std::max(worst, lhs - lp.rhs[i]);
  }
  return worst;
}

namespace {

std::atomic<long> g_dump_counter{0};

void dump_lp(const LinearProgram& lp, const std::string& dir) {
  long id = g_dump_counter.fetch_add(1);
  std::ofstream out(dir + "/lp_" + std::to_string(id) + ".txt");
  if (!out) return;
  out << "min";
  for (double c : lp.objective) out << ' ' << c;
  out << "\nsubject to (<=)\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    for (double a : lp.rows[i]) out << a << ' ';
    out << "| " << lp.rhs[i] << '\n';
  }
  out << "bounds\n";
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    out << lp.lower[j] << ' ' << (lp.upper[j] < kInf ? std::to_string(lp.upper[j]) : "inf") << '\n';
}

// Dense tableau with explicit basis bookkeeping.
class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols)
      : m_(rows), n_(cols), a_((rows + 1) * (cols + 1), 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a_[i * (n_ + 1) + j]; }
  double at(std::size_t i, std::size_t j) const { return a_[i * (n_ + 1) + j]; }
  double& rhs(std::size_t i) { return a_[i * (n_ + 1) + n_]; }
  double rhs(std::size_t i) const { return a_[i * (n_ + 1) + n_]; }
  // objective row stored at index m_
  double& obj(std::size_t j) { return a_[m_ * (n_ + 1) + j]; }
  double obj(std::size_t j) const { return a_[m_ * (n_ + 1) + j]; }
  double& obj_rhs() { return a_[m_ * (n_ + 1) + n_]; }

  void pivot(std::size_t pr, std::size_t pc) {
    const std::size_t stride = n_ + 1;
    double* prow = &a_[pr * stride];
    const double inv = 1.0 / prow[pc];
    for (std::size_t j = 0; j <= n_; ++j) prow[j] *= inv;
    prow[pc] = 1.0;
    for (std::size_t i = 0; i <= m_; ++i) {
      if (i == pr) continue;
      double* row = &a_[i * stride];
      const double f = row[pc];
      if (f == 0.0) continue;
      for (std::size_t j = 0; j <= n_; ++j) row[j] -= f * prow[j];
      row[pc] = 0.0;
    }
  }

  std::size_t m_, n_;
  std::vector<double> a_;
};

struct Prepared {
  // mapping back to user variables
  std::vector<int> col_of_var;      // -1 if fixed
  std::vector<double> fixed_value;  // value when fixed
  std::vector<double> shift;        // x = x' + shift
  std::size_t nvars = 0;            // free columns
  std::size_t nrows = 0;            // user rows + upper-bound rows
  std::size_t nuser = 0;            // user rows
  std::vector<double> obj;          // reduced objective over free columns
  double obj_const = 0.0;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;
};

bool prepare(const LinearProgram& lp, Prepared& p) {
  const std::size_t nv = lp.num_vars;
  p.col_of_var.assign(nv, -1);
  p.fixed_value.assign(nv, 0.0);
  p.shift.assign(nv, 0.0);
  std::size_t col = 0;
  for (std::size_t j = 0; j < nv; ++j) {
    double lo = lp.lower[j], hi = lp.upper[j];
    if (hi < lo - 1e-12) return false;  // empty box
    if (hi - lo <= 1e-12) {
      p.fixed_value[j] = lo;
    } else {
      p.col_of_var[j] = static_cast<int>(col++);
      p.shift[j] = lo;
    }
  }
  p.nvars = col;
  p.obj.assign(col, 0.0);
  p.obj_const = 0.0;
  for (std::size_t j = 0; j < nv; ++j) {
    if (p.col_of_var[j] < 0) {
      p.obj_const += lp.objective[j] * p.fixed_value[j];
    } else {
      p.obj[p.col_of_var[j]] = lp.objective[j];
      p.obj_const += lp.objective[j] * p.shift[j];
    }
  }
  p.nuser = lp.rows.size();
  p.rows.clear();
  p.rhs.clear();
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    std::vector<double> r(col, 0.0);
    double b = lp.rhs[i];
    for (std::size_t j = 0; j < nv; ++j) {
      double a = lp.rows[i][j];
      if (a == 0.0) continue;
      if (p.col_of_var[j] < 0) {
        b -= a * p.fixed_value[j];
      } else {
        r[p.col_of_var[j]] = a;
        b -= a * p.shift[j];
      }
    }
    p.rows.push_back(std::move(r));
    p.rhs.push_back(b);
  }
  // finite upper bounds become rows x'_j <= hi - lo
  for (std::size_t j = 0; j < nv; ++j) {
    if (p.col_of_var[j] >= 0 && lp.upper[j] < kInf) {
      std::vector<double> r(col, 0.0);
      r[p.col_of_var[j]] = 1.0;
      p.rows.push_back(std::move(r));
      p.rhs.push_back(lp.upper[j] - lp.lower[j]);
    }
  }
  p.nrows = p.rows.size();
  return true;
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp, const SolverConfig& cfg) {
  if (!cfg.dump_dir.empty()) dump_lp(lp, cfg.dump_dir);
  for (std::size_t i = 0; i < lp.rows.size(); ++i)
    if (lp.rows[i].size() != lp.num_vars)
      throw std::invalid_argument("lp row dimension mismatch");

  LPSolution sol;
  Prepared p;
  if (!prepare(lp, p)) {
    sol.status = LPStatus::Infeasible;
    return sol;
  }

  const std::size_t m = p.nrows;
  const std::size_t n = p.nvars;
  // columns: structural | slack(m) | artificial(<=m)
  std::vector<int> art_of_row(m, -1);
  std::size_t nart = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (p.rhs[i] < 0.0) art_of_row[i] = static_cast<int>(nart++);
  const std::size_t total = n + m + nart;

  Tableau t(m, total);
  std::vector<int> basis(m, -1);
  for (std::size_t i = 0; i < m; ++i) {
    double sgn = p.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t j = 0; j < n; ++j) t.at(i, j) = sgn * p.rows[i][j];
    t.at(i, n + i) = sgn;  // slack
    t.rhs(i) = sgn * p.rhs[i];
    if (art_of_row[i] >= 0) {
      std::size_t ac = n + m + static_cast<std::size_t>(art_of_row[i]);
      t.at(i, ac) = 1.0;
      basis[i] = static_cast<int>(ac);
    } else {
      basis[i] = static_cast<int>(n + i);
    }
  }

  const double piv_tol = cfg.tol_pivot;
  long max_iters = cfg.max_iters > 0
                       ? cfg.max_iters
                       : 2000 + 60L * static_cast<long>(m + total);
  long iters = 0;
  int degenerate_run = 0;
  bool bland = false;

  auto run_simplex = [&](std::size_t ncols, bool phase1) -> LPStatus {
    for (;;) {
      if (++iters > max_iters) return LPStatus::NumericalFailure;
      // pricing
      std::size_t enter = total;
      if (bland) {
        for (std::size_t j = 0; j < ncols; ++j)
          if (t.obj(j) < -piv_tol) { enter = j; break; }
      } else {
        double best = -piv_tol;
        for (std::size_t j = 0; j < ncols; ++j)
          if (t.obj(j) < best) { best = t.obj(j); enter = j; }
      }
      if (enter == total) return LPStatus::Optimal;
      // ratio test
      std::size_t leave = m;
      double best_ratio = kInf;
      for (std::size_t i = 0; i < m; ++i) {
        double a = t.at(i, enter);
        if (a > piv_tol) {
          double ratio = t.rhs(i) / a;
          if (ratio < best_ratio - 1e-12 ||
              (ratio < best_ratio + 1e-12 && leave < m &&
               basis[i] < basis[leave])) {
            best_ratio = ratio;
            leave = i;
          }
        }
      }
      if (leave == m) return phase1 ? LPStatus::NumericalFailure : LPStatus::Unbounded;
      if (best_ratio < 1e-12) {
        if (++degenerate_run > 64) bland = true;
      } else {
        degenerate_run = 0;
        bland = false;
      }
      basis[leave] = static_cast<int>(enter);
      t.pivot(leave, enter);
    }
  };

  // ---- phase 1 ----
  if (nart > 0) {
    for (std::size_t j = 0; j <= total; ++j) t.obj(j) = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (art_of_row[i] < 0) continue;
      // objective row = -(sum of artificial rows), artificial cost 1
      for (std::size_t j = 0; j <= total; ++j) t.obj(j) -= t.at(i, j);
      t.obj(n + m + static_cast<std::size_t>(art_of_row[i])) = 0.0;
    }
    LPStatus st = run_simplex(n + m, true);
    if (st == LPStatus::NumericalFailure) { sol.status = st; return sol; }
    if (-t.obj_rhs() > 1e-7) {  // leftover infeasibility
      sol.status = LPStatus::Infeasible;
      sol.iterations = iters;
      return sol;
    }
    // pivot out any artificial still basic (at zero level)
    for (std::size_t i = 0; i < m; ++i) {
      if (basis[i] < static_cast<int>(n + m)) continue;
      std::size_t enter = total;
      for (std::size_t j = 0; j < n + m; ++j)
        if (std::fabs(t.at(i, j)) > piv_tol) { enter = j; break; }
      if (enter < total) {
        basis[i] = static_cast<int>(enter);
        t.pivot(i, enter);
      }
      // else: row is all-zero (redundant); artificial stays basic at 0
    }
  }

  // ---- phase 2 ----
  for (std::size_t j = 0; j <= total; ++j) t.obj(j) = 0.0;
  for (std::size_t j = 0; j < n; ++j) t.obj(j) = p.obj[j];
  for (std::size_t i = 0; i < m; ++i) {
    int bj = basis[i];
    if (bj >= 0 && bj < static_cast<int>(n) && p.obj[bj] != 0.0) {
      double f = p.obj[bj];
      for (std::size_t j = 0; j <= total; ++j) t.obj(j) -= f * t.at(i, j);
      t.obj(static_cast<std::size_t>(bj)) = 0.0;
    }
  }
  degenerate_run = 0;
  bland = false;
  LPStatus st = run_simplex(n + m, false);
  sol.iterations = iters;
  if (st != LPStatus::Optimal) {
    sol.status = st;
    return sol;
  }

  // recover solution
  std::vector<double> xp(n, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    int bj = basis[i];
    if (bj >= 0 && bj < static_cast<int>(n)) xp[bj] = t.rhs(i);
  }
  sol.x.assign(lp.num_vars, 0.0);
  for (std::size_t j = 0; j < lp.num_vars; ++j)
    sol.x[j] = p.col_of_var[j] < 0 ? p.fixed_value[j]
                                   : xp[p.col_of_var[j]] + p.shift[j];

  // duals: reduced cost of the slack of a <= row equals its multiplier
  sol.row_duals.assign(p.nuser, 0.0);
  for (std::size_t i = 0; i < p.nuser; ++i) {
    double d = t.obj(n + i);
    sol.row_duals[i] = d > 0.0 ? d : 0.0;  // snap tiny negatives
  }
  sol.reduced_costs.assign(lp.num_vars, 0.0);
  for (std::size_t j = 0; j < lp.num_vars; ++j) {
    if (p.col_of_var[j] >= 0) {
      sol.reduced_costs[j] = t.obj(static_cast<std::size_t>(p.col_of_var[j]));
    } else {
      // c_j - y'G_j for a fixed column
      double rc = lp.objective[j];
      for (std::size_t i = 0; i < p.nuser; ++i)
        rc -= sol.row_duals[i] * lp.rows[i][j];
      sol.reduced_costs[j] = rc;
    }
  }
  double obj = p.obj_const;
  for (std::size_t j = 0; j < n; ++j) obj += p.obj[j] * xp[j];
  sol.objective = obj;
  sol.status = LPStatus::Optimal;
  return sol;
}

}  // namespace fluidcorr::opt

#include "conelab/linprog.hpp"

#include <stdexcept>

namespace conelab {

namespace {

// Dense tableau simplex over exact rationals.
//
// Internal standard form: all variables nonnegative (free variables of the
// original problem are split x = x+ - x- before we get here). Artificial
// columns are kept in the tableau through phase 2 so the dual vector can be
// read off the objective row; they are barred from re-entering the basis.
class Tableau {
 public:
  // a: m x n, b: m (made nonnegative by row sign flips, recorded in row_sign)
  Tableau(const QMat& a, const QVec& b) : m_(a.rows()), n_(a.cols()) {
    row_sign_.assign(m_, 1);
    t_ = QMat(m_, n_ + m_ + 1);
    for (int i = 0; i < m_; ++i) {
      int s = b[i].sign() < 0 ? -1 : 1;
      row_sign_[i] = s;
      for (int j = 0; j < n_; ++j) t_(i, j) = s < 0 ? -a(i, j) : a(i, j);
      t_(i, n_ + i) = Rational(1);
      t_(i, n_ + m_) = s < 0 ? -b[i] : b[i];
    }
    basis_.resize(m_);
    for (int i = 0; i < m_; ++i) basis_[i] = n_ + i;
  }

  int num_cols() const { return n_ + m_; }
  bool is_artificial(int j) const { return j >= n_; }
  const std::vector<int>& basis() const { return basis_; }
  Rational rhs(int i) const { return t_(i, n_ + m_); }
  Rational entry(int i, int j) const { return t_(i, j); }
  int rows() const { return m_; }
  int row_sign(int i) const { return row_sign_[i]; }

  // Minimize cost over the current feasible region. `allow` masks columns
  // eligible to enter. Returns false when unbounded.
  bool run(const QVec& cost, const std::vector<bool>& allow) {
    compute_obj_row(cost);
    while (true) {
      int enter = -1;
      for (int j = 0; j < num_cols(); ++j) {  // Bland: lowest eligible index
        if (!allow[j]) continue;
        if (obj_[j].sign() < 0) {
          enter = j;
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (int i = 0; i < m_; ++i) {
        if (t_(i, enter).sign() <= 0) continue;
        Rational ratio = rhs(i) / t_(i, enter);
        if (leave < 0 || ratio < best ||
            (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = ratio;
        }
      }
      if (leave < 0) return false;  // unbounded
      pivot(leave, enter, cost);
    }
  }

  // Objective-row entry for column j (reduced cost c_j - y^T a_j).
  const Rational& reduced_cost(int j) const { return obj_[j]; }
  const Rational& objective_value() const { return obj_value_; }

  // Pivot artificial variables out of the basis where possible; rows that
  // cannot be cleared are redundant constraints and get zeroed instead.
  void clear_artificials(const QVec& cost) {
    for (int i = 0; i < m_; ++i) {
      if (!is_artificial(basis_[i])) continue;
      int enter = -1;
      for (int j = 0; j < n_; ++j)
        if (!t_(i, j).is_zero()) {
          enter = j;
          break;
        }
      if (enter >= 0) {
        pivot(i, enter, cost);
      }
      // else: the row is 0 = 0 over real columns; it stays with its
      // artificial basic at value 0 and never interferes again.
    }
  }

 private:
  void compute_obj_row(const QVec& cost) {
    obj_.assign(num_cols(), Rational(0));
    obj_value_ = Rational(0);
    // reduced costs: c_j - sum_i c_B(i) * t(i, j)
    for (int j = 0; j < num_cols(); ++j) obj_[j] = j < int(cost.size()) ? cost[j] : Rational(0);
    for (int i = 0; i < m_; ++i) {
      Rational cb = basis_[i] < int(cost.size()) ? cost[basis_[i]] : Rational(0);
      if (cb.is_zero()) continue;
      for (int j = 0; j < num_cols(); ++j) obj_[j] -= cb * t_(i, j);
      obj_value_ += cb * rhs(i);
    }
  }

  void pivot(int leave, int enter, const QVec&) {
    Rational inv = Rational(1) / t_(leave, enter);
    for (int j = 0; j <= n_ + m_; ++j) t_(leave, j) *= inv;
    for (int i = 0; i < m_; ++i) {
      if (i == leave || t_(i, enter).is_zero()) continue;
      Rational f = t_(i, enter);
      for (int j = 0; j <= n_ + m_; ++j) t_(i, j) -= f * t_(leave, j);
    }
    if (!obj_[enter].is_zero()) {
      Rational f = obj_[enter];
      for (int j = 0; j < num_cols(); ++j) obj_[j] -= f * t_(leave, j);
      obj_value_ += f * rhs(leave);
    }
    basis_[leave] = enter;
  }

  int m_, n_;
  QMat t_;
  QVec obj_;
  Rational obj_value_;
  std::vector<int> basis_;
  std::vector<int> row_sign_;
};

void check(bool ok, const char* what) {
  if (!ok) throw std::logic_error(std::string("lp_solve internal check failed: ") + what);
}

}  // namespace

LpOutcome lp_solve(const LpProblem& p) {
  const int m = p.eq_lhs.rows();
  const int n = p.eq_lhs.cols();
  if (int(p.objective.size()) != n || int(p.eq_rhs.size()) != m ||
      int(p.nonneg.size()) != n)
    throw std::invalid_argument("lp_solve: dimension mismatch");

  // Split free variables: column j becomes (x+, x-) when free.
  std::vector<int> pos_col(n), neg_col(n, -1);
  int ns = 0;
  for (int j = 0; j < n; ++j) {
    pos_col[j] = ns++;
    if (!p.nonneg[j]) neg_col[j] = ns++;
  }
  QMat a(m, ns);
  QVec c(ns, Rational(0));
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < m; ++i) {
      a(i, pos_col[j]) = p.eq_lhs(i, j);
      if (neg_col[j] >= 0) a(i, neg_col[j]) = -p.eq_lhs(i, j);
    }
    c[pos_col[j]] = p.objective[j];
    if (neg_col[j] >= 0) c[neg_col[j]] = -p.objective[j];
  }

  Tableau tab(a, p.eq_rhs);

  // Phase 1: minimize the sum of artificials.
  QVec phase1_cost(tab.num_cols(), Rational(0));
  for (int j = ns; j < tab.num_cols(); ++j) phase1_cost[j] = Rational(1);
  std::vector<bool> allow_all(tab.num_cols(), true);
  bool bounded = tab.run(phase1_cost, allow_all);
  check(bounded, "phase 1 unbounded");

  LpOutcome out;
  if (tab.objective_value().sign() > 0) {
    // Infeasible. Farkas vector from the phase-1 dual: y'_i = 1 - redcost(s_i),
    // mapped back through the row sign normalization.
    out.status = LpStatus::Infeasible;
    out.farkas.resize(m);
    for (int i = 0; i < m; ++i) {
      Rational yi = Rational(1) - tab.reduced_cost(ns + i);
      out.farkas[i] = Rational(tab.row_sign(i)) * yi;
    }
    // exact soundness checks
    for (int j = 0; j < n; ++j) {
      Rational yA;
      for (int i = 0; i < m; ++i) yA += out.farkas[i] * p.eq_lhs(i, j);
      if (p.nonneg[j])
        check(yA.sign() <= 0, "farkas sign on nonneg column");
      else
        check(yA.is_zero(), "farkas zero on free column");
    }
    check(dot(out.farkas, p.eq_rhs).sign() > 0, "farkas positivity on rhs");
    return out;
  }

  // Feasible: remove artificials from the basis, then phase 2.
  tab.clear_artificials(phase1_cost);
  std::vector<bool> allow_real(tab.num_cols(), false);
  for (int j = 0; j < ns; ++j) allow_real[j] = true;
  bounded = tab.run(c, allow_real);
  if (!bounded) {
    out.status = LpStatus::Unbounded;
    return out;
  }

  out.status = LpStatus::Optimal;
  QVec xs(ns, Rational(0));
  for (int i = 0; i < tab.rows(); ++i)
    if (tab.basis()[i] < ns) xs[tab.basis()[i]] = tab.rhs(i);
  out.primal.resize(n);
  for (int j = 0; j < n; ++j) {
    out.primal[j] = xs[pos_col[j]];
    if (neg_col[j] >= 0) out.primal[j] -= xs[neg_col[j]];
  }
  // dual from the objective row under the artificial (initial identity) columns
  out.dual.resize(m);
  for (int i = 0; i < m; ++i)
    out.dual[i] = Rational(tab.row_sign(i)) * (-tab.reduced_cost(ns + i));
  out.objective_value = dot(p.objective, out.primal);

  // exact optimality certificate
  for (int i = 0; i < m; ++i) {
    Rational Ax;
    for (int j = 0; j < n; ++j) Ax += p.eq_lhs(i, j) * out.primal[j];
    check(Ax == p.eq_rhs[i], "primal feasibility");
  }
  for (int j = 0; j < n; ++j) {
    if (p.nonneg[j]) check(out.primal[j].sign() >= 0, "primal nonnegativity");
    Rational red = p.objective[j];
    for (int i = 0; i < m; ++i) red -= out.dual[i] * p.eq_lhs(i, j);
    if (p.nonneg[j]) {
      check(red.sign() >= 0, "dual feasibility (nonneg column)");
      check(red.is_zero() || out.primal[j].is_zero(), "complementary slackness");
    } else {
      check(red.is_zero(), "dual feasibility (free column)");
    }
  }
  check(out.objective_value == dot(out.dual, p.eq_rhs), "strong duality");
  return out;
}

LpProblem feasibility_problem(const QMat& eq_lhs, const QVec& eq_rhs) {
  LpProblem p;
  p.eq_lhs = eq_lhs;
  p.eq_rhs = eq_rhs;
  p.objective.assign(eq_lhs.cols(), Rational(0));
  p.nonneg.assign(eq_lhs.cols(), true);
  return p;
}

ConicDecomposition conic_decomposition(const std::vector<QVec>& generators,
                                       const QVec& target) {
  const int d = int(target.size());
  QMat a(d, int(generators.size()));
  for (size_t k = 0; k < generators.size(); ++k) {
    if (int(generators[k].size()) != d)
      throw std::invalid_argument("conic_decomposition: generator dimension mismatch");
    for (int i = 0; i < d; ++i) a(i, int(k)) = generators[k][i];
  }
  LpOutcome r = lp_solve(feasibility_problem(a, target));
  ConicDecomposition out;
  if (r.status == LpStatus::Optimal) {
    out.feasible = true;
    out.coefficients = r.primal;
  } else {
    out.feasible = false;
    out.farkas = r.farkas;
  }
  return out;
}

}  // namespace conelab

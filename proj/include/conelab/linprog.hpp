#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelab/matrix.hpp"

namespace conelab {

// Linear program in equality form:
//   minimize   objective . x
//   subject to eq_lhs x = eq_rhs,  x_j >= 0 where nonneg[j], x_j free otherwise.
// All data exact rationals.
struct LpProblem {
  QVec objective;
  QMat eq_lhs;
  QVec eq_rhs;
  std::vector<bool> nonneg;
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

// Outcome with an exact certificate, verified before return:
//  - Optimal: eq_lhs primal = eq_rhs, primal >= 0 on masked vars, and the dual
//    vector proves optimality (reduced costs signed correctly, objective values
//    equal as rationals).
//  - Infeasible: farkas y with y^T A <= 0 on masked columns, y^T A = 0 on free
//    columns, and y^T b > 0.
struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  QVec primal;
  QVec dual;
  QVec farkas;
  Rational objective_value;
};

// Exact simplex with Bland's anti-cycling rule. Deterministic: identical
// problems produce identical outcomes.
LpOutcome lp_solve(const LpProblem& p);

// Feasibility of { x : eq_lhs x = eq_rhs, x >= 0 } (all vars nonnegative).
LpProblem feasibility_problem(const QMat& eq_lhs, const QVec& eq_rhs);

// Nonnegative coefficients expressing target over the given generators,
// if any exist. Farkas vector of the infeasible system otherwise.
struct ConicDecomposition {
  bool feasible = false;
  QVec coefficients;  // per generator, when feasible
  QVec farkas;        // y with y.g <= 0 for all generators, y.target > 0
};
ConicDecomposition conic_decomposition(const std::vector<QVec>& generators,
                                       const QVec& target);

}  // namespace conelab

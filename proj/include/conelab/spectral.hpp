#pragma once

#include "conelab/matrix.hpp"

namespace conelab {

struct EigResult {
  DVec values;  // descending
  DMat vectors; // orthogonal, column k pairs with values[k]
};

// Cyclic Jacobi rotations until the off-diagonal Frobenius mass drops below
// tol relative to the input norm; reconstruction satisfies
// ||Q diag(values) Q^T - m|| <= 10 * tol * ||m||.
// Throws if m is not symmetric within tol.
EigResult eig_sym(const DMat& m, double tol = 1e-9);

// Singular values (descending) via eig_sym of m^T m.
DVec svd_values(const DMat& m, double tol = 1e-9);

struct SvdResult {
  DMat u;      // rows x k, columns for sigma > 0 (zero columns otherwise)
  DVec sigma;  // descending, k = min(rows, cols)
  DMat v;      // cols x k
};
SvdResult svd_full(const DMat& m, double tol = 1e-9);

double operator_norm(const DMat& m, double tol = 1e-9);  // largest singular value
double trace_norm(const DMat& m, double tol = 1e-9);     // sum of singular values
double frobenius_norm(const DMat& m);

}  // namespace conelab

#pragma once

#include "conelab/matrix.hpp"

namespace conelab {

// Real coordinates for n x n complex Hermitian matrices, dimension n^2.
// Layout: [a_00 .. a_(n-1)(n-1)] [Re a_ij, i<j row-major] [Im a_ij, i<j].
// The trace pairing tr(AB) is dot(herm_dual_coords(B), herm_coords(A)).

inline int herm_dim(int n) { return n * n; }
int herm_pair_index(int i, int j, int n);  // position of (i,j), i<j, among pairs

// Exact complex matrix as a pair of rational matrices (value = re + i*im).
struct QCMat {
  QMat re, im;

  QCMat() = default;
  QCMat(int rows, int cols) : re(rows, cols), im(rows, cols) {}
  QCMat(QMat re_part, QMat im_part) : re(std::move(re_part)), im(std::move(im_part)) {}
  static QCMat identity(int n);
  int rows() const { return re.rows(); }
  int cols() const { return re.cols(); }
  QCMat dagger() const;  // conjugate transpose
  friend QCMat operator*(const QCMat& a, const QCMat& b);
  friend QCMat operator+(const QCMat& a, const QCMat& b);
  friend QCMat operator-(const QCMat& a, const QCMat& b);
  friend QCMat operator*(const Rational& s, const QCMat& a);
  friend bool operator==(const QCMat& a, const QCMat& b) = default;
};

QCMat kron(const QCMat& a, const QCMat& b);
void trace_of(const QCMat& a, Rational& re, Rational& im);
bool is_hermitian(const QCMat& a);

QVec herm_coords(const QCMat& a);             // requires Hermitian
QCMat herm_from_coords(const QVec& v, int n);
QVec herm_dual_coords(const QCMat& b);        // functional A -> tr(AB)

// Real symmetric embedding [[X, -Y], [Y, X]] of X + iY; spectrum doubled.
DMat herm_real_embedding(const DVec& coords, int n);

double herm_min_eigenvalue(const DVec& coords, int n, double tol = 1e-9);

}  // namespace conelab

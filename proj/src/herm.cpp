#include "conelab/herm.hpp"

#include "conelab/errors.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

int herm_pair_index(int i, int j, int n) {
  // row-major over pairs i < j
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

QCMat QCMat::identity(int n) {
  QCMat m(n, n);
  m.re = QMat::identity(n);
  return m;
}

QCMat QCMat::dagger() const {
  QCMat d;
  d.re = re.transpose();
  d.im = Rational(-1) * im.transpose();
  return d;
}

QCMat operator*(const QCMat& a, const QCMat& b) {
  QCMat c;
  c.re = a.re * b.re - a.im * b.im;
  c.im = a.re * b.im + a.im * b.re;
  return c;
}

QCMat operator+(const QCMat& a, const QCMat& b) { return {a.re + b.re, a.im + b.im}; }
QCMat operator-(const QCMat& a, const QCMat& b) { return {a.re - b.re, a.im - b.im}; }
QCMat operator*(const Rational& s, const QCMat& a) { return {s * a.re, s * a.im}; }

QCMat kron(const QCMat& a, const QCMat& b) {
  QCMat c(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l) {
          // (ar + i ai)(br + i bi)
          c.re(i * b.rows() + k, j * b.cols() + l) =
              a.re(i, j) * b.re(k, l) - a.im(i, j) * b.im(k, l);
          c.im(i * b.rows() + k, j * b.cols() + l) =
              a.re(i, j) * b.im(k, l) + a.im(i, j) * b.re(k, l);
        }
  return c;
}

void trace_of(const QCMat& a, Rational& re, Rational& im) {
  re = Rational(0);
  im = Rational(0);
  for (int i = 0; i < a.rows(); ++i) {
    re += a.re(i, i);
    im += a.im(i, i);
  }
}

bool is_hermitian(const QCMat& a) {
  if (a.rows() != a.cols()) return false;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      if (!(a.re(i, j) == a.re(j, i))) return false;
      if (!(a.im(i, j) == -a.im(j, i))) return false;
    }
  return true;
}

QVec herm_coords(const QCMat& a) {
  if (!is_hermitian(a)) throw Error("herm_coords: matrix is not Hermitian");
  const int n = a.rows();
  QVec v(herm_dim(n), Rational(0));
  for (int i = 0; i < n; ++i) v[i] = a.re(i, i);
  const int p = n * (n - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      v[n + herm_pair_index(i, j, n)] = a.re(i, j);
      v[n + p + herm_pair_index(i, j, n)] = a.im(i, j);
    }
  return v;
}

QCMat herm_from_coords(const QVec& v, int n) {
  if (int(v.size()) != herm_dim(n)) throw Error("herm_from_coords: size mismatch");
  QCMat a(n, n);
  for (int i = 0; i < n; ++i) a.re(i, i) = v[i];
  const int p = n * (n - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int k = herm_pair_index(i, j, n);
      a.re(i, j) = v[n + k];
      a.re(j, i) = v[n + k];
      a.im(i, j) = v[n + p + k];
      a.im(j, i) = -v[n + p + k];
    }
  return a;
}

QVec herm_dual_coords(const QCMat& b) {
  QVec v = herm_coords(b);
  const int n = b.rows();
  for (int k = n; k < herm_dim(n); ++k) v[k] *= Rational(2);
  return v;
}

DMat herm_real_embedding(const DVec& coords, int n) {
  if (int(coords.size()) != herm_dim(n)) throw Error("herm_real_embedding: size mismatch");
  DMat x(n, n), y(n, n);
  for (int i = 0; i < n; ++i) x(i, i) = coords[i];
  const int p = n * (n - 1) / 2;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      int k = herm_pair_index(i, j, n);
      x(i, j) = x(j, i) = coords[n + k];
      y(i, j) = coords[n + p + k];
      y(j, i) = -coords[n + p + k];
    }
  DMat e(2 * n, 2 * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      e(i, j) = x(i, j);
      e(n + i, n + j) = x(i, j);
      e(i, n + j) = -y(i, j);
      e(n + i, j) = y(i, j);
    }
  return e;
}

double herm_min_eigenvalue(const DVec& coords, int n, double tol) {
  EigResult e = eig_sym(herm_real_embedding(coords, n), tol);
  return e.values.back();
}

}  // namespace conelab

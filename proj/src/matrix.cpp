#include "conelab/matrix.hpp"

namespace conelab {

bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (!x.is_zero()) return false;
  return true;
}

QVec vec_of(const QMat& m) {
  QVec v;
  v.reserve(size_t(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

QMat mat_of(const QVec& v, int rows, int cols) {
  if (int(v.size()) != rows * cols) throw std::invalid_argument("mat_of: size mismatch");
  QMat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = v[size_t(i) * cols + j];
  return m;
}

Rational frobenius_inner(const QMat& f, const QMat& z) {
  if (f.rows() != z.rows() || f.cols() != z.cols())
    throw std::invalid_argument("frobenius_inner: shape mismatch");
  Rational s;
  for (int i = 0; i < f.rows(); ++i)
    for (int j = 0; j < f.cols(); ++j) s += f(i, j) * z(i, j);
  return s;
}

namespace {

// Gauss-Jordan elimination to reduced row echelon form, in place.
// Returns the pivot column of each pivot row. Deterministic: first
// nonzero entry in column order is the pivot.
std::vector<int> rref_inplace(QMat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols() && r < m.rows(); ++c) {
    int p = -1;
    for (int i = r; i < m.rows(); ++i)
      if (!m(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    Rational inv = Rational(1) / m(r, c);
    for (int j = 0; j < m.cols(); ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c).is_zero()) continue;
      Rational f = m(i, c);
      for (int j = 0; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Rational det(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: not square");
  QMat a = m;
  int n = a.rows();
  Rational d(1);
  for (int c = 0; c < n; ++c) {
    int p = -1;
    for (int i = c; i < n; ++i)
      if (!a(i, c).is_zero()) {
        p = i;
        break;
      }
    if (p < 0) return Rational(0);
    if (p != c) {
      for (int j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      d = -d;
    }
    d *= a(c, c);
    Rational inv = Rational(1) / a(c, c);
    for (int i = c + 1; i < n; ++i) {
      if (a(i, c).is_zero()) continue;
      Rational f = a(i, c) * inv;
      for (int j = c; j < n; ++j) a(i, j) -= f * a(c, j);
    }
  }
  return d;
}

QMat inverse(const QMat& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: not square");
  int n = m.rows();
  QMat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = Rational(1);
  }
  auto pivots = rref_inplace(aug);
  if (int(pivots.size()) != n || pivots.back() != n - 1)
    throw std::invalid_argument("inverse: singular matrix");
  for (int i = 0; i < n; ++i)
    if (pivots[i] != i) throw std::invalid_argument("inverse: singular matrix");
  QMat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

int rank(const QMat& m) {
  QMat a = m;
  return int(rref_inplace(a).size());
}

std::vector<QVec> kernel_basis(const QMat& m) {
  QMat a = m;
  auto pivots = rref_inplace(a);
  std::vector<bool> is_pivot(m.cols(), false);
  for (int c : pivots) is_pivot[c] = true;
  std::vector<QVec> basis;
  for (int c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    QVec v(m.cols(), Rational(0));
    v[c] = Rational(1);
    for (size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -a(int(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<QVec> solve(const QMat& a, const QVec& b) {
  if (a.rows() != int(b.size())) throw std::invalid_argument("solve: shape mismatch");
  QMat aug(a.rows(), a.cols() + 1);
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = b[i];
  }
  auto pivots = rref_inplace(aug);
  // inconsistent iff a pivot lands in the last column
  if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
  QVec x(a.cols(), Rational(0));
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug(int(r), a.cols());
  return x;
}

QVec canonical_ray(const QVec& v) {
  mpz_class lcm_den(1), gcd_num(0);
  for (const auto& x : v) {
    mpz_class l;
    mpz_lcm(l.get_mpz_t(), lcm_den.get_mpz_t(), x.den().get_mpz_t());
    lcm_den = l;
  }
  QVec w(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    w[i] = v[i] * Rational(lcm_den, mpz_class(1));
    mpz_class g;
    mpz_gcd(g.get_mpz_t(), gcd_num.get_mpz_t(), w[i].num().get_mpz_t());
    gcd_num = g;
  }
  if (sgn(gcd_num) == 0) return w;  // zero vector
  Rational inv(mpz_class(1), gcd_num);
  for (auto& x : w) x *= inv;
  return w;
}

DVec to_double(const QVec& v) {
  DVec d(v.size());
  for (size_t i = 0; i < v.size(); ++i) d[i] = v[i].to_double();
  return d;
}

DMat to_double(const QMat& m) {
  DMat d(m.rows(), m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) d(i, j) = m(i, j).to_double();
  return d;
}

}  // namespace conelab

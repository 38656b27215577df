#pragma once

#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <vector>

#include "conelab/rational.hpp"

namespace conelab {

// Dense row-major matrix over an exact or floating scalar.
template <class T>
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(int rows, int cols, T fill = T(0))
      : rows_(rows), cols_(cols), a_(size_t(rows) * size_t(cols), fill) {
    if (rows < 0 || cols < 0) throw std::invalid_argument("Matrix: negative shape");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = int(rows.size());
    cols_ = rows_ ? int(rows.begin()->size()) : 0;
    a_.reserve(size_t(rows_) * size_t(cols_));
    for (const auto& r : rows) {
      if (int(r.size()) != cols_) throw std::invalid_argument("Matrix: ragged rows");
      for (const auto& x : r) a_.push_back(x);
    }
  }

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  T& operator()(int i, int j) { return a_[size_t(i) * cols_ + j]; }
  const T& operator()(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

  std::vector<T> row(int i) const {
    return std::vector<T>(a_.begin() + size_t(i) * cols_, a_.begin() + size_t(i + 1) * cols_);
  }
  std::vector<T> col(int j) const {
    std::vector<T> c(rows_);
    for (int i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
      for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  int rows_, cols_;
  std::vector<T> a_;
};

using QMat = Matrix<Rational>;
using DMat = Matrix<double>;
using QVec = std::vector<Rational>;
using DVec = std::vector<double>;

// --- generic matrix algebra ---

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  Matrix<T> c(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.cols(); ++k) {
      const T& aik = a(i, k);
      if (aik == T(0)) continue;
      for (int j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

template <class T>
Matrix<T> operator+(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matadd: shape mismatch");
  Matrix<T> c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) += b(i, j);
  return c;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("matsub: shape mismatch");
  Matrix<T> c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) -= b(i, j);
  return c;
}

template <class T>
Matrix<T> operator*(const T& s, const Matrix<T>& a) {
  Matrix<T> c = a;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) c(i, j) *= s;
  return c;
}

template <class T>
std::vector<T> operator*(const Matrix<T>& a, const std::vector<T>& x) {
  if (a.cols() != int(x.size())) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<T> y(a.rows(), T(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

// --- vector helpers ---

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: size mismatch");
  T s(0);
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

template <class T>
std::vector<T> operator+(std::vector<T> a, const std::vector<T>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}
template <class T>
std::vector<T> operator-(std::vector<T> a, const std::vector<T>& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}
template <class T>
std::vector<T> operator*(const T& s, std::vector<T> a) {
  for (auto& x : a) x *= s;
  return a;
}

bool is_zero(const QVec& v);

// Flatten row-major and back; the tensor convention everywhere is
// entry (i, j) = coefficient on e_i (x) e_j.
QVec vec_of(const QMat& m);
QMat mat_of(const QVec& v, int rows, int cols);

// Trace pairing <F, Z> = sum_ij F[i][j] Z[i][j].
Rational frobenius_inner(const QMat& f, const QMat& z);

// --- exact linear algebra over the rationals ---

Rational det(const QMat& m);
QMat inverse(const QMat& m);                 // throws on singular input
int rank(const QMat& m);
std::vector<QVec> kernel_basis(const QMat& m);
std::optional<QVec> solve(const QMat& a, const QVec& b);  // any solution of Ax=b

// Scale a rational direction to a primitive integer vector (gcd 1), keeping
// orientation. Canonical representative of a ray.
QVec canonical_ray(const QVec& v);

// --- conversions ---

DVec to_double(const QVec& v);
DMat to_double(const QMat& m);

}  // namespace conelab

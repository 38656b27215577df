#include "conelab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace conelab {

double frobenius_norm(const DMat& m) {
  double s = 0;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) s += m(i, j) * m(i, j);
  return std::sqrt(s);
}

namespace {

double offdiag_norm(const DMat& a) {
  double s = 0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

EigResult eig_sym(const DMat& m, double tol) {
  const int n = m.rows();
  if (n != m.cols()) throw std::invalid_argument("eig_sym: not square");
  const double scale = std::max(frobenius_norm(m), 1e-300);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (std::abs(m(i, j) - m(j, i)) > tol * scale)
        throw std::invalid_argument("eig_sym: matrix not symmetric within tol");

  DMat a = m;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      double v = (a(i, j) + a(j, i)) / 2;
      a(i, j) = a(j, i) = v;
    }
  DMat q = DMat::identity(n);

  const int max_sweeps = 64;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    if (offdiag_norm(a) <= tol * scale) break;
    for (int p = 0; p < n; ++p)
      for (int r = p + 1; r < n; ++r) {
        double apr = a(p, r);
        if (apr == 0.0) continue;
        double tau = (a(r, r) - a(p, p)) / (2 * apr);
        double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1 + tau * tau));
        double c = 1 / std::sqrt(1 + t * t);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = a(k, p), akr = a(k, r);
          a(k, p) = c * akp - s * akr;
          a(k, r) = s * akp + c * akr;
        }
        for (int k = 0; k < n; ++k) {
          double apk = a(p, k), ark = a(r, k);
          a(p, k) = c * apk - s * ark;
          a(r, k) = s * apk + c * ark;
        }
        for (int k = 0; k < n; ++k) {
          double qkp = q(k, p), qkr = q(k, r);
          q(k, p) = c * qkp - s * qkr;
          q(k, r) = s * qkp + c * qkr;
        }
      }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return a(i, i) > a(j, j); });
  EigResult res;
  res.values.resize(n);
  res.vectors = DMat(n, n);
  for (int k = 0; k < n; ++k) {
    res.values[k] = a(order[k], order[k]);
    for (int i = 0; i < n; ++i) res.vectors(i, k) = q(i, order[k]);
  }
  return res;
}

DVec svd_values(const DMat& m, double tol) {
  DMat g = m.transpose() * m;
  EigResult e = eig_sym(g, tol);
  int k = std::min(m.rows(), m.cols());
  DVec sv(k);
  for (int i = 0; i < k; ++i) sv[i] = std::sqrt(std::max(e.values[i], 0.0));
  return sv;
}

SvdResult svd_full(const DMat& m, double tol) {
  DMat g = m.transpose() * m;
  EigResult e = eig_sym(g, tol);
  const int k = std::min(m.rows(), m.cols());
  SvdResult res;
  res.sigma.resize(k);
  res.u = DMat(m.rows(), k);
  res.v = DMat(m.cols(), k);
  double scale = std::max(frobenius_norm(m), 1e-300);
  for (int i = 0; i < k; ++i) {
    res.sigma[i] = std::sqrt(std::max(e.values[i], 0.0));
    for (int r = 0; r < m.cols(); ++r) res.v(r, i) = e.vectors(r, i);
    if (res.sigma[i] > tol * scale) {
      for (int r = 0; r < m.rows(); ++r) {
        double s = 0;
        for (int c = 0; c < m.cols(); ++c) s += m(r, c) * e.vectors(c, i);
        res.u(r, i) = s / res.sigma[i];
      }
    }
  }
  return res;
}

double operator_norm(const DMat& m, double tol) {
  DVec sv = svd_values(m, tol);
  return sv.empty() ? 0.0 : sv.front();
}

double trace_norm(const DMat& m, double tol) {
  DVec sv = svd_values(m, tol);
  double s = 0;
  for (double x : sv) s += x;
  return s;
}

}  // namespace conelab

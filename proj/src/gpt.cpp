#include "conelab/gpt.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/linprog.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

namespace {

void require_polytope(const NormedSpace& s, const char* who) {
  if (s.kind != NormedSpace::Kind::Polytope)
    throw Error(std::string(who) + ": polytope ball required on the exact path");
}

void require_same_kind(const NormedSpace& x, const NormedSpace& y, const char* who) {
  if (x.kind != y.kind)
    throw Error(std::string(who) + ": mixed polytope/Euclidean pairs are not supported");
}

QMat outer(const QVec& x, const QVec& y) {
  QMat m(int(x.size()), int(y.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) m(int(i), int(j)) = x[i] * y[j];
  return m;
}

}  // namespace

NormedSpace polytope_ball(std::vector<QVec> vertices) {
  if (vertices.empty()) throw Error("polytope_ball: no vertices");
  const int dim = int(vertices.front().size());
  QMat m(int(vertices.size()), dim);
  for (size_t i = 0; i < vertices.size(); ++i) {
    if (int(vertices[i].size()) != dim) throw Error("polytope_ball: vertex dimension mismatch");
    if (is_zero(vertices[i])) throw Error("polytope_ball: zero vertex");
    for (int j = 0; j < dim; ++j) m(int(i), j) = vertices[i][j];
  }
  if (rank(m) != dim) throw Error("polytope_ball: ball is not full-dimensional");
  for (const auto& v : vertices) {
    QVec neg(dim);
    for (int j = 0; j < dim; ++j) neg[j] = -v[j];
    if (std::find(vertices.begin(), vertices.end(), neg) == vertices.end())
      throw Error("polytope_ball: ball is not symmetric (missing -v)");
  }
  NormedSpace s;
  s.kind = NormedSpace::Kind::Polytope;
  s.dim = dim;
  s.vertices = std::move(vertices);
  return s;
}

NormedSpace euclidean_ball(int dim) {
  if (dim < 1) throw Error("euclidean_ball: dimension must be positive");
  NormedSpace s;
  s.kind = NormedSpace::Kind::Euclidean;
  s.dim = dim;
  return s;
}

NormedSpace dual_space(const NormedSpace& s) {
  if (s.kind == NormedSpace::Kind::Euclidean) return s;
  // facets of the lifted cone: (w, c) with w.v + c >= 0 on every vertex and
  // c > 0; the polar vertex is -w/c
  SymmetricGpt tmp{s};
  Cone lifted = tmp.cone();
  std::vector<QVec> polar;
  for (const auto& f : facets(lifted)) {
    const QVec& wc = f.functional;
    Rational c = wc[s.dim];
    if (c.sign() <= 0) throw Error("dual_space: unexpected facet at infinity");
    QVec v(s.dim);
    for (int j = 0; j < s.dim; ++j) v[j] = -wc[j] / c;
    polar.push_back(std::move(v));
  }
  return polytope_ball(std::move(polar));
}

Cone SymmetricGpt::cone() const {
  if (ball.kind == NormedSpace::Kind::Euclidean) return make_lorentz(ball.dim, Rational(1));
  std::vector<QVec> gens;
  for (const auto& v : ball.vertices) {
    QVec g = v;
    g.push_back(Rational(1));
    gens.push_back(std::move(g));
  }
  return make_polyhedral(ball.dim + 1, std::move(gens));
}

QVec SymmetricGpt::unit() const {
  QVec u(ball.dim + 1, Rational(0));
  u.back() = Rational(1);
  return u;
}

QVec SymmetricGpt::centre() const { return unit(); }

SymmetricGpt make_symmetric_gpt(NormedSpace ball) { return SymmetricGpt{std::move(ball)}; }

Gpt make_gpt(Cone cone, QVec unit) {
  if (int(unit.size()) != cone.ambient_dim()) throw Error("make_gpt: unit dimension mismatch");
  switch (cone.kind()) {
    case Cone::Kind::Lorentz: {
      const int n = cone.lorentz_n();
      Rational s(0);
      for (int i = 0; i < n; ++i) s += unit[i] * unit[i];
      const Rational& r = cone.lorentz_r();
      // interior of the dual cone: |w| < height / r, exactly
      if (!(unit[n].sign() > 0) || !(unit[n] * unit[n] > r * r * s))
        throw Error("make_gpt: unit is not strictly positive on the cone");
      break;
    }
    case Cone::Kind::Psd:
      throw Error("make_gpt: PSD cones are not supported here");
    default:
      for (const auto& g : extreme_rays(cone))
        if (dot(unit, g).sign() <= 0)
          throw Error("make_gpt: unit is not strictly positive on the cone");
  }
  return Gpt{std::move(cone), std::move(unit)};
}

namespace {

QVec slice_argument(const SymmetricGpt& s, const QVec& x, const char* who) {
  if (int(x.size()) == s.ball.dim) return x;
  if (int(x.size()) == s.ball.dim + 1) {
    if (!x.back().is_zero())
      throw Error(std::string(who) + ": argument has a component along the unit");
    return QVec(x.begin(), x.end() - 1);
  }
  throw Error(std::string(who) + ": argument dimension mismatch");
}

}  // namespace

Rational gauge_norm_exact(const SymmetricGpt& s, const QVec& x_in) {
  require_polytope(s.ball, "gauge_norm_exact");
  QVec x = slice_argument(s, x_in, "gauge_norm_exact");
  const auto& verts = s.ball.vertices;
  QMat a(s.ball.dim, int(verts.size()));
  for (size_t k = 0; k < verts.size(); ++k)
    for (int i = 0; i < s.ball.dim; ++i) a(i, int(k)) = verts[k][i];
  LpProblem p;
  p.eq_lhs = a;
  p.eq_rhs = x;
  p.objective.assign(verts.size(), Rational(1));
  p.nonneg.assign(verts.size(), true);
  LpOutcome out = lp_solve(p);
  if (out.status != LpStatus::Optimal)
    throw Error("gauge_norm_exact: infeasible (ball not full-dimensional?)");
  return out.objective_value;
}

double gauge_norm(const SymmetricGpt& s, const DVec& x) {
  if (s.ball.kind == NormedSpace::Kind::Euclidean) {
    if (int(x.size()) == s.ball.dim + 1 && std::abs(x.back()) > 0)
      throw Error("gauge_norm: argument has a component along the unit");
    double v = 0;
    for (int i = 0; i < s.ball.dim; ++i) v += x[i] * x[i];
    return std::sqrt(v);
  }
  QVec q(x.size());
  for (size_t i = 0; i < x.size(); ++i) q[i] = Rational(std::lround(x[i] * (1 << 20)), 1 << 20);
  return gauge_norm_exact(s, q).to_double();
}

Rational injective_norm_exact(const NormedSpace& x, const NormedSpace& y, const QMat& z) {
  require_same_kind(x, y, "injective_norm");
  require_polytope(x, "injective_norm_exact");
  if (z.rows() != x.dim || z.cols() != y.dim)
    throw Error("injective_norm_exact: tensor shape mismatch");
  NormedSpace xd = dual_space(x), yd = dual_space(y);
  Rational best;  // the dual balls are symmetric, so the max is >= 0
  for (const auto& f : xd.vertices)
    for (const auto& g : yd.vertices) best = max(best, product_pair_value(f, g, z));
  return best;
}

double injective_norm(const NormedSpace& x, const NormedSpace& y, const DMat& z) {
  require_same_kind(x, y, "injective_norm");
  if (x.kind == NormedSpace::Kind::Euclidean) return operator_norm(z);
  QMat zq(z.rows(), z.cols());
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j)
      zq(i, j) = Rational(std::lround(z(i, j) * (1 << 20)), 1 << 20);
  return injective_norm_exact(x, y, zq).to_double();
}

ProjectiveResult projective_norm_exact(const NormedSpace& x, const NormedSpace& y,
                                       const QMat& z) {
  require_same_kind(x, y, "projective_norm");
  require_polytope(x, "projective_norm_exact");
  if (z.rows() != x.dim || z.cols() != y.dim)
    throw Error("projective_norm_exact: tensor shape mismatch");
  const auto& vx = x.vertices;
  const auto& vy = y.vertices;
  const int nv = int(vx.size() * vy.size());
  QMat a(x.dim * y.dim, nv);
  int col = 0;
  for (const auto& v : vx)
    for (const auto& w : vy) {
      QVec t = vec_of(outer(v, w));
      for (int i = 0; i < int(t.size()); ++i) a(i, col) = t[i];
      ++col;
    }
  LpProblem p;
  p.eq_lhs = a;
  p.eq_rhs = vec_of(z);
  p.objective.assign(nv, Rational(1));
  p.nonneg.assign(nv, true);
  LpOutcome out = lp_solve(p);
  if (out.status != LpStatus::Optimal)
    throw Error("projective_norm_exact: decomposition LP infeasible");
  ProjectiveResult res;
  res.value = out.objective_value;
  res.decomposition = out.primal;
  res.dual_functional = mat_of(out.dual, x.dim, y.dim);
  res.dual_bound = frobenius_inner(res.dual_functional, z);
  if (!(res.dual_bound == res.value))
    throw Error("projective_norm_exact: dual bound mismatch (internal)");
  return res;
}

double projective_norm(const NormedSpace& x, const NormedSpace& y, const DMat& z) {
  require_same_kind(x, y, "projective_norm");
  if (x.kind == NormedSpace::Kind::Euclidean) return trace_norm(z);
  QMat zq(z.rows(), z.cols());
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j)
      zq(i, j) = Rational(std::lround(z(i, j) * (1 << 20)), 1 << 20);
  return projective_norm_exact(x, y, zq).value.to_double();
}

QMat omega_state(const SymmetricGpt& s1, const SymmetricGpt& s2, const QMat& z) {
  require_polytope(s1.ball, "omega_state");
  require_polytope(s2.ball, "omega_state");
  Rational eps = injective_norm_exact(s1.ball, s2.ball, z);
  if (eps > Rational(1))
    throw Error("omega_state: injective norm exceeds one (" + eps.str() + ")");
  QMat omega(s1.full_dim(), s2.full_dim());
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j) omega(i, j) = z(i, j);
  omega(s1.ball.dim, s2.ball.dim) = Rational(1);
  return omega;
}

RobustnessResult entanglement_robustness(const Gpt& a, const Gpt& b, const QMat& omega) {
  if (!max_membership(a.cone, b.cone, omega).member)
    throw Error("entanglement_robustness: state is outside the maximal tensor product");
  const auto g1 = extreme_rays(a.cone);
  const auto g2 = extreme_rays(b.cone);
  std::vector<QVec> products;
  QVec masses;
  for (const auto& v : g1)
    for (const auto& w : g2) {
      products.push_back(vec_of(outer(v, w)));
      masses.push_back(dot(a.unit, v) * dot(b.unit, w));
    }
  const int k = int(products.size());
  const int d = a.cone.ambient_dim() * b.cone.ambient_dim();
  // mu . G - lambda . G = omega; minimize the separable mass of lambda
  QMat eq(d, 2 * k);
  for (int c = 0; c < k; ++c)
    for (int i = 0; i < d; ++i) {
      eq(i, c) = -products[c][i];      // lambda block (zeta)
      eq(i, k + c) = products[c][i];   // mu block (omega + zeta)
    }
  LpProblem p;
  p.eq_lhs = eq;
  p.eq_rhs = vec_of(omega);
  p.objective.assign(2 * k, Rational(0));
  for (int c = 0; c < k; ++c) p.objective[c] = masses[c];
  p.nonneg.assign(2 * k, true);
  LpOutcome out = lp_solve(p);
  if (out.status != LpStatus::Optimal)
    throw Error("entanglement_robustness: LP failed (internal: the minimal cone is generating)");
  RobustnessResult res;
  res.value = out.objective_value;
  res.zeta_coefficients = QVec(out.primal.begin(), out.primal.begin() + k);
  QVec zeta(d, Rational(0));
  for (int c = 0; c < k; ++c) zeta = zeta + (res.zeta_coefficients[c] * products[c]);
  res.noise = mat_of(zeta, a.cone.ambient_dim(), b.cone.ambient_dim());
  return res;
}

Rational robustness_lower_bound_exact(const SymmetricGpt& s1, const SymmetricGpt& s2,
                                      const QMat& z) {
  Rational eps = injective_norm_exact(s1.ball, s2.ball, z);
  if (eps > Rational(1)) throw Error("robustness_lower_bound: injective norm exceeds one");
  Rational bound = (projective_norm_exact(s1.ball, s2.ball, z).value - Rational(1)) / Rational(2);
  return max(bound, Rational(0));
}

double robustness_lower_bound(const SymmetricGpt& s1, const SymmetricGpt& s2, const DMat& z) {
  if (s1.ball.kind == NormedSpace::Kind::Euclidean &&
      s2.ball.kind == NormedSpace::Kind::Euclidean) {
    if (operator_norm(z) > 1 + 1e-9)
      throw Error("robustness_lower_bound: injective norm exceeds one");
    return std::max((trace_norm(z) - 1) / 2, 0.0);
  }
  QMat zq(z.rows(), z.cols());
  for (int i = 0; i < z.rows(); ++i)
    for (int j = 0; j < z.cols(); ++j)
      zq(i, j) = Rational(std::lround(z(i, j) * (1 << 20)), 1 << 20);
  return robustness_lower_bound_exact(s1, s2, zq).to_double();
}

SymmetricGpt dual_symmetric_gpt(const SymmetricGpt& s) {
  return SymmetricGpt{dual_space(s.ball)};
}

}  // namespace conelab

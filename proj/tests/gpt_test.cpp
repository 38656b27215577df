#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conelab/gpt.hpp"
#include "conelab/linprog.hpp"
#include "test_support.hpp"

using namespace conelab;
using namespace conelab::testing;

namespace {

NormedSpace square_ball() {
  return polytope_ball({{q(1), q(1)}, {q(-1), q(1)}, {q(-1), q(-1)}, {q(1), q(-1)}});
}
NormedSpace diamond_ball() {
  return polytope_ball({{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(0)}, {q(0), q(-1)}});
}
NormedSpace hexagon_ball() {
  return polytope_ball({{q(1), q(0)},  {q(1, 2), q(7, 8)},   {q(-1, 2), q(7, 8)},
                        {q(-1), q(0)}, {q(-1, 2), q(-7, 8)}, {q(1, 2), q(-7, 8)}});
}

QMat chsh_z() { return QMat{{q(1), q(1)}, {q(1), q(-1)}}; }

QMat rand_tensor(Rng& rng, int r, int c, long span = 2) {
  QMat z(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) z(i, j) = rng.rat(span, 3);
  return z;
}

Rational uu_mass(const SymmetricGpt& a, const SymmetricGpt& b, const QMat& omega) {
  return omega(a.ball.dim, b.ball.dim);
}

// top-left block: the state-space projection applied on both legs
QMat block_part(const SymmetricGpt& a, const SymmetricGpt& b, const QMat& omega) {
  QMat z(a.ball.dim, b.ball.dim);
  for (int i = 0; i < a.ball.dim; ++i)
    for (int j = 0; j < b.ball.dim; ++j) z(i, j) = omega(i, j);
  return z;
}

// random separable state of mass 1: mixture of products of vertex states
QMat random_separable(Rng& rng, const SymmetricGpt& a, const SymmetricGpt& b) {
  const auto g1 = extreme_rays(a.cone());
  const auto g2 = extreme_rays(b.cone());
  QMat omega(a.full_dim(), b.full_dim());
  QVec weights;
  Rational total;
  for (int t = 0; t < 4; ++t) {
    weights.push_back(q(rng.ints(0, 5), rng.ints(1, 3)));
    total += weights.back();
  }
  if (total.is_zero()) {
    weights[0] = q(1);
    total = q(1);
  }
  for (int t = 0; t < 4; ++t) {
    const QVec& x = g1[size_t(rng.ints(0, long(g1.size()) - 1))];
    const QVec& y = g2[size_t(rng.ints(0, long(g2.size()) - 1))];
    Rational w = weights[t] / total;
    for (int i = 0; i < a.full_dim(); ++i)
      for (int j = 0; j < b.full_dim(); ++j) omega(i, j) += w * x[i] * y[j];
  }
  return omega;
}

// measure-and-prepare map: positive, unit-preserving, separability-preserving
QMat random_measure_prepare(Rng& rng, const SymmetricGpt& s) {
  Cone c = s.cone();
  const auto duals = extreme_rays(dual_cone(c));
  const auto gens = extreme_rays(c);
  // nonnegative resolution of the unit over dual rays
  std::vector<QVec> cols = duals;
  auto dec = conic_decomposition(cols, s.unit());
  REQUIRE(dec.feasible);
  const int d = s.full_dim();
  QMat lam(d, d);
  for (size_t k = 0; k < duals.size(); ++k) {
    if (dec.coefficients[k].is_zero()) continue;
    // prepare a random state: convex mixture of vertex states
    QVec st(d, Rational(0));
    Rational tot;
    for (int t = 0; t < 3; ++t) {
      Rational w = q(rng.ints(0, 4), rng.ints(1, 2));
      const QVec& g = gens[size_t(rng.ints(0, long(gens.size()) - 1))];
      Rational mass = dot(s.unit(), g);
      for (int i = 0; i < d; ++i) st[i] += w * g[i] / mass;
      tot += w;
    }
    if (tot.is_zero()) {
      st = gens[0];
      tot = dot(s.unit(), gens[0]);
    }
    for (int i = 0; i < d; ++i) st[i] /= tot;
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) lam(i, j) += dec.coefficients[k] * st[i] * duals[k][j];
  }
  return lam;
}

}  // namespace

TEST_CASE("gauge norms") {
  SymmetricGpt sq = make_symmetric_gpt(square_ball());
  SymmetricGpt di = make_symmetric_gpt(diamond_ball());
  CHECK(gauge_norm_exact(sq, {q(0), q(0)}) == q(0));
  CHECK(gauge_norm_exact(sq, {q(1), q(1)}) == q(1));  // a vertex
  CHECK(gauge_norm_exact(di, {q(1), q(1)}) == q(2));  // sum-norm ball
  CHECK(gauge_norm_exact(di, {q(1), q(0), q(0)}) == q(1));  // full-space argument
  CHECK_THROWS(gauge_norm_exact(di, {q(1), q(0), q(1)}));   // unit component present
  SymmetricGpt eu = make_symmetric_gpt(euclidean_ball(3));
  CHECK(gauge_norm(eu, {3.0, 4.0, 0.0}) == doctest::Approx(5.0));
}

TEST_CASE("injective norm") {
  NormedSpace sq = square_ball();
  // products multiply: |x (x) y| = |x| |y|
  Rng rng(1);
  SymmetricGpt s = make_symmetric_gpt(sq);
  for (int t = 0; t < 10; ++t) {
    QVec xv{rng.rat(2, 2), rng.rat(2, 2)}, yv{rng.rat(2, 2), rng.rat(2, 2)};
    QMat zz(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) zz(i, j) = xv[i] * yv[j];
    CHECK(injective_norm_exact(sq, sq, zz) ==
          gauge_norm_exact(s, xv) * gauge_norm_exact(s, yv));
  }
  CHECK(injective_norm_exact(sq, sq, chsh_z()) == q(1));
  CHECK(injective_norm(euclidean_ball(2), euclidean_ball(2), DMat::identity(2)) ==
        doctest::Approx(1.0));
  CHECK_THROWS(injective_norm_exact(sq, diamond_ball(), QMat(2, 3)));
}

TEST_CASE("projective norm") {
  NormedSpace sq = square_ball();
  auto res = projective_norm_exact(sq, sq, chsh_z());
  CHECK(res.value == q(2));
  CHECK(res.dual_bound == q(2));
  // the dual functional is feasible for the injective unit ball of the duals
  CHECK(injective_norm_exact(dual_space(sq), dual_space(sq), res.dual_functional) == q(1));
  // mass check on the decomposition
  Rational mass;
  for (const auto& w : res.decomposition) mass += w;
  CHECK(mass == q(2));

  SymmetricGpt s = make_symmetric_gpt(sq);
  Rng rng(2);
  for (int t = 0; t < 10; ++t) {
    QVec xv{rng.rat(2, 2), rng.rat(2, 2)}, yv{rng.rat(2, 2), rng.rat(2, 2)};
    QMat zz(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) zz(i, j) = xv[i] * yv[j];
    CHECK(projective_norm_exact(sq, sq, zz).value ==
          gauge_norm_exact(s, xv) * gauge_norm_exact(s, yv));
  }
  for (int n = 2; n <= 4; ++n)
    CHECK(projective_norm(euclidean_ball(n), euclidean_ball(n), DMat::identity(n)) ==
          doctest::Approx(double(n)).epsilon(1e-9));
  CHECK_THROWS(projective_norm(euclidean_ball(2), square_ball(), DMat::identity(2)));
}

TEST_CASE("normalized states from tensors with small injective norm") {
  SymmetricGpt s = make_symmetric_gpt(square_ball());
  QMat zero(2, 2);
  QMat gg = omega_state(s, s, zero);
  CHECK(gg(2, 2) == q(1));
  CHECK(min_membership(s.cone(), s.cone(), gg).member);  // a product state

  QMat half = q(1, 2) * chsh_z();
  QMat om = omega_state(s, s, half);
  CHECK(max_membership(s.cone(), s.cone(), om).member);

  CHECK_THROWS(omega_state(s, s, q(2) * chsh_z()));
}

TEST_CASE("entanglement robustness: faithfulness and the standard instance") {
  SymmetricGpt s = make_symmetric_gpt(square_ball());
  Gpt gs = make_gpt(s.cone(), s.unit());
  Rng rng(3);
  for (int t = 0; t < 5; ++t) {
    QMat sep = random_separable(rng, s, s);
    auto rr = entanglement_robustness(gs, gs, sep);
    CHECK(rr.value == q(0));
  }

  QMat om = omega_state(s, s, chsh_z());  // injective norm exactly 1
  auto rr = entanglement_robustness(gs, gs, om);
  CHECK(rr.value >= q(1, 2));
  CHECK_FALSE(min_membership(s.cone(), s.cone(), om).member);
  // optimizer really works: omega + zeta is separable and zeta separable
  QMat repaired = om + rr.noise;
  CHECK(min_membership(s.cone(), s.cone(), repaired).member);
  CHECK(min_membership(s.cone(), s.cone(), rr.noise).member);

  // lower bound from the norm gap
  CHECK(robustness_lower_bound_exact(s, s, chsh_z()) == q(1, 2));
  CHECK(rr.value >= robustness_lower_bound_exact(s, s, chsh_z()));

  // the diamond-pair witness has strictly positive robustness
  Cone d = diamond_cone();
  Gpt gd = make_gpt(d, {q(0), q(0), q(1)});
  QMat hinv{{q(1, 2), q(1, 2), q(0)}, {q(1, 2), q(-1, 2), q(0)}, {q(0), q(0), q(1)}};
  auto rd = entanglement_robustness(gd, gd, hinv);
  CHECK(rd.value.sign() > 0);

  // Euclidean lower bound instance
  for (int n = 2; n <= 4; ++n) {
    SymmetricGpt eu = make_symmetric_gpt(euclidean_ball(n));
    double lb = robustness_lower_bound(eu, eu, DMat::identity(n));
    CHECK(lb == doctest::Approx((n - 1) / 2.0).epsilon(1e-9));
  }
}

TEST_CASE("dual symmetric theories") {
  SymmetricGpt sq = make_symmetric_gpt(square_ball());
  SymmetricGpt dual = dual_symmetric_gpt(sq);
  CHECK(ray_set(dual.ball.vertices) == ray_set(diamond_ball().vertices));
  SymmetricGpt dd = dual_symmetric_gpt(dual);
  CHECK(ray_set(dd.ball.vertices) == ray_set(square_ball().vertices));
  SymmetricGpt eu = make_symmetric_gpt(euclidean_ball(3));
  CHECK(dual_symmetric_gpt(eu).ball.kind == NormedSpace::Kind::Euclidean);

  // dual-norm formula on sampled vectors: gauge in the dual equals the
  // supremum over the primal ball
  Rng rng(4);
  for (int t = 0; t < 25; ++t) {
    QVec f{rng.rat(3, 3), rng.rat(3, 3)};
    Rational by_formula;
    for (const auto& v : sq.ball.vertices) by_formula = max(by_formula, dot(f, v));
    CHECK(gauge_norm_exact(dual, f) == by_formula);
  }
}

TEST_CASE("norm comparison and duality on random tensors") {
  std::vector<NormedSpace> shapes{square_ball(), diamond_ball(), hexagon_ball()};
  Rng rng(5);
  int checked = 0;
  for (int t = 0; t < 50; ++t) {
    const NormedSpace& x = shapes[size_t(t % 3)];
    const NormedSpace& y = shapes[size_t((t / 3) % 3)];
    QMat z = rand_tensor(rng, x.dim, y.dim);
    Rational eps = injective_norm_exact(x, y, z);
    auto proj = projective_norm_exact(x, y, z);
    CHECK(eps <= proj.value);
    CHECK(proj.dual_bound == proj.value);
    if (!eps.is_zero()) {
      CHECK(injective_norm_exact(dual_space(x), dual_space(y), proj.dual_functional) == q(1));
      ++checked;
    }
  }
  CHECK(checked > 40);
}

TEST_CASE("states versus norms, all four directions") {
  std::vector<NormedSpace> shapes{square_ball(), diamond_ball(), hexagon_ball()};
  Rng rng(6);
  int runs = 0;
  for (int t = 0; t < 300; ++t) {
    SymmetricGpt a = make_symmetric_gpt(shapes[size_t(t % 3)]);
    SymmetricGpt b = make_symmetric_gpt(shapes[size_t((t / 3) % 3)]);
    QMat z = rand_tensor(rng, a.ball.dim, b.ball.dim);
    Rational eps = injective_norm_exact(a.ball, b.ball, z);
    Rational pi = projective_norm_exact(a.ball, b.ball, z).value;
    if (eps.is_zero()) continue;
    ++runs;

    // (c) projective norm at most one puts the centred state in the minimal cone
    Rational rho = q(rng.ints(1, 4), 4);
    QMat zc = (rho / pi) * z;
    QMat oc = omega_state(a, b, zc);  // pi(zc) = rho <= 1 implies eps <= 1
    CHECK(min_membership(a.cone(), b.cone(), oc).member);

    // (d) injective norm at most one puts it in the maximal cone
    QMat zd = (rho / eps) * z;
    CHECK(max_membership(a.cone(), b.cone(), omega_state(a, b, zd)).member);

    // (a) separable states: projective norm of the block at most the mass
    QMat sep = random_separable(rng, a, b);
    CHECK(projective_norm_exact(a.ball, b.ball, block_part(a, b, sep)).value <=
          uu_mass(a, b, sep));

    // (b) maximal-cone states: injective norm of the block at most the mass
    QMat mix = omega_state(a, b, zd) + sep;
    CHECK(injective_norm_exact(a.ball, b.ball, block_part(a, b, mix)) <= uu_mass(a, b, mix));
  }
  CHECK(runs >= 270);
}

TEST_CASE("robustness: faithfulness both ways and the norm lower bound") {
  SymmetricGpt a = make_symmetric_gpt(square_ball());
  SymmetricGpt b = make_symmetric_gpt(hexagon_ball());
  Gpt ga = make_gpt(a.cone(), a.unit());
  Gpt gb = make_gpt(b.cone(), b.unit());
  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    QMat z = rand_tensor(rng, 2, 2);
    Rational eps = injective_norm_exact(a.ball, b.ball, z);
    if (eps.is_zero()) continue;
    QMat zn = (q(rng.ints(1, 4), 4) / eps) * z;
    QMat om = omega_state(a, b, zn);
    auto rr = entanglement_robustness(ga, gb, om);
    bool separable = min_membership(a.cone(), b.cone(), om).member;
    CHECK((rr.value == q(0)) == separable);
    CHECK(rr.value >= robustness_lower_bound_exact(a, b, zn));
  }
}

TEST_CASE("robustness never increases under local measure-and-prepare maps") {
  SymmetricGpt a = make_symmetric_gpt(square_ball());
  SymmetricGpt b = make_symmetric_gpt(diamond_ball());
  Gpt ga = make_gpt(a.cone(), a.unit());
  Gpt gb = make_gpt(b.cone(), b.unit());
  Rng rng(8);
  int nontrivial = 0;
  for (int t = 0; t < 50; ++t) {
    QMat z = rand_tensor(rng, 2, 2);
    Rational eps = injective_norm_exact(a.ball, b.ball, z);
    if (eps.is_zero()) continue;
    QMat om = omega_state(a, b, (q(1) / eps) * z);
    QMat l1 = random_measure_prepare(rng, a);
    QMat l2 = random_measure_prepare(rng, b);
    // unit preservation, exactly
    for (int i = 0; i < a.full_dim(); ++i) {
      CHECK(dot(a.unit(), l1.col(i)) == a.unit()[i]);
      CHECK(dot(b.unit(), l2.col(i)) == b.unit()[i]);
    }
    QMat mapped = l1 * om * l2.transpose();
    auto before = entanglement_robustness(ga, gb, om);
    auto after = entanglement_robustness(ga, gb, mapped);
    CHECK(after.value <= before.value);
    if (before.value.sign() > 0) ++nontrivial;
  }
  CHECK(nontrivial > 10);
}

TEST_CASE("reference constants are documented, not recomputed") {
  CHECK(kProjectiveInjectiveRatioFloor == q(19, 18));
  CHECK(kRobustnessUniversalFloor == q(1, 36));
  CHECK((kProjectiveInjectiveRatioFloor - q(1)) / q(2) == kRobustnessUniversalFloor);
}

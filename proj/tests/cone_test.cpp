#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <atomic>
#include <functional>
#include <set>
#include <thread>

#include "conelab/cone.hpp"
#include "conelab/herm.hpp"

using namespace conelab;

namespace {

Rational q(long n, long d = 1) { return Rational(n, d); }

QVec v3(long a, long b, long c) { return {q(a), q(b), q(c)}; }

Cone diamond_cone() { return make_polygon({{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(0)}, {q(0), q(-1)}}); }
Cone square_cone() { return make_polygon({{q(1), q(1)}, {q(-1), q(1)}, {q(-1), q(-1)}, {q(1), q(-1)}}); }
Cone triangle_cone() { return make_polygon({{q(1), q(0)}, {q(0), q(1)}, {q(-1), q(-1)}}); }
Cone pentagon_cone() {
  return make_polygon(
      {{q(1), q(0)}, {q(3, 4), q(3, 4)}, {q(0), q(1)}, {q(-1), q(0)}, {q(0), q(-1)}});
}

std::set<QVec> ray_set(const std::vector<QVec>& rays) {
  std::set<QVec> s;
  for (const auto& r : rays) s.insert(canonical_ray(r));
  return s;
}

// Independent facet oracle for 3-dimensional cones: a facet normal is the
// cross product of two generators that leaves every generator on one side.
std::set<QVec> facet_oracle_3d(const std::vector<QVec>& gens) {
  std::set<QVec> out;
  for (size_t i = 0; i < gens.size(); ++i)
    for (size_t j = i + 1; j < gens.size(); ++j) {
      const QVec &a = gens[i], &b = gens[j];
      QVec n{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
      if (is_zero(n)) continue;
      bool all_nonneg = true, all_nonpos = true;
      for (const auto& g : gens) {
        int s = dot(n, g).sign();
        all_nonneg &= s >= 0;
        all_nonpos &= s <= 0;
      }
      if (all_nonneg)
        out.insert(canonical_ray(n));
      else if (all_nonpos)
        out.insert(canonical_ray(Rational(-1) * n));
    }
  return out;
}

}  // namespace

TEST_CASE("construction rejects improper cones") {
  CHECK_THROWS(make_polyhedral(2, {v3(1, 0, 0)}));                      // dim mismatch
  CHECK_THROWS(make_polyhedral(3, {{q(0), q(0), q(0)}}));               // zero generator
  CHECK_THROWS(make_polyhedral(2, {{q(1), q(0)}}));                     // not generating
  CHECK_THROWS(make_polyhedral(1, {{q(1)}, {q(-1)}}));                  // not salient
  CHECK_THROWS(make_polyhedral(2, {{q(1), q(0)}, {q(-1), q(0)}, {q(0), q(1)}}));  // line inside
  CHECK_THROWS(make_polygon({{q(0), q(0)}, {q(1), q(0)}}));             // too few vertices
  // clockwise ordering rejected
  CHECK_THROWS(make_polygon({{q(0), q(1)}, {q(1), q(0)}, {q(-1), q(-1)}}));
  // collinear vertex rejected
  CHECK_THROWS(make_polygon({{q(1), q(0)}, {q(1, 2), q(1, 2)}, {q(0), q(1)}, {q(-1), q(-1)}}));
  CHECK_THROWS(make_lorentz(2, q(0)));
  CHECK_THROWS(make_lorentz(2, q(-1)));
}

TEST_CASE("membership: orthant, Lorentz boundary, PSD outside") {
  Cone orthant = make_classical(3);
  auto in = membership(orthant, v3(1, 2, 3));
  CHECK(in.where == Where::Inside);
  REQUIRE(in.decomposition.has_value());
  CHECK(*in.decomposition == v3(1, 2, 3));

  // same through an explicit polyhedral representation
  Cone orthant_poly = make_polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
  auto in2 = membership(orthant_poly, v3(1, 2, 3));
  CHECK(in2.where == Where::Inside);
  CHECK(*in2.decomposition == v3(1, 2, 3));

  Cone lor = make_lorentz(2, q(1));
  CHECK(membership(lor, v3(3, 4, 5)).where == Where::Boundary);
  CHECK(membership(lor, v3(3, 4, 6)).where == Where::Inside);
  auto out = membership(lor, v3(3, 4, 4));
  CHECK(out.where == Where::Outside);
  REQUIRE(out.separating.has_value());
  // witness lies in the dual cone and separates, exactly
  const QVec& f = *out.separating;
  CHECK(f[2] * f[2] >= f[0] * f[0] + f[1] * f[1]);
  CHECK(dot(f, v3(3, 4, 4)).sign() < 0);

  Cone psd = make_psd(2);
  // [[1,2],[2,1]] has eigenvalue -1
  QCMat m(2, 2);
  m.re(0, 0) = q(1);
  m.re(1, 1) = q(1);
  m.re(0, 1) = m.re(1, 0) = q(2);
  auto pr = membership(psd, herm_coords(m));
  CHECK(pr.where == Where::Outside);
  CHECK(*pr.min_eigenvalue == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("membership classifies boundary and outside with witnesses") {
  Cone sq = square_cone();
  CHECK(membership(sq, v3(1, 1, 1)).where == Where::Boundary);
  CHECK(membership(sq, v3(0, 0, 1)).where == Where::Inside);
  CHECK(membership(sq, v3(0, 0, 0)).where == Where::Boundary);
  auto out = membership(sq, v3(3, 0, 1));
  CHECK(out.where == Where::Outside);
  REQUIRE(out.separating.has_value());
  for (const auto& r : extreme_rays(sq)) CHECK(dot(*out.separating, r).sign() >= 0);
  CHECK(dot(*out.separating, v3(3, 0, 1)).sign() < 0);
}

TEST_CASE("dual cones: orthant, diamond and square") {
  Cone orthant = make_polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
  CHECK(ray_set(extreme_rays(dual_cone(orthant))) ==
        ray_set({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}));

  // dual of the diamond cone: the four lifted square corners
  CHECK(ray_set(extreme_rays(dual_cone(diamond_cone()))) ==
        ray_set({v3(1, 1, 1), v3(1, -1, 1), v3(-1, 1, 1), v3(-1, -1, 1)}));

  // dual of the square cone is the diamond cone; double-check by exact
  // pairwise nonnegativity in both directions
  auto dual_sq = extreme_rays(dual_cone(square_cone()));
  CHECK(ray_set(dual_sq) == ray_set(extreme_rays(diamond_cone())));
  for (const auto& f : dual_sq)
    for (const auto& g : extreme_rays(square_cone())) CHECK(dot(f, g).sign() >= 0);
}

TEST_CASE("bipolarity: dual of dual restores the extreme rays") {
  std::vector<Cone> cones{square_cone(), diamond_cone(), pentagon_cone(),
                          make_polyhedral(3, {v3(1, 0, 1), v3(0, 1, 1), v3(-1, -1, 2), v3(1, 1, 3)})};
  for (const auto& c : cones) {
    Cone dd = dual_cone(dual_cone(c));
    CHECK(ray_set(extreme_rays(dd)) == ray_set(extreme_rays(c)));
  }
}

TEST_CASE("classicality detection") {
  CHECK(is_classical(make_classical(4)).classical);
  CHECK(is_classical(make_classical(4)).basis.size() == 4);
  CHECK_FALSE(is_classical(square_cone()).classical);
  CHECK(is_classical(triangle_cone()).classical);
  CHECK_FALSE(is_classical(make_lorentz(2, q(1))).classical);
  CHECK(is_classical(make_lorentz(1, q(2))).classical);
  CHECK_FALSE(is_classical(make_psd(2)).classical);
  CHECK(is_classical(make_psd(1)).classical);
  // redundant generators do not fool the test
  Cone padded = make_polyhedral(2, {{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}});
  CHECK(is_classical(padded).classical);
}

TEST_CASE("extreme rays drop redundant generators") {
  Cone padded = make_polyhedral(2, {{q(1), q(0)}, {q(0), q(1)}, {q(1), q(1)}});
  CHECK(ray_set(extreme_rays(padded)) == ray_set({{q(1), q(0)}, {q(0), q(1)}}));
  CHECK(extreme_rays(square_cone()).size() == 4);
  CHECK(extreme_rays(pentagon_cone()).size() == 5);
}

TEST_CASE("facets of orthant, square cone, triangle cone") {
  Cone orthant = make_polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
  auto of = facets(orthant);
  CHECK(of.size() == 3);
  std::set<QVec> fs;
  for (const auto& f : of) {
    fs.insert(f.functional);
    CHECK(f.incident.size() == 2);
  }
  CHECK(fs == ray_set({v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)}));

  auto sf = facets(square_cone());
  CHECK(sf.size() == 4);
  std::set<QVec> got;
  for (const auto& f : sf) {
    CHECK(f.incident.size() == 2);  // two adjacent corners per facet
    got.insert(canonical_ray(f.functional));
  }
  CHECK(got == facet_oracle_3d(extreme_rays(square_cone())));

  CHECK(facets(triangle_cone()).size() == 3);
  CHECK(facets(pentagon_cone()).size() == 5);
  CHECK(got == ray_set(extreme_rays(dual_cone(square_cone()))));
}

TEST_CASE("membership/facet consistency: outside iff some facet goes negative") {
  Cone pen = pentagon_cone();
  std::mt19937_64 rng(17);
  auto rnd = [&](int span) { return q(long(rng() % (2 * span + 1)) - span, 1 + long(rng() % 3)); };
  for (int t = 0; t < 40; ++t) {
    QVec x{rnd(4), rnd(4), rnd(2)};
    auto r = membership(pen, x);
    bool neg = false;
    for (const auto& f : facets(pen)) neg |= dot(f.functional, x).sign() < 0;
    CHECK((r.where == Where::Outside) == neg);
  }
}

TEST_CASE("apply_linear: identity, lifted affine map, isomorphism invariance") {
  Cone d = diamond_cone();
  Cone same = apply_linear(d, QMat::identity(3));
  CHECK(ray_set(extreme_rays(same)) == ray_set(extreme_rays(d)));

  // lifted affine map (x, t) -> (Px + tz, t): maps cone over K to cone over P(K)+z
  QMat lift{{q(2), q(0), q(1)}, {q(0), q(1), q(-1)}, {q(0), q(0), q(1)}};
  Cone img = apply_linear(d, lift);
  std::set<QVec> expect;
  for (const auto& r : extreme_rays(d)) expect.insert(canonical_ray(lift * r));
  CHECK(ray_set(extreme_rays(img)) == expect);
  CHECK_FALSE(is_classical(img).classical);

  CHECK_THROWS(apply_linear(d, QMat(3, 3)));  // singular

  // classicality preserved under invertible maps
  std::mt19937_64 rng(5);
  for (int t = 0; t < 10; ++t) {
    QMat m(3, 3);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) m(i, j) = q(long(rng() % 7) - 3);
    } while (det(m).is_zero());
    CHECK(is_classical(apply_linear(triangle_cone(), m)).classical);
    CHECK_FALSE(is_classical(apply_linear(square_cone(), m)).classical);
    // dual of classical is classical
    CHECK(is_classical(dual_cone(apply_linear(make_classical(3), m))).classical);
  }
}

TEST_CASE("closed-form duals: Lorentz radius inverts, PSD and classical are self-dual") {
  Cone lor = dual_cone(make_lorentz(3, q(2)));
  CHECK(lor.kind() == Cone::Kind::Lorentz);
  CHECK(lor.lorentz_r() == q(1, 2));
  CHECK(dual_cone(lor).lorentz_r() == q(2));
  CHECK(dual_cone(make_psd(3)).kind() == Cone::Kind::Psd);
  CHECK(dual_cone(make_classical(4)).kind() == Cone::Kind::Classical);
}

TEST_CASE("floating-point membership uses a scale-invariant tolerance") {
  Cone lor = make_lorentz(2, q(1));
  CHECK(membership(lor, DVec{3.0, 4.0, 5.0 + 1e-12}).where == Where::Boundary);
  CHECK(membership(lor, DVec{3e8, 4e8, 5e8 + 0.5}).where == Where::Boundary);
  CHECK(membership(lor, DVec{3.0, 4.0, 6.0}).where == Where::Inside);
  CHECK(membership(lor, DVec{3.0, 4.0, 4.0}).where == Where::Outside);
  CHECK(membership(lor, DVec{0.0, 0.0, -1.0}).where == Where::Outside);

  Cone psd = make_psd(2);
  // [[1, 1-eps], [1-eps, 1]] is just inside; [[1, 1+eps], ...] just outside
  CHECK(membership(psd, DVec{1.0, 1.0, 1.0 - 1e-6, 0.0}).where == Where::Inside);
  CHECK(membership(psd, DVec{1.0, 1.0, 1.0 + 1e-6, 0.0}).where == Where::Outside);
  CHECK(membership(psd, DVec{1.0, 1.0, 1.0, 0.0}).where == Where::Boundary);
  CHECK_THROWS(membership(square_cone(), DVec{0.0, 0.0, 1.0}));
}

TEST_CASE("Lorentz self-duality on sampled members") {
  Cone lor = make_lorentz(2, q(1));
  // rational boundary points from Pythagorean triples, plus interior points
  std::vector<QVec> members{v3(3, 4, 5),  v3(-3, 4, 5), v3(5, 12, 13), v3(-5, -12, 13),
                            v3(8, -15, 17), v3(1, 1, 2), v3(0, 0, 1),  v3(-2, 1, 4)};
  for (const auto& x : members) {
    REQUIRE(membership(lor, x).where != Where::Outside);
    for (const auto& y : members) CHECK(dot(x, y).sign() >= 0);
  }
}

TEST_CASE("strictly positive functional is strictly positive") {
  for (const auto& c : {square_cone(), pentagon_cone(), triangle_cone()}) {
    QVec u = strictly_positive_functional(c);
    for (const auto& r : extreme_rays(c)) CHECK(dot(u, r).sign() > 0);
  }
}

TEST_CASE("double description agrees with subset enumeration on random cones") {
  // facet oracle for any dimension: kernels of (d-1)-subsets of generators
  // that leave every generator on one side
  auto oracle = [](const std::vector<QVec>& gens, int dim) {
    std::set<QVec> out;
    std::vector<int> idx(size_t(dim - 1));
    std::function<void(int, int)> rec = [&](int start, int k) {
      if (k == dim - 1) {
        QMat m(dim - 1, dim);
        for (int i = 0; i + 1 < dim; ++i)
          for (int j = 0; j < dim; ++j) m(i, j) = gens[idx[size_t(i)]][j];
        auto ker = kernel_basis(m);
        if (ker.size() != 1) return;
        QVec n = canonical_ray(ker[0]);
        bool pos = true, neg = true;
        for (const auto& g : gens) {
          int s = dot(n, g).sign();
          pos &= s >= 0;
          neg &= s <= 0;
        }
        if (pos)
          out.insert(n);
        else if (neg)
          out.insert(canonical_ray(Rational(-1) * n));
        return;
      }
      for (int i = start; i <= int(gens.size()) - (dim - 1 - k); ++i) {
        idx[size_t(k)] = i;
        rec(i + 1, k + 1);
      }
    };
    rec(0, 0);
    return out;
  };

  std::mt19937_64 rng(20240812);
  auto coin = [&](long lo, long hi) { return long(lo + long(rng() % uint64_t(hi - lo + 1))); };
  int built = 0;
  while (built < 25) {
    int dim = 3 + int(coin(0, 1));
    int m = int(coin(dim, dim + 4));
    std::vector<QVec> gens;
    for (int i = 0; i < m; ++i) {
      QVec v(dim);
      for (int j = 0; j + 1 < dim; ++j) v[j] = q(coin(-3, 3), coin(1, 2));
      v[dim - 1] = q(1);
      gens.push_back(std::move(v));
    }
    try {
      Cone c = make_polyhedral(dim, gens);
      std::set<QVec> dd;
      for (const auto& f : facets(c)) dd.insert(canonical_ray(f.functional));
      CHECK(dd == oracle(extreme_rays(c), dim));
      ++built;
    } catch (const Error&) {
      continue;  // degenerate draw
    }
  }
}

TEST_CASE("concurrent queries share caches safely") {
  Cone c = pentagon_cone();
  Cone copy = c;  // copies share the lazily filled data
  std::vector<std::thread> workers;
  std::atomic<int> oks{0};
  for (int t = 0; t < 8; ++t)
    workers.emplace_back([&, t] {
      const Cone& mine = (t % 2) ? c : copy;
      auto ext = extreme_rays(mine);
      auto fac = facets(mine);
      auto m = membership(mine, v3(0, 0, 1));
      if (ext.size() == 5 && fac.size() == 5 && m.where == Where::Inside) ++oks;
    });
  for (auto& w : workers) w.join();
  CHECK(oks == 8);
}

TEST_CASE("double description caps") {
  std::vector<QVec> gens = extreme_rays(square_cone());
  DdCaps caps;
  caps.max_dim = 2;
  CHECK_THROWS_AS(dual_rays_via_dd(gens, 3, caps), CapExceeded);
  caps.max_dim = 8;
  caps.max_generators = 3;
  CHECK_THROWS_AS(dual_rays_via_dd(gens, 3, caps), CapExceeded);
}

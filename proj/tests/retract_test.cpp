#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "conelab/retract.hpp"
#include "conelab/witness3d.hpp"
#include "test_support.hpp"

using namespace conelab;
using namespace conelab::testing;

namespace {

// cone over the d-cube: all sign vectors lifted
Cone cube_cone(int d) {
  std::vector<QVec> gens;
  for (int mask = 0; mask < (1 << d); ++mask) {
    QVec v(d + 1, q(1));
    for (int i = 0; i < d; ++i) v[i] = (mask >> i & 1) ? q(1) : q(-1);
    gens.push_back(std::move(v));
  }
  return make_polyhedral(d + 1, std::move(gens));
}

// cone over the d-dimensional cross-polytope
Cone cross_cone(int d) {
  std::vector<QVec> gens;
  for (int i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      QVec v(d + 1, q(0));
      v[i] = q(s);
      v[d] = q(1);
      gens.push_back(std::move(v));
    }
  return make_polyhedral(d + 1, std::move(gens));
}

// cone over the prism base x [0,1]
Cone prism_cone(const Cone& base_cone) {
  const auto ext = extreme_rays(base_cone);
  int d = base_cone.ambient_dim();
  std::vector<QVec> gens;
  for (const auto& r : ext)
    for (int level : {0, 1}) {
      QVec v = r;
      v.insert(v.end() - 1, q(level));  // new coordinate before the lift coordinate
      gens.push_back(std::move(v));
    }
  return make_polyhedral(d + 1, std::move(gens));
}

bool has_nonclassical_facet(const Cone& c) {
  for (const auto& f : facets(c))
    if (int(f.incident.size()) > c.ambient_dim() - 1) return true;
  return false;
}

}  // namespace

TEST_CASE("verify_retract accepts identities and rejects scaled ones") {
  Cone r3 = make_classical(3);
  RetractPair idp{r3, r3, QMat::identity(3), QMat::identity(3)};
  CHECK(verify_retract(idp).ok);

  // coordinate projection with inclusion
  Cone r2 = make_classical(2);
  QMat proj(2, 3);
  proj(0, 0) = q(1);
  proj(1, 1) = q(1);
  QMat incl(3, 2);
  incl(0, 0) = q(1);
  incl(1, 1) = q(1);
  RetractPair pr{r3, r2, proj, incl};
  CHECK(verify_retract(pr).ok);

  // phi . psi = 2I is not a retract pair
  RetractPair doubled{r3, r2, q(2) * proj, incl};
  CHECK_FALSE(verify_retract(doubled).ok);

  // positive-but-wrong image still caught through the identity test
  RetractPair swapped{r3, r2, proj, QMat(3, 2)};
  CHECK_FALSE(verify_retract(swapped).ok);
}

TEST_CASE("facet retract of the orthant") {
  Cone r3 = make_polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
  const auto fs = facets(r3);
  REQUIRE(fs.size() == 3);
  RetractPair r = facet_retract(r3, 0);
  CHECK(verify_retract(r).ok);
  CHECK(r.target.ambient_dim() == 2);
  CHECK(is_classical(r.target).classical);
  // every generator, including the one off the facet, maps into the target
  for (const auto& g : extreme_rays(r3))
    CHECK(membership(r.target, r.phi * g).where != Where::Outside);
}

TEST_CASE("facet retract of the square cone lands on a classical edge cone") {
  Cone s = square_cone();
  RetractPair r = facet_retract(s, 1);
  CHECK(verify_retract(r).ok);
  CHECK(r.target.ambient_dim() == 2);
  CHECK(is_classical(r.target).classical);
}

TEST_CASE("facet retract of the cube cone is 3-dimensional and non-classical") {
  Cone c = cube_cone(3);
  const auto fs = facets(c);
  REQUIRE(fs.size() == 6);
  for (size_t k = 0; k < fs.size(); ++k) CHECK(fs[k].incident.size() == 4);
  RetractPair r = facet_retract(c, 0);
  CHECK(verify_retract(r).ok);
  CHECK(r.target.ambient_dim() == 3);
  CHECK_FALSE(is_classical(r.target).classical);
}

TEST_CASE("retracts dualize") {
  Cone r3 = make_polyhedral(3, {v3(1, 0, 0), v3(0, 1, 0), v3(0, 0, 1)});
  RetractPair r = facet_retract(r3, 0);
  RetractPair d = dualize_retract(r);
  CHECK(verify_retract(d).ok);
  CHECK(is_classical(d.source).classical);
  CHECK(is_classical(d.target).classical);

  RetractPair s = facet_retract(square_cone(), 0);
  RetractPair ds = dualize_retract(s);
  CHECK(verify_retract(ds).ok);
  CHECK(ray_set(extreme_rays(ds.source)) == ray_set(extreme_rays(diamond_cone())));

  // dualizing twice restores the maps exactly
  RetractPair dd = dualize_retract(ds);
  CHECK(dd.phi == s.phi);
  CHECK(dd.psi == s.psi);

  // corrupted pair is rejected before dualizing
  RetractPair broken = s;
  broken.psi(0, 0) += q(1, 3);
  CHECK_THROWS(dualize_retract(broken));
}

TEST_CASE("composition of verified retracts verifies") {
  Cone c = cube_cone(3);
  RetractPair first = facet_retract(c, 0);
  RetractPair second = facet_retract(first.target, 0);
  RetractPair total = compose_retracts(second, first);
  CHECK(verify_retract(total).ok);
  CHECK(total.source.ambient_dim() == 4);
  CHECK(total.target.ambient_dim() == 2);
  CHECK(total.phi * total.psi == QMat::identity(2));
}

TEST_CASE("descent: square cone stays put") {
  auto t = descend_to_3d(square_cone());
  CHECK(t.steps.empty());
  CHECK(t.final_cone.ambient_dim() == 3);
  CHECK(verify_retract(t.total).ok);
}

TEST_CASE("descent: cube cone uses a primal facet") {
  auto t = descend_to_3d(cube_cone(3));
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].kind == DescentStep::Kind::FacetRetract);
  CHECK_FALSE(is_classical(t.final_cone).classical);
  CHECK(extreme_rays(t.final_cone).size() == 4);  // a square cone up to isomorphism
  CHECK(verify_retract(t.total).ok);
}

TEST_CASE("descent: cross-polytope cone must pass through the dual") {
  Cone c = cross_cone(3);
  // all primal facets are simplex cones
  for (const auto& f : facets(c)) CHECK(f.incident.size() == 3);
  auto t = descend_to_3d(c);
  REQUIRE(t.steps.size() == 1);
  CHECK(t.steps[0].kind == DescentStep::Kind::DualFacetRetract);
  CHECK_FALSE(is_classical(t.final_cone).classical);
  CHECK(verify_retract(t.total).ok);
}

TEST_CASE("descent rejects classical input") {
  CHECK_THROWS_AS(descend_to_3d(make_classical(4)), ClassicalInputError);
  CHECK_THROWS_AS(descend_to_3d(triangle_cone()), ClassicalInputError);
}

TEST_CASE("simple/simplicial dichotomy on polytope cones of dimension 4-6") {
  std::vector<Cone> cones{cube_cone(3),          cross_cone(3), prism_cone(triangle_cone()),
                          cube_cone(4),          cross_cone(4), prism_cone(cross_cone(3)),
                          prism_cone(cube_cone(3))};
  for (const auto& c : cones) {
    REQUIRE_FALSE(is_classical(c).classical);
    bool primal = has_nonclassical_facet(c);
    bool dual = has_nonclassical_facet(dual_cone(c));
    CHECK((primal || dual));
  }
}

TEST_CASE("polygon form of a 3-dimensional cone") {
  Cone c = apply_linear(square_cone(), QMat{{q(2), q(1), q(0)}, {q(0), q(1), q(1)}, {q(1), q(0), q(3)}});
  RetractPair iso = polygon_form_3d(c);
  CHECK(verify_retract(iso).ok);
  CHECK(iso.target.kind() == Cone::Kind::Polygon);
  CHECK(extreme_rays(iso.target).size() == 4);
}

TEST_CASE("lift through identity retracts keeps the certificate") {
  Cone s = square_cone();
  auto base = entangle_3d(s, s);
  RetractPair id1{s, s, QMat::identity(3), QMat::identity(3)};
  auto lifted = lift_certificate(base, id1, id1);
  CHECK(lifted.witness == base.witness);
  CHECK(lifted.functional == base.functional);
  CHECK(lifted.separation_value == base.separation_value);
}

TEST_CASE("lift through a corrupted retract is rejected") {
  Cone c = cube_cone(3);
  auto t = descend_to_3d(c);
  RetractPair r = compose_retracts(polygon_form_3d(t.final_cone), t.total);
  auto base = entangle_3d(r.target, r.target);
  RetractPair broken = r;
  broken.psi(0, 0) += q(1);
  CHECK_THROWS(lift_certificate(base, broken, r));
}

TEST_CASE("result-2 pipeline: cube x cube and cube x cross-polytope") {
  Cone cc = cube_cone(3);
  auto cert = certify_entangleable_polyhedral(cc, cc);
  CHECK(cert.separation_value.sign() < 0);
  CHECK(verify_certificate(cert, cc, cc).ok);

  Cone cr = cross_cone(3);
  auto cert2 = certify_entangleable_polyhedral(cc, cr);
  CHECK(verify_certificate(cert2, cc, cr).ok);

  CHECK_THROWS_AS(certify_entangleable_polyhedral(make_classical(4), cc), ClassicalInputError);
  try {
    certify_entangleable_polyhedral(make_classical(4), cc);
  } catch (const ClassicalInputError& e) {
    CHECK(e.basis.size() == 4);  // basis witness travels with the error
    CHECK(std::string(e.what()).find("first") != std::string::npos);
  }
}

TEST_CASE("result-2 pipeline on a polygon pair goes through unchanged") {
  Cone s = square_cone();
  auto cert = certify_entangleable_polyhedral(s, s);
  CHECK(verify_certificate(cert, s, s).ok);
  CHECK(cert.separation_value == q(-1));
}

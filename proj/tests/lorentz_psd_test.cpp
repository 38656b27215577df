#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conelab/lorentz_psd.hpp"
#include "conelab/spectral.hpp"
#include "test_support.hpp"

using namespace conelab;
using namespace conelab::testing;

namespace {

DMat dident(int n) { return DMat::identity(n); }

CenteredTensor centered(DMat b, double t) { return {std::move(b), t}; }

}  // namespace

TEST_CASE("centered membership against the maximal product") {
  CHECK(lorentz_max_membership_centered(centered(dident(3), 1.0)));
  CHECK_FALSE(lorentz_max_membership_centered(centered(2.0 * dident(2), 1.0)));
  CHECK(lorentz_max_membership_centered(centered(DMat(2, 2), 0.0)));  // zero tensor
  CHECK_THROWS(lorentz_max_membership_centered(centered(dident(2), -1.0)));
}

TEST_CASE("centered membership against the minimal product") {
  for (int n = 2; n <= 4; ++n) {
    CHECK(lorentz_min_membership_centered(centered(dident(n), 1.0), double(n)));
    CHECK_FALSE(lorentz_min_membership_centered(centered(dident(n), 1.0), n - 0.5));
  }
  // rank-one unit block at r = 1: a product tensor
  DMat r1(2, 2);
  r1(0, 0) = 0.6;
  r1(1, 0) = 0.8;
  CHECK(lorentz_min_membership_centered(centered(r1, 1.0), 1.0));
  CHECK_THROWS(lorentz_min_membership_centered(centered(r1, 1.0), -2.0));
}

TEST_CASE("ice-cream gap at every dimension from 2 to 6") {
  for (int n = 2; n <= 6; ++n) {
    CenteredTensor z = centered(dident(n), 1.0);
    CHECK(lorentz_max_membership_centered(z));                          // r = 1 side
    CHECK_FALSE(lorentz_min_membership_centered(z, double(n) - 1e-6));  // strict gap
    CHECK(lorentz_min_membership_centered(z, double(n)));               // closes at n
  }
}

TEST_CASE("minimal membership is monotone in the radius") {
  Rng rng(8080);
  std::mt19937_64 g(4242);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 40; ++t) {
    int n = 2 + int(g() % 3);
    DMat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = gauss(g);
    CenteredTensor z = centered(b, 1.0);
    double r0 = trace_norm(b);  // exact threshold
    CHECK(lorentz_min_membership_centered(z, r0 + 1e-6));
    CHECK_FALSE(lorentz_min_membership_centered(z, r0 - 1e-3 - 1e-6));
    // monotone: membership at r implies membership at larger r
    for (double bump : {0.5, 1.0, 3.0}) CHECK(lorentz_min_membership_centered(z, r0 + bump));
  }
}

TEST_CASE("criterion consistency: spectral decomposition certifies minimal membership") {
  std::mt19937_64 g(171717);
  std::normal_distribution<double> gauss;
  int built = 0;
  for (int t = 0; t < 200; ++t) {
    int n = 2 + int(g() % 3);
    DMat b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) b(i, j) = 0.3 * gauss(g);
    double t_apex = operator_norm(b) + std::abs(gauss(g));  // sigma_1 <= t
    CenteredTensor z = centered(b, t_apex);
    CHECK(lorentz_max_membership_centered(z));
    double r = 2.0;
    if (trace_norm(b) <= r * t_apex) {
      auto dec = lorentz_min_decomposition(z, r);
      ++built;
      // factors on the respective cones
      for (const auto& x : dec.left) {
        double s = 0;
        for (int i = 0; i + 1 < int(x.size()); ++i) s += x[i] * x[i];
        CHECK(std::sqrt(s) <= 1 + 1e-9);
      }
      for (const auto& y : dec.right) {
        double s = 0;
        for (int i = 0; i + 1 < int(y.size()); ++i) s += y[i] * y[i];
        CHECK(std::sqrt(s) <= r + 1e-9);
      }
      CHECK(dec.apex_remainder >= -1e-9);
      // reassemble: sum_k w_k left_k (x) right_k + remainder apex == z
      int nn = b.rows();
      DMat rebuilt(nn, nn);
      double apex = dec.apex_remainder;
      for (size_t k = 0; k < dec.weights.size(); ++k) {
        for (int i = 0; i < nn; ++i)
          for (int j = 0; j < nn; ++j)
            rebuilt(i, j) += dec.weights[k] * dec.left[k][i] * dec.right[k][j];
        apex += dec.weights[k] * dec.left[k][nn] * dec.right[k][nn];
      }
      CHECK(frobenius_norm(rebuilt - b) < 1e-7 * (1 + frobenius_norm(b)));
      CHECK(apex == doctest::Approx(t_apex).epsilon(1e-7));
    }
  }
  CHECK(built > 50);
}

TEST_CASE("spin family: exact algebra for n = 1 .. 4") {
  for (int n = 1; n <= 4; ++n) {
    CliffordFamily fam = clifford_family(n);  // all identities checked inside, exactly
    CHECK(int(fam.us.size()) == 2 * n);
    CHECK(fam.phi * fam.psi == Rational(1L << n) * QMat::identity(2 * n + 1));
  }
  CHECK_THROWS(clifford_family(0));
  CHECK_THROWS(clifford_family(5));

  // n = 1 in explicit form
  CliffordFamily f1 = clifford_family(1);
  QCMat x = f1.us[0], y = f1.us[1];
  CHECK(x.re(0, 1) == q(1));
  CHECK(y.im(0, 1) == q(-1));
  QCMat anti = x * y + y * x;
  CHECK(anti == QCMat(2, 2));
  CHECK(x * x == QCMat::identity(2));
}

TEST_CASE("second-order cone as a retract of the PSD cone") {
  for (int n = 1; n <= 3; ++n) {
    RetractPair r = lorentz_psd_retract(n);
    auto check = verify_retract(r);
    CHECK(check.ok);
    CHECK(check.positivity_sampled);  // the PSD side is sampled by nature
    CHECK(r.target.lorentz_n() == 2 * n);
    // exact round trip on random rational vectors
    Rng rng(99 + n);
    for (int t = 0; t < 100; ++t) {
      QVec v(2 * n + 1);
      for (auto& e : v) e = rng.rat(3, 3);
      CHECK(r.phi * (r.psi * v) == v);
    }
  }

  // n = 1: psi(x1, x2, x3) = x1 X + x2 Y + x3 Id with eigenvalues x3 +/- |x|
  RetractPair r1 = lorentz_psd_retract(1);
  std::mt19937_64 g(33);
  std::normal_distribution<double> gauss;
  for (int t = 0; t < 1000; ++t) {
    DVec x{gauss(g), gauss(g), gauss(g)};
    DVec coords(4, 0.0);
    // psi columns: X, Y, Id over coordinates (a00, a11, Re, Im)
    coords[0] = x[2];
    coords[1] = x[2];
    coords[2] = x[0];
    coords[3] = -x[1];
    auto e = eig_sym(herm_real_embedding(coords, 2));
    double nrm = std::sqrt(x[0] * x[0] + x[1] * x[1]);
    CHECK(e.values.front() == doctest::Approx(x[2] + nrm).epsilon(1e-9));
    CHECK(e.values.back() == doctest::Approx(x[2] - nrm).epsilon(1e-9));
  }
  // psi((0,0,1)) = identity
  QVec unit{q(0), q(0), q(1)};
  QVec id_coords = r1.psi * unit;
  CHECK(id_coords == herm_coords(QCMat::identity(2)));
}

TEST_CASE("pinching retracts between PSD cones") {
  RetractPair same = psd_pinching_retract(2, 2);
  CHECK(same.phi == QMat::identity(4));

  RetractPair pin = psd_pinching_retract(2, 3);
  CHECK(verify_retract(pin).ok);
  // compression drops the third row/column: diag(1,2,3) -> diag(1,2)
  QCMat d3(3, 3);
  d3.re(0, 0) = q(1);
  d3.re(1, 1) = q(2);
  d3.re(2, 2) = q(3);
  QVec img = pin.phi * herm_coords(d3);
  QCMat d2(2, 2);
  d2.re(0, 0) = q(1);
  d2.re(1, 1) = q(2);
  CHECK(img == herm_coords(d2));
  CHECK(pin.phi * pin.psi == QMat::identity(4));
  CHECK_THROWS(psd_pinching_retract(3, 2));
}

TEST_CASE("PSD to disk chain") {
  for (int n : {2, 3, 4}) {
    RetractChain chain = psd_to_disk_chain(n);
    CHECK(chain.total.source.psd_n() == n);
    CHECK(chain.total.target.lorentz_n() == 2);
    CHECK(verify_retract(chain.total).ok);
    CHECK(chain.steps.back().kind == "drop");
  }
}

TEST_CASE("semiquantum certification for the square cone against PSD_2") {
  Cone s = square_cone();
  SemiquantumOptions opt;
  opt.samples = 300;
  auto cert = certify_entangleable_semiquantum(s, 2, opt);
  CHECK(cert.margin == q(3, 2));
  CHECK(cert.separation_value == q(-1, 2));
  auto check = verify_semiquantum(cert, s, opt);
  CHECK(check.ok);
  CHECK(check.min_sampled_value >= -opt.tol);

  // tampering is caught by the exact replay
  auto forged = cert;
  forged.witness(0, 0) += q(1, 9);
  CHECK_FALSE(verify_semiquantum(forged, s, opt).ok);
  auto forged2 = cert;
  forged2.separation_value = q(-2);
  CHECK_FALSE(verify_semiquantum(forged2, s, opt).ok);
}

TEST_CASE("semiquantum certification: classical input rejected, cube descends") {
  CHECK_THROWS_AS(certify_entangleable_semiquantum(make_classical(3), 2),
                  ClassicalInputError);

  // cone over the 3-cube against PSD_4: one descent step plus pinching
  std::vector<QVec> gens;
  for (int mask = 0; mask < 8; ++mask) {
    QVec v(4, q(1));
    for (int i = 0; i < 3; ++i) v[i] = (mask >> i & 1) ? q(1) : q(-1);
    gens.push_back(std::move(v));
  }
  Cone cube = make_polyhedral(4, std::move(gens));
  SemiquantumOptions opt;
  opt.samples = 150;
  auto cert = certify_entangleable_semiquantum(cube, 4, opt);
  CHECK(verify_semiquantum(cert, cube, opt).ok);
  CHECK(cert.separation_value.sign() < 0);
  bool has_pinch = false;
  for (const auto& st : cert.right.steps) has_pinch |= st.kind == "pinching";
  CHECK(has_pinch);
  CHECK_FALSE(cert.left.steps.empty());
}

TEST_CASE("regular simplex radii ratio") {
  for (int d = 2; d <= 6; ++d) {
    auto v = simplex_asphericity_value(d);
    CHECK(v.squared_ratio == q(long(d) * d));
    CHECK(v.ratio == doctest::Approx(double(d)).epsilon(1e-12));
  }
  CHECK_THROWS(simplex_asphericity_value(1));
  CHECK_THROWS(simplex_asphericity_value(7));
}

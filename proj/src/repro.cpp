#include "conelab/repro.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <random>
#include <sstream>

#include "conelab/gpt.hpp"
#include "conelab/linprog.hpp"
#include "conelab/lorentz_psd.hpp"
#include "conelab/retract.hpp"
#include "conelab/spectral.hpp"
#include "conelab/witness3d.hpp"

namespace conelab {

namespace {

struct Ctx {
  std::mt19937_64 rng;
  double tol;
  bool corrupt;
  std::ostringstream log;
  bool pass = true;

  explicit Ctx(uint64_t seed, double tol_, bool corrupt_)
      : rng(seed), tol(tol_), corrupt(corrupt_) {}

  long ints(long lo, long hi) { return lo + long(rng() % uint64_t(hi - lo + 1)); }
  Rational rat(long span, long max_den = 3) {
    return Rational(ints(-span, span), ints(1, max_den));
  }
  Rational open_unit() {
    long den = ints(2, 64);
    return Rational(ints(-(den - 1), den - 1), den);
  }
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      log << "FAILED: " << what << "; ";
    }
  }
};

Cone diamond_cone() {
  return make_polygon({{Rational(1), Rational(0)},
                       {Rational(0), Rational(1)},
                       {Rational(-1), Rational(0)},
                       {Rational(0), Rational(-1)}});
}

Cone square_cone() {
  return make_polygon({{Rational(1), Rational(1)},
                       {Rational(-1), Rational(1)},
                       {Rational(-1), Rational(-1)},
                       {Rational(1), Rational(-1)}});
}

Cone cube_cone(int d) {
  std::vector<QVec> gens;
  for (int mask = 0; mask < (1 << d); ++mask) {
    QVec v(d + 1, Rational(1));
    for (int i = 0; i < d; ++i) v[i] = (mask >> i & 1) ? Rational(1) : Rational(-1);
    gens.push_back(std::move(v));
  }
  return make_polyhedral(d + 1, std::move(gens));
}

Cone cross_cone(int d) {
  std::vector<QVec> gens;
  for (int i = 0; i < d; ++i)
    for (int s : {1, -1}) {
      QVec v(d + 1, Rational(0));
      v[i] = Rational(s);
      v[d] = Rational(1);
      gens.push_back(std::move(v));
    }
  return make_polyhedral(d + 1, std::move(gens));
}

Cone random_proper_cone(Ctx& c, int dim, int max_gens) {
  while (true) {
    int k = int(c.ints(dim, max_gens));
    std::vector<QVec> gens;
    for (int i = 0; i < k; ++i) {
      QVec v(dim);
      for (int j = 0; j + 1 < dim; ++j) v[j] = c.rat(2, 2);
      v[dim - 1] = Rational(1);
      gens.push_back(std::move(v));
    }
    try {
      return make_polyhedral(dim, std::move(gens));
    } catch (const Error&) {
    }
  }
}

Cone random_polygon_cone(Ctx& c, int min_v, int max_v) {
  while (true) {
    std::vector<Point2> pts;
    for (int i = 0; i < 9; ++i) pts.push_back({c.rat(4, 4), c.rat(4, 4)});
    auto hull = convex_hull(pts);
    if (int(hull.size()) < min_v || int(hull.size()) > max_v) continue;
    return make_polygon(hull);
  }
}

NormedSpace square_ball() {
  return polytope_ball({{Rational(1), Rational(1)},
                        {Rational(-1), Rational(1)},
                        {Rational(-1), Rational(-1)},
                        {Rational(1), Rational(-1)}});
}
NormedSpace diamond_ball() {
  return polytope_ball({{Rational(1), Rational(0)},
                        {Rational(0), Rational(1)},
                        {Rational(-1), Rational(0)},
                        {Rational(0), Rational(-1)}});
}
NormedSpace hexagon_ball() {
  return polytope_ball({{Rational(1), Rational(0)},
                        {Rational(1, 2), Rational(7, 8)},
                        {Rational(-1, 2), Rational(7, 8)},
                        {Rational(-1), Rational(0)},
                        {Rational(-1, 2), Rational(-7, 8)},
                        {Rational(1, 2), Rational(-7, 8)}});
}

QMat chsh_tensor() {
  return QMat{{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}};
}

// --- the twelve criteria ---

void crit_omega_identity(Ctx& c) {
  int good = 0;
  const int trials = 1000;
  for (int t = 0; t < trials; ++t) {
    Rational a1 = c.open_unit(), b1 = c.open_unit(), a2 = c.open_unit(), b2 = c.open_unit();
    QMat w = build_omega(a1, b1, a2, b2);
    if (c.corrupt) w(2, 2) += Rational(1, 7);  // test hook: damaged constant
    if (w(0, 0) + w(0, 1) + w(1, 0) - w(1, 1) == Rational(2) * w(2, 2)) ++good;
  }
  c.require(good == trials, "corner identity must hold exactly on every draw");
  c.log << good << "/" << trials << " exact identities";
}

void crit_diamond_witness(Ctx& c) {
  Cone d = diamond_cone();
  QMat hinv = build_omega(Rational(0), Rational(0), Rational(0), Rational(0));
  auto mm = max_membership(d, d, hinv);
  c.require(mm.member && mm.evidence.size() == 16, "witness must pass all 16 dual pairs");
  for (const auto& e : mm.evidence) c.require(e.value.sign() >= 0, "dual-pair value negative");
  auto mn = min_membership(d, d, hinv);
  c.require(!mn.member, "witness must sit outside the minimal cone");
  auto margin = strict_separation_margin(d.polygon_vertices(), d.polygon_vertices());
  Rational sep = frobenius_inner(margin.functional, hinv);
  c.require(margin.lambda == Rational(1), "margin must be exactly one");
  c.require(sep <= Rational(-1), "separation must reach -1");
  c.log << "16 dual-pair values >= 0, separation " << sep.str();
}

void crit_result1_polygons(Ctx& c) {
  int done = 0;
  while (done < 10) {
    Cone a = random_polygon_cone(c, 4, 7);
    Cone b = random_polygon_cone(c, 4, 7);
    SeparationCertificate cert = entangle_3d(a, b);
    auto check = verify_certificate(cert, a, b);
    c.require(check.ok, "certificate replay failed: " + check.reason);
    ++done;
  }
  bool rejected = false;
  try {
    entangle_3d(make_polygon({{Rational(1), Rational(0)},
                              {Rational(0), Rational(1)},
                              {Rational(-1), Rational(-1)}}),
                square_cone());
  } catch (const ClassicalInputError&) {
    rejected = true;
  }
  c.require(rejected, "triangle input must be rejected as classical");
  c.log << done << " random polygon pairs certified and replayed; triangle rejected";
}

void crit_easy_direction(Ctx& c) {
  Cone r3 = make_classical(3);
  int nuclear = 0;
  for (int t = 0; t < 20; ++t) {
    Cone m = random_proper_cone(c, int(c.ints(2, 4)), 8);
    auto res = nuclearity_bruteforce(r3, m);
    if (res.verdict == Nuclearity::Nuclear) ++nuclear;
  }
  c.require(nuclear == 20, "a classical factor must always give a nuclear pair");
  c.log << nuclear << "/20 nuclear with a classical factor";
}

void crit_result2(Ctx& c) {
  Cone cc = cube_cone(3);
  auto cert = certify_entangleable_polyhedral(cc, cc);
  c.require(verify_certificate(cert, cc, cc).ok, "cube x cube certificate replay");

  Cone cr = cross_cone(3);
  auto t = descend_to_3d(cr);
  bool via_dual = !t.steps.empty() && t.steps[0].kind == DescentStep::Kind::DualFacetRetract;
  c.require(via_dual, "the cross-polytope descent must pass through the dual");
  auto cert2 = certify_entangleable_polyhedral(cc, cr);
  c.require(verify_certificate(cert2, cc, cr).ok, "cube x cross certificate replay");
  c.log << "cube/cube and cube/cross certified; dual step used";
}

void crit_ice_cream(Ctx& c) {
  for (int n = 2; n <= 6; ++n) {
    CenteredTensor z{DMat::identity(n), 1.0};
    c.require(lorentz_max_membership_centered(z, c.tol), "identity block in the maximal cone");
    c.require(!lorentz_min_membership_centered(z, double(n) - 1e-6, c.tol),
              "minimal membership must fail just below the dimension");
    c.require(lorentz_min_membership_centered(z, double(n), c.tol),
              "minimal membership must hold at the dimension");
  }
  c.log << "gap verified for n = 2..6 at tolerance " << c.tol;
}

void crit_clifford(Ctx& c) {
  double worst = 0;
  for (int n = 1; n <= 4; ++n) {
    CliffordFamily fam = clifford_family(n);  // exact identities enforced inside
    c.require(fam.phi * fam.psi == Rational(1L << n) * QMat::identity(2 * n + 1),
              "compression round trip");
    std::normal_distribution<double> gauss;
    const int per = 1000 / 4;
    for (int t = 0; t < per; ++t) {
      DVec x(2 * n + 1);
      for (auto& e : x) e = gauss(c.rng);
      DVec coords(herm_dim(1 << n), 0.0);
      DMat psi = to_double(fam.psi);
      for (int i = 0; i < psi.rows(); ++i) {
        double s = 0;
        for (int j = 0; j < psi.cols(); ++j) s += psi(i, j) * x[j];
        coords[i] = s;
      }
      auto e = eig_sym(herm_real_embedding(coords, 1 << n), c.tol);
      double nrm = 0;
      for (int i = 0; i < 2 * n; ++i) nrm += x[i] * x[i];
      nrm = std::sqrt(nrm);
      double hi = x[2 * n] + nrm, lo = x[2 * n] - nrm;
      worst = std::max(worst, std::abs(e.values.front() - hi));
      worst = std::max(worst, std::abs(e.values.back() - lo));
    }
  }
  c.require(worst <= c.tol, "eigenvalue identity drifted beyond tolerance");
  c.log << "exact algebra for n = 1..4; spectral identity within " << worst;
}

void crit_semiquantum(Ctx& c) {
  SemiquantumOptions opt;
  opt.seed = c.rng();
  opt.samples = 1000;
  opt.tol = c.tol;
  Cone s = square_cone();
  auto cert = certify_entangleable_semiquantum(s, 2, opt);
  auto check = verify_semiquantum(cert, s, opt);
  c.require(check.ok, "semiquantum replay failed: " + check.reason);
  c.require(cert.separation_value == Rational(-1, 2), "separation value must be -1/2");
  c.require(check.min_sampled_value >= -c.tol, "sampled projector check below tolerance");
  c.log << "square vs PSD_2 certified; sampled floor " << check.min_sampled_value;
}

void crit_norm_duality(Ctx& c) {
  std::vector<NormedSpace> shapes{square_ball(), diamond_ball(), hexagon_ball()};
  int runs = 0;
  for (int t = 0; t < 100; ++t) {
    SymmetricGpt a = make_symmetric_gpt(shapes[size_t(t % 3)]);
    SymmetricGpt b = make_symmetric_gpt(shapes[size_t((t / 3) % 3)]);
    QMat z(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) z(i, j) = c.rat(2, 3);
    Rational eps = injective_norm_exact(a.ball, b.ball, z);
    auto proj = projective_norm_exact(a.ball, b.ball, z);
    c.require(eps <= proj.value, "injective norm must not exceed projective");
    c.require(proj.dual_bound == proj.value, "projective primal and dual must agree exactly");
    if (eps.is_zero()) continue;
    ++runs;
    Rational rho(long(c.ints(1, 4)), 4);
    QMat zc = (rho / proj.value) * z;
    c.require(min_membership(a.cone(), b.cone(), omega_state(a, b, zc)).member,
              "small projective norm must give a separable state");
    QMat zd = (rho / eps) * z;
    c.require(max_membership(a.cone(), b.cone(), omega_state(a, b, zd)).member,
              "small injective norm must give a maximal-cone state");
    // separable states bound the projective norm of their block by the mass;
    // maximal-cone states bound the injective norm likewise
    QMat sep(a.full_dim(), b.full_dim());
    const auto g1 = extreme_rays(a.cone());
    const auto g2 = extreme_rays(b.cone());
    for (int r = 0; r < 3; ++r) {
      const QVec& x = g1[size_t(c.ints(0, long(g1.size()) - 1))];
      const QVec& y = g2[size_t(c.ints(0, long(g2.size()) - 1))];
      Rational w(long(c.ints(0, 3)), long(c.ints(1, 2)));
      for (int i = 0; i < a.full_dim(); ++i)
        for (int j = 0; j < b.full_dim(); ++j) sep(i, j) += w * x[i] * y[j];
    }
    QMat block_sep(2, 2), block_mix(2, 2);
    QMat mix = omega_state(a, b, zd) + sep;
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        block_sep(i, j) = sep(i, j);
        block_mix(i, j) = mix(i, j);
      }
    c.require(projective_norm_exact(a.ball, b.ball, block_sep).value <= sep(2, 2),
              "separable mass bound violated");
    c.require(injective_norm_exact(a.ball, b.ball, block_mix) <= mix(2, 2),
              "maximal-cone mass bound violated");
  }
  c.log << runs << " nonzero tensors over three ball shapes, all bounds exact";
}

void crit_result4(Ctx& c) {
  SymmetricGpt s = make_symmetric_gpt(square_ball());
  QMat z = chsh_tensor();
  Rational eps = injective_norm_exact(s.ball, s.ball, z);
  auto proj = projective_norm_exact(s.ball, s.ball, z);
  c.require(eps == Rational(1), "injective norm of the Bell tensor must be 1");
  c.require(proj.value == Rational(2), "projective norm of the Bell tensor must be 2");
  Rational lb = robustness_lower_bound_exact(s, s, z);
  c.require(lb == Rational(1, 2), "lower bound must be one half");
  Gpt g = make_gpt(s.cone(), s.unit());
  auto rob = entanglement_robustness(g, g, omega_state(s, s, z));
  c.require(rob.value >= Rational(1, 2), "robustness must reach the lower bound");
  c.require(Rational(1, 2) >= kRobustnessUniversalFloor,
            "instance must clear the documented universal floor");
  c.log << "eps 1, pi 2, bound 1/2, robustness " << rob.value.str()
        << "; documented floor " << kRobustnessUniversalFloor.str();
}

void crit_asphericity(Ctx& c) {
  for (int d = 2; d <= 6; ++d) {
    auto v = simplex_asphericity_value(d);
    c.require(v.squared_ratio == Rational(long(d) * d), "squared ratio must equal d^2");
  }
  c.log << "squared circumradius/inradius ratio equals d^2 for d = 2..6";
}

void crit_monotonicity(Ctx& c) {
  SymmetricGpt a = make_symmetric_gpt(square_ball());
  SymmetricGpt b = make_symmetric_gpt(diamond_ball());
  Gpt ga = make_gpt(a.cone(), a.unit());
  Gpt gb = make_gpt(b.cone(), b.unit());
  auto measure_prepare = [&](const SymmetricGpt& s) {
    Cone cn = s.cone();
    const auto duals = extreme_rays(dual_cone(cn));
    const auto gens = extreme_rays(cn);
    auto dec = conic_decomposition(duals, s.unit());
    QMat lam(s.full_dim(), s.full_dim());
    for (size_t k = 0; k < duals.size(); ++k) {
      if (dec.coefficients[k].is_zero()) continue;
      QVec st(s.full_dim(), Rational(0));
      Rational tot;
      for (int t = 0; t < 3; ++t) {
        Rational w(long(c.ints(0, 4)), long(c.ints(1, 2)));
        const QVec& gg = gens[size_t(c.ints(0, long(gens.size()) - 1))];
        Rational mass = dot(s.unit(), gg);
        for (int i = 0; i < s.full_dim(); ++i) st[i] += w * gg[i] / mass;
        tot += w;
      }
      if (tot.is_zero()) {
        st = gens[0];
        tot = dot(s.unit(), gens[0]);
      }
      for (auto& e : st) e /= tot;
      for (int i = 0; i < s.full_dim(); ++i)
        for (int j = 0; j < s.full_dim(); ++j)
          lam(i, j) += dec.coefficients[k] * st[i] * duals[k][j];
    }
    return lam;
  };
  int done = 0, nontrivial = 0;
  while (done < 50) {
    QMat z(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) z(i, j) = c.rat(2, 3);
    Rational eps = injective_norm_exact(a.ball, b.ball, z);
    if (eps.is_zero()) continue;
    QMat om = omega_state(a, b, (Rational(1) / eps) * z);
    QMat mapped = measure_prepare(a) * om * measure_prepare(b).transpose();
    auto before = entanglement_robustness(ga, gb, om);
    auto after = entanglement_robustness(ga, gb, mapped);
    c.require(after.value <= before.value, "robustness increased under a local map");
    if (before.value.sign() > 0) ++nontrivial;
    ++done;
  }
  c.require(nontrivial >= 5, "instance set must contain entangled states");
  c.log << done << " instances, " << nontrivial << " with positive robustness";
}

struct Criterion {
  std::string name;
  void (*run)(Ctx&);
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> crits{
      {"omega-identity", crit_omega_identity},
      {"diamond-witness", crit_diamond_witness},
      {"result1-polygon-pairs", crit_result1_polygons},
      {"easy-direction-bruteforce", crit_easy_direction},
      {"result2-polyhedral", crit_result2},
      {"ice-cream-gap", crit_ice_cream},
      {"clifford-retract", crit_clifford},
      {"semiquantum-square", crit_semiquantum},
      {"norms-duality", crit_norm_duality},
      {"result4-squit", crit_result4},
      {"simplex-asphericity", crit_asphericity},
      {"robustness-monotonicity", crit_monotonicity},
  };
  return crits;
}

}  // namespace

const std::vector<std::string>& criterion_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& cr : criteria()) n.push_back(cr.name);
    return n;
  }();
  return names;
}

std::vector<CriterionResult> run_acceptance(const ReproOptions& opt) {
  std::vector<CriterionResult> results;
  int number = 0;
  for (const auto& cr : criteria()) {
    ++number;
    if (!opt.only.empty() && opt.only != cr.name) continue;
    CriterionResult res;
    res.number = number;
    res.name = cr.name;
    Ctx ctx(opt.seed + uint64_t(number), opt.tol, opt.corrupt == cr.name);
    auto start = std::chrono::steady_clock::now();
    try {
      cr.run(ctx);
      res.pass = ctx.pass;
      res.details = ctx.log.str();
    } catch (const std::exception& e) {
      res.pass = false;
      res.details = std::string("exception: ") + e.what();
    }
    res.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                 .count();
    results.push_back(std::move(res));
  }
  if (!opt.only.empty() && results.empty())
    throw Error("run_acceptance: unknown criterion \"" + opt.only + "\"");
  return results;
}

}  // namespace conelab

#include "conelab/retract.hpp"

#include <algorithm>
#include <random>

#include "conelab/herm.hpp"
#include "conelab/linprog.hpp"
#include "conelab/witness3d.hpp"

namespace conelab {

namespace {

bool finite_generator_kind(const Cone& c) {
  return c.kind() == Cone::Kind::Polyhedral || c.kind() == Cone::Kind::Classical ||
         c.kind() == Cone::Kind::Polygon;
}

}  // namespace

std::vector<QVec> sample_cone_members(const Cone& c, uint64_t seed, int count) {
  std::mt19937_64 rng(seed);
  auto ri = [&](long lo, long hi) { return lo + long(rng() % uint64_t(hi - lo + 1)); };
  std::vector<QVec> out;
  switch (c.kind()) {
    case Cone::Kind::Polyhedral:
    case Cone::Kind::Classical:
    case Cone::Kind::Polygon: {
      const auto ext = extreme_rays(c);
      for (int t = 0; t < count; ++t) {
        QVec x(c.ambient_dim(), Rational(0));
        for (const auto& g : ext) x = x + (Rational(ri(0, 3), ri(1, 2)) * g);
        out.push_back(std::move(x));
      }
      return out;
    }
    case Cone::Kind::Lorentz: {
      const int n = c.lorentz_n();
      const Rational& r = c.lorentz_r();
      for (int t = 0; t < count; ++t) {
        QVec x(n + 1, Rational(0));
        Rational abs_sum;
        for (int i = 0; i < n; ++i) {
          x[i] = Rational(ri(-4, 4), ri(1, 3));
          abs_sum += abs(x[i]);
        }
        // |x|_2 <= sum |x_i| <= r * height: exact member
        x[n] = abs_sum / r + Rational(ri(0, 2), ri(1, 2));
        out.push_back(std::move(x));
      }
      return out;
    }
    case Cone::Kind::Psd: {
      const int n = c.psd_n();
      for (int t = 0; t < count; ++t) {
        // exact rational rank-one v v^dagger
        QMat re(n, 1), im(n, 1);
        for (int i = 0; i < n; ++i) {
          re(i, 0) = Rational(ri(-3, 3), ri(1, 2));
          im(i, 0) = Rational(ri(-3, 3), ri(1, 2));
        }
        QCMat v{re, im};
        QCMat a = v * v.dagger();
        out.push_back(herm_coords(a));
      }
      return out;
    }
  }
  throw Error("sample_cone_members: unreachable");
}

RetractCheck verify_retract(const RetractPair& r, double tol, uint64_t seed, int samples) {
  RetractCheck bad;
  const int ds = r.source.ambient_dim();
  const int dt = r.target.ambient_dim();
  if (r.phi.rows() != dt || r.phi.cols() != ds || r.psi.rows() != ds || r.psi.cols() != dt)
    throw Error("verify_retract: map shapes do not match the cones");

  if (!(r.phi * r.psi == QMat::identity(dt))) {
    bad.reason = "phi . psi is not the identity";
    return bad;
  }

  RetractCheck res;
  res.ok = true;
  auto check_positive = [&](const Cone& from, const Cone& to, const QMat& map,
                            const char* name) {
    std::vector<QVec> points;
    if (finite_generator_kind(from)) {
      points = extreme_rays(from);
    } else {
      points = sample_cone_members(from, seed, samples);
      res.positivity_sampled = true;
    }
    for (const auto& p : points) {
      auto m = membership(to, map * p, tol);
      if (to.kind() == Cone::Kind::Psd) res.positivity_sampled = true;
      if (m.where == Where::Outside) {
        res.ok = false;
        res.reason = std::string(name) + " fails positivity on a generator/sample";
        return;
      }
    }
  };
  check_positive(r.source, r.target, r.phi, "phi");
  if (res.ok) check_positive(r.target, r.source, r.psi, "psi");
  return res;
}

RetractPair facet_retract(const Cone& c, int facet_index, Rational* lambda_out) {
  if (!finite_generator_kind(c)) throw Error("facet_retract: polyhedral cones only");
  const int d = c.ambient_dim();
  const auto fs = facets(c);
  if (facet_index < 0 || facet_index >= int(fs.size()))
    throw Error("facet_retract: facet index out of range");
  const FacetInfo& fac = fs[facet_index];
  const auto ext = extreme_rays(c);

  // kernel basis of the facet functional spans the facet hyperplane
  QMat frow(1, d);
  for (int j = 0; j < d; ++j) frow(0, j) = fac.functional[j];
  std::vector<QVec> wbasis = kernel_basis(frow);
  if (int(wbasis.size()) != d - 1) throw Error("facet_retract: degenerate facet functional");

  int pivot = -1;
  for (int j = 0; j < d; ++j)
    if (!fac.functional[j].is_zero()) {
      pivot = j;
      break;
    }
  QMat ext_basis(d, d);  // columns: w_1 .. w_{d-1}, e_pivot
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d - 1; ++j) ext_basis(i, j) = wbasis[j][i];
    ext_basis(i, d - 1) = (i == pivot) ? Rational(1) : Rational(0);
  }
  QMat ext_inv = inverse(ext_basis);
  QMat coords(d - 1, d);  // coordinates on the facet hyperplane
  for (int i = 0; i < d - 1; ++i)
    for (int j = 0; j < d; ++j) coords(i, j) = ext_inv(i, j);

  // relative interior point of the facet
  QVec x(d, Rational(0));
  for (int idx : fac.incident) x = x + ext[idx];

  // projection onto the hyperplane: pi(z) = z - (f(z)/f_pivot) e_pivot
  QMat proj = QMat::identity(d);
  for (int j = 0; j < d; ++j)
    proj(pivot, j) -= fac.functional[j] / fac.functional[pivot];

  // beam scaling: for every generator off the facet, the exact smallest
  // lambda placing its shadow inside the facet, then one more
  std::vector<QVec> facet_rays;
  for (int idx : fac.incident) facet_rays.push_back(ext[idx]);
  Rational lambda(1);
  for (size_t gi = 0; gi < ext.size(); ++gi) {
    if (std::find(fac.incident.begin(), fac.incident.end(), int(gi)) != fac.incident.end())
      continue;
    Rational fz = dot(fac.functional, ext[gi]);
    if (fz.sign() <= 0) throw Error("facet_retract: generator not strictly off the facet");
    QVec pz = proj * ext[gi];
    // maximize mu subject to  fz*x + mu*pz  in cone(facet_rays)
    const int nc = int(facet_rays.size());
    QMat a(d, 1 + nc);
    QVec rhs(d);
    for (int i = 0; i < d; ++i) {
      a(i, 0) = pz[i];
      for (int k = 0; k < nc; ++k) a(i, 1 + k) = -facet_rays[k][i];
      rhs[i] = -(fz * x[i]);
    }
    LpProblem lp;
    lp.eq_lhs = a;
    lp.eq_rhs = rhs;
    lp.objective.assign(1 + nc, Rational(0));
    lp.objective[0] = Rational(-1);
    lp.nonneg.assign(1 + nc, true);
    LpOutcome sol = lp_solve(lp);
    if (sol.status == LpStatus::Unbounded) continue;  // any lambda works for this generator
    if (sol.status != LpStatus::Optimal || sol.primal[0].sign() <= 0)
      throw Error("facet_retract: beam search failed (internal)");
    lambda = max(lambda, Rational(1) / sol.primal[0]);
  }
  lambda += Rational(1);
  if (lambda_out) *lambda_out = lambda;

  // phi = coords . (proj + lambda x f^T)
  QMat beam(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) beam(i, j) = proj(i, j) + lambda * x[i] * fac.functional[j];
  RetractPair r;
  r.source = c;
  r.phi = coords * beam;
  r.psi = QMat(d, d - 1);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d - 1; ++j) r.psi(i, j) = wbasis[j][i];
  std::vector<QVec> target_gens;
  for (const auto& fr : facet_rays) target_gens.push_back(r.phi * fr);
  r.target = make_polyhedral(d - 1, std::move(target_gens));

  auto check = verify_retract(r);
  if (!check) throw Error("facet_retract: verification failed: " + check.reason);
  return r;
}

RetractPair dualize_retract(const RetractPair& r) {
  auto base = verify_retract(r);
  if (!base) throw Error("dualize_retract: input pair fails verification: " + base.reason);
  RetractPair d;
  d.source = dual_cone(r.source);
  d.target = dual_cone(r.target);
  d.phi = r.psi.transpose();
  d.psi = r.phi.transpose();
  auto check = verify_retract(d);
  if (!check) throw Error("dualize_retract: verification failed: " + check.reason);
  return d;
}

RetractPair compose_retracts(const RetractPair& outer, const RetractPair& inner) {
  if (outer.source.ambient_dim() != inner.target.ambient_dim())
    throw Error("compose_retracts: middle dimensions do not match");
  RetractPair r;
  r.source = inner.source;
  r.target = outer.target;
  r.phi = outer.phi * inner.phi;
  r.psi = inner.psi * outer.psi;
  auto check = verify_retract(r);
  if (!check) throw Error("compose_retracts: verification failed: " + check.reason);
  return r;
}

namespace {

// non-classical facet of a polyhedral cone: more incident extreme rays than
// the facet dimension
int find_nonclassical_facet(const Cone& c) {
  const auto fs = facets(c);
  for (size_t k = 0; k < fs.size(); ++k)
    if (int(fs[k].incident.size()) > c.ambient_dim() - 1) return int(k);
  return -1;
}

RetractPair identity_pair(const Cone& c) {
  RetractPair r;
  r.source = c;
  r.target = c;
  r.phi = QMat::identity(c.ambient_dim());
  r.psi = QMat::identity(c.ambient_dim());
  return r;
}

}  // namespace

DescentTrace descend_to_3d(const Cone& c) {
  if (!finite_generator_kind(c)) throw Error("descend_to_3d: polyhedral cones only");
  auto cl = is_classical(c);
  if (cl.classical) throw ClassicalInputError("descend_to_3d: classical input", cl.basis);
  if (c.ambient_dim() < 3) throw Error("descend_to_3d: dimension below 3");

  DescentTrace trace;
  trace.total = identity_pair(c);
  Cone current = c;
  while (current.ambient_dim() > 3) {
    DescentStep step;
    int k = find_nonclassical_facet(current);
    if (k >= 0) {
      step.kind = DescentStep::Kind::FacetRetract;
      step.facet_index = k;
      step.pair = facet_retract(current, k, &step.lambda);
    } else {
      Cone dual = dual_cone(current);
      int kd = find_nonclassical_facet(dual);
      if (kd < 0)
        throw Error("descend_to_3d: neither the cone nor its dual has a non-classical facet");
      step.kind = DescentStep::Kind::DualFacetRetract;
      step.facet_index = kd;
      RetractPair on_dual = facet_retract(dual, kd, &step.lambda);
      RetractPair lifted = dualize_retract(on_dual);
      // the bidual is the original cone; keep the original representation
      lifted.source = current;
      auto check = verify_retract(lifted);
      if (!check) throw Error("descend_to_3d: dual step failed verification: " + check.reason);
      step.pair = lifted;
    }
    auto ncl = is_classical(step.pair.target);
    if (ncl.classical) throw Error("descend_to_3d: descent step produced a classical cone");
    trace.total = compose_retracts(step.pair, trace.total);
    current = step.pair.target;
    trace.steps.push_back(std::move(step));
  }
  trace.final_cone = current;
  return trace;
}

SeparationCertificate lift_certificate(const SeparationCertificate& base,
                                       const RetractPair& r1, const RetractPair& r2) {
  for (const RetractPair* r : {&r1, &r2}) {
    auto check = verify_retract(*r);
    if (!check) throw Error("lift_certificate: retract fails verification: " + check.reason);
  }
  if (base.witness.rows() != r1.target.ambient_dim() ||
      base.witness.cols() != r2.target.ambient_dim())
    throw Error("lift_certificate: certificate does not match the retract targets");

  SeparationCertificate lifted;
  lifted.witness = r1.psi * base.witness * r2.psi.transpose();
  lifted.functional = r1.phi.transpose() * base.functional * r2.phi;
  lifted.separation_value = frobenius_inner(lifted.functional, lifted.witness);
  if (!(lifted.separation_value == base.separation_value))
    throw Error("lift_certificate: separation value not preserved (broken retract)");

  lifted.max_evidence = pairwise_values(extreme_rays(dual_cone(r1.source)),
                                        extreme_rays(dual_cone(r2.source)), lifted.witness);
  for (const auto& e : lifted.max_evidence)
    if (e.value.sign() < 0)
      throw Error("lift_certificate: lifted witness leaves the maximal cone (broken retract)");
  lifted.min_evidence =
      pairwise_values(extreme_rays(r1.source), extreme_rays(r2.source), lifted.functional);
  for (const auto& e : lifted.min_evidence)
    if (e.value.sign() < 0)
      throw Error("lift_certificate: lifted functional fails nonnegativity (broken retract)");

  auto check = verify_certificate(lifted, r1.source, r2.source);
  if (!check) throw Error("lift_certificate: replay failed: " + check.reason);
  return lifted;
}

RetractPair polygon_form_3d(const Cone& c) {
  if (c.ambient_dim() != 3) throw Error("polygon_form_3d: cone must be 3-dimensional");
  if (c.kind() == Cone::Kind::Polygon) return identity_pair(c);
  QVec u = strictly_positive_functional(c);
  const auto ext = extreme_rays(c);

  // complete u to a basis of the dual with two coordinate functionals
  QMat iso(3, 3);
  bool found = false;
  for (int i = 0; i < 3 && !found; ++i)
    for (int j = i + 1; j < 3 && !found; ++j) {
      QMat cand(3, 3);
      cand(0, i) = Rational(1);
      cand(1, j) = Rational(1);
      for (int t = 0; t < 3; ++t) cand(2, t) = u[t];
      if (!det(cand).is_zero()) {
        iso = cand;
        found = true;
      }
    }
  if (!found) throw Error("polygon_form_3d: could not complete the section functional");

  // vertices of the section, sorted counterclockwise around their centroid
  std::vector<Point2> verts;
  for (const auto& rray : ext) {
    Rational s = dot(u, rray);
    if (s.sign() <= 0) throw Error("polygon_form_3d: functional not strictly positive");
    QVec t = iso * rray;
    verts.push_back({t[0] / s, t[1] / s});
  }
  Point2 centroid{Rational(0), Rational(0)};
  for (const auto& v : verts) {
    centroid.x += v.x;
    centroid.y += v.y;
  }
  centroid.x /= Rational(long(verts.size()));
  centroid.y /= Rational(long(verts.size()));
  auto half = [&](const Point2& p) {
    Rational dx = p.x - centroid.x, dy = p.y - centroid.y;
    return (dy.sign() > 0 || (dy.is_zero() && dx.sign() > 0)) ? 0 : 1;
  };
  std::sort(verts.begin(), verts.end(), [&](const Point2& p, const Point2& qq) {
    int hp = half(p), hq = half(qq);
    if (hp != hq) return hp < hq;
    Rational cr = (p.x - centroid.x) * (qq.y - centroid.y) - (p.y - centroid.y) * (qq.x - centroid.x);
    return cr.sign() > 0;
  });

  RetractPair r;
  r.source = c;
  r.target = make_polygon(verts);
  r.phi = iso;
  r.psi = inverse(iso);
  auto check = verify_retract(r);
  if (!check) throw Error("polygon_form_3d: verification failed: " + check.reason);
  return r;
}

SeparationCertificate certify_entangleable_polyhedral(const Cone& c1, const Cone& c2) {
  for (const Cone* c : {&c1, &c2}) {
    if (!finite_generator_kind(*c))
      throw Error("certify_entangleable_polyhedral: polyhedral cones only");
    auto cl = is_classical(*c);
    if (cl.classical)
      throw ClassicalInputError(
          std::string(c == &c1 ? "first" : "second") + " cone is classical", cl.basis);
  }
  DescentTrace t1 = descend_to_3d(c1);
  DescentTrace t2 = descend_to_3d(c2);
  RetractPair r1 = compose_retracts(polygon_form_3d(t1.final_cone), t1.total);
  RetractPair r2 = compose_retracts(polygon_form_3d(t2.final_cone), t2.total);
  SeparationCertificate base = entangle_3d(r1.target, r2.target);
  return lift_certificate(base, r1, r2);
}

}  // namespace conelab

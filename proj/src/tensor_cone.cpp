#include "conelab/tensor_cone.hpp"

#include "conelab/linprog.hpp"

namespace conelab {

namespace {

QMat outer(const QVec& x, const QVec& y) {
  QMat m(int(x.size()), int(y.size()));
  for (size_t i = 0; i < x.size(); ++i)
    for (size_t j = 0; j < y.size(); ++j) m(int(i), int(j)) = x[i] * y[j];
  return m;
}

void require_polyhedral_pair(const Cone& c1, const Cone& c2) {
  auto ok = [](const Cone& c) {
    return c.kind() == Cone::Kind::Polyhedral || c.kind() == Cone::Kind::Classical ||
           c.kind() == Cone::Kind::Polygon;
  };
  if (!ok(c1) || !ok(c2))
    throw Error("tensor products: both cones must have finite generator form");
}

}  // namespace

Rational product_pair_value(const QVec& f, const QVec& g, const QMat& z) {
  // (f (x) g)(z) = f^T Z g
  Rational s;
  for (int i = 0; i < z.rows(); ++i) {
    if (f[i].is_zero()) continue;
    Rational row;
    for (int j = 0; j < z.cols(); ++j) row += z(i, j) * g[j];
    s += f[i] * row;
  }
  return s;
}

std::vector<EvidenceEntry> pairwise_values(const std::vector<QVec>& left,
                                           const std::vector<QVec>& right, const QMat& z) {
  std::vector<EvidenceEntry> out;
  out.reserve(left.size() * right.size());
  for (size_t i = 0; i < left.size(); ++i)
    for (size_t j = 0; j < right.size(); ++j)
      out.push_back({int(i), int(j), product_pair_value(left[i], right[j], z)});
  return out;
}

std::vector<QMat> min_tensor_generators(const Cone& c1, const Cone& c2) {
  require_polyhedral_pair(c1, c2);
  const auto g1 = extreme_rays(c1);
  const auto g2 = extreme_rays(c2);
  std::vector<QMat> out;
  out.reserve(g1.size() * g2.size());
  for (const auto& x : g1)
    for (const auto& y : g2) out.push_back(outer(x, y));
  return out;
}

MaxMembershipResult max_membership(const Cone& c1, const Cone& c2, const QMat& z,
                                   const DdCaps& caps) {
  require_polyhedral_pair(c1, c2);
  if (z.rows() != c1.ambient_dim() || z.cols() != c2.ambient_dim())
    throw Error("max_membership: tensor shape mismatch");
  const auto d1 = extreme_rays(dual_cone(c1, caps));
  const auto d2 = extreme_rays(dual_cone(c2, caps));
  MaxMembershipResult res;
  res.evidence = pairwise_values(d1, d2, z);
  res.member = true;
  for (const auto& e : res.evidence)
    if (e.value.sign() < 0) res.member = false;
  return res;
}

MinMembershipResult min_membership(const Cone& c1, const Cone& c2, const QMat& z) {
  require_polyhedral_pair(c1, c2);
  if (z.rows() != c1.ambient_dim() || z.cols() != c2.ambient_dim())
    throw Error("min_membership: tensor shape mismatch");
  std::vector<QMat> gens = min_tensor_generators(c1, c2);
  std::vector<QVec> cols;
  cols.reserve(gens.size());
  for (const auto& g : gens) cols.push_back(vec_of(g));
  ConicDecomposition dec = conic_decomposition(cols, vec_of(z));
  MinMembershipResult res;
  if (dec.feasible) {
    res.member = true;
    res.decomposition = dec.coefficients;
    return res;
  }
  res.member = false;
  QVec f(dec.farkas.size());
  for (size_t i = 0; i < f.size(); ++i) f[i] = -dec.farkas[i];
  res.functional = mat_of(f, z.rows(), z.cols());
  // exact replay before returning: nonnegative on every generator pair,
  // strictly negative at z
  res.functional_evidence = pairwise_values(extreme_rays(c1), extreme_rays(c2), res.functional);
  for (const auto& e : res.functional_evidence)
    if (e.value.sign() < 0) throw Error("min_membership: Farkas functional failed replay");
  res.functional_value_at_z = frobenius_inner(res.functional, z);
  if (res.functional_value_at_z.sign() >= 0)
    throw Error("min_membership: Farkas functional does not separate");
  return res;
}

NuclearityResult nuclearity_bruteforce(const Cone& c1, const Cone& c2, int max_product_dim) {
  require_polyhedral_pair(c1, c2);
  const int d1 = c1.ambient_dim();
  const int d2 = c2.ambient_dim();
  if (d1 * d2 > max_product_dim)
    throw CapExceeded("nuclearity_bruteforce: product dimension " + std::to_string(d1 * d2) +
                      " exceeds cap " + std::to_string(max_product_dim));

  std::vector<QMat> gens = min_tensor_generators(c1, c2);
  std::vector<QVec> gen_vecs;
  for (const auto& g : gens) gen_vecs.push_back(vec_of(g));

  DdCaps caps;
  caps.max_dim = max_product_dim;
  caps.max_generators = 4096;
  std::vector<QVec> min_facets = dual_rays_via_dd(gen_vecs, d1 * d2, caps);

  // dual-side product generators
  const auto e1 = extreme_rays(dual_cone(c1));
  const auto e2 = extreme_rays(dual_cone(c2));
  std::vector<QVec> dual_products;
  dual_products.reserve(e1.size() * e2.size());
  for (const auto& f : e1)
    for (const auto& g : e2) dual_products.push_back(vec_of(outer(f, g)));

  NuclearityResult res;
  for (const auto& facet : min_facets) {
    ++res.facets_checked;
    if (conic_decomposition(dual_products, facet).feasible) continue;

    // The facet functional is not a mixture of product functionals, so the
    // maximal cone sticks out across this facet. Locate a witness by
    // minimizing the facet functional over the maximal cone's H-description
    // at unit normalization.
    res.verdict = Nuclearity::Entangleable;
    QVec u1 = strictly_positive_functional(c1);
    QVec u2 = strictly_positive_functional(c2);
    QVec norm_fn = vec_of(outer(u1, u2));

    const int nv = d1 * d2;
    const int nc = int(dual_products.size());
    // variables: z (free, nv) and slacks s >= 0 (nc):  P z - s = 0, u z = 1
    QMat a(nc + 1, nv + nc);
    QVec rhs(nc + 1, Rational(0));
    for (int i = 0; i < nc; ++i) {
      for (int j = 0; j < nv; ++j) a(i, j) = dual_products[i][j];
      a(i, nv + i) = Rational(-1);
    }
    for (int j = 0; j < nv; ++j) a(nc, j) = norm_fn[j];
    rhs[nc] = Rational(1);
    LpProblem lp;
    lp.eq_lhs = a;
    lp.eq_rhs = rhs;
    lp.objective.assign(nv + nc, Rational(0));
    for (int j = 0; j < nv; ++j) lp.objective[j] = facet[j];
    lp.nonneg.assign(nv + nc, true);
    for (int j = 0; j < nv; ++j) lp.nonneg[j] = false;
    LpOutcome sol = lp_solve(lp);
    if (sol.status != LpStatus::Optimal || sol.objective_value.sign() >= 0)
      throw Error("nuclearity_bruteforce: witness search failed unexpectedly");

    SeparationCertificate cert;
    cert.witness = mat_of(QVec(sol.primal.begin(), sol.primal.begin() + nv), d1, d2);
    cert.functional = mat_of(facet, d1, d2);
    cert.separation_value = sol.objective_value;
    cert.max_evidence = pairwise_values(e1, e2, cert.witness);
    cert.min_evidence = pairwise_values(extreme_rays(c1), extreme_rays(c2), cert.functional);
    res.certificate = std::move(cert);
    auto check = verify_certificate(*res.certificate, c1, c2);
    if (!check) throw Error("nuclearity_bruteforce: emitted certificate failed replay: " + check.reason);
    return res;
  }
  res.verdict = Nuclearity::Nuclear;
  return res;
}

CertificateCheck verify_certificate(const SeparationCertificate& cert, const Cone& c1,
                                    const Cone& c2, const DdCaps& caps) {
  CertificateCheck bad;
  require_polyhedral_pair(c1, c2);
  if (cert.witness.rows() != c1.ambient_dim() || cert.witness.cols() != c2.ambient_dim() ||
      cert.functional.rows() != c1.ambient_dim() || cert.functional.cols() != c2.ambient_dim())
    throw Error("verify_certificate: certificate shape does not match cones");

  const auto d1 = extreme_rays(dual_cone(c1, caps));
  const auto d2 = extreme_rays(dual_cone(c2, caps));
  if (cert.max_evidence.size() != d1.size() * d2.size()) {
    bad.reason = "max evidence list incomplete";
    return bad;
  }
  for (const auto& e : cert.max_evidence) {
    if (e.i < 0 || e.i >= int(d1.size()) || e.j < 0 || e.j >= int(d2.size())) {
      bad.reason = "max evidence index out of range";
      return bad;
    }
    Rational v = product_pair_value(d1[e.i], d2[e.j], cert.witness);
    if (!(v == e.value)) {
      bad.reason = "max evidence value mismatch";
      return bad;
    }
    if (v.sign() < 0) {
      bad.reason = "witness fails maximal-cone membership";
      return bad;
    }
  }

  const auto g1 = extreme_rays(c1);
  const auto g2 = extreme_rays(c2);
  if (cert.min_evidence.size() != g1.size() * g2.size()) {
    bad.reason = "min evidence list incomplete";
    return bad;
  }
  for (const auto& e : cert.min_evidence) {
    if (e.i < 0 || e.i >= int(g1.size()) || e.j < 0 || e.j >= int(g2.size())) {
      bad.reason = "min evidence index out of range";
      return bad;
    }
    Rational v = product_pair_value(g1[e.i], g2[e.j], cert.functional);
    if (!(v == e.value)) {
      bad.reason = "min evidence value mismatch";
      return bad;
    }
    if (v.sign() < 0) {
      bad.reason = "functional is negative on a product of generators";
      return bad;
    }
  }

  Rational sep = frobenius_inner(cert.functional, cert.witness);
  if (!(sep == cert.separation_value)) {
    bad.reason = "separation value mismatch";
    return bad;
  }
  if (sep.sign() >= 0) {
    bad.reason = "separation value not negative";
    return bad;
  }
  return {true, ""};
}

}  // namespace conelab

#include "conelab/lorentz_psd.hpp"

#include <cmath>
#include <random>

#include "conelab/spectral.hpp"
#include "conelab/witness3d.hpp"

namespace conelab {

bool lorentz_max_membership_centered(const CenteredTensor& z, double tol) {
  if (z.apex < 0) throw Error("lorentz_max_membership_centered: negative apex");
  return operator_norm(z.block, tol) <= z.apex + tol;
}

bool lorentz_min_membership_centered(const CenteredTensor& z, double r, double tol) {
  if (z.apex < 0) throw Error("lorentz_min_membership_centered: negative apex");
  if (r < 0) throw Error("lorentz_min_membership_centered: negative radius");
  return trace_norm(z.block, tol) <= r * z.apex + tol;
}

CenteredDecomposition lorentz_min_decomposition(const CenteredTensor& z, double r,
                                                double tol) {
  const int n = z.block.rows();
  if (z.block.cols() != n) throw Error("lorentz_min_decomposition: block must be square");
  SvdResult svd = svd_full(z.block, tol);
  double nuclear = 0;
  for (double s : svd.sigma) nuclear += s;
  if (nuclear > r * z.apex + tol)
    throw Error("lorentz_min_decomposition: trace-norm criterion fails, tensor not separable");
  CenteredDecomposition dec;
  for (int k = 0; k < int(svd.sigma.size()); ++k) {
    if (svd.sigma[k] <= tol) break;
    DVec left(n + 1, 0.0), right(n + 1, 0.0);
    for (int i = 0; i < n; ++i) {
      left[i] = svd.u(i, k);
      right[i] = r * svd.v(i, k);
    }
    left[n] = 1.0;
    right[n] = 1.0;
    dec.left.push_back(std::move(left));
    dec.right.push_back(std::move(right));
    dec.weights.push_back(svd.sigma[k] / r);
  }
  dec.apex_remainder = z.apex - nuclear / r;
  return dec;
}

namespace {

QCMat pauli_x() {
  QCMat m(2, 2);
  m.re(0, 1) = Rational(1);
  m.re(1, 0) = Rational(1);
  return m;
}
QCMat pauli_y() {
  QCMat m(2, 2);
  m.im(0, 1) = Rational(-1);
  m.im(1, 0) = Rational(1);
  return m;
}
QCMat pauli_z() {
  QCMat m(2, 2);
  m.re(0, 0) = Rational(1);
  m.re(1, 1) = Rational(-1);
  return m;
}

}  // namespace

CliffordFamily clifford_family(int n) {
  if (n < 1 || n > 4) throw Error("clifford_family: n must be between 1 and 4");
  const int dim = 1 << n;
  CliffordFamily fam;
  fam.n = n;
  for (int k = 1; k <= n; ++k)
    for (int which = 0; which < 2; ++which) {
      QCMat u = QCMat::identity(1);
      for (int i = 1; i <= n; ++i) {
        const QCMat factor = i < k    ? pauli_z()
                             : i == k ? (which == 0 ? pauli_x() : pauli_y())
                                      : QCMat::identity(2);
        u = kron(u, factor);
      }
      fam.us.push_back(std::move(u));
    }

  // exact algebra: anticommutation, tracelessness, pairwise trace orthogonality
  const QCMat id = QCMat::identity(dim);
  for (size_t i = 0; i < fam.us.size(); ++i) {
    if (!is_hermitian(fam.us[i])) throw Error("clifford_family: non-Hermitian factor");
    Rational tr_re, tr_im;
    trace_of(fam.us[i], tr_re, tr_im);
    if (!tr_re.is_zero() || !tr_im.is_zero()) throw Error("clifford_family: nonzero trace");
    for (size_t j = i; j < fam.us.size(); ++j) {
      QCMat anti = fam.us[i] * fam.us[j] + fam.us[j] * fam.us[i];
      QCMat expect = (i == j) ? Rational(2) * id : QCMat(dim, dim);
      if (!(anti == expect)) throw Error("clifford_family: anticommutation identity fails");
      Rational pr_re, pr_im;
      trace_of(fam.us[i] * fam.us[j], pr_re, pr_im);
      Rational want = (i == j) ? Rational(dim) : Rational(0);
      if (!(pr_re == want) || !pr_im.is_zero())
        throw Error("clifford_family: trace orthogonality fails");
    }
  }

  const int hd = herm_dim(dim);
  fam.phi = QMat(2 * n + 1, hd);
  fam.psi = QMat(hd, 2 * n + 1);
  for (int i = 0; i < 2 * n; ++i) {
    QVec dual = herm_dual_coords(fam.us[i]);
    QVec val = herm_coords(fam.us[i]);
    for (int j = 0; j < hd; ++j) {
      fam.phi(i, j) = dual[j];
      fam.psi(j, i) = val[j];
    }
  }
  QVec dual_id = herm_dual_coords(id), val_id = herm_coords(id);
  for (int j = 0; j < hd; ++j) {
    fam.phi(2 * n, j) = dual_id[j];
    fam.psi(j, 2 * n) = val_id[j];
  }
  if (!(fam.phi * fam.psi == Rational(dim) * QMat::identity(2 * n + 1)))
    throw Error("clifford_family: phi . psi is not 2^n times the identity");
  return fam;
}

RetractPair lorentz_psd_retract(int n) {
  CliffordFamily fam = clifford_family(n);
  const int dim = 1 << n;
  RetractPair r;
  r.source = make_psd(dim);
  r.target = make_lorentz(2 * n, Rational(1));
  r.phi = Rational(1, dim) * fam.phi;
  r.psi = fam.psi;
  auto check = verify_retract(r);
  if (!check) throw Error("lorentz_psd_retract: verification failed: " + check.reason);
  return r;
}

RetractPair psd_pinching_retract(int k, int n) {
  if (k < 1 || k > n) throw Error("psd_pinching_retract: need 1 <= k <= n");
  const int hk = herm_dim(k), hn = herm_dim(n);
  QMat comp(hk, hn), emb(hn, hk);
  auto corner_index = [&](int i, int j, bool imag) {
    // coordinate of entry (i, j), i < j, in the size-n layout
    return imag ? n + n * (n - 1) / 2 + herm_pair_index(i, j, n)
                : n + herm_pair_index(i, j, n);
  };
  for (int i = 0; i < k; ++i) {
    comp(i, i) = Rational(1);
    emb(i, i) = Rational(1);
  }
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      int sk_re = k + herm_pair_index(i, j, k);
      int sk_im = k + k * (k - 1) / 2 + herm_pair_index(i, j, k);
      comp(sk_re, corner_index(i, j, false)) = Rational(1);
      comp(sk_im, corner_index(i, j, true)) = Rational(1);
      emb(corner_index(i, j, false), sk_re) = Rational(1);
      emb(corner_index(i, j, true), sk_im) = Rational(1);
    }
  RetractPair r;
  r.source = make_psd(n);
  r.target = make_psd(k);
  r.phi = comp;
  r.psi = emb;
  auto check = verify_retract(r);
  if (!check) throw Error("psd_pinching_retract: verification failed: " + check.reason);
  return r;
}

RetractChain chain_of(const DescentTrace& trace) {
  RetractChain chain;
  for (const auto& s : trace.steps) {
    ChainStep cs;
    cs.kind = s.kind == DescentStep::Kind::FacetRetract ? "facet-retract" : "dual-facet-retract";
    cs.index = s.facet_index;
    cs.lambda = s.lambda;
    cs.pair = s.pair;
    chain.steps.push_back(std::move(cs));
  }
  chain.total = trace.total;
  return chain;
}

RetractChain psd_to_disk_chain(int n) {
  if (n < 2) throw Error("psd_to_disk_chain: need n >= 2");
  RetractChain chain;
  RetractPair total;
  bool have_total = false;
  auto push = [&](std::string kind, RetractPair pair) {
    total = have_total ? compose_retracts(pair, total) : pair;
    have_total = true;
    chain.steps.push_back({std::move(kind), -1, Rational(0), std::move(pair)});
  };
  if (n > 2) push("pinching", psd_pinching_retract(2, n));

  // 2x2 Hermitian coordinates (a00, a11, re, im) to (re, im, (a00-a11)/2,
  // (a00+a11)/2): positive semidefiniteness becomes the second-order cone
  // inequality
  QMat j(4, 4);
  j(0, 2) = Rational(1);
  j(1, 3) = Rational(1);
  j(2, 0) = Rational(1, 2);
  j(2, 1) = Rational(-1, 2);
  j(3, 0) = Rational(1, 2);
  j(3, 1) = Rational(1, 2);
  RetractPair iso;
  iso.source = make_psd(2);
  iso.target = make_lorentz(3, Rational(1));
  iso.phi = j;
  iso.psi = inverse(j);
  auto check = verify_retract(iso);
  if (!check) throw Error("psd_to_disk_chain: iso verification failed: " + check.reason);
  push("iso", std::move(iso));

  RetractPair drop;
  drop.source = make_lorentz(3, Rational(1));
  drop.target = make_lorentz(2, Rational(1));
  drop.phi = QMat(3, 4);
  drop.phi(0, 0) = Rational(1);
  drop.phi(1, 1) = Rational(1);
  drop.phi(2, 3) = Rational(1);
  drop.psi = QMat(4, 3);
  drop.psi(0, 0) = Rational(1);
  drop.psi(1, 1) = Rational(1);
  drop.psi(3, 2) = Rational(1);
  check = verify_retract(drop);
  if (!check) throw Error("psd_to_disk_chain: drop verification failed: " + check.reason);
  push("drop", std::move(drop));

  chain.total = total;
  return chain;
}

namespace {

struct CornerData {
  Rational a00, a11, re, im;
};

// exact corner extraction: every coordinate outside the top-left 2x2 block
// must vanish
std::optional<CornerData> extract_corner(const QVec& coords, int n) {
  if (int(coords.size()) != herm_dim(n)) return std::nullopt;
  CornerData c;
  c.a00 = coords[0];
  c.a11 = coords[1];
  const int re01 = n + herm_pair_index(0, 1, n);
  const int im01 = n + n * (n - 1) / 2 + herm_pair_index(0, 1, n);
  c.re = coords[re01];
  c.im = coords[im01];
  for (int t = 0; t < herm_dim(n); ++t) {
    if (t == 0 || t == 1 || t == re01 || t == im01) continue;
    if (!coords[t].is_zero()) return std::nullopt;
  }
  return c;
}

// 2x2 Hermitian PSD test (trace and determinant signs), exact
std::optional<DiskEvidence> corner_psd_evidence(const CornerData& c) {
  Rational tr = c.a00 + c.a11;
  Rational slack = c.a00 * c.a11 - c.re * c.re - c.im * c.im;
  if (tr.sign() < 0 || slack.sign() < 0) return std::nullopt;
  DiskEvidence ev;
  ev.vector = {c.re, c.im, tr / Rational(2)};
  ev.slack = slack;
  return ev;
}

std::optional<DiskEvidence> disk_membership_evidence(const QVec& y) {
  if (y.size() != 3) return std::nullopt;
  if (y[2].sign() < 0) return std::nullopt;
  Rational slack = y[2] * y[2] - y[0] * y[0] - y[1] * y[1];
  if (slack.sign() < 0) return std::nullopt;
  return DiskEvidence{y, slack};
}

QVec mat_vec_left(const QMat& m, const QVec& f) {  // m^T f
  QVec out(m.cols(), Rational(0));
  for (int i = 0; i < m.rows(); ++i) {
    if (f[i].is_zero()) continue;
    for (int j = 0; j < m.cols(); ++j) out[j] += m(i, j) * f[i];
  }
  return out;
}

}  // namespace

SemiquantumCertificate certify_entangleable_semiquantum(const Cone& c, int n,
                                                        const SemiquantumOptions& opt) {
  if (n < 2) throw Error("certify_entangleable_semiquantum: need n >= 2");
  auto cl = is_classical(c);
  if (cl.classical)
    throw ClassicalInputError("certify_entangleable_semiquantum: cone is classical", cl.basis);

  SemiquantumCertificate cert;
  cert.psd_n = n;
  cert.seed = opt.seed;
  cert.samples = opt.samples;
  cert.tol = opt.tol;

  DescentTrace t = descend_to_3d(c);
  RetractPair pf = polygon_form_3d(t.final_cone);
  RetractPair to_polygon = compose_retracts(pf, t.total);
  cert.left = chain_of(t);
  cert.left.steps.push_back({"iso", -1, Rational(0), pf});
  cert.left.total = to_polygon;

  const Cone& pk = to_polygon.target;
  SandwichResult sw = sandwich(pk.polygon_vertices());
  QMat g1 = lift_affine(sw.map);

  // rational margin over (image polygon) x (unit disk): the Bell form is at
  // most sqrt(2 s) with s the largest squared vertex norm, and s < 2 because
  // the image avoids the corners; 1 + s/2 dominates sqrt(2 s) and stays
  // below 2, with the classic value 3/2 kept as a floor
  Rational s(0);
  for (const auto& v : sw.image) s = max(s, v.x * v.x + v.y * v.y);
  if (!(s < Rational(2)))
    throw Error("certify_entangleable_semiquantum: sandwiched image touches a corner");
  cert.margin = max(Rational(3, 2), Rational(1) + s / Rational(2));
  if (!(cert.margin * cert.margin >= Rational(2) * s) || !(cert.margin < Rational(2)))
    throw Error("certify_entangleable_semiquantum: margin invariant violated (internal)");

  QMat f_std(3, 3);
  f_std(0, 0) = Rational(-1);
  f_std(0, 1) = Rational(-1);
  f_std(1, 0) = Rational(-1);
  f_std(1, 1) = Rational(1);
  f_std(2, 2) = cert.margin;
  QMat z_std = build_omega(Rational(0), Rational(0), sw.kite.a, sw.kite.b);
  if (!(z_std(2, 2) == Rational(1)))
    throw Error("certify_entangleable_semiquantum: unexpected witness normalization");

  cert.base_witness = inverse(g1) * z_std;
  cert.base_functional = g1.transpose() * f_std;
  cert.base_separation = frobenius_inner(cert.base_functional, cert.base_witness);
  if (!(cert.base_separation == cert.margin - Rational(2)))
    throw Error("certify_entangleable_semiquantum: separation value mismatch (internal)");

  for (const auto& f : extreme_rays(dual_cone(pk))) {
    auto ev = disk_membership_evidence(mat_vec_left(cert.base_witness, f));
    if (!ev) throw Error("certify_entangleable_semiquantum: base witness evidence failed");
    cert.base_max.push_back(*ev);
  }
  for (const auto& g : extreme_rays(pk)) {
    auto ev = disk_membership_evidence(mat_vec_left(cert.base_functional, g));
    if (!ev) throw Error("certify_entangleable_semiquantum: base functional evidence failed");
    cert.base_min.push_back(*ev);
  }

  cert.right = psd_to_disk_chain(n);
  const RetractPair& rt = cert.right.total;
  cert.witness = to_polygon.psi * cert.base_witness * rt.psi.transpose();
  cert.functional = to_polygon.phi.transpose() * cert.base_functional * rt.phi;
  cert.separation_value = frobenius_inner(cert.functional, cert.witness);
  if (!(cert.separation_value == cert.base_separation))
    throw Error("certify_entangleable_semiquantum: lifted separation value drifted");

  auto check = verify_semiquantum(cert, c, opt);
  if (!check)
    throw Error("certify_entangleable_semiquantum: verification failed: " + check.reason);
  return cert;
}

SemiquantumCheck verify_semiquantum(const SemiquantumCertificate& cert, const Cone& c,
                                    const SemiquantumOptions& opt) {
  SemiquantumCheck bad;
  const int n = cert.psd_n;
  const int hn = herm_dim(n);
  if (cert.witness.rows() != c.ambient_dim() || cert.witness.cols() != hn ||
      cert.functional.rows() != c.ambient_dim() || cert.functional.cols() != hn) {
    bad.reason = "certificate shape mismatch";
    return bad;
  }

  // exact rational replay
  if (!(frobenius_inner(cert.functional, cert.witness) == cert.separation_value) ||
      cert.separation_value.sign() >= 0) {
    bad.reason = "separation value does not replay";
    return bad;
  }
  if (!(frobenius_inner(cert.base_functional, cert.base_witness) == cert.base_separation)) {
    bad.reason = "base separation value does not replay";
    return bad;
  }

  // chain integrity
  for (const auto* chain : {&cert.left, &cert.right}) {
    for (const auto& step : chain->steps)
      if (!verify_retract(step.pair, opt.tol)) {
        bad.reason = "a chain step fails retract verification";
        return bad;
      }
    if (!verify_retract(chain->total, opt.tol)) {
      bad.reason = "a chain total fails retract verification";
      return bad;
    }
  }
  const Cone& pk = cert.left.total.target;
  if (pk.kind() != Cone::Kind::Polygon) {
    bad.reason = "left chain does not end on a polygon cone";
    return bad;
  }
  if (!(cert.witness ==
        cert.left.total.psi * cert.base_witness * cert.right.total.psi.transpose()) ||
      !(cert.functional ==
        cert.left.total.phi.transpose() * cert.base_functional * cert.right.total.phi)) {
    bad.reason = "lifted tensors do not match the chains";
    return bad;
  }

  // base pair evidence: all partial applications land in the disk cone
  auto duals = extreme_rays(dual_cone(pk));
  auto gens = extreme_rays(pk);
  if (cert.base_max.size() != duals.size() || cert.base_min.size() != gens.size()) {
    bad.reason = "base evidence incomplete";
    return bad;
  }
  for (size_t i = 0; i < duals.size(); ++i) {
    auto ev = disk_membership_evidence(mat_vec_left(cert.base_witness, duals[i]));
    if (!ev || !(ev->vector == cert.base_max[i].vector) ||
        !(ev->slack == cert.base_max[i].slack)) {
      bad.reason = "base witness evidence does not replay";
      return bad;
    }
  }
  for (size_t i = 0; i < gens.size(); ++i) {
    auto ev = disk_membership_evidence(mat_vec_left(cert.base_functional, gens[i]));
    if (!ev || !(ev->vector == cert.base_min[i].vector) ||
        !(ev->slack == cert.base_min[i].slack)) {
      bad.reason = "base functional evidence does not replay";
      return bad;
    }
  }

  // lifted corner structure: partial applications against the PSD side stay
  // in an exactly checkable 2x2 corner
  double min_eig = 1e300;
  for (const auto& f : extreme_rays(dual_cone(c))) {
    auto corner = extract_corner(mat_vec_left(cert.witness, f), n);
    if (!corner || !corner_psd_evidence(*corner)) {
      bad.reason = "witness partial application leaves the PSD cone";
      return bad;
    }
    DVec coords = to_double(mat_vec_left(cert.witness, f));
    min_eig = std::min(min_eig, herm_min_eigenvalue(coords, n, opt.tol));
  }
  for (const auto& g : extreme_rays(c)) {
    QVec w = mat_vec_left(cert.functional, g);  // functional^T g, dual coordinates
    auto corner = extract_corner(w, n);
    if (!corner) {
      bad.reason = "functional partial application has support off the corner";
      return bad;
    }
    // the representing matrix halves the off-diagonal dual coordinates
    CornerData rep = *corner;
    rep.re /= Rational(2);
    rep.im /= Rational(2);
    if (!corner_psd_evidence(rep)) {
      bad.reason = "functional partial application is not PSD";
      return bad;
    }
    QVec full(hn, Rational(0));
    full[0] = rep.a00;
    full[1] = rep.a11;
    full[n + herm_pair_index(0, 1, n)] = rep.re;
    full[n + n * (n - 1) / 2 + herm_pair_index(0, 1, n)] = rep.im;
    min_eig = std::min(min_eig, herm_min_eigenvalue(to_double(full), n, opt.tol));
  }
  bad.min_corner_eigenvalue = min_eig;
  if (min_eig < -opt.tol) {
    bad.reason = "corner spectral confirmation failed";
    return bad;
  }

  // seeded rank-one spot checks
  std::mt19937_64 rng(cert.seed);
  std::normal_distribution<double> gauss;
  double min_val = 1e300;
  auto fd = extreme_rays(dual_cone(c));
  auto gd = extreme_rays(c);
  DMat wD = to_double(cert.witness), fD = to_double(cert.functional);
  for (int t = 0; t < cert.samples; ++t) {
    DVec re(n), im(n);
    double nrm = 0;
    for (int i = 0; i < n; ++i) {
      re[i] = gauss(rng);
      im[i] = gauss(rng);
      nrm += re[i] * re[i] + im[i] * im[i];
    }
    nrm = std::sqrt(std::max(nrm, 1e-12));
    for (int i = 0; i < n; ++i) {
      re[i] /= nrm;
      im[i] /= nrm;
    }
    // projector v v^dagger: value coordinates and trace-pairing coordinates
    DVec val(hn, 0.0), dual(hn, 0.0);
    for (int i = 0; i < n; ++i) val[i] = re[i] * re[i] + im[i] * im[i];
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        double pre = re[i] * re[j] + im[i] * im[j];
        double pim = im[i] * re[j] - re[i] * im[j];
        val[n + herm_pair_index(i, j, n)] = pre;
        val[n + n * (n - 1) / 2 + herm_pair_index(i, j, n)] = pim;
      }
    for (int k = 0; k < hn; ++k) dual[k] = k < n ? val[k] : 2 * val[k];
    for (const auto& f : fd) {
      double v = 0;
      for (int i = 0; i < wD.rows(); ++i)
        for (int j = 0; j < hn; ++j) v += f[i].to_double() * wD(i, j) * dual[j];
      min_val = std::min(min_val, v);
    }
    for (const auto& g : gd) {
      double v = 0;
      for (int i = 0; i < fD.rows(); ++i)
        for (int j = 0; j < hn; ++j) v += g[i].to_double() * fD(i, j) * val[j];
      min_val = std::min(min_val, v);
    }
  }
  bad.min_sampled_value = min_val;
  if (min_val < -opt.tol) {
    bad.reason = "sampled rank-one spot check failed";
    return bad;
  }

  SemiquantumCheck ok;
  ok.ok = true;
  ok.min_sampled_value = min_val;
  ok.min_corner_eigenvalue = min_eig;
  return ok;
}

AsphericityValue simplex_asphericity_value(int d) {
  if (d < 2 || d > 6) throw Error("simplex_asphericity_value: d must be between 2 and 6");
  // regular simplex with vertices e_1 .. e_{d+1} in R^{d+1}
  const int m = d + 1;
  QVec centroid(m, Rational(1, m));
  Rational circum2(0);
  {
    QVec v(m, Rational(0));
    v[0] = Rational(1);
    for (int i = 0; i < m; ++i) {
      Rational dd = v[i] - centroid[i];
      circum2 += dd * dd;
    }
  }
  Rational in2(0);
  {
    // centroid of the facet opposite vertex 0
    QVec f(m, Rational(1, d));
    f[0] = Rational(0);
    for (int i = 0; i < m; ++i) {
      Rational dd = f[i] - centroid[i];
      in2 += dd * dd;
    }
  }
  AsphericityValue res;
  res.squared_ratio = circum2 / in2;
  res.ratio = std::sqrt(res.squared_ratio.to_double());
  return res;
}

}  // namespace conelab

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "conelab/cone.hpp"

namespace conelab {

// Tensors z in V1 (x) V2 are stored as d1 x d2 coefficient matrices with
// entry (i, j) the coefficient on e_i (x) e_j; a functional F pairs with z
// by <F, z> = sum_ij F[i][j] Z[i][j], so a product functional f (x) g has
// F[i][j] = f_i g_j.

struct EvidenceEntry {
  int i = 0, j = 0;
  Rational value;
};

// Witness of a strict gap between the minimal and the maximal tensor
// product: z lies in the maximal product (max_evidence), f is nonnegative
// on every product of generators (min_evidence), and f(z) < 0.
struct SeparationCertificate {
  QMat witness;
  QMat functional;
  Rational separation_value;
  std::vector<EvidenceEntry> max_evidence;  // (dual ray i, dual ray j) -> (f_i (x) g_j)(z)
  std::vector<EvidenceEntry> min_evidence;  // (extreme ray i, extreme ray j) -> f(g_i (x) h_j)
};

// All pairwise products of extreme rays, (i, j) in i-major order.
std::vector<QMat> min_tensor_generators(const Cone& c1, const Cone& c2);

struct MaxMembershipResult {
  bool member = false;
  std::vector<EvidenceEntry> evidence;  // every dual extreme ray pair, exact
};
// z against all products of dual extreme rays; sufficient because the dual
// extreme rays generate the dual cones.
MaxMembershipResult max_membership(const Cone& c1, const Cone& c2, const QMat& z,
                                   const DdCaps& caps = {});

struct MinMembershipResult {
  bool member = false;
  QVec decomposition;  // over min_tensor_generators, when member
  QMat functional;     // separating, when not: >= 0 on all generators, < 0 at z
  std::vector<EvidenceEntry> functional_evidence;
  Rational functional_value_at_z;
};
MinMembershipResult min_membership(const Cone& c1, const Cone& c2, const QMat& z);

enum class Nuclearity { Nuclear, Entangleable };

struct NuclearityResult {
  Nuclearity verdict = Nuclearity::Nuclear;
  std::optional<SeparationCertificate> certificate;
  int facets_checked = 0;
};

// Decides whether the minimal and maximal tensor products coincide by
// enumerating the facets of the minimal cone and testing each facet
// functional for membership in the cone generated by products of dual
// extreme rays. A failed facet yields a verified certificate.
// Caps: dim(c1) * dim(c2) <= max_product_dim.
NuclearityResult nuclearity_bruteforce(const Cone& c1, const Cone& c2,
                                       int max_product_dim = 36);

struct CertificateCheck {
  bool ok = false;
  std::string reason;
  explicit operator bool() const { return ok; }
};
// Exact replay of every evidence value against freshly computed extreme and
// dual extreme rays of the two cones.
CertificateCheck verify_certificate(const SeparationCertificate& cert, const Cone& c1,
                                    const Cone& c2, const DdCaps& caps = {});

// Shared helpers for evidence construction.
Rational product_pair_value(const QVec& f, const QVec& g, const QMat& z);
std::vector<EvidenceEntry> pairwise_values(const std::vector<QVec>& left,
                                           const std::vector<QVec>& right, const QMat& z);

}  // namespace conelab

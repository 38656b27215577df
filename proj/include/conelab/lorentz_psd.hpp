#pragma once

#include <cstdint>

#include "conelab/herm.hpp"
#include "conelab/retract.hpp"

namespace conelab {

// Tensors over a pair of second-order cones with no mixed terms:
// z = sum_ij B_ij e_i (x) e_j + t e_{n+1} (x) e_{n+1}. On this class the
// membership questions have closed-form answers through the operator norm
// (maximal product) and the trace norm (minimal product).
struct CenteredTensor {
  DMat block;
  double apex = 0;
};

// z against L_n(1) (*) L_n(1): member iff the largest singular value of the
// block is at most the apex.
bool lorentz_max_membership_centered(const CenteredTensor& z, double tol = 1e-9);

// z against L_n(1) (.) L_n(r): member iff the trace norm of the block is at
// most r times the apex.
bool lorentz_min_membership_centered(const CenteredTensor& z, double r, double tol = 1e-9);

// Explicit separable decomposition through the SVD of the block, valid when
// the trace-norm criterion holds: rank-one terms with both legs on the cone
// boundary plus an apex remainder.
struct CenteredDecomposition {
  std::vector<DVec> left, right;  // lifted factors, left[k] in L_n(1), right[k] in L_n(r)
  DVec weights;
  double apex_remainder = 0;
};
CenteredDecomposition lorentz_min_decomposition(const CenteredTensor& z, double r,
                                                double tol = 1e-9);

// 2n pairwise anticommuting traceless Hermitian involutions of size 2^n,
// built from tensor products of the three 2x2 spin matrices; all algebraic
// identities verified exactly over the rationals at construction.
struct CliffordFamily {
  int n = 1;
  std::vector<QCMat> us;
  QMat phi;  // (2n+1) x 4^n: A -> (tr(A U_1), ..., tr(A U_2n), tr A)
  QMat psi;  // 4^n x (2n+1): x -> sum x_i U_i + x_{2n+1} Id
};
CliffordFamily clifford_family(int n);  // 1 <= n <= 4

// The second-order cone of dimension 2n+1 as a retract of the PSD cone of
// size 2^n, via the family above with the compression rescaled by 2^-n.
RetractPair lorentz_psd_retract(int n);

// Corner compression/embedding between PSD cones.
RetractPair psd_pinching_retract(int k, int n);

// One labelled step of a retract chain, serializable for audits.
struct ChainStep {
  std::string kind;  // "facet-retract", "dual-facet-retract", "iso", "pinching", "drop"
  int index = -1;    // facet index where applicable
  Rational lambda;   // beam scaling where applicable
  RetractPair pair;
};
struct RetractChain {
  std::vector<ChainStep> steps;
  RetractPair total;
};
RetractChain chain_of(const DescentTrace& trace);
// PSD_n -> PSD_2 -> L_3 -> L_2, all pairs verified.
RetractChain psd_to_disk_chain(int n);

struct SemiquantumOptions {
  uint64_t seed = 0x5eedbead;
  int samples = 1000;
  double tol = 1e-9;
};

// Evidence entry for a second-order-cone side: the partially applied vector
// and its exact cone slack (height^2 minus squared radius).
struct DiskEvidence {
  QVec vector;     // (y1, y2, y3) with y3 >= 0
  Rational slack;  // y3^2 - y1^2 - y2^2 >= 0
};

// Certificate that (C, PSD_n) has a strict minimal/maximal gap. The rational
// parts replay exactly: the separation value, the corner structure of every
// partial application (a 2x2 PSD test), and the base-pair evidence. Spot
// checks on seeded rank-one projectors confirm the PSD side numerically.
struct SemiquantumCertificate {
  int psd_n = 2;
  QMat witness;     // dim(C) x n^2, in the maximal product
  QMat functional;  // dim(C) x n^2, nonnegative on the minimal product
  Rational separation_value;

  QMat base_witness;     // 3 x 3, for (polygon cone, disk cone)
  QMat base_functional;  // 3 x 3
  Rational base_separation;
  Rational margin;  // rational margin of the Bell form over polygon x disk
  std::vector<DiskEvidence> base_max;  // per dual extreme ray of the polygon cone
  std::vector<DiskEvidence> base_min;  // per extreme ray of the polygon cone

  RetractChain left;   // C -> polygon cone
  RetractChain right;  // PSD_n -> disk cone

  uint64_t seed = 0;
  int samples = 0;
  double tol = 1e-9;
};

struct SemiquantumCheck {
  bool ok = false;
  std::string reason;
  double min_sampled_value = 0;   // most negative sampled product pairing
  double min_corner_eigenvalue = 0;
  explicit operator bool() const { return ok; }
};

SemiquantumCertificate certify_entangleable_semiquantum(const Cone& c, int n,
                                                        const SemiquantumOptions& opt = {});
SemiquantumCheck verify_semiquantum(const SemiquantumCertificate& cert, const Cone& c,
                                    const SemiquantumOptions& opt = {});

// Circumradius/inradius data of the regular simplex about its centroid,
// computed from exact rational coordinates; the squared ratio is d^2.
struct AsphericityValue {
  Rational squared_ratio;
  double ratio = 0;
};
AsphericityValue simplex_asphericity_value(int d);  // 2 <= d <= 6

}  // namespace conelab

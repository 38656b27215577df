#pragma once

#include "conelab/tensor_cone.hpp"

namespace conelab {

// A positive factorization exhibiting `target` as a retract of `source`:
// phi(source) = target, psi embeds target back, and phi . psi is the
// identity on the target space.
struct RetractPair {
  Cone source;
  Cone target;
  QMat phi;  // dim(target) x dim(source)
  QMat psi;  // dim(source) x dim(target)
};

struct RetractCheck {
  bool ok = false;
  std::string reason;
  bool positivity_sampled = false;  // a non-polyhedral side was checked on samples
  explicit operator bool() const { return ok; }
};

// Exact identity check plus positivity of both maps: exact generator
// membership on polyhedral/Lorentz representations, sampled rational
// rank-one matrices on PSD sides.
RetractCheck verify_retract(const RetractPair& r, double tol = 1e-9,
                            uint64_t seed = 0x5eedbead, int samples = 200);

// Members of a cone for sampled positivity checks; exact rational points.
std::vector<QVec> sample_cone_members(const Cone& c, uint64_t seed, int count);

// Projection of a polyhedral cone onto one of its facets along a beam
// through the facet's relative interior. The scaling is found by exact LP
// per generator and bumped by one for strict interiority.
RetractPair facet_retract(const Cone& c, int facet_index,
                          Rational* lambda_out = nullptr);

// Swap the two maps and transpose: target* becomes a retract of source*.
RetractPair dualize_retract(const RetractPair& r);

// inner: A -> B, outer: B -> C gives A -> C.
RetractPair compose_retracts(const RetractPair& outer, const RetractPair& inner);

struct DescentStep {
  enum class Kind { FacetRetract, DualFacetRetract };
  Kind kind = Kind::FacetRetract;
  int facet_index = 0;     // facet of the cone (or of its dual) that was used
  Rational lambda;         // beam scaling of the underlying facet retract
  RetractPair pair;
};

struct DescentTrace {
  std::vector<DescentStep> steps;
  Cone final_cone;     // 3-dimensional, non-classical
  RetractPair total;   // composed and verified, source -> final_cone
};

// Walk a non-classical polyhedral cone down to a non-classical
// 3-dimensional retract: take a non-classical facet when one exists,
// otherwise pass through the dual (whose facet then must be non-classical).
DescentTrace descend_to_3d(const Cone& c);

// Push a certificate for the retract pair up to the original cones:
// witness through psi (x) psi, functional through phi^T (x) phi^T; the
// separation value is preserved exactly and all evidence is re-verified.
SeparationCertificate lift_certificate(const SeparationCertificate& base,
                                       const RetractPair& r1, const RetractPair& r2);

// Result-2 pipeline: descend both cones to 3 dimensions, turn the final
// cones into cones over polygons, certify the polygon pair, and lift.
SeparationCertificate certify_entangleable_polyhedral(const Cone& c1, const Cone& c2);

// Exposed for the pipeline and for audits: a linear change of coordinates
// turning a 3-dimensional polyhedral cone into the cone over a polygon
// (section by a strictly positive functional).
RetractPair polygon_form_3d(const Cone& c);

}  // namespace conelab

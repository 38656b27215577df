#pragma once

#include "conelab/tensor_cone.hpp"

namespace conelab {

// Finite-dimensional normed space described by its unit ball: a symmetric
// full-dimensional polytope given by vertices, or the Euclidean ball.
struct NormedSpace {
  enum class Kind { Polytope, Euclidean };
  Kind kind = Kind::Euclidean;
  int dim = 0;
  std::vector<QVec> vertices;  // Polytope only; closed under v -> -v
};

NormedSpace polytope_ball(std::vector<QVec> vertices);
NormedSpace euclidean_ball(int dim);
// Polar ball: vertices of the dual unit ball for polytopes (computed through
// the lifted cone's facets), the same ball for the Euclidean case.
NormedSpace dual_space(const NormedSpace& s);

// State space with a symmetry centre, kept in standard position: the host
// space is R^{dim+1}, the order unit is the last coordinate functional, the
// centre is the last basis vector, and the unit ball sits in the slice.
struct SymmetricGpt {
  NormedSpace ball;
  int full_dim() const { return ball.dim + 1; }
  Cone cone() const;  // polyhedral lift of the ball, or the second-order cone
  QVec unit() const;
  QVec centre() const;
};
SymmetricGpt make_symmetric_gpt(NormedSpace ball);

// General cone-with-unit pair for robustness computations.
struct Gpt {
  Cone cone;
  QVec unit;
};
Gpt make_gpt(Cone cone, QVec unit);  // checks strict positivity of the unit

// Gauge of the state-space ball. The argument lives in the ball's space
// (size dim), or in the full space with vanishing last coordinate.
Rational gauge_norm_exact(const SymmetricGpt& s, const QVec& x);
double gauge_norm(const SymmetricGpt& s, const DVec& x);

// Largest product-functional value over the two dual balls; exact vertex
// enumeration for polytopes, largest singular value for Euclidean pairs.
Rational injective_norm_exact(const NormedSpace& x, const NormedSpace& y, const QMat& z);
double injective_norm(const NormedSpace& x, const NormedSpace& y, const DMat& z);

// Least total mass of a decomposition over products of ball vertices; exact
// LP with a matching dual bound for polytopes, trace norm for Euclidean
// pairs.
struct ProjectiveResult {
  Rational value;
  QVec decomposition;    // coefficients over vertex pairs, i-major order
  QMat dual_functional;  // |<F, v (x) w>| <= 1 with <F, z> = value
  Rational dual_bound;   // equals value (verified exactly)
};
ProjectiveResult projective_norm_exact(const NormedSpace& x, const NormedSpace& y,
                                       const QMat& z);
double projective_norm(const NormedSpace& x, const NormedSpace& y, const DMat& z);

// gamma_1 (x) gamma_2 + z, defined when the injective norm of z is at most
// one; the result is normalized and lies in the maximal tensor product.
QMat omega_state(const SymmetricGpt& s1, const SymmetricGpt& s2, const QMat& z);

struct RobustnessResult {
  Rational value;
  QMat noise;           // the optimal zeta
  QVec zeta_coefficients;  // over products of extreme rays
};
// Least (u1 (x) u2)(zeta) with zeta and omega + zeta both separable; exact
// LP over the product generators. Requires omega in the maximal product.
RobustnessResult entanglement_robustness(const Gpt& a, const Gpt& b, const QMat& omega);

// (projective - 1)/2, clipped at zero; requires injective norm at most one.
Rational robustness_lower_bound_exact(const SymmetricGpt& s1, const SymmetricGpt& s2,
                                      const QMat& z);
double robustness_lower_bound(const SymmetricGpt& s1, const SymmetricGpt& s2, const DMat& z);

// Same construction on the dual data; the gauge of the result is the dual
// norm of the input's gauge.
SymmetricGpt dual_symmetric_gpt(const SymmetricGpt& s);

// Reference constants from the literature on the projective/injective ratio;
// surfaced in reports, never recomputed here.
inline const Rational kProjectiveInjectiveRatioFloor{19, 18};  // any dimensions >= 2
inline const Rational kRobustnessUniversalFloor{1, 36};        // (19/18 - 1) / 2
inline constexpr double kRatioAsymptoticExponent = 0.125;      // growth in min(n,m)

}  // namespace conelab

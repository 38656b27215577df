#pragma once

#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "conelab/errors.hpp"
#include "conelab/matrix.hpp"

namespace conelab {

struct Point2 {
  Rational x, y;
  friend bool operator==(const Point2&, const Point2&) = default;
};

// Size guards for the double description method.
struct DdCaps {
  int max_dim = 8;
  int max_generators = 64;
};

// Extreme rays of { f : f.g >= 0 for every generator g }, i.e. the dual cone
// in generator representation. Motzkin's double description method, exact.
std::vector<QVec> dual_rays_via_dd(const std::vector<QVec>& generators, int dim,
                                   const DdCaps& caps = {});

struct FacetInfo {
  QVec functional;            // >= 0 on the cone, = 0 exactly on the facet
  std::vector<int> incident;  // indices into extreme_rays() lying on the facet
};

// A convex cone in one of five representations. Immutable; copies share
// lazily computed data (extreme rays, facets, polygon lifting), each filled
// at most once.
class Cone {
 public:
  enum class Kind { Polyhedral, Lorentz, Psd, Classical, Polygon };

  Cone();  // the half-line, a placeholder for aggregate members

  Kind kind() const;
  int ambient_dim() const;  // Polygon counts as its lifted 3-dimensional cone

  const std::vector<QVec>& generators() const;  // Polyhedral only
  int lorentz_n() const;
  const Rational& lorentz_r() const;
  int psd_n() const;        // matrix size n; ambient dim is n^2
  int classical_n() const;
  const std::vector<Point2>& polygon_vertices() const;

  friend Cone make_polyhedral(int dim, std::vector<QVec> generators);
  friend Cone make_lorentz(int n, Rational r);
  friend Cone make_psd(int n);
  friend Cone make_classical(int n);
  friend Cone make_polygon(std::vector<Point2> vertices);

  struct Impl;
  const Impl& impl() const { return *impl_; }

 private:
  explicit Cone(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  std::shared_ptr<const Impl> impl_;
};

// Factories validate their invariants: polyhedral cones must be proper
// (nonzero generators, generating, salient); polygons must be in strictly
// convex counterclockwise position.
Cone make_polyhedral(int dim, std::vector<QVec> generators);
Cone make_lorentz(int n, Rational r);
Cone make_psd(int n);
Cone make_classical(int n);
Cone make_polygon(std::vector<Point2> vertices);

// Polyhedral view: Polyhedral itself, Classical as cone over the standard
// basis, Polygon lifted to generators (x, y, 1). Lorentz/Psd throw.
Cone as_polyhedral(const Cone& c);

enum class Where { Inside, Boundary, Outside };

struct MembershipResult {
  Where where = Where::Outside;
  // conic coefficients over extreme_rays(), exact (polyhedral paths, Inside/Boundary)
  std::optional<QVec> decomposition;
  // functional nonnegative on the cone and strictly negative at x (Outside)
  std::optional<QVec> separating;
  std::optional<double> min_eigenvalue;  // Psd path
  std::string note;
};

// Exact decision for Polyhedral/Classical/Polygon and rational Lorentz data;
// spectral decision (tolerance tol * (1 + |x|)) for Psd.
MembershipResult membership(const Cone& c, const QVec& x, double tol = 1e-9);
// Floating-point variant for Lorentz/Psd data.
MembershipResult membership(const Cone& c, const DVec& x, double tol = 1e-9);

// Dual cone. Generator representation via double description for the
// polyhedral kinds; closed forms for Lorentz (r -> 1/r), Psd and Classical.
Cone dual_cone(const Cone& c, const DdCaps& caps = {});

// Minimal generator list; each survivor spans a one-dimensional face.
// Redundancy decided by exact LP, one generator at a time.
std::vector<QVec> extreme_rays(const Cone& c);

// Facets with supporting functionals and incidence lists.
std::vector<FacetInfo> facets(const Cone& c, const DdCaps& caps = {});

struct ClassicalityResult {
  bool classical = false;
  std::vector<QVec> basis;  // witness when classical
  std::string obstruction;  // reason when not
};
ClassicalityResult is_classical(const Cone& c);

// Image cone under an invertible map. Polyhedral kinds only.
Cone apply_linear(const Cone& c, const QMat& m);

// Strictly positive functional (sum of the dual extreme rays).
QVec strictly_positive_functional(const Cone& c);

}  // namespace conelab

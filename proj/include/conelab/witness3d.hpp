#pragma once

#include <array>

#include "conelab/tensor_cone.hpp"

namespace conelab {

// Planar machinery that certifies the minimal/maximal tensor gap for cones
// over polygons: inscribe a maximal quadrilateral, normalize the polygon
// between a kite and the corner-free unit square, and separate with a
// Bell-type functional that is strictly below 2 away from the corners.

// --- polygon utilities (exact) ---

Rational polygon_area2(const std::vector<Point2>& poly);  // twice the signed area
bool point_in_convex_polygon(const Point2& p, const std::vector<Point2>& poly);
// index of an edge with p strictly on its outer side, -1 if none
int separating_edge(const Point2& p, const std::vector<Point2>& poly);
// strict convex hull, counterclockwise, collinear points dropped
std::vector<Point2> convex_hull(std::vector<Point2> pts);

struct AffineMap2 {
  QMat lin;     // 2 x 2
  QVec offset;  // 2
  Point2 apply(const Point2& p) const;
};
// (x, t) -> (lin x + t offset, t), the cone-level lift of an affine map
QMat lift_affine(const AffineMap2& m);

struct Kite {
  Rational a, b;  // both in (-1, 1)
};
// conv{(a, 1), (1, b), (a, -1), (-1, b)} as polygon vertices (ccw)
std::vector<Point2> kite_vertices(const Kite& k);

// --- operations ---

struct MaxAreaQuad {
  std::array<int, 4> indices;  // polygon vertex indices, ccw
  std::array<Point2, 4> points;
  Rational area;
};
// Exhaustive search over vertex quadruples; maximal-area inscribed
// quadrilaterals have their corners at polygon vertices. Rejects triangles.
MaxAreaQuad max_area_quadrilateral(const std::vector<Point2>& polygon);

struct CornerEvidence {
  Point2 corner;
  int edge;  // image polygon edge with the corner strictly outside
};

struct SandwichResult {
  AffineMap2 map;   // kite(a,b) inside map(K) inside the square, corners excluded
  Kite kite;
  std::vector<Point2> image;          // map applied to each input vertex
  std::array<Point2, 4> quad;         // chosen quadrilateral, original coordinates
  bool used_edge_slide = false;
  std::vector<QVec> kite_memberships;   // convex coefficients over image vertices
  std::vector<CornerEvidence> corners;  // all four square corners excluded
};
// Normal form of a non-triangle convex polygon: an affine bijection taking it
// inside the unit square with all four corners excluded, and a kite inside it.
// Throws ClassicalInputError for triangles.
SandwichResult sandwich(const std::vector<Point2>& polygon);

// Exact 3x3 product  [[1,a2 b2,a2],[a2 b2,1,b2],[a2,b2,1]] * Hinv *
// [[1,a1 b1,a1],[a1 b1,1,b1],[a1,b1,1]]  with Hinv the inverse of
// [[1,1,0],[1,-1,0],[0,0,1]]. Parameters must lie in (-1,1).
QMat build_omega(const Rational& a1, const Rational& b1, const Rational& a2,
                 const Rational& b2);

Rational chsh_value(const Point2& p1, const Point2& p2);

struct MarginResult {
  Rational lambda;  // strict maximum of the Bell form over vertex pairs, < 2
  QMat functional;  // lambda (u (x) u) - Bell form, nonnegative on the products
  std::vector<EvidenceEntry> pair_values;
};
// Requires every vertex of both polygons inside the closed square and away
// from the four corners.
MarginResult strict_separation_margin(const std::vector<Point2>& p1,
                                      const std::vector<Point2>& p2);

// Full pipeline for two cones over non-triangle polygons: sandwich both,
// build the witness from the two kites, pull everything back to the input
// coordinates and return a certificate that replays exactly.
SeparationCertificate entangle_3d(const Cone& c1, const Cone& c2);

}  // namespace conelab

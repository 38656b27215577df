#include "conelab/witness3d.hpp"

#include <algorithm>

#include "conelab/linprog.hpp"

namespace conelab {

namespace {

Rational cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational dot2(const QVec& n, const Point2& p) { return n[0] * p.x + n[1] * p.y; }

QVec perp(const Point2& from, const Point2& to) {
  return {-(to.y - from.y), to.x - from.x};
}

QMat kite_matrix(const Rational& a, const Rational& b) {
  return QMat{{Rational(1), a * b, a}, {a * b, Rational(1), b}, {a, b, Rational(1)}};
}

QMat h_inv() {
  return QMat{{Rational(1, 2), Rational(1, 2), Rational(0)},
              {Rational(1, 2), Rational(-1, 2), Rational(0)},
              {Rational(0), Rational(0), Rational(1)}};
}

bool in_open_unit(const Rational& v) { return abs(v) < Rational(1); }

}  // namespace

Rational polygon_area2(const std::vector<Point2>& poly) {
  Rational s;
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i) {
    const Point2& p = poly[i];
    const Point2& q = poly[(i + 1) % n];
    s += p.x * q.y - q.x * p.y;
  }
  return s;
}

bool point_in_convex_polygon(const Point2& p, const std::vector<Point2>& poly) {
  return separating_edge(p, poly) < 0;
}

int separating_edge(const Point2& p, const std::vector<Point2>& poly) {
  const size_t n = poly.size();
  bool ccw = polygon_area2(poly).sign() > 0;
  for (size_t i = 0; i < n; ++i) {
    const Point2& a = poly[i];
    const Point2& b = poly[(i + 1) % n];
    Rational c = cross2(a, b, p);
    if ((ccw && c.sign() < 0) || (!ccw && c.sign() > 0)) return int(i);
  }
  return -1;
}

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point2> hull(2 * n);
  size_t k = 0;
  for (size_t i = 0; i < n; ++i) {  // lower chain
    while (k >= 2 && cross2(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = n - 1, t = k + 1; i-- > 0;) {  // upper chain
    while (k >= t && cross2(hull[k - 2], hull[k - 1], pts[i]).sign() <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

Point2 AffineMap2::apply(const Point2& p) const {
  return {lin(0, 0) * p.x + lin(0, 1) * p.y + offset[0],
          lin(1, 0) * p.x + lin(1, 1) * p.y + offset[1]};
}

QMat lift_affine(const AffineMap2& m) {
  return QMat{{m.lin(0, 0), m.lin(0, 1), m.offset[0]},
              {m.lin(1, 0), m.lin(1, 1), m.offset[1]},
              {Rational(0), Rational(0), Rational(1)}};
}

std::vector<Point2> kite_vertices(const Kite& k) {
  return {{k.a, Rational(1)}, {Rational(1), k.b}, {k.a, Rational(-1)}, {Rational(-1), k.b}};
}

MaxAreaQuad max_area_quadrilateral(const std::vector<Point2>& polygon) {
  const int n = int(polygon.size());
  if (n == 3)
    throw ClassicalInputError("max_area_quadrilateral: triangle input (classical base)",
                              {{polygon[0].x, polygon[0].y, Rational(1)},
                               {polygon[1].x, polygon[1].y, Rational(1)},
                               {polygon[2].x, polygon[2].y, Rational(1)}});
  if (n < 3 || polygon_area2(polygon).sign() <= 0)
    throw Error("max_area_quadrilateral: degenerate polygon");
  MaxAreaQuad best;
  Rational best2(-1);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          Rational a2 = polygon_area2({polygon[i], polygon[j], polygon[k], polygon[l]});
          if (a2 > best2) {
            best2 = a2;
            best.indices = {i, j, k, l};
          }
        }
  for (int t = 0; t < 4; ++t) best.points[t] = polygon[best.indices[t]];
  best.area = best2 / Rational(2);
  return best;
}

namespace {

struct Candidate {
  std::array<Point2, 4> pts;  // ccw order around the polygon
  bool slid = false;
};

struct BuiltMap {
  AffineMap2 map;
  Kite kite;
};

// Quadrilateral (A, B, C, D) in clockwise order: A -> (a, 1), B -> (1, b),
// C -> (a, -1), D -> (-1, b). Lines parallel to the diagonal AC through B
// and D become x = +1 / -1; lines parallel to BD through A and C become
// y = +1 / -1.
std::optional<BuiltMap> build_map(const Point2& A, const Point2& B, const Point2& C,
                                  const Point2& D) {
  QVec n1 = perp(A, C);
  QVec n2 = perp(B, D);
  Rational den_x = dot2(n1, B) - dot2(n1, D);
  Rational den_y = dot2(n2, A) - dot2(n2, C);
  if (den_x.is_zero() || den_y.is_zero()) return std::nullopt;
  AffineMap2 m;
  m.lin = QMat(2, 2);
  m.offset = QVec(2);
  Rational fx = Rational(2) / den_x;
  Rational fy = Rational(2) / den_y;
  m.lin(0, 0) = fx * n1[0];
  m.lin(0, 1) = fx * n1[1];
  m.offset[0] = -(dot2(n1, B) + dot2(n1, D)) / den_x;
  m.lin(1, 0) = fy * n2[0];
  m.lin(1, 1) = fy * n2[1];
  m.offset[1] = -(dot2(n2, A) + dot2(n2, C)) / den_y;
  BuiltMap out;
  out.map = std::move(m);
  out.kite.a = out.map.apply(A).x;
  out.kite.b = out.map.apply(B).y;
  return out;
}

std::optional<SandwichResult> try_candidate(const std::vector<Point2>& polygon,
                                            const Candidate& cand) {
  // rotations ordered by the designated top vertex (largest y, then smallest
  // x); deterministic tie-breaking across equal-area quadrilaterals
  std::array<int, 4> order{0, 1, 2, 3};
  std::sort(order.begin(), order.end(), [&](int i, int j) {
    const Point2& p = cand.pts[i];
    const Point2& q = cand.pts[j];
    return p.y > q.y || (p.y == q.y && p.x < q.x);
  });
  for (int r : order) {
    // clockwise labels from the ccw quadruple
    const Point2& A = cand.pts[r];
    const Point2& B = cand.pts[(r + 3) % 4];
    const Point2& C = cand.pts[(r + 2) % 4];
    const Point2& D = cand.pts[(r + 1) % 4];
    auto built = build_map(A, B, C, D);
    if (!built) continue;
    if (!in_open_unit(built->kite.a) || !in_open_unit(built->kite.b)) continue;
    std::vector<Point2> image;
    image.reserve(polygon.size());
    bool in_square = true;
    for (const auto& p : polygon) {
      Point2 q = built->map.apply(p);
      in_square &= abs(q.x) <= Rational(1) && abs(q.y) <= Rational(1);
      image.push_back(std::move(q));
    }
    if (!in_square) continue;
    std::vector<CornerEvidence> corners;
    bool excluded = true;
    for (long sx : {1L, -1L})
      for (long sy : {1L, -1L}) {
        Point2 corner{Rational(sx), Rational(sy)};
        int edge = separating_edge(corner, image);
        if (edge < 0) {
          excluded = false;
        } else {
          corners.push_back({corner, edge});
        }
      }
    if (!excluded) continue;

    SandwichResult res;
    res.map = built->map;
    res.kite = built->kite;
    res.image = std::move(image);
    res.quad = {A, B, C, D};
    res.used_edge_slide = cand.slid;
    res.corners = std::move(corners);
    // membership evidence: each kite vertex as a convex combination of image
    // vertices, via the exact LP on the lifted cone
    std::vector<QVec> lifted;
    for (const auto& v : res.image) lifted.push_back({v.x, v.y, Rational(1)});
    for (const auto& kv : kite_vertices(res.kite)) {
      auto dec = conic_decomposition(lifted, {kv.x, kv.y, Rational(1)});
      if (!dec.feasible) return std::nullopt;  // kite not inside; reject candidate
      res.kite_memberships.push_back(dec.coefficients);
    }
    return res;
  }
  return std::nullopt;
}

}  // namespace

SandwichResult sandwich(const std::vector<Point2>& polygon) {
  const int n = int(polygon.size());
  max_area_quadrilateral(polygon);  // validates polygon shape, rejects triangles

  // all area-maximal vertex quadruples, lexicographic
  Rational best2(-1);
  std::vector<std::array<int, 4>> maximal;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int l = k + 1; l < n; ++l) {
          Rational a2 = polygon_area2({polygon[i], polygon[j], polygon[k], polygon[l]});
          if (a2 > best2) {
            best2 = a2;
            maximal.clear();
          }
          if (a2 == best2) maximal.push_back({i, j, k, l});
        }

  auto points_of = [&](const std::array<int, 4>& q) {
    Candidate c;
    for (int t = 0; t < 4; ++t) c.pts[t] = polygon[q[t]];
    return c;
  };

  for (const auto& q : maximal)
    if (auto res = try_candidate(polygon, points_of(q))) return *res;

  // Exchange step: slide a quadrilateral corner along an incident polygon
  // edge parallel to the opposite diagonal (area is preserved), replacing an
  // extreme corner by an edge midpoint.
  for (const auto& q : maximal) {
    Candidate base = points_of(q);
    for (int t = 0; t < 4; ++t) {
      const Point2& prev = base.pts[(t + 3) % 4];
      const Point2& next = base.pts[(t + 1) % 4];
      Point2 diag{next.x - prev.x, next.y - prev.y};
      int vi = q[t];
      for (int dir : {-1, 1}) {
        int ni = ((vi + dir) % n + n) % n;
        Point2 edge{polygon[ni].x - polygon[vi].x, polygon[ni].y - polygon[vi].y};
        if (!(edge.x * diag.y - edge.y * diag.x).is_zero()) continue;
        Candidate cand = base;
        cand.slid = true;
        cand.pts[t] = {(polygon[vi].x + polygon[ni].x) / Rational(2),
                       (polygon[vi].y + polygon[ni].y) / Rational(2)};
        if (polygon_area2({cand.pts[0], cand.pts[1], cand.pts[2], cand.pts[3]}) != best2)
          continue;
        if (auto res = try_candidate(polygon, cand)) return *res;
      }
    }
  }
  throw Error(
      "sandwich: no area-maximal quadrilateral excludes all four square corners; "
      "inputs kept, nothing emitted");
}

QMat build_omega(const Rational& a1, const Rational& b1, const Rational& a2,
                 const Rational& b2) {
  for (const Rational& v : {a1, b1, a2, b2})
    if (!in_open_unit(v)) throw Error("build_omega: parameters must lie in (-1, 1)");
  return kite_matrix(a2, b2) * h_inv() * kite_matrix(a1, b1);
}

Rational chsh_value(const Point2& p1, const Point2& p2) {
  return p1.x * p2.x + p1.x * p2.y + p1.y * p2.x - p1.y * p2.y;
}

MarginResult strict_separation_margin(const std::vector<Point2>& p1,
                                      const std::vector<Point2>& p2) {
  for (const auto* poly : {&p1, &p2})
    for (const auto& v : *poly) {
      if (abs(v.x) > Rational(1) || abs(v.y) > Rational(1))
        throw Error("strict_separation_margin: vertex outside the closed square");
      if (abs(v.x) == Rational(1) && abs(v.y) == Rational(1))
        throw Error("strict_separation_margin: vertex at a square corner, margin collapses");
    }
  MarginResult res;
  res.lambda = Rational(-4);
  for (const auto& a : p1)
    for (const auto& b : p2) res.lambda = max(res.lambda, chsh_value(a, b));
  if (!(res.lambda < Rational(2)))
    throw Error("strict_separation_margin: margin not strict");  // unreachable by the checks above
  res.functional = QMat(3, 3);
  res.functional(0, 0) = Rational(-1);
  res.functional(0, 1) = Rational(-1);
  res.functional(1, 0) = Rational(-1);
  res.functional(1, 1) = Rational(1);
  res.functional(2, 2) = res.lambda;
  for (size_t i = 0; i < p1.size(); ++i)
    for (size_t j = 0; j < p2.size(); ++j) {
      Rational v = res.lambda - chsh_value(p1[i], p2[j]);
      if (v.sign() < 0) throw Error("strict_separation_margin: internal maximality failure");
      res.pair_values.push_back({int(i), int(j), v});
    }
  return res;
}

SeparationCertificate entangle_3d(const Cone& c1, const Cone& c2) {
  if (c1.kind() != Cone::Kind::Polygon || c2.kind() != Cone::Kind::Polygon)
    throw Error("entangle_3d: expects cones over polygons");
  for (const Cone* c : {&c1, &c2}) {
    auto cl = is_classical(*c);
    if (cl.classical)
      throw ClassicalInputError("entangle_3d: polygon base is a triangle (classical cone)",
                                cl.basis);
  }
  SandwichResult s1 = sandwich(c1.polygon_vertices());
  SandwichResult s2 = sandwich(c2.polygon_vertices());

  QMat g1 = lift_affine(s1.map);
  QMat g2 = lift_affine(s2.map);
  QMat z_std = build_omega(s2.kite.a, s2.kite.b, s1.kite.a, s1.kite.b);
  MarginResult margin = strict_separation_margin(s1.image, s2.image);

  QMat g1i = inverse(g1);
  QMat g2i = inverse(g2);
  SeparationCertificate cert;
  cert.witness = g1i * z_std * g2i.transpose();
  cert.functional = g1.transpose() * margin.functional * g2;
  cert.separation_value = frobenius_inner(cert.functional, cert.witness);
  if (cert.separation_value.sign() >= 0)
    throw Error("entangle_3d: internal error, separation value not negative");
  cert.max_evidence =
      pairwise_values(extreme_rays(dual_cone(c1)), extreme_rays(dual_cone(c2)), cert.witness);
  cert.min_evidence = pairwise_values(extreme_rays(c1), extreme_rays(c2), cert.functional);
  auto check = verify_certificate(cert, c1, c2);
  if (!check) throw Error("entangle_3d: certificate failed replay: " + check.reason);
  return cert;
}

}  // namespace conelab

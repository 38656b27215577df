#include "conelab/cone.hpp"

#include <algorithm>
#include <cmath>

#include "conelab/herm.hpp"
#include "conelab/linprog.hpp"
#include "conelab/spectral.hpp"

namespace conelab {

namespace {

template <class T>
class Lazy {
 public:
  template <class F>
  const T& get(F&& fill) const {
    std::call_once(flag_, [&] { value_.emplace(fill()); });
    return *value_;
  }

 private:
  mutable std::once_flag flag_;
  mutable std::optional<T> value_;
};

}  // namespace

struct Cone::Impl {
  Kind kind;
  int dim = 0;                    // ambient dimension (lifted for Polygon)
  std::vector<QVec> generators;   // Polyhedral
  int n = 0;                      // Lorentz / Psd / Classical parameter
  Rational r;                     // Lorentz radius
  std::vector<Point2> vertices;   // Polygon

  Lazy<std::vector<QVec>> extreme;
  Lazy<std::vector<FacetInfo>> facet_data;
};

Cone::Cone() {
  auto impl = std::make_shared<Impl>();
  impl->kind = Kind::Classical;
  impl->dim = 1;
  impl->n = 1;
  impl_ = std::move(impl);
}

Cone::Kind Cone::kind() const { return impl_->kind; }
int Cone::ambient_dim() const { return impl_->dim; }

const std::vector<QVec>& Cone::generators() const {
  if (impl_->kind != Kind::Polyhedral) throw Error("generators(): not a polyhedral cone");
  return impl_->generators;
}
int Cone::lorentz_n() const {
  if (impl_->kind != Kind::Lorentz) throw Error("lorentz_n(): not a Lorentz cone");
  return impl_->n;
}
const Rational& Cone::lorentz_r() const {
  if (impl_->kind != Kind::Lorentz) throw Error("lorentz_r(): not a Lorentz cone");
  return impl_->r;
}
int Cone::psd_n() const {
  if (impl_->kind != Kind::Psd) throw Error("psd_n(): not a PSD cone");
  return impl_->n;
}
int Cone::classical_n() const {
  if (impl_->kind != Kind::Classical) throw Error("classical_n(): not a classical cone");
  return impl_->n;
}
const std::vector<Point2>& Cone::polygon_vertices() const {
  if (impl_->kind != Kind::Polygon) throw Error("polygon_vertices(): not a polygon cone");
  return impl_->vertices;
}

// --- double description ---

namespace {

int rank_of_rows(const std::vector<QVec>& rows, const std::vector<int>& which, int dim) {
  QMat m(int(which.size()), dim);
  for (size_t i = 0; i < which.size(); ++i)
    for (int j = 0; j < dim; ++j) m(int(i), j) = rows[which[i]][j];
  return rank(m);
}

}  // namespace

std::vector<QVec> dual_rays_via_dd(const std::vector<QVec>& generators, int dim,
                                   const DdCaps& caps) {
  if (dim > caps.max_dim)
    throw CapExceeded("double description: dimension " + std::to_string(dim) +
                      " exceeds cap " + std::to_string(caps.max_dim));
  if (int(generators.size()) > caps.max_generators)
    throw CapExceeded("double description: " + std::to_string(generators.size()) +
                      " generators exceed cap " + std::to_string(caps.max_generators));
  for (const auto& g : generators)
    if (int(g.size()) != dim) throw Error("double description: generator dimension mismatch");

  // Greedy scan for dim linearly independent constraints.
  std::vector<int> init;
  {
    QMat acc(0, 0);
    std::vector<QVec> rows;
    for (int i = 0; i < int(generators.size()) && int(init.size()) < dim; ++i) {
      rows.push_back(generators[i]);
      QMat m(int(rows.size()), dim);
      for (size_t a = 0; a < rows.size(); ++a)
        for (int j = 0; j < dim; ++j) m(int(a), j) = rows[a][j];
      if (rank(m) == int(rows.size()))
        init.push_back(i);
      else
        rows.pop_back();
    }
  }
  if (int(init.size()) != dim)
    throw Error("double description: constraints do not span the space (cone not generating)");

  // Initial simplicial cone: rays are the columns of the inverse of the
  // selected constraint rows.
  QMat h(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) h(i, j) = generators[init[i]][j];
  QMat hinv = inverse(h);

  struct Ray {
    QVec v;
    std::vector<int> tight;  // indices of processed constraints with g.v = 0
  };
  std::vector<Ray> rays;
  std::vector<bool> in_init(generators.size(), false);
  for (int idx : init) in_init[idx] = true;
  std::vector<int> processed = init;
  for (int j = 0; j < dim; ++j) {
    Ray r;
    r.v = canonical_ray(hinv.col(j));
    for (int i = 0; i < dim; ++i)
      if (i != j) r.tight.push_back(init[i]);
    std::sort(r.tight.begin(), r.tight.end());
    rays.push_back(std::move(r));
  }

  auto recompute_tight = [&](Ray& r) {
    r.tight.clear();
    for (int idx : processed)
      if (dot(generators[idx], r.v).is_zero()) r.tight.push_back(idx);
    std::sort(r.tight.begin(), r.tight.end());
  };

  for (int ci = 0; ci < int(generators.size()); ++ci) {
    if (in_init[ci]) continue;
    const QVec& g = generators[ci];
    std::vector<int> plus, zero, minus;
    std::vector<Rational> val(rays.size());
    for (size_t k = 0; k < rays.size(); ++k) {
      val[k] = dot(g, rays[k].v);
      int s = val[k].sign();
      (s > 0 ? plus : s < 0 ? minus : zero).push_back(int(k));
    }
    processed.push_back(ci);
    auto insert_sorted = [](std::vector<int>& tight, int idx) {
      tight.insert(std::upper_bound(tight.begin(), tight.end(), idx), idx);
    };
    if (minus.empty()) {
      for (int k : zero) insert_sorted(rays[k].tight, ci);
      continue;
    }
    std::vector<Ray> next;
    for (int k : plus) next.push_back(rays[k]);
    for (int k : zero) {
      next.push_back(rays[k]);
      insert_sorted(next.back().tight, ci);
    }
    // Combine adjacent (plus, minus) pairs on the new hyperplane. Adjacency:
    // the constraints tight at both rays span a (dim-2)-dimensional test.
    for (int p : plus)
      for (int m : minus) {
        std::vector<int> common;
        std::set_intersection(rays[p].tight.begin(), rays[p].tight.end(),
                              rays[m].tight.begin(), rays[m].tight.end(),
                              std::back_inserter(common));
        if (int(common.size()) < dim - 2) continue;
        if (rank_of_rows(generators, common, dim) != dim - 2) continue;
        QVec w = val[p] * rays[m].v - val[m] * rays[p].v;
        Ray nr;
        nr.v = canonical_ray(w);
        recompute_tight(nr);
        next.push_back(std::move(nr));
      }
    // dedupe canonical rays
    std::sort(next.begin(), next.end(), [](const Ray& a, const Ray& b) { return a.v < b.v; });
    next.erase(std::unique(next.begin(), next.end(),
                           [](const Ray& a, const Ray& b) { return a.v == b.v; }),
               next.end());
    rays = std::move(next);
  }

  std::vector<QVec> out;
  out.reserve(rays.size());
  for (auto& r : rays)
    if (!is_zero(r.v)) out.push_back(std::move(r.v));
  std::sort(out.begin(), out.end());
  return out;
}

// --- factories ---

namespace {

void validate_proper_polyhedral(int dim, const std::vector<QVec>& gens) {
  if (dim < 1) throw Error("polyhedral cone: dimension must be positive");
  if (gens.empty()) throw Error("polyhedral cone: no generators");
  QMat m(int(gens.size()), dim);
  for (size_t i = 0; i < gens.size(); ++i) {
    if (int(gens[i].size()) != dim) throw Error("polyhedral cone: generator dimension mismatch");
    if (is_zero(gens[i])) throw Error("polyhedral cone: zero generator");
    for (int j = 0; j < dim; ++j) m(int(i), j) = gens[i][j];
  }
  if (rank(m) != dim) throw Error("polyhedral cone: not generating (rank below dimension)");
  // salient iff a strictly positive functional exists: f.g_i >= 1 feasible
  const int ng = int(gens.size());
  QMat a(ng, dim + ng);
  QVec rhs(ng, Rational(1));
  for (int i = 0; i < ng; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = gens[i][j];
    a(i, dim + i) = Rational(-1);
  }
  LpProblem p;
  p.eq_lhs = a;
  p.eq_rhs = rhs;
  p.objective.assign(dim + ng, Rational(0));
  p.nonneg.assign(dim + ng, true);
  for (int j = 0; j < dim; ++j) p.nonneg[j] = false;
  if (lp_solve(p).status != LpStatus::Optimal)
    throw Error("polyhedral cone: not salient");
}

Rational cross2(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

Cone make_polyhedral(int dim, std::vector<QVec> generators) {
  validate_proper_polyhedral(dim, generators);
  auto impl = std::make_shared<Cone::Impl>();
  impl->kind = Cone::Kind::Polyhedral;
  impl->dim = dim;
  impl->generators = std::move(generators);
  return Cone(std::move(impl));
}

Cone make_lorentz(int n, Rational r) {
  if (n < 1) throw Error("Lorentz cone: n must be positive");
  if (r.sign() <= 0) throw Error("Lorentz cone: radius must be positive");
  auto impl = std::make_shared<Cone::Impl>();
  impl->kind = Cone::Kind::Lorentz;
  impl->dim = n + 1;
  impl->n = n;
  impl->r = std::move(r);
  return Cone(std::move(impl));
}

Cone make_psd(int n) {
  if (n < 1) throw Error("PSD cone: n must be positive");
  auto impl = std::make_shared<Cone::Impl>();
  impl->kind = Cone::Kind::Psd;
  impl->dim = n * n;
  impl->n = n;
  return Cone(std::move(impl));
}

Cone make_classical(int n) {
  if (n < 1) throw Error("classical cone: n must be positive");
  auto impl = std::make_shared<Cone::Impl>();
  impl->kind = Cone::Kind::Classical;
  impl->dim = n;
  impl->n = n;
  return Cone(std::move(impl));
}

Cone make_polygon(std::vector<Point2> vertices) {
  if (vertices.size() < 3) throw Error("polygon: need at least 3 vertices");
  const size_t k = vertices.size();
  for (size_t i = 0; i < k; ++i) {
    const Point2& o = vertices[i];
    const Point2& a = vertices[(i + 1) % k];
    const Point2& b = vertices[(i + 2) % k];
    if (cross2(o, a, b).sign() <= 0)
      throw Error("polygon: vertices must be in strictly convex counterclockwise position");
  }
  auto impl = std::make_shared<Cone::Impl>();
  impl->kind = Cone::Kind::Polygon;
  impl->dim = 3;
  impl->vertices = std::move(vertices);
  return Cone(std::move(impl));
}

Cone as_polyhedral(const Cone& c) {
  switch (c.kind()) {
    case Cone::Kind::Polyhedral:
      return c;
    case Cone::Kind::Classical: {
      int n = c.classical_n();
      std::vector<QVec> gens;
      for (int i = 0; i < n; ++i) {
        QVec e(n, Rational(0));
        e[i] = Rational(1);
        gens.push_back(std::move(e));
      }
      return make_polyhedral(n, std::move(gens));
    }
    case Cone::Kind::Polygon: {
      std::vector<QVec> gens;
      for (const auto& v : c.polygon_vertices()) gens.push_back({v.x, v.y, Rational(1)});
      return make_polyhedral(3, std::move(gens));
    }
    default:
      throw Error("as_polyhedral: cone kind has no finite generator representation");
  }
}

// --- extreme rays / facets ---

std::vector<QVec> extreme_rays(const Cone& c) {
  if (c.kind() == Cone::Kind::Lorentz || c.kind() == Cone::Kind::Psd)
    throw Error("extreme_rays: not a polyhedral cone");
  return c.impl().extreme.get([&] {
    std::vector<QVec> gens;
    if (c.kind() == Cone::Kind::Polyhedral) {
      gens = c.generators();
    } else if (c.kind() == Cone::Kind::Classical) {
      for (int i = 0; i < c.classical_n(); ++i) {
        QVec e(c.classical_n(), Rational(0));
        e[i] = Rational(1);
        gens.push_back(std::move(e));
      }
      return gens;
    } else {  // Polygon: strictly convex, every lifted vertex is extreme
      for (const auto& v : c.polygon_vertices())
        gens.push_back(canonical_ray({v.x, v.y, Rational(1)}));
      return gens;
    }
    // canonicalize, dedupe keeping first occurrence
    std::vector<QVec> canon;
    for (const auto& g : gens) {
      QVec cg = canonical_ray(g);
      if (std::find(canon.begin(), canon.end(), cg) == canon.end())
        canon.push_back(std::move(cg));
    }
    // drop generators expressible over the rest (exact LP), one at a time
    std::vector<QVec> kept = canon;
    for (size_t i = 0; i < kept.size();) {
      std::vector<QVec> others;
      for (size_t j = 0; j < kept.size(); ++j)
        if (j != i) others.push_back(kept[j]);
      if (others.empty()) break;
      if (conic_decomposition(others, kept[i]).feasible)
        kept.erase(kept.begin() + long(i));
      else
        ++i;
    }
    return kept;
  });
}

std::vector<FacetInfo> facets(const Cone& c, const DdCaps& caps) {
  if (c.kind() == Cone::Kind::Lorentz || c.kind() == Cone::Kind::Psd)
    throw Error("facets: not a polyhedral cone");
  return c.impl().facet_data.get([&] {
    const auto ext = extreme_rays(c);
    int dim = c.ambient_dim();
    std::vector<QVec> dual = dual_rays_via_dd(ext, dim, caps);
    std::vector<FacetInfo> out;
    for (auto& f : dual) {
      FacetInfo info;
      info.functional = std::move(f);
      for (size_t i = 0; i < ext.size(); ++i)
        if (dot(info.functional, ext[i]).is_zero()) info.incident.push_back(int(i));
      QMat span(int(info.incident.size()), dim);
      for (size_t i = 0; i < info.incident.size(); ++i)
        for (int j = 0; j < dim; ++j) span(int(i), j) = ext[info.incident[i]][j];
      if (rank(span) != dim - 1)
        throw Error("facets: incident rays do not span a facet (internal)");
      out.push_back(std::move(info));
    }
    return out;
  });
}

Cone dual_cone(const Cone& c, const DdCaps& caps) {
  switch (c.kind()) {
    case Cone::Kind::Polyhedral:
    case Cone::Kind::Polygon: {
      Cone p = as_polyhedral(c);
      std::vector<QVec> rays = dual_rays_via_dd(extreme_rays(p), p.ambient_dim(), caps);
      return make_polyhedral(p.ambient_dim(), std::move(rays));
    }
    case Cone::Kind::Classical:
      return c;
    case Cone::Kind::Lorentz:
      return make_lorentz(c.lorentz_n(), Rational(1) / c.lorentz_r());
    case Cone::Kind::Psd:
      return c;
  }
  throw Error("dual_cone: unreachable");
}

// --- membership ---

namespace {

// Rational t with t >= r*sqrt(S) and t*x_last < S, for the Lorentz outside
// witness. Exists whenever (x_1..x_n, x_last) violates the cone inequality.
Rational lorentz_witness_height(const Rational& r2S, const Rational& S, const Rational& x_last) {
  if (x_last.sign() <= 0) {
    // any t with t^2 >= r2S works; (y+1)^2 >= y for y >= 0
    return conelab::max(Rational(1), r2S + Rational(1));
  }
  Rational upper = S / x_last;  // strict upper bound, upper^2 > r2S
  Rational t = upper;
  Rational half(1, 2);
  while (true) {
    Rational cand = upper * (Rational(1) - half);
    if (cand.sign() > 0 && cand * cand >= r2S) return cand;
    half *= Rational(1, 2);
    if (half.is_zero()) return t;  // unreachable; exact rationals never hit 0
  }
}

MembershipResult membership_lorentz(const Cone& c, const QVec& x) {
  const int n = c.lorentz_n();
  if (int(x.size()) != n + 1) throw Error("membership: dimension mismatch");
  const Rational& r = c.lorentz_r();
  Rational S(0);
  for (int i = 0; i < n; ++i) S += x[i] * x[i];
  Rational slack = r * r * x[n] * x[n] - S;
  MembershipResult res;
  if (x[n].sign() >= 0 && slack.sign() > 0) {
    res.where = Where::Inside;
    return res;
  }
  if (x[n].sign() >= 0 && slack.is_zero()) {
    res.where = Where::Boundary;
    return res;
  }
  res.where = Where::Outside;
  // witness f = (-x_1..-x_n, t) in the dual cone with f.x < 0
  Rational t = lorentz_witness_height(r * r * S, S, x[n]);
  QVec f(n + 1);
  for (int i = 0; i < n; ++i) f[i] = -x[i];
  f[n] = t;
  res.separating = std::move(f);
  return res;
}

MembershipResult membership_psd(const Cone& c, const DVec& x, double tol) {
  const int n = c.psd_n();
  if (int(x.size()) != n * n) throw Error("membership: dimension mismatch");
  DMat emb = herm_real_embedding(x, n);
  EigResult e = eig_sym(emb, tol);
  double mn = e.values.back();
  double norm = 0;
  for (double v : x) norm += v * v;
  double scale = tol * (1 + std::sqrt(norm));
  MembershipResult res;
  res.min_eigenvalue = mn;
  if (mn > scale)
    res.where = Where::Inside;
  else if (mn >= -scale)
    res.where = Where::Boundary;
  else
    res.where = Where::Outside;
  return res;
}

MembershipResult membership_polyhedral(const Cone& c, const QVec& x) {
  if (int(x.size()) != c.ambient_dim()) throw Error("membership: dimension mismatch");
  const auto ext = extreme_rays(c);
  ConicDecomposition dec = conic_decomposition(ext, x);
  MembershipResult res;
  if (!dec.feasible) {
    res.where = Where::Outside;
    QVec f(dec.farkas.size());
    for (size_t i = 0; i < f.size(); ++i) f[i] = -dec.farkas[i];
    for (const auto& g : ext)
      if (dot(f, g).sign() < 0) throw Error("membership: separating functional failed replay");
    if (dot(f, x).sign() >= 0) throw Error("membership: separating functional not separating");
    res.separating = std::move(f);
    return res;
  }
  res.decomposition = dec.coefficients;
  res.where = Where::Inside;
  for (const auto& fac : facets(c))
    if (dot(fac.functional, x).is_zero()) {
      res.where = Where::Boundary;
      break;
    }
  return res;
}

}  // namespace

MembershipResult membership(const Cone& c, const QVec& x, double tol) {
  switch (c.kind()) {
    case Cone::Kind::Polyhedral:
    case Cone::Kind::Polygon:
      return membership_polyhedral(c, x);  // extreme rays/facets handle both
    case Cone::Kind::Classical: {
      if (int(x.size()) != c.classical_n()) throw Error("membership: dimension mismatch");
      MembershipResult res;
      bool boundary = false;
      for (size_t i = 0; i < x.size(); ++i) {
        if (x[i].sign() < 0) {
          res.where = Where::Outside;
          QVec f(x.size(), Rational(0));
          f[i] = Rational(1);
          res.separating = std::move(f);
          return res;
        }
        if (x[i].is_zero()) boundary = true;
      }
      res.where = boundary ? Where::Boundary : Where::Inside;
      res.decomposition = x;
      return res;
    }
    case Cone::Kind::Lorentz:
      return membership_lorentz(c, x);
    case Cone::Kind::Psd:
      return membership_psd(c, to_double(x), tol);
  }
  throw Error("membership: unreachable");
}

MembershipResult membership(const Cone& c, const DVec& x, double tol) {
  switch (c.kind()) {
    case Cone::Kind::Psd:
      return membership_psd(c, x, tol);
    case Cone::Kind::Lorentz: {
      const int n = c.lorentz_n();
      if (int(x.size()) != n + 1) throw Error("membership: dimension mismatch");
      double S = 0;
      for (int i = 0; i < n; ++i) S += x[i] * x[i];
      double rr = c.lorentz_r().to_double();
      double norm = std::sqrt(S + x[n] * x[n]);
      double eps = tol * (1 + norm);
      double slack = rr * x[n] - std::sqrt(S);
      MembershipResult res;
      if (x[n] < -eps || slack < -eps)
        res.where = Where::Outside;
      else if (slack > eps && x[n] > eps)
        res.where = Where::Inside;
      else
        res.where = Where::Boundary;
      return res;
    }
    default:
      throw Error("membership: floating-point queries are for Lorentz/PSD cones only");
  }
}

// --- classicality ---

ClassicalityResult is_classical(const Cone& c) {
  ClassicalityResult res;
  switch (c.kind()) {
    case Cone::Kind::Classical: {
      res.classical = true;
      res.basis = extreme_rays(c);
      return res;
    }
    case Cone::Kind::Lorentz: {
      if (c.lorentz_n() >= 2) {
        res.classical = false;
        res.obstruction = "Lorentz cone with n >= 2: ball base is not a simplex";
        return res;
      }
      res.classical = true;
      res.basis = {{c.lorentz_r(), Rational(1)}, {-c.lorentz_r(), Rational(1)}};
      return res;
    }
    case Cone::Kind::Psd: {
      if (c.psd_n() >= 2) {
        res.classical = false;
        res.obstruction = "PSD cone with n >= 2 has infinitely many extreme rays";
        return res;
      }
      res.classical = true;
      res.basis = {{Rational(1)}};
      return res;
    }
    case Cone::Kind::Polyhedral:
    case Cone::Kind::Polygon: {
      Cone p = as_polyhedral(c);
      const auto ext = extreme_rays(p);
      if (int(ext.size()) == p.ambient_dim()) {
        res.classical = true;
        res.basis = ext;
      } else {
        res.classical = false;
        res.obstruction = std::to_string(ext.size()) + " extreme rays in dimension " +
                          std::to_string(p.ambient_dim());
      }
      return res;
    }
  }
  throw Error("is_classical: unreachable");
}

Cone apply_linear(const Cone& c, const QMat& m) {
  if (m.rows() != m.cols()) throw Error("apply_linear: map must be square");
  if (det(m).is_zero()) throw Error("apply_linear: singular map");
  if (c.kind() == Cone::Kind::Lorentz || c.kind() == Cone::Kind::Psd)
    throw Error("apply_linear: unsupported for Lorentz/PSD representations");
  Cone p = as_polyhedral(c);
  if (m.rows() != p.ambient_dim()) throw Error("apply_linear: dimension mismatch");
  std::vector<QVec> gens;
  for (const auto& g : p.generators()) gens.push_back(m * g);
  return make_polyhedral(p.ambient_dim(), std::move(gens));
}

QVec strictly_positive_functional(const Cone& c) {
  switch (c.kind()) {
    case Cone::Kind::Classical:
      return QVec(c.classical_n(), Rational(1));
    case Cone::Kind::Lorentz: {
      QVec u(c.lorentz_n() + 1, Rational(0));
      u.back() = Rational(1);
      return u;
    }
    case Cone::Kind::Psd: {
      // trace functional in dual coordinates
      int n = c.psd_n();
      QVec u(n * n, Rational(0));
      for (int i = 0; i < n; ++i) u[i] = Rational(1);
      return u;
    }
    default: {
      Cone p = as_polyhedral(c);
      QVec u(p.ambient_dim(), Rational(0));
      for (const auto& f : facets(p)) u = u + f.functional;
      return u;
    }
  }
}

}  // namespace conelab

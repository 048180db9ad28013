#pragma once

#include "latgeo/dd.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace latgeo {

// Supporting halfspace <normal, x> >= offset. The pair (normal, offset) is
// kept jointly primitive; for lattice polytopes the normal itself is then
// primitive.
struct Facet {
  IntVec normal;
  Int offset;
  bool operator==(const Facet& o) const { return normal == o.normal && offset == o.offset; }
  bool operator<(const Facet& o) const {
    return normal != o.normal ? normal < o.normal : offset < o.offset;
  }
};

// Affine-hull equation <normal, x> == value.
struct Equation {
  IntVec normal;
  Int value;
  bool operator<(const Equation& o) const {
    return normal != o.normal ? normal < o.normal : value < o.value;
  }
};

// Polyhedral cone: generators of the pointed part, lineality basis, inner
// halfspace normals and equations cutting out the span. All descriptions
// agree; conversions run through double description.
struct Cone {
  std::size_t ambient_dim = 0;
  std::vector<IntVec> generators;
  std::vector<IntVec> lineality;
  std::vector<IntVec> halfspaces;
  std::vector<IntVec> span_equations;

  bool pointed() const { return lineality.empty(); }
  std::size_t dim() const {
    IntMat m(0, ambient_dim);
    for (const auto& g : generators) m.append_row(g);
    for (const auto& l : lineality) m.append_row(l);
    return rank(m);
  }
  bool contains(const IntVec& x) const {
    for (const auto& h : halfspaces)
      if (dot(h, x) < 0) return false;
    for (const auto& e : span_equations)
      if (dot(e, x) != 0) return false;
    return true;
  }
  bool contains(const RatVec& x) const {
    for (const auto& h : halfspaces)
      if (dot(h, x) < 0) return false;
    for (const auto& e : span_equations)
      if (dot(e, x) != 0) return false;
    return true;
  }
};

// Cone from generator data (dual description computes the H-side).
inline Cone make_cone(std::vector<IntVec> gens, std::vector<IntVec> lin, std::size_t dim) {
  Cone c;
  c.ambient_dim = dim;
  ConeDD dual = cone_facets(gens, lin, dim);
  for (const IntVec& l : dual.lineality) c.span_equations.push_back(l);
  c.halfspaces = dual.rays;
  // recompute a canonical generator set from the H-side
  std::vector<IntVec> normals = c.halfspaces;
  for (const IntVec& e : c.span_equations) {
    normals.push_back(e);
    normals.push_back(negate(e));
  }
  ConeDD prim = dual_description(normals, dim);
  c.generators = prim.rays;
  c.lineality = prim.lineality;
  return c;
}

// Cone from halfspaces and equations.
inline Cone make_cone_from_halfspaces(std::vector<IntVec> halfspaces, std::vector<IntVec> equations,
                                      std::size_t dim) {
  std::vector<IntVec> normals = halfspaces;
  for (const IntVec& e : equations) {
    normals.push_back(e);
    normals.push_back(negate(e));
  }
  ConeDD prim = dual_description(normals, dim);
  Cone c;
  c.ambient_dim = dim;
  c.generators = prim.rays;
  c.lineality = prim.lineality;
  ConeDD dual = cone_facets(c.generators, c.lineality, dim);
  c.halfspaces = dual.rays;
  c.span_equations = dual.lineality;
  return c;
}

class Polytope {
 public:
  Polytope() = default;

  static Polytope empty(std::size_t ambient_dim) {
    Polytope p;
    p.ambient_dim_ = ambient_dim;
    p.empty_ = true;
    return p;
  }

  static Polytope from_vertices(const std::vector<IntVec>& pts) {
    std::vector<RatVec> q;
    q.reserve(pts.size());
    for (const IntVec& v : pts) q.push_back(to_rat_vec(v));
    return from_vertices_rat(q);
  }

  static Polytope from_vertices_rat(const std::vector<RatVec>& pts) {
    if (pts.empty()) throw domain_error("from_vertices: no points");
    Polytope p;
    p.ambient_dim_ = pts[0].size();
    p.compute_hrep_from_points(pts);
    p.compute_vrep_from_hrep();
    return p;
  }

  // Throws on unbounded input; an infeasible system yields the empty
  // polytope (explicit empty result, not an error).
  static Polytope from_halfspaces(const std::vector<Facet>& ineqs,
                                  const std::vector<Equation>& eqs, std::size_t ambient_dim) {
    Polytope p;
    p.ambient_dim_ = ambient_dim;
    p.facets_ = ineqs;
    p.equations_ = eqs;
    p.compute_vrep_from_hrep();
    if (p.empty_) return p;
    p.compute_hrep_from_points(p.vertices_);
    return p;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  bool is_empty() const { return empty_; }
  const std::vector<RatVec>& vertices() const { return vertices_; }
  const std::vector<Facet>& facets() const { return facets_; }
  const std::vector<Equation>& equations() const { return equations_; }

  std::size_t dim() const {
    if (empty_) return 0;
    return ambient_dim_ - equations_.size();
  }
  bool full_dimensional() const { return !empty_ && equations_.empty(); }

  bool is_lattice() const {
    for (const RatVec& v : vertices_)
      if (!is_integral(v)) return false;
    return true;
  }

  std::vector<IntVec> lattice_vertices() const {
    std::vector<IntVec> out;
    out.reserve(vertices_.size());
    for (const RatVec& v : vertices_) out.push_back(to_int_vec(v));
    return out;
  }

  bool contains(const RatVec& x) const {
    if (empty_) return false;
    for (const Facet& f : facets_)
      if (dot(f.normal, x) < Rat(f.offset)) return false;
    for (const Equation& e : equations_)
      if (dot(e.normal, x) != Rat(e.value)) return false;
    return true;
  }
  bool contains(const IntVec& x) const { return contains(to_rat_vec(x)); }

  // Strict inequality on every facet, equality on the affine hull: the
  // relative interior.
  bool contains_in_relative_interior(const RatVec& x) const {
    if (empty_) return false;
    for (const Facet& f : facets_)
      if (dot(f.normal, x) <= Rat(f.offset)) return false;
    for (const Equation& e : equations_)
      if (dot(e.normal, x) != Rat(e.value)) return false;
    return true;
  }
  bool contains_in_relative_interior(const IntVec& x) const {
    return contains_in_relative_interior(to_rat_vec(x));
  }

  std::vector<IntVec> lattice_points() const {
    std::vector<IntVec> out;
    if (empty_) return out;
    std::vector<Int> lo(ambient_dim_), hi(ambient_dim_);
    for (std::size_t j = 0; j < ambient_dim_; ++j) {
      Rat mn = vertices_[0][j], mx = vertices_[0][j];
      for (const RatVec& v : vertices_) {
        mn = std::min(mn, v[j]);
        mx = std::max(mx, v[j]);
      }
      lo[j] = rat_ceil(mn);
      hi[j] = rat_floor(mx);
      if (lo[j] > hi[j]) return out;
    }
    IntVec x = lo;
    while (true) {
      if (contains(x)) out.push_back(x);
      std::size_t j = 0;
      while (j < ambient_dim_) {
        if (x[j] < hi[j]) {
          ++x[j];
          break;
        }
        x[j] = lo[j];
        ++j;
      }
      if (j == ambient_dim_) break;
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  std::vector<IntVec> interior_lattice_points() const {
    std::vector<IntVec> out;
    for (const IntVec& x : lattice_points())
      if (contains_in_relative_interior(x)) out.push_back(x);
    return out;
  }

  bool is_hollow() const { return interior_lattice_points().empty(); }

  // Reflexive: full-dimensional lattice polytope whose facets all sit at
  // lattice height -1, with the origin interior.
  bool is_reflexive() const {
    if (empty_ || !full_dimensional() || !is_lattice()) return false;
    for (const Facet& f : facets_)
      if (f.offset != -1) return false;
    IntVec zero(ambient_dim_, 0);
    return contains_in_relative_interior(zero);
  }

  // Polar dual {y : <x, y> >= -1 for all x in P}; requires the origin
  // strictly interior and P full-dimensional.
  Polytope polar_dual() const {
    IntVec zero(ambient_dim_, 0);
    if (empty_ || !full_dimensional() || !contains_in_relative_interior(zero))
      throw domain_error("polar_dual: origin is not interior");
    std::vector<RatVec> duals;
    for (const Facet& f : facets_) {
      // facet <n, x> >= o with o < 0; dual vertex n / (-o)
      RatVec w(ambient_dim_);
      for (std::size_t j = 0; j < ambient_dim_; ++j) w[j] = Rat(f.normal[j]) / Rat(-f.offset);
      duals.push_back(std::move(w));
    }
    return from_vertices_rat(duals);
  }

  // Tangent cone of directions {d : v + eps*d in P}; apex at the origin of
  // direction space. v must lie in P.
  Cone tangent_cone(const RatVec& v) const {
    if (!contains(v)) throw domain_error("tangent_cone: point not in polytope");
    std::vector<IntVec> hs;
    for (const Facet& f : facets_)
      if (dot(f.normal, v) == Rat(f.offset)) hs.push_back(f.normal);
    std::vector<IntVec> eqs;
    for (const Equation& e : equations_) eqs.push_back(e.normal);
    return make_cone_from_halfspaces(hs, eqs, ambient_dim_);
  }
  Cone tangent_cone(const IntVec& v) const { return tangent_cone(to_rat_vec(v)); }

  // Intersection with extra halfspaces/equations. Possibly empty.
  Polytope intersect(const std::vector<Facet>& hs, const std::vector<Equation>& eqs = {}) const {
    std::vector<Facet> all = facets_;
    all.insert(all.end(), hs.begin(), hs.end());
    std::vector<Equation> alleq = equations_;
    alleq.insert(alleq.end(), eqs.begin(), eqs.end());
    return from_halfspaces(all, alleq, ambient_dim_);
  }

  Polytope intersect(const Cone& c) const {
    std::vector<Facet> hs;
    for (const IntVec& n : c.halfspaces) hs.push_back(Facet{n, 0});
    std::vector<Equation> eqs;
    for (const IntVec& e : c.span_equations) eqs.push_back(Equation{e, 0});
    return intersect(hs, eqs);
  }

  // All faces of the given dimension, as polytopes.
  std::vector<Polytope> faces(std::size_t d) const;

  bool operator==(const Polytope& o) const {
    return ambient_dim_ == o.ambient_dim_ && empty_ == o.empty_ && vertices_ == o.vertices_;
  }

 private:
  void compute_hrep_from_points(const std::vector<RatVec>& pts) {
    std::size_t hd = ambient_dim_ + 1;
    std::vector<IntVec> gens;
    for (const RatVec& v : pts) {
      Int den = 1;
      for (const Rat& q : v) {
        Int d = boost::multiprecision::denominator(q);
        den = den / gcd(den, d) * d;
      }
      IntVec g(hd);
      g[0] = den;
      for (std::size_t j = 0; j < ambient_dim_; ++j) {
        Rat q = v[j] * Rat(den);
        g[j + 1] = boost::multiprecision::numerator(q);
      }
      gens.push_back(primitive(g));
    }
    ConeDD dual = dual_description(gens, hd);
    // lineality of the dual cone = affine-hull equations
    IntMat eqm(0, hd);
    for (const IntVec& l : dual.lineality) eqm.append_row(l);
    IntMat eqh = row_lattice_normal_form(eqm);
    equations_.clear();
    for (std::size_t i = 0; i < eqh.rows(); ++i) {
      IntVec r = eqh.row(i);
      Equation e;
      e.value = -r[0];
      e.normal.assign(r.begin() + 1, r.end());
      equations_.push_back(std::move(e));
    }
    // extreme rays = candidate facets; drop reps that are trivial modulo
    // the affine hull, and reduce the rest to canonical representatives
    facets_.clear();
    std::set<Facet> facet_set;
    for (IntVec r : dual.rays) {
      r = reduce_mod_equations(r, eqh);
      IntVec w(r.begin() + 1, r.end());
      if (is_zero(w)) continue;
      Int c = r[0];
      IntVec pair = w;
      pair.push_back(c);
      pair = primitive(pair);
      Facet f;
      f.normal.assign(pair.begin(), pair.end() - 1);
      f.offset = -pair.back();
      facet_set.insert(std::move(f));
    }
    facets_.assign(facet_set.begin(), facet_set.end());
  }

  static IntVec reduce_mod_equations(IntVec r, const IntMat& eqh) {
    // eqh rows are an HNF basis; reduce r against each pivot
    std::size_t col = 0;
    for (std::size_t i = 0; i < eqh.rows(); ++i) {
      while (col < eqh.cols() && eqh(i, col) == 0) ++col;
      if (col == eqh.cols()) break;
      Int piv = eqh(i, col);
      Int q = r[col] / piv;
      if (r[col] - q * piv < 0) q -= 1;
      if (q != 0)
        for (std::size_t j = 0; j < eqh.cols(); ++j) r[j] -= q * eqh(i, j);
    }
    return r;
  }

  void compute_vrep_from_hrep() {
    std::size_t hd = ambient_dim_ + 1;
    std::vector<IntVec> normals;
    {
      IntVec t0(hd, 0);
      t0[0] = 1;
      normals.push_back(t0);  // t >= 0
    }
    for (const Facet& f : facets_) {
      IntVec n(hd);
      n[0] = -f.offset;
      for (std::size_t j = 0; j < ambient_dim_; ++j) n[j + 1] = f.normal[j];
      normals.push_back(std::move(n));
    }
    for (const Equation& e : equations_) {
      IntVec n(hd);
      n[0] = -e.value;
      for (std::size_t j = 0; j < ambient_dim_; ++j) n[j + 1] = e.normal[j];
      normals.push_back(n);
      normals.push_back(negate(n));
    }
    ConeDD dd = dual_description(normals, hd);
    for (const IntVec& l : dd.lineality)
      if (l[0] != 0) throw defect_error("polytope homogenization: lineality with t != 0");
    vertices_.clear();
    bool unbounded = !dd.lineality.empty();
    for (const IntVec& r : dd.rays) {
      if (r[0] == 0) {
        unbounded = true;
        continue;
      }
      RatVec v(ambient_dim_);
      for (std::size_t j = 0; j < ambient_dim_; ++j) v[j] = Rat(r[j + 1]) / Rat(r[0]);
      vertices_.push_back(std::move(v));
    }
    if (vertices_.empty()) {
      empty_ = true;
      facets_.clear();
      equations_.clear();
      return;
    }
    if (unbounded) throw domain_error("polytope is unbounded");
    std::sort(vertices_.begin(), vertices_.end());
  }

  std::size_t ambient_dim_ = 0;
  std::vector<RatVec> vertices_;
  std::vector<Facet> facets_;
  std::vector<Equation> equations_;
  bool empty_ = false;
};

// Vertex index sets of every nonempty face (the polytope itself included),
// computed by closing the facet incidence sets under intersection.
inline std::vector<std::set<std::size_t>> face_vertex_sets(const Polytope& p) {
  std::vector<std::set<std::size_t>> out;
  if (p.is_empty()) return out;
  std::vector<std::set<std::size_t>> facet_verts(p.facets().size());
  for (std::size_t i = 0; i < p.facets().size(); ++i)
    for (std::size_t j = 0; j < p.vertices().size(); ++j)
      if (dot(p.facets()[i].normal, p.vertices()[j]) == Rat(p.facets()[i].offset))
        facet_verts[i].insert(j);
  std::set<std::set<std::size_t>> seen;
  std::set<std::size_t> all;
  for (std::size_t j = 0; j < p.vertices().size(); ++j) all.insert(j);
  out.push_back(all);
  seen.insert(all);
  for (std::size_t qi = 0; qi < out.size(); ++qi) {
    std::set<std::size_t> cur = out[qi];
    for (std::size_t i = 0; i < p.facets().size(); ++i) {
      std::set<std::size_t> nxt;
      std::set_intersection(cur.begin(), cur.end(), facet_verts[i].begin(), facet_verts[i].end(),
                            std::inserter(nxt, nxt.begin()));
      if (nxt.empty() || nxt == cur) continue;
      if (seen.insert(nxt).second) out.push_back(nxt);
    }
  }
  return out;
}

inline std::vector<Polytope> Polytope::faces(std::size_t d) const {
  std::vector<Polytope> out;
  if (empty_) return out;
  // vertex incidence per facet
  std::vector<std::set<std::size_t>> facet_verts(facets_.size());
  for (std::size_t i = 0; i < facets_.size(); ++i)
    for (std::size_t j = 0; j < vertices_.size(); ++j)
      if (dot(facets_[i].normal, vertices_[j]) == Rat(facets_[i].offset)) facet_verts[i].insert(j);
  std::set<std::set<std::size_t>> seen;
  std::vector<std::set<std::size_t>> queue;
  std::set<std::size_t> all;
  for (std::size_t j = 0; j < vertices_.size(); ++j) all.insert(j);
  queue.push_back(all);
  seen.insert(all);
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::set<std::size_t> cur = queue[qi];
    for (std::size_t i = 0; i < facets_.size(); ++i) {
      std::set<std::size_t> nxt;
      std::set_intersection(cur.begin(), cur.end(), facet_verts[i].begin(), facet_verts[i].end(),
                            std::inserter(nxt, nxt.begin()));
      if (nxt.empty() || nxt == cur) continue;
      if (seen.insert(nxt).second) queue.push_back(nxt);
    }
  }
  for (const auto& vs : queue) {
    std::vector<RatVec> pts;
    for (std::size_t j : vs) pts.push_back(vertices_[j]);
    Polytope f = from_vertices_rat(pts);
    if (f.dim() == d) out.push_back(std::move(f));
  }
  return out;
}

// Coordinates of a (possibly lower-dimensional) lattice polytope in the
// lattice of its affine hull, relative to the given lattice base point.
// Returns the projected polytope together with the direction basis used.
struct AffineLatticeChart {
  Polytope projected;      // full-dimensional in the hull lattice
  IntMat basis;            // rows: direction basis of aff(P) - base
  IntVec base;             // base point
};

inline AffineLatticeChart project_to_affine_lattice(const Polytope& p,
                                                    std::optional<IntVec> base_opt = std::nullopt) {
  if (!p.is_lattice()) throw domain_error("project_to_affine_lattice: non-lattice polytope");
  std::vector<IntVec> vs = p.lattice_vertices();
  IntVec base = base_opt ? *base_opt : vs[0];
  IntMat dirs(0, p.ambient_dim());
  for (const IntVec& v : vs) dirs.append_row(sub(v, base));
  IntMat dirbasis = saturate_rows(dirs);
  if (dirbasis.rows() != rank(dirs)) throw defect_error("affine lattice basis rank mismatch");
  std::vector<IntVec> coords;
  for (const IntVec& v : vs) {
    auto c = in_row_lattice(dirbasis, sub(v, base));
    if (!c) throw defect_error("vertex outside affine hull lattice");
    coords.push_back(*c);
  }
  AffineLatticeChart ch;
  ch.basis = dirbasis;
  ch.base = base;
  ch.projected = Polytope::from_vertices(coords);
  return ch;
}

// Unimodularity of a lattice polytope: the tangent cone at every vertex is
// simplicial on a partial lattice basis. Lower-dimensional polytopes are
// evaluated in the lattice of their affine hull. Checking vertices suffices:
// the tangent cone at a non-vertex point is generated by a vertex cone's
// generators together with lineality inside the face's direction space.
inline bool is_unimodular_polytope(const Polytope& p) {
  if (p.is_empty()) throw domain_error("is_unimodular_polytope: empty polytope");
  if (!p.is_lattice()) return false;
  const Polytope* q = &p;
  AffineLatticeChart ch;
  if (!p.full_dimensional()) {
    ch = project_to_affine_lattice(p);
    q = &ch.projected;
  }
  std::size_t d = q->dim();
  if (d == 0) return true;
  for (const RatVec& v : q->vertices()) {
    Cone c = q->tangent_cone(v);
    if (!c.lineality.empty()) return false;
    if (c.generators.size() != d) return false;
    if (!is_unimodular_generators(c.generators)) return false;
  }
  return true;
}

}  // namespace latgeo

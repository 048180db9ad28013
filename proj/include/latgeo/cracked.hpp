#pragma once

#include "latgeo/fan.hpp"

#include <functional>
#include <sstream>

namespace latgeo {

struct ConeEvidence {
  std::size_t cone_index = 0;
  bool unimodular = false;
  std::string reason;              // empty when unimodular
  std::optional<RatVec> offender;  // vertex of the piece witnessing failure
};

struct CrackedReport {
  bool verdict = false;
  std::vector<ConeEvidence> cones;
  std::vector<IntVec> nonunimodular_vertices;  // vertices of P itself
  IntMat v_p_basis;                            // basis of V_P
  std::size_t dim_v_p = 0;
};

// Vertices of p whose tangent cone in p is not unimodular; the span of
// these is the space V_P driving the cracked-in-half search.
inline std::vector<IntVec> nonunimodular_vertices(const Polytope& p) {
  if (!p.is_lattice()) throw domain_error("nonunimodular_vertices: non-lattice polytope");
  std::vector<IntVec> out;
  for (const RatVec& v : p.vertices()) {
    Cone c = p.tangent_cone(v);
    bool ok = c.lineality.empty() && c.generators.size() == p.dim() &&
              is_unimodular_generators(c.generators);
    if (!ok) out.push_back(to_int_vec(v));
  }
  return out;
}

// Definition of cracked: every tangent cone of P cap C is unimodular for
// every maximal cone C. The implementation checks vertex cones of the
// lattice pieces; non-lattice piece vertices refute crackedness directly.
inline CrackedReport is_cracked(const Polytope& p, const Fan& sigma) {
  IntVec zero(p.ambient_dim(), 0);
  if (!p.full_dimensional() || !p.contains_in_relative_interior(zero))
    throw domain_error("is_cracked: origin must be interior to the polytope");
  if (p.ambient_dim() != sigma.dim) throw domain_error("is_cracked: dimension mismatch");
  if (!is_complete(sigma)) throw domain_error("is_cracked: fan is not complete");
  CrackedReport rep;
  rep.verdict = true;
  for (std::size_t ci = 0; ci < sigma.max_cones.size(); ++ci) {
    ConeEvidence ev;
    ev.cone_index = ci;
    std::vector<Facet> hs;
    for (const IntVec& n : sigma.max_cones[ci].halfspaces) hs.push_back(Facet{n, 0});
    Polytope piece = p.intersect(hs);
    if (piece.is_empty()) throw defect_error("is_cracked: empty piece in a complete fan");
    if (!piece.is_lattice()) {
      ev.unimodular = false;
      ev.reason = "piece has a non-lattice vertex";
      for (const RatVec& v : piece.vertices())
        if (!is_integral(v)) {
          ev.offender = v;
          break;
        }
    } else {
      ev.unimodular = true;
      const Polytope* q = &piece;
      AffineLatticeChart ch;
      if (!piece.full_dimensional()) {
        ch = project_to_affine_lattice(piece);
        q = &ch.projected;
      }
      for (std::size_t vi = 0; vi < q->vertices().size(); ++vi) {
        Cone c = q->tangent_cone(q->vertices()[vi]);
        bool ok = c.lineality.empty() && c.generators.size() == q->dim() &&
                  is_unimodular_generators(c.generators);
        if (!ok) {
          ev.unimodular = false;
          ev.reason = "non-unimodular vertex cone";
          ev.offender = piece.vertices()[vi];
          break;
        }
      }
    }
    if (!ev.unimodular) rep.verdict = false;
    rep.cones.push_back(std::move(ev));
  }
  rep.nonunimodular_vertices = nonunimodular_vertices(p);
  IntMat span(0, p.ambient_dim());
  for (const IntVec& v : rep.nonunimodular_vertices) span.append_row(v);
  rep.v_p_basis = saturate_rows(span);
  if (rep.nonunimodular_vertices.empty()) rep.v_p_basis = IntMat(0, p.ambient_dim());
  rep.dim_v_p = rep.v_p_basis.rows();
  return rep;
}

// Intersection of the tangent cones at the primitive ray generators of the
// fan, as a halfspace set; unbounded in general. Generalised fans with a
// positive-dimensional minimal cone have no rays, so the wrapping
// polyhedron is the entire space.
struct WrappingPolyhedron {
  bool entire_space = false;
  std::vector<Facet> halfspaces;

  bool contains(const RatVec& x) const {
    if (entire_space) return true;
    for (const Facet& f : halfspaces)
      if (dot(f.normal, x) < Rat(f.offset)) return false;
    return true;
  }
  bool contains(const IntVec& x) const { return contains(to_rat_vec(x)); }
};

inline WrappingPolyhedron wrapping_polyhedron(const Polytope& p, const Fan& sigma) {
  WrappingPolyhedron w;
  if (!sigma.lineality.empty() || sigma.rays.empty()) {
    w.entire_space = true;
    return w;
  }
  std::set<Facet> hs;
  for (const IntVec& v : sigma.rays) {
    if (!p.contains(v))
      throw domain_error("wrapping_polyhedron: ray generator " + to_string(v) +
                         " is not in the polytope");
    // tangent cone with apex at v: active facets keep their offsets
    for (const Facet& f : p.facets())
      if (dot(f.normal, v) == f.offset) hs.insert(f);
  }
  w.halfspaces.assign(hs.begin(), hs.end());
  return w;
}

// Generalised fan splitting space along the hyperplane w^perp: two
// halfspace cones with lineality w^perp.
inline Fan halfspace_fan(const IntVec& w_in) {
  IntVec w = primitive(w_in);
  std::size_t d = w.size();
  Fan f;
  f.dim = d;
  IntMat wm(std::vector<IntVec>{w});
  IntMat lin = kernel_basis(wm);
  for (std::size_t i = 0; i < lin.rows(); ++i) f.lineality.push_back(lin.row(i));
  // lift of the quotient rays: u with <w, u> = +-1
  HnfResult h = hnf(wm.transpose());
  if (h.h(0, 0) != 1) throw domain_error("halfspace_fan: direction must be primitive");
  IntVec lift = h.u.row(0);
  f.rays.push_back(primitive(lift));
  f.rays.push_back(primitive(negate(lift)));
  FanCone up, down;
  up.rays = {0};
  up.halfspaces = {w};
  down.rays = {1};
  down.halfspaces = {negate(w)};
  f.max_cones = {up, down};
  return f;
}

struct CrackedSearchRow {
  long long id = -1;
  bool candidate = false;
  bool cracked = false;
  std::size_t dim_v_p = 0;
  std::vector<IntVec> directions;  // split normals along which P is cracked
};

// Splitting directions worth testing: primitive normals of 2-dimensional
// subspaces spanned by lattice points of P. Any valid split plane carries a
// two-dimensional lattice slice of P, so its normal appears here.
inline std::vector<IntVec> candidate_split_directions(const Polytope& p) {
  std::vector<IntVec> pts;
  for (const IntVec& x : p.lattice_points())
    if (!is_zero(x)) pts.push_back(x);
  std::set<IntVec> dirs;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j) {
      IntMat m(std::vector<IntVec>{pts[i], pts[j]});
      if (rank(m) != 2) continue;
      IntMat k = kernel_basis(m);
      if (k.rows() != 1) continue;
      IntVec w = primitive(k.row(0));
      for (const Int& x : w) {
        if (x > 0) break;
        if (x < 0) {
          w = negate(w);
          break;
        }
      }
      dirs.insert(w);
    }
  return {dirs.begin(), dirs.end()};
}

// The three-stage search of the cracked-in-half classification.
// Stage (a): non-unimodular vertices lie in a proper subspace of dimension
// at most two and no facet of the polar dual contains a relative-interior
// lattice point. Stage (b): splitting directions (forced by V_P when it is
// a plane). Stage (c): the cracked test along each direction.
inline CrackedSearchRow cracked_in_half_row(const Polytope& p, long long id = -1) {
  CrackedSearchRow row;
  row.id = id;
  std::vector<IntVec> bad = nonunimodular_vertices(p);
  IntMat span(0, p.ambient_dim());
  for (const IntVec& v : bad) span.append_row(v);
  IntMat vp = bad.empty() ? IntMat(0, p.ambient_dim()) : saturate_rows(span);
  row.dim_v_p = vp.rows();
  if (row.dim_v_p > 2) return row;
  Polytope dual = p.polar_dual();
  for (const Polytope& facet : dual.faces(dual.dim() - 1))
    if (!facet.interior_lattice_points().empty()) return row;
  row.candidate = true;
  std::vector<IntVec> dirs;
  if (row.dim_v_p == 2) {
    IntMat k = kernel_basis(vp);
    if (k.rows() != 1) throw defect_error("cracked_in_half: V_P annihilator rank");
    dirs.push_back(primitive(k.row(0)));
  } else {
    for (IntVec& w : candidate_split_directions(p)) {
      bool ann = true;
      for (const IntVec& v : bad)
        if (dot(w, v) != 0) {
          ann = false;
          break;
        }
      if (ann) dirs.push_back(std::move(w));
    }
  }
  for (const IntVec& w : dirs) {
    Fan f = halfspace_fan(w);
    if (is_cracked(p, f).verdict) {
      row.cracked = true;
      row.directions.push_back(w);
    }
  }
  return row;
}

inline std::vector<CrackedSearchRow> cracked_in_half_search(
    const std::vector<Polytope>& db,
    const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  std::vector<CrackedSearchRow> rows;
  rows.reserve(db.size());
  for (std::size_t i = 0; i < db.size(); ++i) {
    rows.push_back(cracked_in_half_row(db[i], static_cast<long long>(i)));
    if (progress) progress(i + 1, db.size());
  }
  return rows;
}

}  // namespace latgeo

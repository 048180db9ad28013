#pragma once

#include "latgeo/normal_form.hpp"

#include <array>
#include <map>
#include <mutex>
#include <numeric>

namespace latgeo {

// ---- the piece predicate ----------------------------------------------

// A (reflexive) piece: a unimodular lattice polytope containing the origin
// whose interior lattice points are at most {0} and whose facets either
// contain 0 or sit at lattice height -1. Lower-dimensional input is read in
// the lattice of its linear hull.
inline bool is_piece(const Polytope& q) {
  IntVec zero(q.ambient_dim(), 0);
  if (q.is_empty() || !q.contains(zero)) throw domain_error("is_piece: 0 must lie in q");
  if (!q.is_lattice()) return false;
  const Polytope* p = &q;
  AffineLatticeChart ch;
  if (!q.full_dimensional()) {
    ch = project_to_affine_lattice(q, zero);
    p = &ch.projected;
  }
  for (const IntVec& x : p->interior_lattice_points())
    if (!is_zero(x)) return false;
  if (!is_unimodular_polytope(*p)) return false;
  for (const Facet& f : p->facets())
    if (f.offset != 0 && f.offset != -1) return false;
  return true;
}

// Codimension of the minimal face containing the origin.
inline std::size_t piece_type(const Polytope& q) {
  IntVec zero(q.ambient_dim(), 0);
  if (!q.contains(zero)) throw domain_error("piece_type: 0 must lie in q");
  const Polytope* p = &q;
  AffineLatticeChart ch;
  if (!q.full_dimensional()) {
    ch = project_to_affine_lattice(q, zero);
    p = &ch.projected;
  }
  IntVec z(p->ambient_dim(), 0);
  std::vector<RatVec> pts;
  for (std::size_t j = 0; j < p->vertices().size(); ++j) {
    bool in_face = true;
    for (const Facet& f : p->facets())
      if (dot(f.normal, z) == f.offset && dot(f.normal, p->vertices()[j]) != Rat(f.offset)) {
        in_face = false;
        break;
      }
    if (in_face) pts.push_back(p->vertices()[j]);
  }
  std::size_t d = pts.empty() ? 0 : Polytope::from_vertices_rat(pts).dim();
  return p->dim() - d;
}

// ---- family generators -------------------------------------------------

namespace detail {
inline Polytope from_columns(const std::vector<std::array<Int, 3>>& cols) {
  std::vector<IntVec> pts;
  for (const auto& c : cols) pts.push_back({c[0], c[1], c[2]});
  return Polytope::from_vertices(pts);
}
}  // namespace detail

// Cayley polytopes P(alpha, l, j) for alpha >= (-1,-1), l >= 0, j in {1,2}.
inline Polytope gen_P(Int a1, Int a2, Int l, int j) {
  if (a1 < -1 || a2 < -1 || l < 0 || (j != 1 && j != 2)) throw domain_error("gen_P: bad params");
  if (j == 1)
    return detail::from_columns({{0, 0, 1},
                                 {0, 0, -1},
                                 {1, 0, -1},
                                 {0, 1, -1},
                                 {1, 0, a1 + 1},
                                 {0, 1, a2 + 1},
                                 {l, 1, -1},
                                 {l, 1, a2 + l * a1 + 1}});
  return detail::from_columns({{0, 0, 1},
                               {0, 0, -1},
                               {1, 0, -1},
                               {0, 1, -1},
                               {1, 0, a1 + 1},
                               {0, 1, a2 + 1},
                               {1, l, -1},
                               {1, l, a1 + l * a2 + 1}});
}

// Wedge polytopes W(l); W(1) exists but is not unimodular.
inline Polytope gen_W(Int l) {
  if (l < 1) throw domain_error("gen_W: l >= 1");
  return detail::from_columns({{0, 0, 1},
                               {0, 0, -1},
                               {0, 2, -1},
                               {1, 0, -1},
                               {1, 0, 1},
                               {l, 1, 0},
                               {l, 1, -1},
                               {2 * (l - 1), 2, -1}});
}

inline Polytope gen_Wp(Int l) {
  if (l < 1) throw domain_error("gen_Wp: l >= 1");
  return gen_W(l).intersect({Facet{{1, -1, 0}, -1}});
}

inline Polytope gen_W0(Int l) {
  if (l < 1 || l > 2) throw domain_error("gen_W0: l in {1,2}");
  return detail::from_columns(
      {{0, 0, 1}, {0, 0, -1}, {0, 2, -1}, {1, 0, -1}, {1, 0, 1}, {2 * l - 1, 2, -1}});
}

inline Polytope gen_W0p(Int l) {
  if (l < 1 || l > 2) throw domain_error("gen_W0p: l in {1,2}");
  return gen_W0(l).intersect({Facet{{1, -1, 0}, -1}});
}

// Q(alpha, l, j) = P(alpha, l, j) cut to the halfspace x3 >= 0.
inline Polytope gen_Q(Int a1, Int a2, Int l, int j) {
  return gen_P(a1, a2, l, j).intersect({Facet{{0, 0, 1}, 0}});
}

// Validity of Q(alpha,l,j) as a reflexive piece, by the four cases of the
// classification of vertex-type pieces.
inline bool q_family_valid(Int a1, Int a2, Int l, int j) {
  if (a1 >= 0 && a2 >= 0) return true;
  // at l = 0 the cut degenerates to a square pyramid with a four-edge apex
  if (a1 == 0 && a2 == -1 && j == 1) return l >= 1;
  if (a1 >= 0 && a2 == -1 && j == 2 && l == a1 + 1) return true;
  // in the (-1,-1) case only the standard simplex appears; for l >= 2 the
  // cut acquires a rational vertex and is not a lattice polytope at all
  if (a1 == -1 && a2 == -1) return l <= 1;
  return false;
}

// ---- exhaustive enumeration oracle -------------------------------------

// Hulls of subsets of the lattice points of the bounding polytope that
// contain the origin, grown one point at a time; a state whose interior
// collects a nonzero lattice point can never recover, so it is pruned.
inline std::vector<Polytope> enumerate_pieces_oracle(const Polytope& bounding,
                                                     std::size_t max_points = 35) {
  std::vector<IntVec> lat = bounding.lattice_points();
  if (lat.size() > max_points)
    throw domain_error("enumerate_pieces_oracle: bounding region has " +
                       std::to_string(lat.size()) + " lattice points (limit " +
                       std::to_string(max_points) + ")");
  IntVec zero(bounding.ambient_dim(), 0);
  if (!bounding.contains(zero)) return {};
  auto interior_ok = [&](const Polytope& p) {
    for (const IntVec& x : p.interior_lattice_points())
      if (!is_zero(x)) return false;
    return true;
  };
  std::set<std::vector<RatVec>> seen;
  std::vector<Polytope> queue;
  {
    Polytope start = Polytope::from_vertices({zero});
    seen.insert(start.vertices());
    queue.push_back(start);
  }
  std::vector<Polytope> pieces;
  std::map<NormalFormKey, std::size_t> piece_keys;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    Polytope cur = queue[qi];
    if (cur.dim() > 0 && is_piece(cur)) {
      NormalFormKey k = normal_form_any_dim(cur, NormalFormMode::linear);
      if (!piece_keys.count(k)) {
        piece_keys[k] = pieces.size();
        pieces.push_back(cur);
      }
    }
    for (const IntVec& p : lat) {
      if (cur.contains(p)) continue;
      std::vector<RatVec> pts = cur.vertices();
      pts.push_back(to_rat_vec(p));
      Polytope nxt = Polytope::from_vertices_rat(pts);
      if (seen.count(nxt.vertices())) continue;
      if (!interior_ok(nxt)) {
        seen.insert(nxt.vertices());
        continue;
      }
      seen.insert(nxt.vertices());
      queue.push_back(std::move(nxt));
    }
  }
  return pieces;
}

// The exceptional vertex-on-edge pieces: the unimodular-piece subpolytopes
// of conv{-e3, e3, 2e1-e3, 2e2-e3} of type 2 with both edge parameters -1.
// Produced by the oracle, never hard-coded.
std::pair<IntVec, IntVec> edge_type_alpha(const Polytope& q);  // forward

inline const std::vector<Polytope>& exceptional_pieces() {
  static std::vector<Polytope> cache;
  static std::once_flag flag;
  std::call_once(flag, [] {
    Polytope bound =
        Polytope::from_vertices({{0, 0, -1}, {0, 0, 1}, {2, 0, -1}, {0, 2, -1}});
    for (const Polytope& q : enumerate_pieces_oracle(bound)) {
      if (q.dim() != 3 || piece_type(q) != 2) continue;
      auto [alpha, g] = edge_type_alpha(q);
      if (alpha == IntVec{-1, -1}) cache.push_back(q);
    }
  });
  return cache;
}

// ---- classification ----------------------------------------------------

struct PieceRecord {
  std::size_t dim = 0;
  std::size_t type = 0;
  std::string family;
  std::vector<Int> params;
  Polytope polytope;
};

namespace detail {

// Edge-type pieces: the minimal face containing 0 is an edge [-g, g]. The
// two facets through it carry edges at +g whose directions, in the frame
// normalized at -g, read (1,0,a1) and (0,1,a2); returns (a1 >= a2, g).
inline std::pair<IntVec, IntVec> edge_alpha_impl(const Polytope& q3) {
  IntVec zero(3, 0);
  // the 0-edge
  std::vector<Facet> at0;
  for (const Facet& f : q3.facets())
    if (f.offset == 0) at0.push_back(f);
  std::vector<RatVec> edge_pts;
  for (const RatVec& v : q3.vertices()) {
    bool tight = true;
    for (const Facet& f : at0)
      if (dot(f.normal, v) != Rat(f.offset)) {
        tight = false;
        break;
      }
    if (tight) edge_pts.push_back(v);
  }
  if (edge_pts.size() != 2) throw domain_error("edge_alpha: minimal face is not an edge");
  IntVec g = to_int_vec(edge_pts[0]);
  if (!(to_int_vec(edge_pts[1]) == negate(g)))
    throw defect_error("edge_alpha: 0-edge is not centrally symmetric");
  // facets containing the edge
  std::vector<const Facet*> ff;
  for (const Facet& f : at0)
    if (dot(f.normal, g) == 0) ff.push_back(&f);
  if (ff.size() != 2) throw defect_error("edge_alpha: edge not in exactly two 0-facets");
  auto edge_dir_at = [&](const IntVec& vertex, const Facet& inside) -> IntVec {
    // the edge of facet `inside` at `vertex` other than the 0-edge
    std::vector<RatVec> fverts;
    for (const RatVec& v : q3.vertices())
      if (dot(inside.normal, v) == Rat(inside.offset)) fverts.push_back(v);
    Polytope f2 = Polytope::from_vertices_rat(fverts);
    Cone t = f2.tangent_cone(to_rat_vec(vertex));
    for (const IntVec& d : t.generators) {
      if (d == negate(vertex) || d == scale(-2, vertex)) continue;
      IntVec dn = primitive(d);
      if (dn == primitive(negate(vertex))) continue;
      return dn;
    }
    throw defect_error("edge_alpha: no transverse edge at the pole");
  };
  // normalize at -g: frame (f1, f2, g) -> (e1, e2, e3)
  IntVec f1 = edge_dir_at(negate(g), *ff[0]);
  IntVec f2 = edge_dir_at(negate(g), *ff[1]);
  IntMat frame(std::vector<IntVec>{f1, f2, g});
  Int dt = det(frame);
  if (dt != 1 && dt != -1) throw defect_error("edge_alpha: pole frame is not a basis");
  // directions at +g inside each facet, expressed in the frame
  IntVec d1 = edge_dir_at(g, *ff[0]);
  IntVec d2 = edge_dir_at(g, *ff[1]);
  auto coords = [&](const IntVec& v) {
    auto c = in_row_lattice(frame, v);
    if (!c) throw defect_error("edge_alpha: direction outside the frame lattice");
    return *c;
  };
  IntVec c1 = coords(d1), c2 = coords(d2);
  // c1 = (1, 0, a1), c2 = (0, 1, a2) by unimodularity of the facets
  if (c1[0] != 1 || c1[1] != 0 || c2[0] != 0 || c2[1] != 1)
    throw defect_error("edge_alpha: unexpected pole frame");
  IntVec alpha{c1[2], c2[2]};
  if (alpha[0] < alpha[1]) std::swap(alpha[0], alpha[1]);
  return {alpha, g};
}

}  // namespace detail

inline std::pair<IntVec, IntVec> edge_type_alpha(const Polytope& q) {
  return detail::edge_alpha_impl(q);
}

namespace detail {

inline bool same_normal_form(const Polytope& a, const Polytope& b) {
  if (!a.is_lattice() || !b.is_lattice()) return false;
  return normal_form_any_dim(a, NormalFormMode::linear) ==
         normal_form_any_dim(b, NormalFormMode::linear);
}

// match q against a family of generated candidates, returning the params
template <typename Gen>
std::optional<std::vector<Int>> match_family(const Polytope& q, Gen&& gen,
                                             const std::vector<std::vector<Int>>& param_sets) {
  NormalFormKey k = normal_form_any_dim(q, NormalFormMode::linear);
  for (const auto& ps : param_sets) {
    std::optional<Polytope> cand;
    try {
      cand = gen(ps);
    } catch (const domain_error&) {
      continue;
    }
    if (normal_form_any_dim(*cand, NormalFormMode::linear) == k) return ps;
  }
  return std::nullopt;
}

inline Int max_abs_coordinate(const Polytope& q) {
  Int m = 0;
  for (const RatVec& v : q.vertices())
    for (const Rat& x : v) {
      Int a = rat_floor(boost::multiprecision::abs(x));
      m = std::max(m, a);
    }
  return m;
}

}  // namespace detail

// Classification of pieces of dimension <= 3 into the named families. Types
// 0 and 1 in dimension 3 are recognized but not parametrized further.
inline PieceRecord classify_piece(const Polytope& q) {
  if (!is_piece(q)) throw domain_error("classify_piece: not a reflexive piece");
  PieceRecord rec;
  rec.polytope = q;
  rec.dim = q.dim();
  rec.type = piece_type(q);
  if (rec.dim > 3) throw domain_error("classify_piece: dimension > 3");
  IntVec zero(q.ambient_dim(), 0);
  Polytope p = q;
  if (!q.full_dimensional()) p = project_to_affine_lattice(q, zero).projected;

  if (rec.dim == 1) {
    rec.family = "Dim1";
    rec.params = {Int(rec.type == 1 ? 2 : 1)};  // lattice length
    return rec;
  }
  if (rec.dim == 2) {
    if (rec.type == 0) {
      rec.family = "ReflexiveUnimodular";
      return rec;
    }
    if (rec.type == 1) {
      if (p.vertices().size() == 3) {
        rec.family = "Simplex2D";
        return rec;
      }
      // quadrilateral conv{(0,-1),(0,1),(1,-1),(1,m)}
      Int bound = detail::max_abs_coordinate(p) + 2;
      for (Int m = 0; m <= bound; ++m) {
        Polytope cand = Polytope::from_vertices({{0, -1}, {0, 1}, {1, -1}, {1, m}});
        if (detail::same_normal_form(p, cand)) {
          rec.family = "Quad2D";
          rec.params = {m};
          return rec;
        }
      }
      throw defect_error("classify_piece: unmatched 2D edge-type piece");
    }
    // type 2: conv{0, e2, e1, e1 + m e2}
    Int bound = detail::max_abs_coordinate(p) + 2;
    for (Int m = 0; m <= bound; ++m) {
      std::vector<IntVec> pts{{0, 0}, {0, 1}, {1, 0}};
      if (m > 0) pts.push_back({1, m});
      Polytope cand = Polytope::from_vertices(pts);
      if (detail::same_normal_form(p, cand)) {
        rec.family = "Vertex2D";
        rec.params = {m};
        return rec;
      }
    }
    throw defect_error("classify_piece: unmatched 2D vertex-type piece");
  }

  // dimension 3
  if (rec.type == 0) {
    rec.family = "ReflexiveUnimodular";
    return rec;
  }
  if (rec.type == 1) {
    rec.family = "UnimodularTop";
    return rec;
  }
  if (rec.type == 2) {
    auto [alpha, g] = edge_type_alpha(p);
    Int bound = detail::max_abs_coordinate(p) + 2;
    if (alpha == IntVec{-1, -1}) {
      const auto& exc = exceptional_pieces();
      for (std::size_t i = 0; i < exc.size(); ++i)
        if (detail::same_normal_form(p, exc[i])) {
          rec.family = "Exceptional";
          rec.params = {Int(i)};
          return rec;
        }
      throw defect_error("classify_piece: unmatched (-1,-1) edge-type piece");
    }
    // P(alpha, l, j) with the extracted alpha in both orders
    for (int j : {1, 2})
      for (Int l = 0; l <= bound; ++l)
        for (bool swap_alpha : {false, true}) {
          Int a1 = swap_alpha ? alpha[1] : alpha[0];
          Int a2 = swap_alpha ? alpha[0] : alpha[1];
          Polytope cand = gen_P(a1, a2, l, j);
          if (detail::same_normal_form(p, cand)) {
            rec.family = "P";
            rec.params = {a1, a2, l, Int(j)};
            return rec;
          }
        }
    if (alpha == IntVec{0, -1}) {
      for (Int l = 1; l <= bound; ++l) {
        if (detail::same_normal_form(p, gen_W(l))) {
          rec.family = "W";
          rec.params = {l};
          return rec;
        }
        if (detail::same_normal_form(p, gen_Wp(l))) {
          rec.family = "Wp";
          rec.params = {l};
          return rec;
        }
        if (l <= 2) {
          if (detail::same_normal_form(p, gen_W0(l))) {
            rec.family = "W0";
            rec.params = {l};
            return rec;
          }
          if (detail::same_normal_form(p, gen_W0p(l))) {
            rec.family = "W0p";
            rec.params = {l};
            return rec;
          }
        }
      }
    }
    throw defect_error("classify_piece: unmatched 3D edge-type piece");
  }
  // type 3: Q(alpha, l, j)
  Int bound = detail::max_abs_coordinate(p) + 2;
  for (Int a1 = -1; a1 <= bound; ++a1)
    for (Int a2 = -1; a2 <= bound; ++a2)
      for (Int l = 0; l <= bound; ++l)
        for (int j : {1, 2}) {
          Polytope cand = gen_Q(a1, a2, l, j);
          if (!cand.is_lattice()) continue;
          if (detail::same_normal_form(p, cand)) {
            rec.family = "Q";
            rec.params = {a1, a2, l, Int(j)};
            return rec;
          }
        }
  throw defect_error("classify_piece: unmatched 3D vertex-type piece");
}

// ---- reflexive polygons and smooth Fano polytopes ----------------------

// All reflexive polygons, positioned in the box [-box,box]^2, grown from
// the minimal 0-interior seeds (triangles and crossing quadrilaterals) by
// adding lattice points; deduplicated by normal form. Coordinates are tiny,
// so the growth runs on machine integers; only the survivors are rebuilt as
// exact polytopes.
inline std::vector<Polytope> reflexive_polygons(int box = 4) {
  using P2 = std::pair<long long, long long>;
  std::vector<P2> pts;
  for (long long x = -box; x <= box; ++x)
    for (long long y = -box; y <= box; ++y)
      if (x || y) pts.push_back({x, y});
  auto cross = [](const P2& o, const P2& a, const P2& b) {
    return (a.first - o.first) * (b.second - o.second) -
           (a.second - o.second) * (b.first - o.first);
  };
  auto hull_of = [&](std::vector<P2> v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    if (v.size() <= 2) return v;
    std::vector<P2> h(2 * v.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      while (k >= 2 && cross(h[k - 2], h[k - 1], v[i]) <= 0) --k;
      h[k++] = v[i];
    }
    std::size_t lower = k + 1;
    for (std::size_t i = v.size() - 1; i-- > 0;) {
      while (k >= lower && cross(h[k - 2], h[k - 1], v[i]) <= 0) --k;
      h[k++] = v[i];
    }
    h.resize(k - 1);
    std::sort(h.begin(), h.end());
    return h;
  };
  // strictly-inside test against the hull in sorted-vertex form
  auto strictly_inside = [&](const std::vector<P2>& hull_ccw, const P2& q) {
    for (std::size_t i = 0; i < hull_ccw.size(); ++i) {
      const P2& a = hull_ccw[i];
      const P2& b = hull_ccw[(i + 1) % hull_ccw.size()];
      if (cross(a, b, q) <= 0) return false;
    }
    return true;
  };
  auto to_ccw = [&](const std::vector<P2>& sorted_vertices) {
    std::vector<P2> v = sorted_vertices;
    P2 base = v[0];
    std::sort(v.begin() + 1, v.end(), [&](const P2& a, const P2& b) {
      long long c = cross(base, a, b);
      if (c != 0) return c > 0;
      auto d2 = [&](const P2& p) {
        long long dx = p.first - base.first, dy = p.second - base.second;
        return dx * dx + dy * dy;
      };
      return d2(a) < d2(b);
    });
    return v;
  };
  auto interior_only_zero = [&](const std::vector<P2>& sorted_hull) {
    if (sorted_hull.size() < 3) return true;
    std::vector<P2> ccw = to_ccw(sorted_hull);
    for (const P2& q : pts)
      if (strictly_inside(ccw, q)) return false;
    return true;
  };
  auto zero_strictly_interior = [&](const std::vector<P2>& sorted_hull) {
    if (sorted_hull.size() < 3) return false;
    return strictly_inside(to_ccw(sorted_hull), {0, 0});
  };
  std::set<std::vector<P2>> seen;
  std::vector<std::vector<P2>> queue;
  auto push = [&](std::vector<P2> hull) {
    if (!zero_strictly_interior(hull) || !interior_only_zero(hull)) return;
    if (seen.insert(hull).second) queue.push_back(std::move(hull));
  };
  auto sgn = [](long long v) { return (v > 0) - (v < 0); };
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      for (std::size_t k = j + 1; k < pts.size(); ++k) {
        P2 o{0, 0};
        int s1 = sgn(cross(o, pts[i], pts[j]));
        int s2 = sgn(cross(o, pts[j], pts[k]));
        int s3 = sgn(cross(o, pts[k], pts[i]));
        if (s1 == 0 || s1 != s2 || s2 != s3) continue;
        push(hull_of({pts[i], pts[j], pts[k]}));
      }
  // crossing quadrilaterals: both diagonals pass through the origin
  std::vector<std::pair<P2, P2>> diags;
  for (const P2& a : pts)
    for (const P2& b : pts)
      if (a < b && a.first * b.second == a.second * b.first &&
          a.first * b.first + a.second * b.second < 0)
        diags.push_back({a, b});
  for (std::size_t i = 0; i < diags.size(); ++i)
    for (std::size_t j = i + 1; j < diags.size(); ++j) {
      P2 o{0, 0};
      if (cross(o, diags[i].first, diags[j].first) == 0) continue;
      push(hull_of({diags[i].first, diags[i].second, diags[j].first, diags[j].second}));
    }
  std::map<NormalFormKey, Polytope> found;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    std::vector<P2> cur = queue[qi];
    {
      std::vector<IntVec> vi;
      for (const P2& p : cur) vi.push_back({Int(p.first), Int(p.second)});
      Polytope poly = Polytope::from_vertices(vi);
      if (poly.is_reflexive()) found.emplace(normal_form(poly, NormalFormMode::linear), poly);
    }
    for (const P2& p : pts) {
      // quick reject: already inside
      std::vector<P2> ext = cur;
      ext.push_back(p);
      std::vector<P2> nxt = hull_of(ext);
      if (nxt == cur) continue;
      push(std::move(nxt));
    }
  }
  std::vector<Polytope> out;
  for (auto& [k, p] : found) out.push_back(p);
  return out;
}

// Smooth Fano 3-polytopes (spanning fans of the smooth toric Fano
// threefolds), enumerated by completing unimodular fans wall by wall from a
// standard-basis cone. Candidate rays range over the primitive points of
// [-box,box]^3 below the first facet; a count different from the expected
// 18 classes signals an insufficient box. Coordinates stay tiny, so the
// search runs on machine integers.
inline std::vector<Polytope> smooth_fano_3topes(int box = 3) {
  using V3 = std::array<long long, 3>;
  auto dotl = [](const V3& a, const V3& b) {
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
  };
  auto detl = [](const V3& a, const V3& b, const V3& c) {
    return a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) +
           a[2] * (b[0] * c[1] - b[1] * c[0]);
  };
  auto cross = [](const V3& a, const V3& b) {
    return V3{a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
  };
  // dual vertex u of a unimodular cone (a,b,c): <u,a>=<u,b>=<u,c>=1
  auto dual_vertex = [&](const V3& a, const V3& b, const V3& c, long long d) {
    V3 bc = cross(b, c), ca = cross(c, a), ab = cross(a, b);
    V3 u;
    for (int i = 0; i < 3; ++i) u[i] = (bc[i] + ca[i] + ab[i]) / d;
    return u;  // exact since |d| = 1
  };
  std::vector<V3> pool;
  for (long long x = -box; x <= box; ++x)
    for (long long y = -box; y <= box; ++y)
      for (long long z = -box; z <= box; ++z) {
        if (!x && !y && !z) continue;
        long long g = std::abs(std::gcd(std::gcd(x, y), z));
        if (g != 1) continue;
        if (x + y + z > 1) continue;
        pool.push_back({x, y, z});
      }
  struct State {
    std::vector<V3> rays;
    std::vector<std::array<std::size_t, 3>> cones;
    std::vector<V3> duals;      // dual vertex per cone
    long long height_sum = 3;   // sum of <(1,1,1), ray> over the ray set
  };
  std::map<NormalFormKey, Polytope> found;
  std::size_t nodes = 0;
  const std::size_t node_cap = 50'000'000;
  std::vector<State> stack;
  {
    State s;
    s.rays = {V3{1, 0, 0}, V3{0, 1, 0}, V3{0, 0, 1}};
    s.cones.push_back({0, 1, 2});
    s.duals.push_back({1, 1, 1});
    stack.push_back(std::move(s));
  }
  const std::size_t max_rays = 8, max_cones = 2 * max_rays - 4;
  while (!stack.empty()) {
    State st = std::move(stack.back());
    stack.pop_back();
    if (++nodes > node_cap) throw defect_error("smooth_fano_3topes: search exceeded node cap");
    std::map<std::pair<std::size_t, std::size_t>, int> wall_count;
    for (const auto& c : st.cones)
      for (int t = 0; t < 3; ++t) {
        std::size_t a = c[t], b = c[(t + 1) % 3];
        wall_count[{std::min(a, b), std::max(a, b)}] += 1;
      }
    std::optional<std::pair<std::size_t, std::size_t>> open;
    bool overfull = false;
    for (const auto& [w, cnt] : wall_count) {
      if (cnt > 2) overfull = true;
      if (cnt == 1 && !open) open = w;
    }
    if (overfull) continue;
    if (!open) {
      std::vector<IntVec> rays;
      for (const V3& r : st.rays) rays.push_back({Int(r[0]), Int(r[1]), Int(r[2])});
      Polytope q = Polytope::from_vertices(rays);
      if (!q.full_dimensional()) continue;
      IntVec zero(3, 0);
      if (!q.contains_in_relative_interior(zero)) continue;
      if (q.vertices().size() != st.rays.size()) continue;
      if (!q.is_reflexive()) continue;
      if (st.height_sum < 0) continue;  // seed facet must be special
      bool spanning = true;
      for (std::size_t ci = 0; ci < st.cones.size() && spanning; ++ci) {
        int on_facet = 0;
        for (const V3& r : st.rays) {
          long long h = dotl(st.duals[ci], r);
          if (h > 1) {
            spanning = false;
            break;
          }
          if (h == 1) ++on_facet;
        }
        if (on_facet != 3) spanning = false;  // coplanar facets are not simplicial
      }
      if (!spanning) continue;
      found.emplace(normal_form(q, NormalFormMode::linear), q);
      continue;
    }
    if (st.cones.size() >= max_cones) continue;
    auto [wa, wb] = *open;
    V3 third{};
    for (const auto& c : st.cones) {
      bool ha = c[0] == wa || c[1] == wa || c[2] == wa;
      bool hb = c[0] == wb || c[1] == wb || c[2] == wb;
      if (ha && hb) {
        for (std::size_t r : c)
          if (r != wa && r != wb) third = st.rays[r];
        break;
      }
    }
    V3 n = cross(st.rays[wa], st.rays[wb]);
    if (dotl(n, third) > 0)
      for (auto& x : n) x = -x;
    for (const V3& cand : pool) {
      if (dotl(n, cand) <= 0) continue;
      long long d = detl(st.rays[wa], st.rays[wb], cand);
      if (d != 1 && d != -1) continue;
      bool ok = true;
      for (const V3& u : st.duals)
        if (dotl(u, cand) > 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      V3 newdual = dual_vertex(st.rays[wa], st.rays[wb], cand, d);
      for (const V3& r : st.rays)
        if (dotl(newdual, r) > 1) {
          ok = false;
          break;
        }
      if (!ok) continue;
      State nxt = st;
      std::size_t ci;
      auto it = std::find(nxt.rays.begin(), nxt.rays.end(), cand);
      if (it == nxt.rays.end()) {
        if (nxt.rays.size() >= max_rays) continue;
        nxt.rays.push_back(cand);
        ci = nxt.rays.size() - 1;
        nxt.height_sum += cand[0] + cand[1] + cand[2];
        // a special seed facet bounds the height deficit the remaining
        // rays can repair
        if (nxt.height_sum + (long long)(max_rays - nxt.rays.size()) < 0) continue;
      } else {
        ci = std::size_t(it - nxt.rays.begin());
      }
      nxt.cones.push_back({wa, wb, ci});
      nxt.duals.push_back(newdual);
      stack.push_back(std::move(nxt));
    }
  }
  std::vector<Polytope> out;
  for (auto& [k, p] : found) out.push_back(p);
  return out;
}

// The unimodular reflexive 3-topes: polars of the smooth Fano 3-polytopes.
inline const std::vector<Polytope>& unimodular_reflexive_3topes() {
  static std::vector<Polytope> cache;
  static std::once_flag flag;
  std::call_once(flag, [] {
    for (const Polytope& q : smooth_fano_3topes()) {
      Polytope p = q.polar_dual();
      if (!p.is_lattice() || !is_unimodular_polytope(p))
        throw defect_error("unimodular_reflexive_3topes: dual is not unimodular reflexive");
      cache.push_back(p);
    }
  });
  return cache;
}

}  // namespace latgeo

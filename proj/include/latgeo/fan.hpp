#pragma once

#include "latgeo/normal_form.hpp"

#include <map>
#include <numeric>
#include <string>

namespace latgeo {

// Maximal cone of a fan, by ray indices, with cached geometry. For complete
// fans the maximal cones are full-dimensional, so inner halfspace normals
// describe them exactly.
struct FanCone {
  std::vector<std::size_t> rays;
  std::vector<IntVec> halfspaces;
};

// Complete (generalised) fan. `lineality` spans the minimal cone; `rays`
// hold lifted representatives of the rays of the quotient fan. A fan of a
// shape variety has empty lineality.
class Fan {
 public:
  std::size_t dim = 0;
  std::vector<IntVec> lineality;
  std::vector<IntVec> rays;
  std::vector<FanCone> max_cones;

  std::size_t lineality_dim() const { return lineality.size(); }

  Cone cone_geometry(std::size_t ci) const {
    std::vector<IntVec> gens;
    for (std::size_t r : max_cones[ci].rays) gens.push_back(rays[r]);
    return make_cone(gens, lineality, dim);
  }

  void cache_halfspaces() {
    for (FanCone& c : max_cones) {
      std::vector<IntVec> gens;
      for (std::size_t r : c.rays) gens.push_back(rays[r]);
      ConeDD dual = cone_facets(gens, lineality, dim);
      if (!dual.lineality.empty())
        throw domain_error("fan: maximal cone is not full-dimensional");
      c.halfspaces = dual.rays;
    }
  }

  // index of the maximal cone containing x (first match)
  std::optional<std::size_t> cone_containing(const IntVec& x) const {
    for (std::size_t i = 0; i < max_cones.size(); ++i) {
      bool in = true;
      for (const IntVec& h : max_cones[i].halfspaces)
        if (dot(h, x) < 0) {
          in = false;
          break;
        }
      if (in) return i;
    }
    return std::nullopt;
  }
};

inline Fan make_fan(std::size_t dim, std::vector<IntVec> rays,
                    std::vector<std::vector<std::size_t>> cones,
                    std::vector<IntVec> lineality = {}) {
  Fan f;
  f.dim = dim;
  for (IntVec& r : rays) r = primitive(std::move(r));
  f.rays = std::move(rays);
  f.lineality = std::move(lineality);
  for (auto& c : cones) {
    FanCone fc;
    fc.rays = std::move(c);
    f.max_cones.push_back(std::move(fc));
  }
  f.cache_halfspaces();
  return f;
}

// Support covers R^n: every wall (facet of a maximal cone, identified by
// its hyperplane and tight rays) is shared by exactly two maximal cones.
inline bool is_complete(const Fan& f) {
  if (f.max_cones.empty()) return false;
  if (f.max_cones.size() == 1) {
    // single cone: complete iff it is all of R^n, i.e. no facets
    return f.max_cones[0].halfspaces.empty();
  }
  std::map<std::pair<IntVec, std::vector<std::size_t>>, int> wall_count;
  for (const FanCone& c : f.max_cones) {
    if (c.halfspaces.empty()) return false;  // R^n plus another cone cannot be a fan
    for (const IntVec& h : c.halfspaces) {
      IntVec n = h;
      for (const Int& x : n) {
        if (x > 0) break;
        if (x < 0) {
          n = negate(n);
          break;
        }
      }
      std::vector<std::size_t> tight;
      for (std::size_t r : c.rays)
        if (dot(h, f.rays[r]) == 0) tight.push_back(r);
      std::sort(tight.begin(), tight.end());
      wall_count[{n, tight}] += 1;
    }
  }
  for (const auto& [key, count] : wall_count)
    if (count != 2) return false;
  return true;
}

// Every maximal cone is simplicial on a lattice basis (together with the
// minimal cone).
inline bool is_unimodular(const Fan& f) {
  for (const FanCone& c : f.max_cones) {
    if (c.rays.size() + f.lineality.size() != f.dim) return false;
    IntMat m(0, f.dim);
    for (const IntVec& l : f.lineality) m.append_row(l);
    for (std::size_t r : c.rays) m.append_row(f.rays[r]);
    Int d = det(m);
    if (d != 1 && d != -1) return false;
  }
  return true;
}

// Pairwise intersections are faces; used by tests and constructors.
inline bool is_valid_fan(const Fan& f) {
  for (std::size_t i = 0; i < f.max_cones.size(); ++i)
    for (std::size_t j = i + 1; j < f.max_cones.size(); ++j) {
      std::vector<IntVec> hs = f.max_cones[i].halfspaces;
      hs.insert(hs.end(), f.max_cones[j].halfspaces.begin(), f.max_cones[j].halfspaces.end());
      Cone meet = make_cone_from_halfspaces(hs, {}, f.dim);
      std::vector<IntVec> common;
      for (std::size_t r : f.max_cones[i].rays)
        if (std::find(f.max_cones[j].rays.begin(), f.max_cones[j].rays.end(), r) !=
            f.max_cones[j].rays.end())
          common.push_back(f.rays[r]);
      Cone face = make_cone(common, f.lineality, f.dim);
      std::vector<IntVec> ra = meet.generators, rb = face.generators;
      std::sort(ra.begin(), ra.end());
      std::sort(rb.begin(), rb.end());
      IntMat la(0, f.dim), lb(0, f.dim);
      for (auto& v : meet.lineality) la.append_row(v);
      for (auto& v : face.lineality) lb.append_row(v);
      if (ra != rb) return false;
      if (!(row_lattice_normal_form(saturate_rows(la)) ==
            row_lattice_normal_form(saturate_rows(lb))))
        return false;
    }
  return true;
}

// Shape fan: complete unimodular pointed fan with a frozen ray order fixing
// the basis of the torus-invariant divisor group, plus product bookkeeping.
struct ShapeFan {
  Fan fan;
  std::string label;
  // partition of the ray indices into factor blocks, in factor order
  std::vector<std::vector<std::size_t>> factors;
  bool product_of_projective_spaces = false;

  std::size_t n_rays() const { return fan.rays.size(); }
};

// Ray map: columns are the primitive ray generators in the frozen order.
inline IntMat ray_map(const ShapeFan& z) {
  IntMat m(z.fan.dim, z.fan.rays.size());
  for (std::size_t j = 0; j < z.fan.rays.size(); ++j)
    for (std::size_t i = 0; i < z.fan.dim; ++i) m(i, j) = z.fan.rays[j][i];
  return m;
}

// The point: zero-dimensional shape, empty ray set, one trivial cone.
inline ShapeFan shape_point() {
  ShapeFan s;
  s.fan.dim = 0;
  s.fan.max_cones.push_back(FanCone{});
  s.label = "pt";
  s.product_of_projective_spaces = true;
  return s;
}

// P^n with rays e_1, ..., e_n, -(e_1 + ... + e_n); maximal cones drop one
// ray each.
inline ShapeFan shape_projective_space(std::size_t n) {
  if (n == 0) return shape_point();
  std::vector<IntVec> rays;
  for (std::size_t i = 0; i < n; ++i) rays.push_back(unit_vector(n, i));
  rays.push_back(IntVec(n, -1));
  std::vector<std::vector<std::size_t>> cones;
  for (std::size_t skip = 0; skip <= n; ++skip) {
    std::vector<std::size_t> c;
    for (std::size_t i = 0; i <= n; ++i)
      if (i != skip) c.push_back(i);
    cones.push_back(c);
  }
  ShapeFan s;
  s.fan = make_fan(n, rays, cones);
  s.label = "P" + std::to_string(n);
  s.factors = {std::vector<std::size_t>(n + 1)};
  std::iota(s.factors[0].begin(), s.factors[0].end(), 0);
  s.product_of_projective_spaces = true;
  return s;
}

// Product: ray blocks concatenated in factor order, cones are products.
inline ShapeFan shape_product(const ShapeFan& a, const ShapeFan& b) {
  std::size_t da = a.fan.dim, db = b.fan.dim, d = da + db;
  std::vector<IntVec> rays;
  for (const IntVec& r : a.fan.rays) {
    IntVec v(d, 0);
    std::copy(r.begin(), r.end(), v.begin());
    rays.push_back(v);
  }
  for (const IntVec& r : b.fan.rays) {
    IntVec v(d, 0);
    std::copy(r.begin(), r.end(), v.begin() + da);
    rays.push_back(v);
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const FanCone& ca : a.fan.max_cones)
    for (const FanCone& cb : b.fan.max_cones) {
      std::vector<std::size_t> c = ca.rays;
      for (std::size_t r : cb.rays) c.push_back(a.fan.rays.size() + r);
      cones.push_back(c);
    }
  ShapeFan s;
  s.fan = make_fan(d, rays, cones);
  s.label = a.label + "x" + b.label;
  s.factors = a.factors;
  for (const auto& blk : b.factors) {
    std::vector<std::size_t> shifted;
    for (std::size_t r : blk) shifted.push_back(a.fan.rays.size() + r);
    s.factors.push_back(shifted);
  }
  s.product_of_projective_spaces =
      a.product_of_projective_spaces && b.product_of_projective_spaces;
  return s;
}

// Stellar subdivision at a primitive ray in the support. The new ray is
// appended to the ray order.
inline Fan star_subdivision(const Fan& f, const IntVec& v_in) {
  IntVec v = primitive(v_in);
  for (const IntVec& r : f.rays)
    if (r == v) throw domain_error("star_subdivision: ray already present");
  Fan g;
  g.dim = f.dim;
  g.lineality = f.lineality;
  g.rays = f.rays;
  g.rays.push_back(v);
  std::size_t vi = g.rays.size() - 1;
  bool found = false;
  for (std::size_t ci = 0; ci < f.max_cones.size(); ++ci) {
    const FanCone& c = f.max_cones[ci];
    bool contains = true;
    for (const IntVec& h : c.halfspaces)
      if (dot(h, v) < 0) {
        contains = false;
        break;
      }
    if (!contains) {
      g.max_cones.push_back(c);
      continue;
    }
    found = true;
    // replace by cones over the facets not containing v
    for (const IntVec& h : c.halfspaces) {
      if (dot(h, v) == 0) continue;
      std::vector<std::size_t> nc;
      for (std::size_t r : c.rays)
        if (dot(h, f.rays[r]) == 0) nc.push_back(r);
      nc.push_back(vi);
      FanCone fc;
      fc.rays = nc;
      g.max_cones.push_back(fc);
    }
  }
  if (!found) throw domain_error("star_subdivision: ray not in the support");
  g.cache_halfspaces();
  return g;
}

// dP7 = P1xP1 blown up in one torus-invariant point.
inline ShapeFan shape_dp7() {
  ShapeFan p1p1 = shape_product(shape_projective_space(1), shape_projective_space(1));
  ShapeFan s;
  s.fan = star_subdivision(p1p1.fan, IntVec{1, 1});
  s.label = "dP7";
  return s;
}

// dP6: dP7 blown up in the opposite point, the fan of the hexagon.
inline ShapeFan shape_dp6() {
  ShapeFan s;
  s.fan = star_subdivision(shape_dp7().fan, IntVec{-1, -1});
  s.label = "dP6";
  return s;
}

// dP5': P1xP1 blown up in three of its four torus-invariant points.
inline ShapeFan shape_dp5_prime() {
  ShapeFan p1p1 = shape_product(shape_projective_space(1), shape_projective_space(1));
  Fan f = star_subdivision(p1p1.fan, IntVec{1, 1});
  f = star_subdivision(f, IntVec{-1, 1});
  f = star_subdivision(f, IntVec{-1, -1});
  ShapeFan s;
  s.fan = f;
  s.label = "dP5'";
  return s;
}

// Generalised fan with k extra lineality directions appended as new
// coordinates; quotient by the minimal cone recovers the input.
inline Fan promote(const Fan& f, std::size_t extra) {
  Fan g;
  g.dim = f.dim + extra;
  for (const IntVec& l : f.lineality) {
    IntVec v(g.dim, 0);
    std::copy(l.begin(), l.end(), v.begin());
    g.lineality.push_back(v);
  }
  for (std::size_t i = 0; i < extra; ++i) g.lineality.push_back(unit_vector(g.dim, f.dim + i));
  for (const IntVec& r : f.rays) {
    IntVec v(g.dim, 0);
    std::copy(r.begin(), r.end(), v.begin());
    g.rays.push_back(v);
  }
  for (const FanCone& c : f.max_cones) {
    FanCone fc;
    fc.rays = c.rays;
    for (const IntVec& h : c.halfspaces) {
      IntVec v(g.dim, 0);
      std::copy(h.begin(), h.end(), v.begin());
      fc.halfspaces.push_back(v);
    }
    g.max_cones.push_back(fc);
  }
  return g;
}

// Quotient of a generalised fan by its minimal cone, in coordinates given
// by pairing with a basis of the annihilator of the lineality.
inline Fan quotient_fan(const Fan& f) {
  if (f.lineality.empty()) return f;
  IntMat lin(0, f.dim);
  for (const IntVec& l : f.lineality) lin.append_row(l);
  // rows pair ~ coordinates on the quotient; HNF form keeps the identity
  // coordinates when the lineality consists of trailing unit axes
  IntMat ann = row_lattice_normal_form(kernel_basis(lin));
  Fan g;
  g.dim = ann.rows();
  for (const IntVec& r : f.rays) g.rays.push_back(primitive(matvec(ann, r)));
  for (const FanCone& c : f.max_cones) {
    FanCone fc;
    fc.rays = c.rays;
    g.max_cones.push_back(fc);
  }
  g.cache_halfspaces();
  return g;
}

// Spanning fan: cones over the facets of a polytope with 0 interior.
inline Fan spanning_fan(const Polytope& p, bool require_reflexive = false) {
  IntVec zero(p.ambient_dim(), 0);
  if (!p.full_dimensional() || !p.contains_in_relative_interior(zero))
    throw domain_error("spanning_fan: origin not interior");
  if (require_reflexive && !p.is_reflexive()) throw domain_error("spanning_fan: not reflexive");
  std::vector<IntVec> rays;
  std::map<IntVec, std::size_t> ray_index;
  std::vector<IntVec> vs;
  if (!p.is_lattice()) throw domain_error("spanning_fan: non-lattice polytope");
  for (const IntVec& v : p.lattice_vertices()) {
    IntVec r = primitive(v);
    if (!ray_index.count(r)) {
      ray_index[r] = rays.size();
      rays.push_back(r);
    }
    vs.push_back(r);
  }
  std::vector<std::vector<std::size_t>> cones;
  auto lat = p.lattice_vertices();
  for (const Facet& f : p.facets()) {
    std::vector<std::size_t> c;
    for (std::size_t j = 0; j < lat.size(); ++j)
      if (dot(f.normal, lat[j]) == f.offset) c.push_back(ray_index[vs[j]]);
    cones.push_back(c);
  }
  return make_fan(p.ambient_dim(), rays, cones);
}

// Normal fan: one maximal cone per vertex, generated by the normals of the
// active facets.
inline Fan normal_fan(const Polytope& p) {
  if (!p.full_dimensional()) throw domain_error("normal_fan: polytope not full-dimensional");
  std::vector<IntVec> rays;
  std::map<IntVec, std::size_t> ray_index;
  for (const Facet& f : p.facets()) {
    IntVec r = primitive(f.normal);
    if (!ray_index.count(r)) {
      ray_index[r] = rays.size();
      rays.push_back(r);
    }
  }
  std::vector<std::vector<std::size_t>> cones;
  for (const RatVec& v : p.vertices()) {
    std::vector<std::size_t> c;
    for (const Facet& f : p.facets())
      if (dot(f.normal, v) == Rat(f.offset)) c.push_back(ray_index[primitive(f.normal)]);
    cones.push_back(c);
  }
  return make_fan(p.ambient_dim(), rays, cones);
}

// Shape fan wrapper around the normal fan of a unimodular polytope; used by
// anti-canonical scaffoldings.
inline ShapeFan shape_from_normal_fan(const Polytope& p, const std::string& label) {
  ShapeFan s;
  s.fan = normal_fan(p);
  s.label = label;
  return s;
}

// Label grammar: "pt", "P<n>", "dP5'", "dP6", "dP7" joined with "x".
inline ShapeFan shape_by_label(const std::string& label) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : label) {
    if (ch == 'x' && !cur.empty() && cur != "d") {  // 'x' only separates factors
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  std::optional<ShapeFan> acc;
  for (const std::string& part : parts) {
    ShapeFan f;
    if (part == "pt")
      f = shape_point();
    else if (part == "dP7")
      f = shape_dp7();
    else if (part == "dP6")
      f = shape_dp6();
    else if (part == "dP5'" || part == "dP5p")
      f = shape_dp5_prime();
    else if (part.size() >= 2 && part[0] == 'P')
      f = shape_projective_space(std::stoul(part.substr(1)));
    else
      throw domain_error("unknown shape label: " + part);
    acc = acc ? shape_product(*acc, f) : f;
  }
  if (!acc) throw domain_error("empty shape label");
  return *acc;
}

// Lattice automorphisms of a pointed fan: unimodular maps permuting the ray
// set and mapping maximal cones to maximal cones.
inline std::vector<IntMat> fan_automorphisms(const Fan& f) {
  std::vector<IntMat> out;
  if (!f.lineality.empty()) throw domain_error("fan_automorphisms: pointed fans only");
  if (f.max_cones.empty()) return {IntMat::identity(f.dim)};
  const FanCone& c0 = f.max_cones[0];
  if (c0.rays.size() != f.dim) throw domain_error("fan_automorphisms: fan must be simplicial");
  IntMat base(0, f.dim);
  for (std::size_t r : c0.rays) base.append_row(f.rays[r]);
  std::set<IntVec> rayset(f.rays.begin(), f.rays.end());
  std::set<std::vector<std::size_t>> coneset;
  for (const FanCone& c : f.max_cones) {
    std::vector<std::size_t> s = c.rays;
    std::sort(s.begin(), s.end());
    coneset.insert(s);
  }
  // candidate images of the base cone: each maximal cone with each ordering
  for (const FanCone& c : f.max_cones) {
    std::vector<std::size_t> perm = c.rays;
    std::sort(perm.begin(), perm.end());
    do {
      IntMat target(0, f.dim);
      for (std::size_t r : perm) target.append_row(f.rays[r]);
      // A maps base ray i to target ray i; row k of A solves
      // base * y = target-column k
      IntMat a(f.dim, f.dim);
      bool ok = true;
      for (std::size_t k = 0; k < f.dim && ok; ++k) {
        IntVec rhs(f.dim);
        for (std::size_t i = 0; i < f.dim; ++i) rhs[i] = target(i, k);
        auto x = solve_rational(base, rhs);
        if (!x || !is_integral(*x)) {
          ok = false;
          break;
        }
        IntVec xi = to_int_vec(*x);
        for (std::size_t i = 0; i < f.dim; ++i) a(k, i) = xi[i];
      }
      if (!ok) continue;
      Int d = det(a);
      if (d != 1 && d != -1) continue;
      // check the ray set and cone set are preserved
      bool good = true;
      std::map<std::size_t, std::size_t> ray_img;
      for (std::size_t r = 0; r < f.rays.size() && good; ++r) {
        IntVec img = matvec(a, f.rays[r]);
        if (!rayset.count(img)) {
          good = false;
          break;
        }
        for (std::size_t q = 0; q < f.rays.size(); ++q)
          if (f.rays[q] == img) {
            ray_img[r] = q;
            break;
          }
      }
      if (!good) continue;
      for (const FanCone& cc : f.max_cones) {
        std::vector<std::size_t> img;
        for (std::size_t r : cc.rays) img.push_back(ray_img[r]);
        std::sort(img.begin(), img.end());
        if (!coneset.count(img)) {
          good = false;
          break;
        }
      }
      if (!good) continue;
      out.push_back(a);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  // deduplicate
  std::sort(out.begin(), out.end(), [](const IntMat& x, const IntMat& y) {
    for (std::size_t i = 0; i < x.rows(); ++i)
      for (std::size_t j = 0; j < x.cols(); ++j) {
        if (x(i, j) != y(i, j)) return x(i, j) < y(i, j);
      }
    return false;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace latgeo

#pragma once

#include "latgeo/cracked.hpp"

#include <sstream>

namespace latgeo {

// A strut (D, chi): a nef divisor on the shape, as coefficients on the
// ordered rays, together with an offset in N_U.
struct Strut {
  IntVec divisor;
  IntVec chi;
};

struct Scaffolding {
  ShapeFan shape;  // fan of Z in \bar M; dim = dim \bar N
  std::size_t n_u_dim = 0;
  std::vector<Strut> struts;
  std::optional<Polytope> target;

  std::size_t dim_n() const { return shape.fan.dim + n_u_dim; }
};

// P_D = {m : <m, v_rho> >= -d_rho for every ray rho}; bounded because the
// fan is complete, possibly empty.
inline Polytope polyhedron_of_sections(const ShapeFan& z, const IntVec& d) {
  if (d.size() != z.fan.rays.size())
    throw domain_error("polyhedron_of_sections: divisor length mismatch");
  if (z.fan.dim == 0) return Polytope::from_vertices({IntVec{}});
  std::vector<Facet> hs;
  for (std::size_t j = 0; j < z.fan.rays.size(); ++j)
    hs.push_back(Facet{z.fan.rays[j], -d[j]});
  return Polytope::from_halfspaces(hs, {}, z.fan.dim);
}

// Nef test: the support function is convex. For every maximal cone the
// dual vertex m_sigma solving <m, v_rho> = -d_rho on the cone's rays must
// satisfy <m, v_rho'> >= -d_rho' globally.
inline bool is_nef(const ShapeFan& z, const IntVec& d) {
  if (d.size() != z.fan.rays.size()) throw domain_error("is_nef: divisor length mismatch");
  for (const FanCone& c : z.fan.max_cones) {
    IntMat a(0, z.fan.dim);
    IntVec rhs;
    for (std::size_t r : c.rays) {
      a.append_row(z.fan.rays[r]);
      rhs.push_back(-d[r]);
    }
    auto m = solve_rational(a, rhs);
    if (!m) return false;
    for (std::size_t j = 0; j < z.fan.rays.size(); ++j)
      if (dot(z.fan.rays[j], *m) < Rat(-d[j])) return false;
  }
  return true;
}

// The strut polytope P_D + chi embedded into N = \bar N + N_U.
inline Polytope strut_polytope(const Scaffolding& s, const Strut& st) {
  Polytope sections = polyhedron_of_sections(s.shape, st.divisor);
  if (sections.is_empty()) throw domain_error("strut_polytope: empty polyhedron of sections");
  std::size_t d = s.dim_n();
  std::vector<RatVec> pts;
  for (const RatVec& v : sections.vertices()) {
    RatVec w(d, Rat(0));
    std::copy(v.begin(), v.end(), w.begin());
    for (std::size_t j = 0; j < s.n_u_dim; ++j) w[s.shape.fan.dim + j] = Rat(st.chi[j]);
    pts.push_back(std::move(w));
  }
  return Polytope::from_vertices_rat(pts);
}

inline Polytope scaffolding_hull(const Scaffolding& s) {
  std::vector<RatVec> pts;
  for (const Strut& st : s.struts) {
    Polytope sp = strut_polytope(s, st);
    pts.insert(pts.end(), sp.vertices().begin(), sp.vertices().end());
  }
  if (pts.empty()) throw domain_error("scaffolding_hull: no struts");
  return Polytope::from_vertices_rat(pts);
}

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> violations;
  Polytope hull;

  void fail(std::string what) {
    valid = false;
    violations.push_back(std::move(what));
  }
};

// Checks the scaffolding axioms: struts are nef with nonempty sections, the
// strut polytopes cover the target by convex hull, and every vertex of the
// target lies in exactly one strut polytope.
inline ValidationReport validate(const Scaffolding& s) {
  ValidationReport rep;
  for (std::size_t i = 0; i < s.struts.size(); ++i) {
    if (s.struts[i].divisor.size() != s.shape.n_rays())
      throw domain_error("validate: strut divisor length mismatch");
    if (s.struts[i].chi.size() != s.n_u_dim)
      throw domain_error("validate: strut chi length mismatch");
    if (!is_nef(s.shape, s.struts[i].divisor))
      rep.fail("strut " + std::to_string(i) + ": divisor is not nef");
    if (polyhedron_of_sections(s.shape, s.struts[i].divisor).is_empty())
      rep.fail("strut " + std::to_string(i) + ": empty polyhedron of sections");
  }
  if (!rep.valid) return rep;
  rep.hull = scaffolding_hull(s);
  const Polytope& target = s.target ? *s.target : rep.hull;
  if (!(rep.hull == target)) rep.fail("convex hull of the struts differs from the target");
  std::vector<Polytope> strut_polys;
  for (const Strut& st : s.struts) strut_polys.push_back(strut_polytope(s, st));
  for (const RatVec& v : target.vertices()) {
    std::size_t count = 0;
    for (const Polytope& sp : strut_polys)
      if (sp.contains(v)) ++count;
    if (count != 1)
      rep.fail("vertex " + [&] {
        std::ostringstream os;
        os << "(";
        for (std::size_t j = 0; j < v.size(); ++j) os << (j ? "," : "") << v[j];
        os << ")";
        return os.str();
      }() + " lies in " + std::to_string(count) + " struts");
  }
  return rep;
}

// Column bookkeeping of the Construction 3.1 echelon form. Columns are
// ordered [non-basis struts | N_U axes | divisor axes]; the N_U axes are
// the (0,b) basis struts when present and virtual axes otherwise.
struct AmbientColumns {
  std::vector<IntVec> rays;              // ray generators of Sigma_S, column order
  std::vector<std::string> labels;
  std::vector<std::size_t> strut_index;  // scaffolding index per strut column
  std::size_t n_strut = 0, n_u = 0, n_div = 0;
  bool augmented = false;                // virtual N_U axes in use
  IntMat nu_basis;                       // rows: the N_U basis used for coordinates
};

inline AmbientColumns ambient_columns(const Scaffolding& s, bool strict_basis = false) {
  AmbientColumns cols;
  std::size_t l = s.shape.n_rays(), u = s.n_u_dim;
  std::vector<std::size_t> basis_struts, other_struts;
  for (std::size_t i = 0; i < s.struts.size(); ++i) {
    if (u > 0 && is_zero(s.struts[i].divisor) && !is_zero(s.struts[i].chi))
      basis_struts.push_back(i);
    else
      other_struts.push_back(i);
  }
  // keep only a genuine lattice basis of N_U among the (0,b) struts
  IntMat b(0, u);
  for (std::size_t i : basis_struts) b.append_row(s.struts[i].chi);
  bool have_basis = u == 0 || (basis_struts.size() == u && extends_to_basis(b) && rank(b) == u);
  if (!have_basis) {
    if (strict_basis)
      throw domain_error(
          "scaffolding does not satisfy the basis condition: add (0,b) struts for a basis of "
          "N_U");
    other_struts.clear();
    for (std::size_t i = 0; i < s.struts.size(); ++i) other_struts.push_back(i);
    basis_struts.clear();
    cols.augmented = u > 0;
    cols.nu_basis = IntMat::identity(u);
  } else {
    cols.nu_basis = b;
  }
  cols.n_strut = other_struts.size();
  cols.n_u = u;
  cols.n_div = l;
  auto chi_coords = [&](const IntVec& chi) -> IntVec {
    if (u == 0) return {};
    auto c = in_row_lattice(cols.nu_basis, chi);
    if (!c) throw domain_error("ambient_columns: chi outside the N_U basis lattice");
    return *c;
  };
  for (std::size_t k = 0; k < other_struts.size(); ++k) {
    const Strut& st = s.struts[other_struts[k]];
    IntVec ray(l + u, 0);
    for (std::size_t j = 0; j < l; ++j) ray[j] = -st.divisor[j];
    IntVec cc = chi_coords(st.chi);
    for (std::size_t j = 0; j < u; ++j) ray[l + j] = cc[j];
    cols.rays.push_back(std::move(ray));
    cols.labels.push_back("s" + std::to_string(k + 1));
    cols.strut_index.push_back(other_struts[k]);
  }
  for (std::size_t j = 0; j < u; ++j) {
    IntVec ray(l + u, 0);
    ray[l + j] = 1;
    cols.rays.push_back(std::move(ray));
    cols.labels.push_back("u" + std::to_string(j + 1));
  }
  for (std::size_t j = 0; j < l; ++j) {
    cols.rays.push_back(unit_vector(l + u, j));
    cols.labels.push_back("d" + std::to_string(j + 1));
  }
  return cols;
}

// The lattice map theta = rho* + Id : N -> Div(Z) + N_U. Rows are indexed
// by [divisor axes | N_U axes]; the N_U block is written in the same basis
// the ambient columns use.
inline IntMat theta_matrix(const Scaffolding& s,
                           const std::optional<IntMat>& nu_basis = std::nullopt) {
  std::size_t l = s.shape.n_rays(), u = s.n_u_dim, d = s.shape.fan.dim;
  IntMat t(l + u, d + u);
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t k = 0; k < d; ++k) t(j, k) = s.shape.fan.rays[j][k];
  for (std::size_t j = 0; j < u; ++j) {
    IntVec coords = unit_vector(u, j);
    if (nu_basis) {
      auto c = in_row_lattice(*nu_basis, coords);
      if (!c) throw domain_error("theta_matrix: N_U basis does not span");
      coords = *c;
    }
    for (std::size_t i = 0; i < u; ++i) t(l + i, d + j) = coords[i];
  }
  return t;
}

struct AmbientPresentation {
  Polytope q_s;          // ambient polytope in Div + M_U
  Fan sigma_s;           // its normal fan
  IntMat ray_matrix;     // echelon form, columns in ambient order
  AmbientColumns columns;
  IntMat theta;
  std::vector<std::string> notes;
};

// Definition of the ambient polytope: <(-D,chi), x> >= -1 per strut and
// divisor coordinates nonnegative.
inline Polytope ambient_polytope(const Scaffolding& s) {
  std::size_t l = s.shape.n_rays(), u = s.n_u_dim;
  std::vector<Facet> hs;
  for (const Strut& st : s.struts) {
    IntVec n(l + u);
    for (std::size_t j = 0; j < l; ++j) n[j] = -st.divisor[j];
    for (std::size_t j = 0; j < u; ++j) n[l + j] = st.chi[j];
    hs.push_back(Facet{std::move(n), -1});
  }
  for (std::size_t j = 0; j < l; ++j) hs.push_back(Facet{unit_vector(l + u, j), 0});
  try {
    return Polytope::from_halfspaces(hs, {}, l + u);
  } catch (const domain_error&) {
    throw domain_error("scaffolding does not define a polytope");
  }
}

inline AmbientPresentation build_ambient(const Scaffolding& s, bool strict_basis = false) {
  AmbientPresentation amb;
  amb.q_s = ambient_polytope(s);
  if (amb.q_s.is_empty()) throw domain_error("scaffolding does not define a polytope");
  amb.sigma_s = normal_fan(amb.q_s);
  amb.columns = ambient_columns(s, strict_basis);
  std::size_t n = s.shape.n_rays() + s.n_u_dim;
  amb.ray_matrix = IntMat(n, amb.columns.rays.size());
  for (std::size_t j = 0; j < amb.columns.rays.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) amb.ray_matrix(i, j) = amb.columns.rays[j][i];
  amb.theta = theta_matrix(s, amb.columns.nu_basis);
  if (rank(amb.theta) != s.dim_n() || !extends_to_basis(amb.theta.transpose()))
    throw defect_error("theta is not a saturated embedding");
  // the formal ray set and the normal fan should agree up to order; a
  // mismatch means a strut inequality was redundant
  std::set<IntVec> formal(amb.columns.rays.begin(), amb.columns.rays.end());
  std::set<IntVec> geometric(amb.sigma_s.rays.begin(), amb.sigma_s.rays.end());
  if (formal != geometric)
    amb.notes.push_back("redundant inequalities: Sigma_S rays differ from the formal columns");
  return amb;
}

// ---- fullness and the smoothness oracle ------------------------------

struct FullnessReport {
  bool full = true;
  std::vector<std::string> violations;
  // vertical faces as vertex sets of the target, with the factor they
  // came from
  std::size_t n_vertical_faces = 0;
};

// Cayley factors of a facet F of the scaffolded polytope, following the
// recipe: slices F cap {<x,v> = -1} over the primitive ray generators v of
// the minimal cone of Sigma containing the dual vertex F*, modulo the
// minimal cone; when that cone has no rays the factor is F itself.
inline std::vector<Polytope> facet_cayley_factors(const Polytope& target, const Facet& facet,
                                                  const Fan& sigma) {
  IntVec fstar = facet.normal;
  auto ci = sigma.cone_containing(fstar);
  if (!ci) throw domain_error("facet_cayley_factors: dual vertex outside the fan support");
  const FanCone& c = sigma.max_cones[*ci];
  // rays of the minimal face of the cone containing F*
  std::vector<IntVec> tight_normals;
  for (const IntVec& h : c.halfspaces)
    if (dot(h, fstar) == 0) tight_normals.push_back(h);
  std::vector<IntVec> vs;
  for (std::size_t r : c.rays) {
    bool in_face = true;
    for (const IntVec& h : tight_normals)
      if (dot(h, sigma.rays[r]) != 0) {
        in_face = false;
        break;
      }
    if (in_face) vs.push_back(sigma.rays[r]);
  }
  std::vector<RatVec> fverts;
  for (const RatVec& v : target.vertices())
    if (dot(facet.normal, v) == Rat(facet.offset)) fverts.push_back(v);
  Polytope f = Polytope::from_vertices_rat(fverts);
  if (vs.empty()) return {f};
  std::vector<Polytope> factors;
  for (const IntVec& v : vs) {
    Polytope slice = f.intersect({}, {Equation{v, -1}});
    if (!slice.is_empty()) factors.push_back(slice);
  }
  return factors;
}

// Definition of full: every vertical face of the target lies in exactly
// one strut polytope. Vertical faces are the faces contained in a Cayley
// factor of some facet.
inline FullnessReport is_full(const Scaffolding& s, const Fan& sigma) {
  FullnessReport rep;
  Polytope target = s.target ? *s.target : scaffolding_hull(s);
  if (!target.is_reflexive())
    throw domain_error("is_full: the scaffolded polytope must be reflexive");
  std::vector<Polytope> strut_polys;
  for (const Strut& st : s.struts) strut_polys.push_back(strut_polytope(s, st));
  // collect vertical faces as vertex subsets of the target
  std::set<std::vector<RatVec>> vertical;
  std::vector<Polytope> factors;
  for (const Facet& f : target.facets())
    for (Polytope& fac : facet_cayley_factors(target, f, sigma)) factors.push_back(fac);
  auto faces = face_vertex_sets(target);
  for (const auto& vs : faces) {
    std::vector<RatVec> pts;
    for (std::size_t j : vs) pts.push_back(target.vertices()[j]);
    bool is_vertical = false;
    for (const Polytope& fac : factors) {
      bool inside = true;
      for (const RatVec& p : pts)
        if (!fac.contains(p)) {
          inside = false;
          break;
        }
      if (inside) {
        is_vertical = true;
        break;
      }
    }
    if (is_vertical) vertical.insert(pts);
  }
  // also the factors themselves (their vertex sets need not be faces of
  // the target, e.g. interior slices; the containment test is the same)
  rep.n_vertical_faces = vertical.size();
  for (const auto& pts : vertical) {
    std::size_t count = 0;
    for (const Polytope& sp : strut_polys) {
      bool inside = true;
      for (const RatVec& p : pts)
        if (!sp.contains(p)) {
          inside = false;
          break;
        }
      if (inside) ++count;
    }
    if (count != 1) {
      rep.full = false;
      rep.violations.push_back("a vertical face lies in " + std::to_string(count) + " struts");
    }
  }
  return rep;
}

// Smoothness oracle: Y_S is smooth in a neighbourhood of the image of X_P
// iff every cone of Sigma_S whose relative interior meets the image of
// theta is unimodular. The union of theta(c) over the cones c of the
// spanning fan is the image subspace, so the test reduces to it.
inline bool smooth_near_image(const Scaffolding& s) {
  AmbientPresentation amb = build_ambient(s);

  std::size_t n = s.shape.n_rays() + s.n_u_dim;
  // equations of the image subspace of theta
  IntMat ann = kernel_basis(amb.theta.transpose());
  std::vector<std::set<std::size_t>> faces = face_vertex_sets(amb.q_s);
  std::set<std::vector<IntVec>> cone_gens;
  for (const auto& vs : faces) {
    std::vector<IntVec> gens;
    for (const Facet& f : amb.q_s.facets()) {
      bool active = true;
      for (std::size_t j : vs)
        if (dot(f.normal, amb.q_s.vertices()[j]) != Rat(f.offset)) {
          active = false;
          break;
        }
      if (active) gens.push_back(primitive(f.normal));
    }
    std::sort(gens.begin(), gens.end());
    cone_gens.insert(gens);
  }
  for (const std::vector<IntVec>& gens : cone_gens) {
    if (gens.empty()) continue;
    // does relint(cone) meet the image subspace?
    ConeDD facets = cone_facets(gens, {}, n);
    std::vector<IntVec> cut = facets.rays;
    for (const IntVec& e : facets.lineality) {
      cut.push_back(e);
      cut.push_back(negate(e));
    }
    for (std::size_t i = 0; i < ann.rows(); ++i) {
      cut.push_back(ann.row(i));
      cut.push_back(negate(ann.row(i)));
    }
    ConeDD meet = dual_description(cut, n);
    std::vector<IntVec> kgens = meet.rays;
    for (const IntVec& l : meet.lineality) {
      kgens.push_back(l);
      kgens.push_back(negate(l));
    }
    if (kgens.empty()) continue;
    bool interiorly = false;
    // the intersection is convex: it meets the relative interior iff it is
    // not contained in any single facet hyperplane
    bool contained_in_some_facet = false;
    for (const IntVec& h : facets.rays) {
      bool all_tight = true;
      for (const IntVec& g : kgens)
        if (dot(h, g) != 0) {
          all_tight = false;
          break;
        }
      if (all_tight) {
        contained_in_some_facet = true;
        break;
      }
    }
    interiorly = !contained_in_some_facet;
    if (!interiorly) continue;
    if (!is_unimodular_generators(gens)) return false;
  }
  return true;
}

struct Thm42Check {
  bool cracked = false;
  bool full = false;
  bool smooth = false;
  bool consistent() const { return (cracked && full) == smooth; }
};

// Cross-validation of the two fullness routes; the caller decides how to
// surface an inconsistency.
inline Thm42Check thm42_check(const Scaffolding& s, const Fan& sigma) {
  Thm42Check out;
  Polytope target = s.target ? *s.target : scaffolding_hull(s);
  Polytope cracked_side = target.polar_dual();
  out.cracked = is_cracked(cracked_side, sigma).verdict;
  out.full = is_full(s, sigma).full;
  out.smooth = smooth_near_image(s);
  return out;
}

// ---- mutation admissibility ------------------------------------------

// P admits a mutation with respect to (w, F) iff every nonempty slice at a
// negative height a contains a lattice translate of |a| F.
inline bool admits_mutation(const Polytope& p, const IntVec& w, const Polytope& factor) {
  if (!is_primitive(w)) throw domain_error("admits_mutation: weight vector must be primitive");
  for (const RatVec& v : factor.vertices())
    if (dot(w, v) != 0) throw domain_error("admits_mutation: factor must lie in w^perp");
  Rat lo = dot(w, p.vertices()[0]), hi = lo;
  for (const RatVec& v : p.vertices()) {
    lo = std::min(lo, dot(w, v));
    hi = std::max(hi, dot(w, v));
  }
  for (Int a = rat_ceil(lo); a <= rat_floor(hi); ++a) {
    if (a >= 0) continue;
    Int k = -a;
    // shrink each inequality of the slice by the support of k*factor
    std::vector<Facet> hs;
    for (const Facet& f : p.facets()) {
      Rat support = dot(f.normal, factor.vertices()[0]);
      for (const RatVec& v : factor.vertices()) support = std::min(support, dot(f.normal, v));
      Rat shifted = Rat(f.offset) - Rat(k) * support;
      // scale to an integer pair
      Int den = boost::multiprecision::denominator(shifted);
      IntVec n = scale(den, f.normal);
      hs.push_back(Facet{n, Int(boost::multiprecision::numerator(shifted))});
    }
    Polytope room = Polytope::from_halfspaces(hs, {Equation{w, a}}, p.ambient_dim());
    if (room.is_empty()) {
      // nonempty slice with no room for the factor
      Polytope slice = p.intersect({}, {Equation{w, a}});
      if (!slice.is_empty()) return false;
      continue;
    }
    if (room.lattice_points().empty()) {
      Polytope slice = p.intersect({}, {Equation{w, a}});
      if (!slice.is_empty()) return false;
    }
  }
  return true;
}

inline bool scaffolding_mutable(const Scaffolding& s, const IntVec& w, const Polytope& factor) {
  for (const Strut& st : s.struts)
    if (!admits_mutation(strut_polytope(s, st), w, factor)) return false;
  return true;
}

// ---- product scaffoldings --------------------------------------------

// From a valid scaffolding of Q with shape Z' and trivial N_U, the product
// scaffolding of conv{Q, +-e_new} with shape Z' x P1: pulled-back struts
// plus the vertical boundary strut of the P1 factor.
inline Scaffolding product_scaffolding(const Scaffolding& s2d) {
  if (s2d.n_u_dim != 0) throw domain_error("product_scaffolding: input must have trivial N_U");
  Scaffolding out;
  out.shape = shape_product(s2d.shape, shape_projective_space(1));
  out.n_u_dim = 0;
  std::size_t l = s2d.shape.n_rays();
  for (const Strut& st : s2d.struts) {
    IntVec d(l + 2, 0);
    std::copy(st.divisor.begin(), st.divisor.end(), d.begin());
    out.struts.push_back(Strut{d, {}});
  }
  IntVec boundary(l + 2, 0);
  boundary[l] = 1;
  boundary[l + 1] = 1;
  out.struts.push_back(Strut{boundary, {}});
  Polytope base = s2d.target ? *s2d.target : scaffolding_hull(s2d);
  std::vector<RatVec> pts;
  std::size_t d = s2d.shape.fan.dim;
  for (const RatVec& v : base.vertices()) {
    RatVec w(d + 1, Rat(0));
    std::copy(v.begin(), v.end(), w.begin());
    pts.push_back(w);
  }
  RatVec up(d + 1, Rat(0)), down(d + 1, Rat(0));
  up[d] = 1;
  down[d] = -1;
  pts.push_back(up);
  pts.push_back(down);
  out.target = Polytope::from_vertices_rat(pts);
  return out;
}

// The anti-canonical singleton scaffolding of a unimodular reflexive
// polytope: shape = normal fan, one strut carrying the toric boundary.
inline Scaffolding anticanonical_scaffolding(const Polytope& p, const std::string& label = "Z") {
  Scaffolding s;
  s.shape = shape_from_normal_fan(p, label);
  s.n_u_dim = 0;
  s.struts.push_back(Strut{IntVec(s.shape.n_rays(), 1), {}});
  s.target = p;
  return s;
}

}  // namespace latgeo

#pragma once

#include "latgeo/pieces.hpp"
#include "latgeo/cracked.hpp"

#include <functional>

namespace latgeo {

// Wrapping datum attached to one ray (or, for fans with a one-dimensional
// minimal cone, one pole of the lineality line): the heights of the
// piecewise-linear tangent-cone graph over the rays of the star quotient.
struct WrappingDatum {
  IntVec apex;          // v_rho, or +-g for the poles
  std::vector<Int> heights;
};

namespace detail_cls {

// Star of an apex: the quotient data needed to parameterize its tangent
// cone. Quotient coordinates come from the HNF splitting M = Zv + M_rho.
struct Star {
  IntVec apex;
  IntMat to_split;                  // y = U x, apex -> e_1
  IntMat from_split;                // U^{-1}
  std::vector<IntVec> lifts;        // lattice lifts of the quotient rays
  std::vector<Int> lift_heights;    // v-component of each lift in the split
  std::vector<IntVec> qrays;        // primitive quotient rays (dim-1 coords)
  std::vector<std::pair<std::size_t, std::size_t>> qcones;  // quotient max cones
  // wall relations: for each quotient ray tau flanked by (t1, t2):
  // u_{t1} + u_{t2} = lambda * u_tau
  struct Wall {
    std::size_t tau, t1, t2;
    Int lambda;
  };
  std::vector<Wall> walls;
  Int lo_default = -1;  // default lower bound for heights
};

inline IntMat inverse_unimodular(const IntMat& u) {
  std::size_t n = u.rows();
  IntMat inv(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    auto x = solve_rational(u, unit_vector(n, j));
    if (!x || !is_integral(*x)) throw defect_error("inverse_unimodular: not unimodular");
    IntVec xi = to_int_vec(*x);
    for (std::size_t i = 0; i < n; ++i) inv(i, j) = xi[i];
  }
  return inv;
}

// theta point of (star, tau, t): the lattice point where the tangent-cone
// graph meets the lattice over the quotient ray.
inline IntVec theta_point(const Star& st, std::size_t tau, const Int& t) {
  // lift + (1 + t - lift_height) * apex
  return add(st.lifts[tau], scale(1 + t - st.lift_heights[tau], st.apex));
}

// Supporting halfspace <eta, x> <= 1 of the tangent-cone piece over a
// quotient cone (pair of rays), from the apex and two theta points.
inline std::optional<IntVec> graph_halfspace(const Star& st, std::size_t tau1, std::size_t tau2,
                                             const std::vector<Int>& t) {
  IntVec p1 = theta_point(st, tau1, t[tau1]);
  IntVec p2 = theta_point(st, tau2, t[tau2]);
  IntMat m(std::vector<IntVec>{st.apex, p1, p2});
  auto eta = solve_rational(m, {1, 1, 1});
  if (!eta) return std::nullopt;
  // integrality holds because (apex, p1, p2) is a lattice basis when the
  // fan is unimodular; solve anyway and check
  if (!is_integral(*eta)) return std::nullopt;
  return to_int_vec(*eta);
}

inline Star make_star(const IntVec& apex, const std::vector<IntVec>& lifts,
                      const std::vector<std::pair<std::size_t, std::size_t>>& qcones) {
  Star st;
  st.apex = apex;
  std::size_t n = apex.size();
  IntMat vm(std::vector<IntVec>{apex});
  HnfResult h = hnf(vm.transpose());
  if (h.h(0, 0) != 1) throw domain_error("make_star: apex not primitive");
  st.to_split = h.u;  // (U x)_1 is the apex coordinate
  st.from_split = inverse_unimodular(h.u);
  st.lifts = lifts;
  st.qcones = qcones;
  for (const IntVec& w : lifts) {
    IntVec y = matvec(st.to_split, w);
    st.lift_heights.push_back(y[0]);
    st.qrays.push_back(primitive(IntVec(y.begin() + 1, y.end())));
  }
  (void)n;
  // wall relations: each quotient ray tau appears in exactly two cones
  for (std::size_t tau = 0; tau < st.qrays.size(); ++tau) {
    std::vector<std::size_t> nb;
    for (const auto& [a, b] : qcones) {
      if (a == tau) nb.push_back(b);
      if (b == tau) nb.push_back(a);
    }
    if (nb.size() != 2) throw defect_error("make_star: quotient fan is not complete");
    // u_{nb0} + u_{nb1} = lambda u_tau
    IntVec s = add(st.qrays[nb[0]], st.qrays[nb[1]]);
    Int lambda = 0;
    bool found = false;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (st.qrays[tau][i] != 0) {
        lambda = s[i] / st.qrays[tau][i];
        found = true;
        break;
      }
    if (!found || !(scale(lambda, st.qrays[tau]) == s))
      throw defect_error("make_star: wall relation failed (quotient not unimodular?)");
    st.walls.push_back(Star::Wall{tau, nb[0], nb[1], lambda});
  }
  return st;
}

// Star of a genuine ray of a pointed simplicial fan.
inline Star star_of_ray(const Fan& f, std::size_t ri) {
  std::vector<IntVec> lifts;
  std::vector<std::size_t> adjacent;  // sigma ray indices
  std::map<std::size_t, std::size_t> slot;
  std::vector<std::pair<std::size_t, std::size_t>> qcones;
  for (const FanCone& c : f.max_cones) {
    if (std::find(c.rays.begin(), c.rays.end(), ri) == c.rays.end()) continue;
    std::vector<std::size_t> others;
    for (std::size_t r : c.rays)
      if (r != ri) others.push_back(r);
    if (others.size() != 2) throw domain_error("star_of_ray: fan must be simplicial");
    for (std::size_t r : others)
      if (!slot.count(r)) {
        slot[r] = lifts.size();
        lifts.push_back(f.rays[r]);
        adjacent.push_back(r);
      }
    qcones.push_back({slot[others[0]], slot[others[1]]});
  }
  return make_star(f.rays[ri], lifts, qcones);
}

// Upper bounds for heights over a star: concavity against the antipode,
// given pointwise lower bounds.
inline std::vector<Int> height_upper_bounds(const Star& st, const std::vector<Rat>& lo) {
  std::vector<Int> ub(st.qrays.size());
  for (std::size_t tau = 0; tau < st.qrays.size(); ++tau) {
    IntVec anti = negate(st.qrays[tau]);
    // find the quotient cone containing the antipode
    bool done = false;
    for (const auto& [a, b] : st.qcones) {
      IntMat m(std::vector<IntVec>{st.qrays[a], st.qrays[b]});
      auto x = solve_rational(m.transpose(), anti);
      if (!x) continue;
      if ((*x)[0] < 0 || (*x)[1] < 0) continue;
      // H(anti) >= x0 lo_a + x1 lo_b and H(tau) + H(anti) <= 0
      Rat bound = -((*x)[0] * lo[a] + (*x)[1] * lo[b]);
      ub[tau] = rat_floor(bound);
      done = true;
      break;
    }
    if (!done) throw defect_error("height_upper_bounds: antipode not covered");
  }
  return ub;
}

inline bool concave(const Star& st, const std::vector<Int>& t) {
  for (const auto& w : st.walls)
    if (t[w.t1] + t[w.t2] > w.lambda * t[w.tau]) return false;
  return true;
}

}  // namespace detail_cls

// Classifier configuration knobs; the defaults match the built-in runs.
struct ClassifierConfig {
  std::size_t point_cap = 220;    // candidate lattice points per maximal cone
  std::size_t state_cap = 60000;  // hull states per piece search
  int box_cap = 10;               // sup-norm radius cap for candidate points
  std::function<void(const std::string&)> progress;
  std::function<bool(std::size_t)> resume_filter;  // skip completed phi indices
};

// One tangent-cone assignment for the whole fan.
struct RegionPoint {
  std::vector<WrappingDatum> data;
};

struct RegionDescription {
  // option lists per star; the region is the cross-pruned product
  std::vector<std::vector<std::vector<Int>>> per_star_options;
  std::vector<RegionPoint> points;  // materialized (cross-pruned) tuples
  bool lineality_case = false;
};

namespace detail_cls {

struct ClassifierContext {
  Fan sigma;
  bool promoted = false;          // one-dimensional minimal cone
  IntVec g;                       // lineality generator (promoted case)
  std::vector<Star> stars;        // per ray, or the two poles
  std::vector<IntVec> extra_points_in_p;  // lattice points known to lie in P
  // walls carrying panels: pointed case: 2D cones as ray-index pairs;
  // promoted case: one wall per quotient ray
  struct WallRef {
    std::vector<std::size_t> star_slots;  // (star, tau) incidences
    std::vector<std::size_t> star_ids;
    IntVec a, b;  // wall frame: panel coords x*a + y*b (+ poles for promoted)
  };
  std::vector<WallRef> walls;
  std::vector<std::vector<std::size_t>> cone_walls;  // per max cone, wall ids
};

inline ClassifierContext make_context(const Fan& sigma) {
  ClassifierContext ctx;
  ctx.sigma = sigma;
  if (sigma.dim != 3) throw domain_error("classifier: three-dimensional fans only");
  if (sigma.lineality.size() > 1)
    throw domain_error("classifier: minimal cone dimension at most one");
  ctx.promoted = sigma.lineality.size() == 1;
  if (!ctx.promoted) {
    if (!is_unimodular(sigma) || !is_complete(sigma))
      throw domain_error("classifier: fan must be complete and unimodular");
    for (std::size_t r = 0; r < sigma.rays.size(); ++r)
      ctx.stars.push_back(star_of_ray(sigma, r));
    for (const IntVec& r : sigma.rays) ctx.extra_points_in_p.push_back(r);
    // 2D cones: unordered ray pairs appearing in cones
    std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> pairs;
    for (std::size_t ci = 0; ci < sigma.max_cones.size(); ++ci) {
      const auto& rs = sigma.max_cones[ci].rays;
      for (std::size_t i = 0; i < rs.size(); ++i)
        for (std::size_t j = i + 1; j < rs.size(); ++j)
          pairs[{std::min(rs[i], rs[j]), std::max(rs[i], rs[j])}].push_back(ci);
    }
    ctx.cone_walls.assign(sigma.max_cones.size(), {});
    for (const auto& [pr, cones] : pairs) {
      ClassifierContext::WallRef w;
      w.a = sigma.rays[pr.first];
      w.b = sigma.rays[pr.second];
      // theta height slots: in the star of a, the quotient ray towards b
      for (std::size_t side = 0; side < 2; ++side) {
        std::size_t sa = side == 0 ? pr.first : pr.second;
        std::size_t sb = side == 0 ? pr.second : pr.first;
        const Star& st = ctx.stars[sa];
        std::size_t slot = SIZE_MAX;
        for (std::size_t k = 0; k < st.lifts.size(); ++k)
          if (st.lifts[k] == sigma.rays[sb]) slot = k;
        if (slot == SIZE_MAX) throw defect_error("make_context: wall slot not found");
        w.star_ids.push_back(sa);
        w.star_slots.push_back(slot);
      }
      std::size_t wid = ctx.walls.size();
      ctx.walls.push_back(std::move(w));
      for (std::size_t ci : cones) ctx.cone_walls[ci].push_back(wid);
    }
  } else {
    // promoted fan over a 2D shape: the two poles carry the data
    ctx.g = primitive(sigma.lineality[0]);
    if (!is_complete(sigma) || !is_unimodular(sigma))
      throw domain_error("classifier: fan must be complete and unimodular");
    std::vector<IntVec> lifts = sigma.rays;  // ray lifts of the quotient fan
    std::vector<std::pair<std::size_t, std::size_t>> qcones;
    for (const FanCone& c : sigma.max_cones) {
      if (c.rays.size() != 2) throw domain_error("classifier: promoted fan must be simplicial");
      qcones.push_back({c.rays[0], c.rays[1]});
    }
    ctx.stars.push_back(make_star(ctx.g, lifts, qcones));
    ctx.stars.push_back(make_star(negate(ctx.g), lifts, qcones));
    ctx.extra_points_in_p.push_back(ctx.g);
    ctx.extra_points_in_p.push_back(negate(ctx.g));
    ctx.cone_walls.assign(sigma.max_cones.size(), {});
    for (std::size_t tau = 0; tau < sigma.rays.size(); ++tau) {
      ClassifierContext::WallRef w;
      w.a = sigma.rays[tau];
      w.b = ctx.g;
      w.star_ids = {0, 1};
      w.star_slots = {tau, tau};
      ctx.walls.push_back(std::move(w));
    }
    for (std::size_t ci = 0; ci < sigma.max_cones.size(); ++ci)
      for (std::size_t r : sigma.max_cones[ci].rays) ctx.cone_walls[ci].push_back(r);
  }
  return ctx;
}

// All supporting halfspaces <eta, x> <= 1 of the wrapping polyhedron.
inline std::vector<IntVec> wrapping_halfspaces(const ClassifierContext& ctx,
                                               const RegionPoint& phi) {
  std::vector<IntVec> etas;
  for (std::size_t si = 0; si < ctx.stars.size(); ++si) {
    const Star& st = ctx.stars[si];
    for (const auto& [a, b] : st.qcones) {
      auto eta = graph_halfspace(st, a, b, phi.data[si].heights);
      if (!eta) throw defect_error("wrapping_halfspaces: degenerate graph piece");
      etas.push_back(*eta);
    }
  }
  std::sort(etas.begin(), etas.end());
  etas.erase(std::unique(etas.begin(), etas.end()), etas.end());
  return etas;
}

}  // namespace detail_cls

// Step 1: parameterize the candidate tangent-cone data. Options are
// enumerated per star within the concavity region and pruned by the mutual
// containment of the theta points; for promoted fans the shear freedom is
// normalized by pinning the upper-pole heights on a lattice basis of rays.
inline RegionDescription region_lattice_points(const Fan& sigma) {
  using namespace detail_cls;
  RegionDescription out;
  if (sigma.lineality.size() >= 2) {
    // ray-free generalized fan: a single empty datum
    out.lineality_case = true;
    out.points.push_back(RegionPoint{});
    return out;
  }
  ClassifierContext ctx = make_context(sigma);
  std::vector<std::vector<std::vector<Int>>> options(ctx.stars.size());
  if (!ctx.promoted) {
    for (std::size_t si = 0; si < ctx.stars.size(); ++si) {
      const Star& st = ctx.stars[si];
      std::vector<Rat> lo(st.qrays.size());
      for (std::size_t tau = 0; tau < st.qrays.size(); ++tau)
        lo[tau] = Rat(st.lift_heights[tau] - 1);
      std::vector<Int> ub = height_upper_bounds(st, lo);
      std::vector<Int> t(st.qrays.size());
      std::function<void(std::size_t)> rec = [&](std::size_t k) {
        if (k == t.size()) {
          if (concave(st, t)) options[si].push_back(t);
          return;
        }
        for (Int v = rat_ceil(lo[k]); v <= ub[k]; ++v) {
          t[k] = v;
          rec(k + 1);
        }
      };
      rec(0);
    }
  } else {
    // pin the +pole heights to zero on a basis pair of quotient rays
    const Star& plus = ctx.stars[0];
    std::size_t j1 = SIZE_MAX, j2 = SIZE_MAX;
    for (const auto& [a, b] : plus.qcones) {
      j1 = a;
      j2 = b;
      break;
    }
    // bounds for the pinned pole: concavity against zeros
    std::vector<Rat> lo_plus(plus.qrays.size(), Rat(0));
    std::vector<Int> ub_plus = height_upper_bounds(plus, lo_plus);
    // crude but safe lower bound for the pinned pole: the theta pairing
    // forces t+ >= -2 - t- and t- is bounded above by concavity from
    // t- >= -2 - max(t+); iterate once
    Int max_up = 0;
    for (const Int& u : ub_plus) max_up = std::max(max_up, u);
    std::vector<Rat> lo_minus(plus.qrays.size(), Rat(-2 - max_up));
    std::vector<Int> ub_minus = height_upper_bounds(ctx.stars[1], lo_minus);
    Int max_um = 0;
    for (const Int& u : ub_minus) max_um = std::max(max_um, u);
    Int lo_p = -2 - max_um;
    std::vector<Int> t(plus.qrays.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == t.size()) {
        if (concave(plus, t)) options[0].push_back(t);
        return;
      }
      if (k == j1 || k == j2) {
        t[k] = 0;
        rec(k + 1);
        return;
      }
      for (Int v = lo_p; v <= ub_plus[k]; ++v) {
        t[k] = v;
        rec(k + 1);
      }
    };
    rec(0);
    // the lower pole ranges over everything concave and pair-compatible;
    // enumerate in the product step below, here collect the raw range
    std::vector<Int> tm(plus.qrays.size());
    std::function<void(std::size_t)> rec2 = [&](std::size_t k) {
      if (k == tm.size()) {
        if (concave(ctx.stars[1], tm)) options[1].push_back(tm);
        return;
      }
      for (Int v = lo_p; v <= ub_minus[k]; ++v) {
        tm[k] = v;
        rec2(k + 1);
      }
    };
    rec2(0);
  }
  out.per_star_options = options;
  // cross-prune: every theta point and every known lattice point of P must
  // lie inside every tangent cone
  std::vector<std::size_t> pick(ctx.stars.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t si) {
    if (si == ctx.stars.size()) {
      RegionPoint phi;
      for (std::size_t k = 0; k < ctx.stars.size(); ++k)
        phi.data.push_back(WrappingDatum{ctx.stars[k].apex, options[k][pick[k]]});
      out.points.push_back(std::move(phi));
      return;
    }
    for (std::size_t o = 0; o < options[si].size(); ++o) {
      pick[si] = o;
      // check this star's halfspaces against committed theta points and
      // the known points, and its theta points against committed stars
      bool ok = true;
      const Star& st = ctx.stars[si];
      std::vector<IntVec> etas;
      for (const auto& [a, b] : st.qcones) {
        auto eta = graph_halfspace(st, a, b, options[si][o]);
        if (!eta) {
          ok = false;
          break;
        }
        etas.push_back(*eta);
      }
      if (ok) {
        for (const IntVec& eta : etas) {
          for (const IntVec& p : ctx.extra_points_in_p)
            if (dot(eta, p) > 1) {
              ok = false;
              break;
            }
          if (!ok) break;
          for (std::size_t sj = 0; sj < si && ok; ++sj) {
            const Star& other = ctx.stars[sj];
            for (std::size_t tau = 0; tau < other.qrays.size(); ++tau) {
              IntVec q = theta_point(other, tau, options[sj][pick[sj]][tau]);
              if (dot(eta, q) > 1) {
                ok = false;
                break;
              }
            }
          }
          if (!ok) break;
        }
      }
      if (ok) {
        for (std::size_t sj = 0; sj < si && ok; ++sj) {
          const Star& other = ctx.stars[sj];
          for (const auto& [a, b] : other.qcones) {
            auto eta = graph_halfspace(other, a, b, options[sj][pick[sj]]);
            if (!eta) continue;
            for (std::size_t tau = 0; tau < st.qrays.size(); ++tau) {
              IntVec q = theta_point(st, tau, options[si][o][tau]);
              if (dot(*eta, q) > 1) {
                ok = false;
                break;
              }
            }
            if (!ok) break;
          }
        }
      }
      if (ok) rec(si + 1);
    }
  };
  if (!options.empty()) rec(0);
  return out;
}

// Step 2: orbit representatives under the lattice automorphisms of the fan.
inline std::vector<RegionPoint> symmetry_reduce(const std::vector<RegionPoint>& points,
                                                const Fan& sigma) {
  using namespace detail_cls;
  if (sigma.lineality.size() >= 2) return points;
  ClassifierContext ctx = make_context(sigma);
  std::vector<IntMat> aut;
  if (!ctx.promoted) {
    aut = fan_automorphisms(sigma);
  } else {
    // automorphisms of the quotient fan lifted trivially, times the pole flip
    Fan q = quotient_fan(sigma);
    std::vector<IntMat> qa = fan_automorphisms(q);
    for (const IntMat& a : qa)
      for (int flip : {1, -1}) {
        IntMat m(3, 3);
        for (std::size_t i = 0; i < 2; ++i)
          for (std::size_t j = 0; j < 2; ++j) m(i, j) = a(i, j);
        m(2, 2) = flip;
        aut.push_back(m);
      }
  }
  // the geometric theta-point set identifies the tangent-cone data; orbits
  // are deduplicated by the canonical (minimal) image over the group, on
  // machine integers since all coordinates are tiny
  std::vector<std::array<std::array<long long, 3>, 3>> mats;
  for (const IntMat& m : aut) {
    std::array<std::array<long long, 3>, 3> a{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] = static_cast<long long>(m(i, j));
    mats.push_back(a);
  }
  auto canonical = [&](const RegionPoint& phi) {
    std::vector<std::array<long long, 3>> pts;
    for (std::size_t si = 0; si < ctx.stars.size(); ++si)
      for (std::size_t tau = 0; tau < ctx.stars[si].qrays.size(); ++tau) {
        IntVec q = theta_point(ctx.stars[si], tau, phi.data[si].heights[tau]);
        pts.push_back({static_cast<long long>(q[0]), static_cast<long long>(q[1]),
                       static_cast<long long>(q[2])});
      }
    std::vector<std::array<long long, 3>> best;
    for (const auto& m : mats) {
      std::vector<std::array<long long, 3>> img;
      img.reserve(pts.size());
      for (const auto& p : pts) {
        std::array<long long, 3> q{};
        for (int i = 0; i < 3; ++i) q[i] = m[i][0] * p[0] + m[i][1] * p[1] + m[i][2] * p[2];
        img.push_back(q);
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = std::move(img);
    }
    return best;
  };
  std::set<std::vector<std::array<long long, 3>>> seen;
  std::vector<RegionPoint> reps;
  for (const RegionPoint& phi : points)
    if (seen.insert(canonical(phi)).second) reps.push_back(phi);
  return reps;
}

namespace detail_cls {

// Signals a region point abandoned because a configured search cap was hit;
// the classification stays sound and the skip is reported.
struct search_cap_hit : std::runtime_error {
  explicit search_cap_hit(const std::string& what) : std::runtime_error(what) {}
};

// Lattice points of one maximal cone inside the wrapping polyhedron,
// collected shell by shell in the sup-norm.
inline std::vector<IntVec> cone_candidates(const ClassifierContext& ctx, std::size_t ci,
                                           const std::vector<IntVec>& etas,
                                           const ClassifierConfig& cfg) {
  const FanCone& cone = ctx.sigma.max_cones[ci];
  std::vector<IntVec> cand;
  for (int radius = 0; radius <= cfg.box_cap; ++radius) {
    bool any = false;
    for (Int x = -radius; x <= radius; ++x)
      for (Int y = -radius; y <= radius; ++y)
        for (Int z = -radius; z <= radius; ++z) {
          Int m = std::max({boost::multiprecision::abs(x), boost::multiprecision::abs(y),
                            boost::multiprecision::abs(z)});
          if (m != radius) continue;
          IntVec p{x, y, z};
          bool in = true;
          for (const IntVec& h : cone.halfspaces)
            if (dot(h, p) < 0) {
              in = false;
              break;
            }
          if (in)
            for (const IntVec& eta : etas)
              if (dot(eta, p) > 1) {
                in = false;
                break;
              }
          if (!in) continue;
          any = true;
          cand.push_back(p);
        }
    if (!any && radius > 1) break;
    if (cand.size() > cfg.point_cap)
      throw search_cap_hit("candidate region exceeds the point cap");
  }
  return cand;
}

// Wall face of a piece: the vertices on the wall plane, as a sorted set.
using WallFace = std::vector<RatVec>;

struct ConePieces {
  // wall-face tuple (ordered by the cone's wall list) -> pieces
  std::map<std::vector<WallFace>, std::vector<Polytope>> buckets;
};

// All pieces of the expected type inside one maximal cone and the wrapping
// region, found by growing hulls from the base the cone forces (the origin
// with the primitive generators, or the lineality edge), and bucketed by
// their wall faces. Wall faces must be two-dimensional and meet the
// wrapping boundary in an edge.
inline ConePieces enumerate_cone_pieces(const ClassifierContext& ctx, std::size_t ci,
                                        const std::vector<IntVec>& etas,
                                        const ClassifierConfig& cfg) {
  const FanCone& cone = ctx.sigma.max_cones[ci];
  std::vector<IntVec> cand = cone_candidates(ctx, ci, etas, cfg);
  std::vector<IntVec> base_pts;
  std::size_t expected_type;
  if (!ctx.promoted) {
    base_pts.push_back(IntVec(3, 0));
    for (std::size_t r : cone.rays) base_pts.push_back(ctx.sigma.rays[r]);
    expected_type = 3;
  } else {
    base_pts.push_back(ctx.g);
    base_pts.push_back(negate(ctx.g));
    expected_type = 2;
  }
  // wall planes of this cone: the halfspaces vanishing on each wall
  std::vector<IntVec> wall_normals;
  for (std::size_t wid : ctx.cone_walls[ci]) {
    const auto& w = ctx.walls[wid];
    IntMat m(std::vector<IntVec>{w.a, w.b});
    IntMat k = kernel_basis(m);
    IntVec n = k.row(0);
    // orient into the cone
    for (std::size_t r : cone.rays)
      if (dot(n, ctx.sigma.rays[r]) < 0) {
        n = negate(n);
        break;
      }
    if (ctx.promoted) {
      // orient against the other ray of the cone
      for (std::size_t r : cone.rays)
        if (dot(n, ctx.sigma.rays[r]) < 0) n = negate(n);
    }
    wall_normals.push_back(n);
  }
  auto wall_face_of = [&](const Polytope& piece, std::size_t k) -> std::optional<WallFace> {
    WallFace f;
    for (const RatVec& v : piece.vertices())
      if (dot(wall_normals[k], v) == 0) f.push_back(v);
    if (f.size() < 3) return std::nullopt;
    std::sort(f.begin(), f.end());
    // the face must be two-dimensional
    std::vector<RatVec> pts = f;
    if (Polytope::from_vertices_rat(pts).dim() != 2) return std::nullopt;
    return f;
  };
  auto face_touches_boundary = [&](const WallFace& f) {
    // some edge of the face away from the minimal cone lies in a wrapping
    // facet plane
    for (std::size_t i = 0; i < f.size(); ++i)
      for (std::size_t j = i + 1; j < f.size(); ++j)
        for (const IntVec& eta : etas)
          if (dot(eta, f[i]) == 1 && dot(eta, f[j]) == 1) return true;
    return false;
  };
  Polytope base = Polytope::from_vertices(base_pts);
  std::set<std::vector<RatVec>> seen{base.vertices()};
  std::vector<Polytope> queue{base};
  ConePieces out;
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    if (queue.size() > cfg.state_cap) throw search_cap_hit("piece search exceeds the state cap");
    Polytope cur = queue[qi];
    if (cur.dim() == 3 && is_piece(cur) && piece_type(cur) == expected_type) {
      std::vector<WallFace> key;
      bool good = true;
      for (std::size_t k = 0; k < wall_normals.size() && good; ++k) {
        auto f = wall_face_of(cur, k);
        if (!f || !face_touches_boundary(*f))
          good = false;
        else
          key.push_back(*f);
      }
      if (good) out.buckets[key].push_back(cur);
    }
    for (const IntVec& p : cand) {
      if (cur.contains(p)) continue;
      std::vector<RatVec> pts = cur.vertices();
      pts.push_back(to_rat_vec(p));
      Polytope nxt = Polytope::from_vertices_rat(pts);
      if (!seen.insert(nxt.vertices()).second) continue;
      bool ok = true;
      for (const IntVec& q : nxt.interior_lattice_points())
        if (!is_zero(q)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      queue.push_back(std::move(nxt));
    }
  }
  return out;
}

}  // namespace detail_cls

// Steps 3-5 for one region point: enumerate the pieces of every maximal
// cone, match them along shared wall faces, and emit every union that is a
// convex reflexive polytope cracked along the fan.
inline std::vector<Polytope> assemble_for_phi(const detail_cls::ClassifierContext& ctx,
                                              const RegionPoint& phi,
                                              const ClassifierConfig& cfg) {
  using namespace detail_cls;
  std::vector<IntVec> etas = wrapping_halfspaces(ctx, phi);
  std::vector<ConePieces> per_cone;
  for (std::size_t ci = 0; ci < ctx.sigma.max_cones.size(); ++ci) {
    per_cone.push_back(enumerate_cone_pieces(ctx, ci, etas, cfg));
    if (per_cone.back().buckets.empty()) return {};
  }
  // assembly: assign a face to every wall consistently, then pieces
  std::vector<Polytope> results;
  std::map<std::size_t, WallFace> wall_assignment;
  // iterate cones in order; for each, loop over buckets consistent with
  // already-assigned walls
  std::function<void(std::size_t, std::vector<const Polytope*>&)> rec =
      [&](std::size_t ci, std::vector<const Polytope*>& chosen) {
        if (ci == per_cone.size()) {
          std::vector<RatVec> pts;
          for (const Polytope* piece : chosen)
            pts.insert(pts.end(), piece->vertices().begin(), piece->vertices().end());
          Polytope un = Polytope::from_vertices_rat(pts);
          for (std::size_t k = 0; k < chosen.size(); ++k) {
            std::vector<Facet> hs;
            for (const IntVec& h : ctx.sigma.max_cones[k].halfspaces) hs.push_back(Facet{h, 0});
            Polytope section = un.intersect(hs);
            if (!(section.vertices() == chosen[k]->vertices())) return;
          }
          if (!un.is_reflexive()) return;
          if (!is_cracked(un, ctx.sigma).verdict) return;
          results.push_back(un);
          return;
        }
        const auto& walls = ctx.cone_walls[ci];
        for (const auto& [key, pieces] : per_cone[ci].buckets) {
          bool compatible = true;
          for (std::size_t k = 0; k < walls.size(); ++k) {
            auto it = wall_assignment.find(walls[k]);
            if (it != wall_assignment.end() && !(it->second == key[k])) {
              compatible = false;
              break;
            }
          }
          if (!compatible) continue;
          std::vector<std::size_t> added;
          for (std::size_t k = 0; k < walls.size(); ++k)
            if (!wall_assignment.count(walls[k])) {
              wall_assignment.emplace(walls[k], key[k]);
              added.push_back(walls[k]);
            }
          for (const Polytope& piece : pieces) {
            chosen.push_back(&piece);
            rec(ci + 1, chosen);
            chosen.pop_back();
          }
          for (std::size_t w : added) wall_assignment.erase(w);
        }
      };
  std::vector<const Polytope*> chosen;
  rec(0, chosen);
  return results;
}

struct ClassificationResult {
  std::vector<Polytope> polytopes;  // one representative per normal form
  std::vector<NormalFormKey> keys;
  std::vector<std::string> skipped;  // region points abandoned at a search cap
};

// The classification of polytopes cracked along a fan whose minimal cone
// has dimension at most one. Fans with a two-dimensional minimal cone
// (shape P^1) are handled by the cracked-in-half search over a reflexive
// database and are rejected here.
inline ClassificationResult classify_cracked(const Fan& sigma, ClassifierConfig cfg = {}) {
  using namespace detail_cls;
  if (sigma.lineality.size() >= 2)
    throw domain_error(
        "classify_cracked: use the cracked-in-half search for shape P1 (database required)");
  ClassifierContext ctx = make_context(sigma);
  RegionDescription region = region_lattice_points(sigma);
  std::vector<RegionPoint> reps = symmetry_reduce(region.points, sigma);
  if (cfg.progress)
    cfg.progress("region points: " + std::to_string(region.points.size()) +
                 ", orbit representatives: " + std::to_string(reps.size()));
  ClassificationResult out;
  std::map<NormalFormKey, Polytope> found;
  for (std::size_t i = 0; i < reps.size(); ++i) {
    if (cfg.resume_filter && !cfg.resume_filter(i)) continue;
    try {
      for (Polytope& p : assemble_for_phi(ctx, reps[i], cfg))
        found.emplace(normal_form(p, NormalFormMode::linear), p);
    } catch (const search_cap_hit& e) {
      out.skipped.push_back("region point " + std::to_string(i) + ": " + e.what());
    }
    if (cfg.progress && (i + 1) % 25 == 0)
      cfg.progress("processed " + std::to_string(i + 1) + "/" + std::to_string(reps.size()) +
                   " region points, " + std::to_string(found.size()) + " polytopes");
  }
  for (auto& [k, p] : found) {
    out.keys.push_back(k);
    out.polytopes.push_back(p);
  }
  return out;
}

}  // namespace latgeo

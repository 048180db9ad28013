#pragma once

#include "latgeo/intmat.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

namespace latgeo {

// Double description of a polyhedral cone {x : <n, x> >= 0 for n in normals}.
// `rays` are primitive generators of the extreme rays of the pointed part,
// `lineality` a lattice basis of the maximal linear subspace.
struct ConeDD {
  std::vector<IntVec> rays;
  std::vector<IntVec> lineality;
};

namespace detail {

struct DDRay {
  IntVec v;
  std::vector<std::uint64_t> tight;  // bitset over constraint indices
};

inline void set_bit(std::vector<std::uint64_t>& bs, std::size_t i) {
  bs[i >> 6] |= (std::uint64_t(1) << (i & 63));
}

inline std::vector<std::uint64_t> bit_and(const std::vector<std::uint64_t>& a,
                                          const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] & b[i];
  return r;
}

inline bool bit_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

// The tight set of a ray is a function of its vector, so value-level
// deduplication may keep either copy.
inline void dedup_rays(std::vector<DDRay>& rays) {
  std::sort(rays.begin(), rays.end(), [](const DDRay& a, const DDRay& b) { return a.v < b.v; });
  rays.erase(std::unique(rays.begin(), rays.end(),
                         [](const DDRay& a, const DDRay& b) { return a.v == b.v; }),
             rays.end());
}

}  // namespace detail

// Motzkin-style incremental double description. Maintains the invariant
// that `rays` are exactly the extreme rays of the intersection of the
// processed halfspaces modulo the current lineality.
inline ConeDD dual_description(const std::vector<IntVec>& normals, std::size_t dim) {
  using detail::DDRay;
  std::size_t words = (normals.size() + 64) / 64;
  std::vector<IntVec> lineality;
  for (std::size_t i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
  std::vector<DDRay> rays;

  for (std::size_t k = 0; k < normals.size(); ++k) {
    const IntVec& n = normals[k];
    if (n.size() != dim) throw domain_error("dual_description: normal dimension mismatch");

    // Case 1: the constraint cuts the lineality space.
    std::size_t hit = SIZE_MAX;
    for (std::size_t i = 0; i < lineality.size(); ++i)
      if (dot(n, lineality[i]) != 0) {
        hit = i;
        break;
      }
    if (hit != SIZE_MAX) {
      IntVec l0 = lineality[hit];
      Int d0 = dot(n, l0);
      if (d0 < 0) {
        l0 = negate(l0);
        d0 = -d0;
      }
      std::vector<IntVec> new_lin;
      for (std::size_t i = 0; i < lineality.size(); ++i) {
        if (i == hit) continue;
        Int di = dot(n, lineality[i]);
        new_lin.push_back(primitive(lincomb(d0, lineality[i], -di, l0)));
      }
      lineality = std::move(new_lin);
      for (DDRay& r : rays) {
        Int dr = dot(n, r.v);
        if (dr != 0) r.v = primitive(lincomb(d0, r.v, -dr, l0));
        detail::set_bit(r.tight, k);
      }
      DDRay nr;
      nr.v = primitive(l0);
      // l0 sat inside every previously processed hyperplane
      nr.tight.assign(words, 0);
      for (std::size_t j = 0; j < k; ++j) detail::set_bit(nr.tight, j);
      rays.push_back(std::move(nr));
      detail::dedup_rays(rays);
      continue;
    }

    // Case 2: lineality is inside the hyperplane; split the rays.
    std::vector<DDRay> pos, zero, neg;
    std::vector<Int> vals(rays.size());
    for (std::size_t i = 0; i < rays.size(); ++i) {
      vals[i] = dot(n, rays[i].v);
      if (vals[i] > 0)
        pos.push_back(rays[i]);
      else if (vals[i] == 0) {
        DDRay z = rays[i];
        detail::set_bit(z.tight, k);
        zero.push_back(std::move(z));
      } else
        neg.push_back(rays[i]);
    }
    if (neg.empty()) {
      rays = pos;
      for (auto& z : zero) rays.push_back(std::move(z));
      continue;
    }
    std::vector<DDRay> next = pos;
    for (auto& z : zero) next.push_back(z);
    for (const DDRay& p : pos) {
      for (const DDRay& q : neg) {
        auto t = detail::bit_and(p.tight, q.tight);
        // adjacency: no third ray is tight on everything p and q share
        bool adjacent = true;
        for (const DDRay& r : rays) {
          if (r.v == p.v || r.v == q.v) continue;
          if (detail::bit_subset(t, r.tight)) {
            adjacent = false;
            break;
          }
        }
        if (!adjacent) continue;
        Int dp = dot(n, p.v), dq = dot(n, q.v);
        DDRay w;
        w.v = primitive(lincomb(dp, q.v, -dq, p.v));
        if (is_zero(w.v)) continue;
        w.tight = t;
        detail::set_bit(w.tight, k);
        next.push_back(std::move(w));
      }
    }
    detail::dedup_rays(next);
    rays = std::move(next);
  }

  ConeDD out;
  for (DDRay& r : rays) out.rays.push_back(std::move(r.v));
  out.lineality = std::move(lineality);
  std::sort(out.rays.begin(), out.rays.end());
  out.rays.erase(std::unique(out.rays.begin(), out.rays.end()), out.rays.end());
  return out;
}

// Facet normals of the cone generated by `gens` (+- lin for lin in
// `lineality`): the extreme rays of the dual cone, modulo its lineality.
// The returned `rays` are inner facet normals; `lineality` spans the
// annihilator of the cone's span (the "equations").
inline ConeDD cone_facets(const std::vector<IntVec>& gens, const std::vector<IntVec>& lineality,
                          std::size_t dim) {
  std::vector<IntVec> normals = gens;
  for (const IntVec& l : lineality) {
    normals.push_back(l);
    normals.push_back(negate(l));
  }
  return dual_description(normals, dim);
}

}  // namespace latgeo

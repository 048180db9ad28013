#pragma once

#include "latgeo/polytope.hpp"

#include <functional>
#include <string>

namespace latgeo {

enum class NormalFormMode { linear, affine };

// Canonical byte key identifying a polytope up to GL(n,Z) (linear mode) or
// up to GL(n,Z) and lattice translations (affine mode).
struct NormalFormKey {
  std::string bytes;
  bool operator==(const NormalFormKey& o) const { return bytes == o.bytes; }
  bool operator!=(const NormalFormKey& o) const { return bytes != o.bytes; }
  bool operator<(const NormalFormKey& o) const { return bytes < o.bytes; }
};

namespace detail {

// Canonicalize the facet-vertex pairing matrix under independent row and
// column permutations (maximize lexicographically, PALP-style), collecting
// every column order that achieves the canonical matrix.
class PairingCanon {
 public:
  PairingCanon(const std::vector<IntVec>& pm, std::size_t cap) : pm_(pm), cap_(cap) {
    nrows_ = pm.size();
    ncols_ = nrows_ ? pm[0].size() : 0;
  }

  std::vector<std::vector<std::size_t>> run() {
    std::vector<std::size_t> blocks_cols(ncols_);
    for (std::size_t j = 0; j < ncols_; ++j) blocks_cols[j] = j;
    std::vector<std::vector<std::size_t>> blocks{blocks_cols};
    if (ncols_ == 0) return {{}};
    std::vector<bool> used(nrows_, false);
    best_.clear();
    recurse(blocks, used, 0);
    return leaves_;
  }

 private:
  using Blocks = std::vector<std::vector<std::size_t>>;

  // signature of row r under current blocks: per block the values sorted
  // descending
  std::vector<Int> signature(std::size_t r, const Blocks& blocks) const {
    std::vector<Int> sig;
    for (const auto& b : blocks) {
      std::vector<Int> vals;
      for (std::size_t c : b) vals.push_back(pm_[r][c]);
      std::sort(vals.begin(), vals.end(), std::greater<Int>());
      sig.insert(sig.end(), vals.begin(), vals.end());
    }
    return sig;
  }

  static Blocks refine(const Blocks& blocks, const IntVec& row) {
    Blocks out;
    for (const auto& b : blocks) {
      std::vector<std::size_t> cols = b;
      std::stable_sort(cols.begin(), cols.end(), [&](std::size_t x, std::size_t y) {
        return row[x] > row[y];
      });
      std::size_t i = 0;
      while (i < cols.size()) {
        std::size_t j = i;
        while (j < cols.size() && row[cols[j]] == row[cols[i]]) ++j;
        out.emplace_back(cols.begin() + i, cols.begin() + j);
        i = j;
      }
    }
    return out;
  }

  void recurse(const Blocks& blocks, std::vector<bool>& used, std::size_t depth) {
    if (depth == nrows_) {
      emit(blocks);
      return;
    }
    std::vector<Int> best_sig;
    std::vector<std::size_t> cands;
    for (std::size_t r = 0; r < nrows_; ++r) {
      if (used[r]) continue;
      std::vector<Int> sig = signature(r, blocks);
      if (cands.empty() || sig > best_sig) {
        best_sig = sig;
        cands.assign(1, r);
      } else if (sig == best_sig) {
        cands.push_back(r);
      }
    }
    // global pruning: the canonical matrix is the row-wise maximum, so the
    // chosen prefix of row signatures must match the best seen so far
    if (depth < best_.size()) {
      if (best_sig < best_[depth]) return;
      if (best_sig > best_[depth]) {
        best_.resize(depth);
        leaves_.clear();
      }
    }
    if (depth == best_.size()) best_.push_back(best_sig);
    for (std::size_t r : cands) {
      used[r] = true;
      recurse(refine(blocks, pm_[r]), used, depth + 1);
      used[r] = false;
      if (leaves_.size() > cap_) throw defect_error("pairing canonicalization: too many branches");
    }
  }

  void emit(const Blocks& blocks) {
    // enumerate column orders over residual blocks (identical columns)
    std::vector<std::size_t> order;
    std::vector<const std::vector<std::size_t>*> multi;
    for (const auto& b : blocks)
      if (b.size() > 1) multi.push_back(&b);
    if (multi.empty()) {
      for (const auto& b : blocks) order.insert(order.end(), b.begin(), b.end());
      leaves_.push_back(order);
      return;
    }
    // identical columns across every row: any order achieves the canonical
    // matrix; enumerate block permutations
    std::vector<std::vector<std::size_t>> partial{{}};
    for (const auto& b : blocks) {
      std::vector<std::size_t> cols = b;
      std::sort(cols.begin(), cols.end());
      std::vector<std::vector<std::size_t>> next;
      do {
        for (const auto& pre : partial) {
          std::vector<std::size_t> ext = pre;
          ext.insert(ext.end(), cols.begin(), cols.end());
          next.push_back(std::move(ext));
        }
      } while (std::next_permutation(cols.begin(), cols.end()) && next.size() <= cap_);
      partial = std::move(next);
      if (partial.size() > cap_) throw defect_error("pairing canonicalization: column blow-up");
    }
    leaves_.insert(leaves_.end(), partial.begin(), partial.end());
  }

  const std::vector<IntVec>& pm_;
  std::size_t nrows_, ncols_, cap_;
  std::vector<std::vector<Int>> best_;
  std::vector<std::vector<std::size_t>> leaves_;
};

inline std::string serialize_matrix(const IntMat& m) {
  std::string s = std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ":";
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      s += m(i, j).str();
      s += ",";
    }
  return s;
}

}  // namespace detail

// PALP-style normal form: canonicalize the vertex-facet pairing matrix over
// permutations, then reduce the vertex matrix by a row-style HNF; the key is
// the maximum over the achieving column orders.
inline NormalFormKey normal_form(const Polytope& p, NormalFormMode mode) {
  if (p.is_empty()) return NormalFormKey{"empty"};
  if (!p.full_dimensional()) throw domain_error("normal_form: polytope not full-dimensional");
  if (!p.is_lattice()) throw domain_error("normal_form: non-lattice polytope");
  std::vector<IntVec> vs = p.lattice_vertices();
  std::size_t d = p.ambient_dim(), m = vs.size();
  std::vector<IntVec> pm(p.facets().size(), IntVec(m));
  for (std::size_t i = 0; i < p.facets().size(); ++i)
    for (std::size_t j = 0; j < m; ++j) {
      pm[i][j] = dot(p.facets()[i].normal, vs[j]);
      if (mode == NormalFormMode::affine) pm[i][j] -= p.facets()[i].offset;
    }
  detail::PairingCanon canon(pm, 40000);
  auto orders = canon.run();
  std::optional<IntMat> best;
  std::string best_ser;
  for (const auto& ord : orders) {
    IntMat v(d, m);
    for (std::size_t j = 0; j < m; ++j) {
      IntVec col = vs[ord[j]];
      if (mode == NormalFormMode::affine) col = sub(col, vs[ord[0]]);
      for (std::size_t i = 0; i < d; ++i) v(i, j) = col[i];
    }
    IntMat h = hnf(v).h;
    std::string ser = detail::serialize_matrix(h);
    if (!best || ser > best_ser) {
      best = h;
      best_ser = ser;
    }
  }
  return NormalFormKey{(mode == NormalFormMode::affine ? "A|" : "L|") + best_ser};
}

// Normal form for possibly lower-dimensional lattice polytopes, computed in
// the lattice of the affine hull. Linear mode requires the hull to pass
// through the origin and fixes it.
inline NormalFormKey normal_form_any_dim(const Polytope& p, NormalFormMode mode) {
  if (p.is_empty()) return NormalFormKey{"empty"};
  if (p.full_dimensional()) return normal_form(p, mode);
  std::optional<IntVec> base;
  if (mode == NormalFormMode::linear) {
    IntVec zero(p.ambient_dim(), 0);
    if (!p.contains(zero)) throw domain_error("normal_form_any_dim: linear mode needs 0 in hull");
    base = zero;
  }
  AffineLatticeChart ch = project_to_affine_lattice(p, base);
  NormalFormKey k = normal_form(ch.projected, mode);
  k.bytes = "dim" + std::to_string(ch.projected.ambient_dim()) + "|" + k.bytes;
  return k;
}

}  // namespace latgeo

#pragma once

#include "latgeo/scaffolding.hpp"

namespace latgeo {

// GIT presentation of the ambient toric variety: weight data R, stability
// condition omega and the irrelevant monomial index sets.
struct WeightPresentation {
  IntMat r;                                        // rows: Pic rank, columns in ambient order
  IntVec omega;
  std::vector<std::vector<std::size_t>> irrelevant;
  std::vector<std::string> column_labels;
  std::size_t n_strut_cols = 0, n_u_cols = 0, n_div_cols = 0;
  bool augmented_basis = false;
};

namespace detail {

inline bool cone_membership(const std::vector<IntVec>& gens, const IntVec& x, std::size_t dim) {
  Cone c = make_cone(gens, {}, dim);
  return c.contains(x);
}

}  // namespace detail

// Construction of the weight matrix from the echelon ray matrix: row i of
// R reads (e_i | -chi_i | D_i) over the column blocks [struts | N_U | Div],
// and omega is the sum of the strut columns of R.
inline WeightPresentation weights(const Scaffolding& s, bool strict_basis = false) {
  AmbientColumns cols = ambient_columns(s, strict_basis);
  std::size_t r = cols.n_strut, u = cols.n_u, l = cols.n_div;
  WeightPresentation wp;
  wp.column_labels = cols.labels;
  wp.n_strut_cols = r;
  wp.n_u_cols = u;
  wp.n_div_cols = l;
  wp.augmented_basis = cols.augmented;
  wp.r = IntMat(r, r + u + l);
  for (std::size_t i = 0; i < r; ++i) {
    const IntVec& ray = cols.rays[i];  // (-D_i, chi_i)
    wp.r(i, i) = 1;
    for (std::size_t j = 0; j < u; ++j) wp.r(i, r + j) = -ray[l + j];
    for (std::size_t j = 0; j < l; ++j) wp.r(i, r + u + j) = -ray[j];
  }
  // stability condition: the class of the sum of the rays coming from
  // elements of S, including the basis struts
  wp.omega.assign(r, 1);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < u; ++j) wp.omega[i] += wp.r(i, r + j);
  // irrelevant locus: minimal column subsets whose weight cone contains omega
  std::size_t ncols = r + u + l;
  std::vector<std::vector<std::size_t>> minimal;
  std::vector<std::size_t> subset;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t start, std::size_t depth) {
    if (depth == 0) return;
    for (std::size_t j = start; j < ncols; ++j) {
      subset.push_back(j);
      bool dominated = false;
      for (const auto& m : minimal)
        if (std::includes(subset.begin(), subset.end(), m.begin(), m.end())) {
          dominated = true;
          break;
        }
      if (!dominated) {
        std::vector<IntVec> gens;
        for (std::size_t c : subset) gens.push_back(wp.r.col(c));
        if (detail::cone_membership(gens, wp.omega, r))
          minimal.push_back(subset);
        else
          rec(j + 1, depth - 1);
      }
      subset.pop_back();
    }
  };
  rec(0, r == 0 ? 0 : r);
  // branch order can record a superset before its minimal subset is found
  std::vector<std::vector<std::size_t>> filtered;
  for (const auto& m : minimal) {
    bool keep = true;
    for (const auto& m2 : minimal)
      if (m2 != m && std::includes(m.begin(), m.end(), m2.begin(), m2.end())) {
        keep = false;
        break;
      }
    if (keep) filtered.push_back(m);
  }
  std::sort(filtered.begin(), filtered.end());
  wp.irrelevant = std::move(filtered);
  return wp;
}

// A binomial z^{m1} - z^{m2} in the homogeneous coordinates of Y_S;
// exponents are indexed by the ambient column order.
struct BinomialEquation {
  IntVec m1, m2;
  IntVec degree;  // class in Pic, R*m1 = R*m2

  std::string to_string(const std::vector<std::string>& vars) const {
    auto half = [&](const IntVec& m) {
      std::string out;
      bool first = true;
      for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] == 0) continue;
        if (!first) out += "*";
        out += vars[j];
        if (m[j] != 1) out += "^" + m[j].str();
        first = false;
      }
      return first ? std::string("1") : out;
    };
    return half(m1) + " - " + half(m2);
  }
};

// One binomial per projective-space factor: m1 is the sum of the divisor
// columns of the factor, m2 the unique lift of its class to the strut
// block.
inline std::vector<BinomialEquation> binomials_product_shape(const Scaffolding& s,
                                                             bool strict_basis = false) {
  if (!s.shape.product_of_projective_spaces)
    throw domain_error("binomials_product_shape: shape is not a product of projective spaces");
  WeightPresentation wp = weights(s, strict_basis);
  std::size_t r = wp.n_strut_cols, u = wp.n_u_cols, l = wp.n_div_cols;
  std::vector<BinomialEquation> out;
  for (const auto& block : s.shape.factors) {
    BinomialEquation eq;
    eq.m1.assign(r + u + l, 0);
    eq.m2.assign(r + u + l, 0);
    eq.degree.assign(r, 0);
    for (std::size_t ray : block) {
      eq.m1[r + u + ray] = 1;
      for (std::size_t i = 0; i < r; ++i) eq.degree[i] += wp.r(i, r + u + ray);
    }
    for (std::size_t i = 0; i < r; ++i) {
      if (eq.degree[i] < 0)
        throw defect_error("binomials_product_shape: factor class is not effective");
      eq.m2[i] = eq.degree[i];
    }
    out.push_back(std::move(eq));
  }
  return out;
}

// General path: each basis covector of the annihilator of the image of
// theta defines a height function h on the ray generators; the binomial
// splits h into its positive and negative parts (absolute values in the
// negative part).
inline std::vector<BinomialEquation> binomials_general(const Scaffolding& s,
                                                       bool strict_basis = false) {
  AmbientColumns cols = ambient_columns(s, strict_basis);
  WeightPresentation wp = weights(s, strict_basis);
  IntMat theta = theta_matrix(s, cols.nu_basis);
  IntMat ann = kernel_basis(theta.transpose());
  std::size_t l = s.shape.n_rays(), u = s.n_u_dim;
  std::size_t r = cols.n_strut;
  std::vector<BinomialEquation> out;
  for (std::size_t i = 0; i < ann.rows(); ++i) {
    IntVec cov = ann.row(i);
    BinomialEquation eq;
    eq.m1.assign(cols.rays.size(), 0);
    eq.m2.assign(cols.rays.size(), 0);
    for (std::size_t j = 0; j < cols.rays.size(); ++j) {
      Int h = dot(cov, cols.rays[j]);
      if (h > 0)
        eq.m1[j] = h;
      else if (h < 0)
        eq.m2[j] = -h;
    }
    auto support = [](const IntVec& m) {
      std::size_t n = 0;
      for (const Int& x : m)
        if (x != 0) ++n;
      return n;
    };
    if (support(eq.m1) < support(eq.m2) ||
        (support(eq.m1) == support(eq.m2) && eq.m1 < eq.m2))
      std::swap(eq.m1, eq.m2);
    eq.degree.assign(r, 0);
    for (std::size_t i2 = 0; i2 < r; ++i2)
      for (std::size_t j = 0; j < cols.rays.size(); ++j) eq.degree[i2] += wp.r(i2, j) * eq.m1[j];
    // homogeneity check against the weight data
    for (std::size_t i2 = 0; i2 < r; ++i2) {
      Int d2 = 0;
      for (std::size_t j = 0; j < cols.rays.size(); ++j) d2 += wp.r(i2, j) * eq.m2[j];
      if (d2 != eq.degree[i2]) throw defect_error("binomials_general: inhomogeneous binomial");
    }
    out.push_back(std::move(eq));
  }
  (void)l;
  (void)u;
  return out;
}

// Exponent lattice spanned by the differences m1 - m2, in HNF row form;
// two generating sets cut the same lattice ideal iff these agree.
inline IntMat exponent_lattice(const std::vector<BinomialEquation>& eqs, std::size_t ncols) {
  IntMat m(0, ncols);
  for (const BinomialEquation& e : eqs) m.append_row(sub(e.m1, e.m2));
  return row_lattice_normal_form(m);
}

// Two weight presentations agree up to within-block column permutation and
// simultaneous relabelling of the Pic basis (row permutation applied to R
// and omega together).
inline bool weights_equivalent(const WeightPresentation& a, const WeightPresentation& b) {
  if (a.r.rows() != b.r.rows() || a.r.cols() != b.r.cols()) return false;
  if (a.n_strut_cols != b.n_strut_cols || a.n_u_cols != b.n_u_cols ||
      a.n_div_cols != b.n_div_cols)
    return false;
  std::vector<std::size_t> rowperm(a.r.rows());
  std::iota(rowperm.begin(), rowperm.end(), 0);
  auto block_multiset = [](const WeightPresentation& w, const std::vector<std::size_t>& rp,
                           std::size_t from, std::size_t to) {
    std::vector<IntVec> cols;
    for (std::size_t j = from; j < to; ++j) {
      IntVec c(w.r.rows());
      for (std::size_t i = 0; i < w.r.rows(); ++i) c[i] = w.r(rp[i], j);
      cols.push_back(std::move(c));
    }
    std::sort(cols.begin(), cols.end());
    return cols;
  };
  std::vector<std::size_t> id(a.r.rows());
  std::iota(id.begin(), id.end(), 0);
  do {
    IntVec om(a.r.rows());
    for (std::size_t i = 0; i < a.r.rows(); ++i) om[i] = a.omega[rowperm[i]];
    if (om != b.omega) continue;
    std::size_t r = a.n_strut_cols, u = a.n_u_cols, l = a.n_div_cols;
    if (block_multiset(a, rowperm, 0, r) == block_multiset(b, id, 0, r) &&
        block_multiset(a, rowperm, r, r + u) == block_multiset(b, id, r, r + u) &&
        block_multiset(a, rowperm, r + u, r + u + l) == block_multiset(b, id, r + u, r + u + l))
      return true;
  } while (std::next_permutation(rowperm.begin(), rowperm.end()));
  return false;
}

}  // namespace latgeo

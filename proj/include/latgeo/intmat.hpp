#pragma once

#include "latgeo/core.hpp"

#include <algorithm>
#include <optional>
#include <utility>

namespace latgeo {

// Dense integer matrix with arbitrary-precision entries. Row-major.
class IntMat {
 public:
  IntMat() : rows_(0), cols_(0) {}
  IntMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}
  explicit IntMat(const std::vector<IntVec>& rows) {
    rows_ = rows.size();
    cols_ = rows.empty() ? 0 : rows[0].size();
    a_.reserve(rows_ * cols_);
    for (const IntVec& r : rows) {
      if (r.size() != cols_) throw domain_error("IntMat: ragged rows");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static IntMat identity(std::size_t n) {
    IntMat m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Int& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Int& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  IntVec row(std::size_t i) const {
    return IntVec(a_.begin() + i * cols_, a_.begin() + (i + 1) * cols_);
  }
  IntVec col(std::size_t j) const {
    IntVec c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }
  void set_row(std::size_t i, const IntVec& v) {
    if (v.size() != cols_) throw domain_error("set_row: length mismatch");
    std::copy(v.begin(), v.end(), a_.begin() + i * cols_);
  }
  std::vector<IntVec> row_list() const {
    std::vector<IntVec> rs;
    rs.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) rs.push_back(row(i));
    return rs;
  }

  void append_row(const IntVec& v) {
    if (rows_ == 0 && cols_ == 0) cols_ = v.size();
    if (v.size() != cols_) throw domain_error("append_row: length mismatch");
    a_.insert(a_.end(), v.begin(), v.end());
    ++rows_;
  }

  IntMat transpose() const {
    IntMat t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) std::swap((*this)(i, c), (*this)(j, c));
  }

  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) = -(*this)(i, c);
  }

  // row_i += k * row_j
  void add_multiple(std::size_t i, const Int& k, std::size_t j) {
    for (std::size_t c = 0; c < cols_; ++c) (*this)(i, c) += k * (*this)(j, c);
  }

  bool operator==(const IntMat& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<Int> a_;
};

inline IntMat matmul(const IntMat& a, const IntMat& b) {
  if (a.cols() != b.rows()) throw domain_error("matmul: shape mismatch");
  IntMat c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Int& aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

inline IntVec matvec(const IntMat& a, const IntVec& x) {
  if (a.cols() != x.size()) throw domain_error("matvec: shape mismatch");
  IntVec y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

// Extended gcd: returns (g, x, y) with x*a + y*b = g >= 0.
inline std::tuple<Int, Int, Int> xgcd(Int a, Int b) {
  Int x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Int q = a / b;
    Int r = a - q * b;
    a = b;
    b = r;
    Int xt = x0 - q * x1, yt = y0 - q * y1;
    x0 = x1;
    y0 = y1;
    x1 = xt;
    y1 = yt;
  }
  if (a < 0) {
    a = -a;
    x0 = -x0;
    y0 = -y0;
  }
  return {a, x0, y0};
}

struct HnfResult {
  IntMat h;  // row-style Hermite normal form
  IntMat u;  // unimodular transform, u * m == h
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
  int det_sign_u = 1;  // det(u) is +1 or -1
};

// Row-style Hermite normal form: u*m = h with |det u| = 1, h in row echelon
// form, pivots positive and entries above each pivot reduced into [0, pivot).
inline HnfResult hnf(const IntMat& m) {
  HnfResult res;
  res.h = m;
  res.u = IntMat::identity(m.rows());
  IntMat& h = res.h;
  IntMat& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    // gcd-eliminate entries below position (r, c)
    std::size_t piv = r;
    bool found = false;
    for (std::size_t i = r; i < m.rows(); ++i)
      if (h(i, c) != 0) {
        piv = i;
        found = true;
        break;
      }
    if (!found) continue;
    if (piv != r) {
      h.swap_rows(r, piv);
      u.swap_rows(r, piv);
      res.det_sign_u = -res.det_sign_u;
    }
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      if (h(i, c) == 0) continue;
      auto [g, x, y] = xgcd(h(r, c), h(i, c));
      Int ar = h(r, c) / g, ai = h(i, c) / g;
      // (row_r, row_i) <- (x*row_r + y*row_i, -ai*row_r + ar*row_i);
      // the 2x2 transform has determinant x*ar + y*ai = 1.
      for (std::size_t j = 0; j < h.cols(); ++j) {
        Int hr = h(r, j), hi = h(i, j);
        h(r, j) = x * hr + y * hi;
        h(i, j) = ar * hi - ai * hr;
      }
      for (std::size_t j = 0; j < u.cols(); ++j) {
        Int ur = u(r, j), ui = u(i, j);
        u(r, j) = x * ur + y * ui;
        u(i, j) = ar * ui - ai * ur;
      }
    }
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
      res.det_sign_u = -res.det_sign_u;
    }
    // reduce entries above the pivot into [0, pivot)
    for (std::size_t i = 0; i < r; ++i) {
      Int q = h(i, c) / h(r, c);
      if (h(i, c) - q * h(r, c) < 0) q -= 1;
      if (q != 0) {
        h.add_multiple(i, -q, r);
        u.add_multiple(i, -q, r);
      }
    }
    res.pivot_cols.push_back(c);
    ++r;
  }
  res.rank = r;
  return res;
}

inline std::size_t rank(const IntMat& m) { return hnf(m).rank; }

// Determinant of a square matrix via the HNF transform bookkeeping.
inline Int det(const IntMat& m) {
  if (m.rows() != m.cols()) throw domain_error("det: matrix not square");
  if (m.rows() == 0) return 1;
  HnfResult r = hnf(m);
  Int d = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) d *= r.h(i, i);
  return Int(r.det_sign_u) * d;
}

// Basis of the saturated integer kernel {x : m*x = 0}, returned as rows.
// The kernel of an integer matrix is automatically saturated; the rows of
// the returned matrix extend to a basis of the full lattice.
inline IntMat kernel_basis(const IntMat& m) {
  HnfResult r = hnf(m.transpose());
  IntMat k(0, m.cols());
  for (std::size_t i = r.rank; i < m.cols(); ++i) k.append_row(r.u.row(i));
  return k;
}

// True iff the rows of m are independent and extend to a basis of Z^cols,
// i.e. the gcd of the maximal minors is 1. Computed from the pivot block of
// the column-style HNF (HNF of the transpose).
inline bool extends_to_basis(const IntMat& m) {
  if (m.rows() == 0) return true;
  if (m.rows() > m.cols()) return false;
  HnfResult r = hnf(m.transpose());
  if (r.rank != m.rows()) return false;
  Int d = 1;
  for (std::size_t i = 0; i < r.rank; ++i) d *= r.h(i, i);
  return d == 1 || d == -1;
}

// Unimodularity test for pointed-cone generators: independent, and they
// extend to a lattice basis. Non-primitive input is a caller error and the
// offending index is reported.
inline bool is_unimodular_generators(const std::vector<IntVec>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (is_zero(gens[i]) || !is_primitive(gens[i]))
      throw domain_error("is_unimodular_generators: generator " + std::to_string(i) +
                         " is not primitive");
  if (gens.empty()) return true;
  return extends_to_basis(IntMat(gens));
}

// Solve m*x = rhs over the rationals; nullopt when inconsistent.
// m need not be square; among solutions an arbitrary one is returned.
inline std::optional<RatVec> solve_rational(const IntMat& m, const IntVec& rhs) {
  std::size_t nr = m.rows(), nc = m.cols();
  std::vector<RatVec> a(nr, RatVec(nc + 1));
  for (std::size_t i = 0; i < nr; ++i) {
    for (std::size_t j = 0; j < nc; ++j) a[i][j] = Rat(m(i, j));
    a[i][nc] = Rat(rhs[i]);
  }
  std::vector<std::size_t> pivot_of_col(nc, SIZE_MAX);
  std::size_t r = 0;
  for (std::size_t c = 0; c < nc && r < nr; ++c) {
    std::size_t p = r;
    while (p < nr && a[p][c] == 0) ++p;
    if (p == nr) continue;
    std::swap(a[p], a[r]);
    Rat inv = a[r][c];
    for (std::size_t j = c; j <= nc; ++j) a[r][j] /= inv;
    for (std::size_t i = 0; i < nr; ++i) {
      if (i == r || a[i][c] == 0) continue;
      Rat f = a[i][c];
      for (std::size_t j = c; j <= nc; ++j) a[i][j] -= f * a[r][j];
    }
    pivot_of_col[c] = r;
    ++r;
  }
  for (std::size_t i = r; i < nr; ++i)
    if (a[i][nc] != 0) return std::nullopt;
  RatVec x(nc, Rat(0));
  for (std::size_t c = 0; c < nc; ++c)
    if (pivot_of_col[c] != SIZE_MAX) x[c] = a[pivot_of_col[c]][nc];
  return x;
}

// Express y as an integer combination of the rows of basis; nullopt when
// y is outside the row lattice.
inline std::optional<IntVec> in_row_lattice(const IntMat& basis, const IntVec& y) {
  auto sol = solve_rational(basis.transpose(), y);
  if (!sol) return std::nullopt;
  if (!is_integral(*sol)) return std::nullopt;
  return to_int_vec(*sol);
}

// Canonical basis (HNF rows) of the lattice spanned by the given rows;
// used to compare row lattices for equality.
inline IntMat row_lattice_normal_form(const IntMat& m) {
  HnfResult r = hnf(m);
  IntMat out(0, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i) out.append_row(r.h.row(i));
  return out;
}

// Basis of the saturation of the row lattice: span_Q(rows) intersected with
// Z^n, computed as the kernel of the kernel.
inline IntMat saturate_rows(const IntMat& m) {
  IntMat ann = kernel_basis(m);
  if (ann.rows() == 0) {
    // rows span the whole space rationally
    return IntMat::identity(m.cols());
  }
  return kernel_basis(ann);
}

}  // namespace latgeo

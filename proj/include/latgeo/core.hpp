#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace latgeo {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

// Thrown when a documented precondition is violated by the caller.
struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

// Thrown when two independent computations of the same quantity disagree.
// Never caught internally; a defect must surface.
struct defect_error : std::runtime_error {
  explicit defect_error(const std::string& what) : std::runtime_error(what) {}
};

inline Int gcd(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }

inline Int gcd(const IntVec& v) {
  Int g = 0;
  for (const Int& x : v) g = gcd(g, x);
  return g;
}

inline bool is_zero(const IntVec& v) {
  for (const Int& x : v)
    if (x != 0) return false;
  return true;
}

// Divides out the gcd, fixing the sign so the first nonzero entry of the
// zero vector convention: the zero vector is returned unchanged.
inline IntVec primitive(IntVec v) {
  Int g = gcd(v);
  if (g > 1)
    for (Int& x : v) x /= g;
  return v;
}

inline bool is_primitive(const IntVec& v) { return gcd(v) == 1; }

inline Int dot(const IntVec& a, const IntVec& b) {
  if (a.size() != b.size()) throw domain_error("dot: length mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Rat dot(const IntVec& a, const RatVec& b) {
  if (a.size() != b.size()) throw domain_error("dot: length mismatch");
  Rat s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rat(a[i]) * b[i];
  return s;
}

inline IntVec add(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline IntVec scale(const Int& c, const IntVec& a) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline IntVec negate(const IntVec& a) { return scale(-1, a); }

// c1*a + c2*b
inline IntVec lincomb(const Int& c1, const IntVec& a, const Int& c2, const IntVec& b) {
  IntVec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c1 * a[i] + c2 * b[i];
  return r;
}

inline IntVec unit_vector(std::size_t dim, std::size_t i, const Int& value = 1) {
  IntVec e(dim, 0);
  e[i] = value;
  return e;
}

inline std::string to_string(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += v[i].str();
  }
  return s + ")";
}

// Floor of a rational number as an Int.
inline Int rat_floor(const Rat& q) {
  Int n = boost::multiprecision::numerator(q);
  Int d = boost::multiprecision::denominator(q);
  Int r = n / d;
  if (r * d > n) --r;
  return r;
}

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

inline bool is_integral(const Rat& q) { return boost::multiprecision::denominator(q) == 1; }

inline bool is_integral(const RatVec& v) {
  for (const Rat& q : v)
    if (!is_integral(q)) return false;
  return true;
}

inline IntVec to_int_vec(const RatVec& v) {
  IntVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!is_integral(v[i])) throw domain_error("to_int_vec: non-integral entry");
    r[i] = boost::multiprecision::numerator(v[i]);
  }
  return r;
}

inline RatVec to_rat_vec(const IntVec& v) {
  RatVec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

}  // namespace latgeo

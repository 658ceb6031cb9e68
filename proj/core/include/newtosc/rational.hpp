#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "newtosc/error.hpp"

namespace newtosc {

using Int = mpz_class;
using Rat = mpq_class;

// Lattice vector with arbitrary-precision entries.
using Tuple = std::vector<Int>;

using RatVec = std::vector<Rat>;

inline Rat rat(long num, long den = 1) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Rat rat_of(const Int& num, const Int& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline double to_double(const Rat& q) { return q.get_d(); }

inline std::string to_string(const Int& v) { return v.get_str(); }

// "p/q" with q > 0, or just "p" when integral.
inline std::string to_string(const Rat& q) { return q.get_str(); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline Tuple tuple_of(const std::vector<long>& v) {
  Tuple t;
  t.reserve(v.size());
  for (long x : v) t.emplace_back(x);
  return t;
}

inline Int dot(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw DomainError("dot: dimension mismatch");
  Int s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Tuple add(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw DomainError("add: dimension mismatch");
  Tuple r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Tuple sub(const Tuple& a, const Tuple& b) {
  if (a.size() != b.size()) throw DomainError("sub: dimension mismatch");
  Tuple r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Tuple scale(const Int& c, const Tuple& a) {
  Tuple r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = c * a[i];
  return r;
}

inline bool is_zero(const Tuple& a) {
  for (const Int& x : a)
    if (x != 0) return false;
  return true;
}

inline Tuple unit_vector(std::size_t n, std::size_t i) {
  Tuple e(n, Int(0));
  e[i] = 1;
  return e;
}

inline Int gcd_all(const Tuple& a) {
  Int g = 0;
  for (const Int& x : a) {
    Int ax = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), ax.get_mpz_t());
  }
  return g;
}

// Divides out the content. The zero vector has no primitive representative.
inline Tuple primitive(const Tuple& a) {
  Int g = gcd_all(a);
  if (g == 0) throw ZeroVectorError("primitive: zero vector");
  Tuple r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] / g;
  return r;
}

inline std::string to_string(const Tuple& a) {
  std::string s = "(";
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += a[i].get_str();
  }
  s += ")";
  return s;
}

}  // namespace newtosc

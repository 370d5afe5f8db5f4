#pragma once

// Brute-force reference implementations. They avoid the library's row
// reduction entirely and work on explicit sets of vectors.

#include <msrlab/field.hpp>
#include <msrlab/matrix.hpp>

#include <cstdint>
#include <set>
#include <vector>

namespace oracle {

using Vec = std::vector<std::uint64_t>;
using VecSet = std::set<Vec>;

/// GF(2^m) product by shift-and-add with the given reduction bits (including x^m).
inline std::uint64_t gf2m_mul(std::uint64_t a, std::uint64_t b, unsigned m, std::uint64_t poly) {
  std::uint64_t r = 0;
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (a >> m & 1) a ^= poly;
  }
  return r;
}

/// Prime fields only: entries are residues.
inline Vec add(const Vec& a, const Vec& b, std::uint64_t p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = (a[i] + b[i]) % p;
  return r;
}

inline Vec scale(const Vec& a, std::uint64_t c, std::uint64_t p) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * c % p;
  return r;
}

/// Every vector of F_p^n.
inline std::vector<Vec> all_vectors(std::size_t n, std::uint64_t p) {
  std::vector<Vec> out;
  Vec v(n, 0);
  while (true) {
    out.push_back(v);
    std::size_t x = n;
    while (x > 0 && ++v[x - 1] == p) v[--x] = 0;
    if (x == 0) break;
  }
  return out;
}

/// The set of all combinations of the generators.
inline VecSet span(const std::vector<Vec>& gens, std::size_t n, std::uint64_t p) {
  VecSet out{Vec(n, 0)};
  for (const auto& g : gens) {
    VecSet next;
    for (const auto& v : out)
      for (std::uint64_t c = 0; c < p; ++c) next.insert(add(v, scale(g, c, p), p));
    out = std::move(next);
  }
  return out;
}

inline std::size_t dim_of(const VecSet& s, std::uint64_t p) {
  std::size_t d = 0, size = 1;
  while (size < s.size()) {
    size *= p;
    ++d;
  }
  return d;
}

inline std::vector<Vec> rows_of(const msrlab::Matrix& m) {
  std::vector<Vec> out;
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Vec v(m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) v[c] = m(r, c);
    out.push_back(v);
  }
  return out;
}

/// Row vector times matrix, prime field.
inline Vec apply(const Vec& v, const msrlab::Matrix& m, std::uint64_t p) {
  Vec r(m.cols(), 0);
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t i = 0; i < v.size(); ++i) r[c] = (r[c] + v[i] * m(i, c)) % p;
  return r;
}

inline VecSet image(const VecSet& s, const msrlab::Matrix& m, std::uint64_t p) {
  VecSet out;
  for (const auto& v : s) out.insert(apply(v, m, p));
  return out;
}

inline VecSet meet(const VecSet& a, const VecSet& b) {
  VecSet out;
  for (const auto& v : a)
    if (b.count(v)) out.insert(v);
  return out;
}

inline VecSet join(const VecSet& a, const VecSet& b, std::uint64_t p) {
  VecSet out;
  for (const auto& x : a)
    for (const auto& y : b) out.insert(add(x, y, p));
  return out;
}

/// Number of distinct subspaces of F_p^n of dimension d, by spanning every d-tuple.
inline std::size_t count_subspaces(std::size_t n, std::size_t d, std::uint64_t p) {
  const auto vecs = all_vectors(n, p);
  std::set<VecSet> seen;
  std::vector<std::size_t> idx(d, 0);
  while (true) {
    std::vector<Vec> gens;
    for (auto i : idx) gens.push_back(vecs[i]);
    auto s = span(gens, n, p);
    if (dim_of(s, p) == d) seen.insert(std::move(s));
    std::size_t x = d;
    while (x > 0 && ++idx[x - 1] == vecs.size()) idx[--x] = 0;
    if (x == 0) break;
  }
  return seen.size();
}

/// Independence by trying every nonzero coefficient vector.
inline bool family_independent(const std::vector<msrlab::Matrix>& mats) {
  if (mats.empty()) return true;
  const auto& f = mats.front().field();
  const auto q = f.order();
  std::vector<std::uint64_t> c(mats.size(), 0);
  while (true) {
    std::size_t x = c.size();
    while (x > 0 && ++c[x - 1] == q) c[--x] = 0;
    if (x == 0) return true;
    bool zero = true;
    for (std::size_t r = 0; r < mats.front().rows() && zero; ++r)
      for (std::size_t col = 0; col < mats.front().cols() && zero; ++col) {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < mats.size(); ++i) acc = f.add(acc, f.mul(c[i], mats[i](r, col)));
        zero = acc == 0;
      }
    if (zero) return false;
  }
}

}  // namespace oracle

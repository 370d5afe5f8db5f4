#pragma once

// Finite fields GF(p^m). Elements are packed integers in [0, q): an element of
// an extension field with coefficient vector (c0, ..., c_{m-1}) over GF(p) is
// stored as c0 + c1*p + ... + c_{m-1}*p^{m-1}.

#include <msrlab/error.hpp>

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace msrlab {

using FieldElem = std::uint64_t;

namespace detail {

using u128 = unsigned __int128;

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

/// Deterministic Miller-Rabin for 64-bit integers.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t sp : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % sp == 0) return n == sp;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Dense polynomials over GF(p), coefficients low to high.
using Poly = std::vector<std::uint64_t>;

inline void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

inline std::uint64_t inv_mod_p(std::uint64_t a, std::uint64_t p) { return powmod(a, p - 2, p); }

inline Poly poly_mod(Poly a, const Poly& f, std::uint64_t p) {
  trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = inv_mod_p(f.back(), p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
    }
    trim(a);
  }
  return a;
}

inline Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      c[i + j] = (c[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_mod(std::move(c), f, p);
}

inline Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_mod(std::move(base), f, p);
  while (e) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

inline Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

/// Ben-Or irreducibility test: f of degree m is irreducible iff
/// gcd(f, x^{p^i} - x) = 1 for every i <= m/2.
inline bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t m = f.size() - 1;
  if (m == 0) return false;
  if (m == 1) return true;
  Poly h = poly_powmod(Poly{0, 1}, p, f, p);  // x^p mod f
  for (std::size_t i = 1; i <= m / 2; ++i) {
    Poly g = h;
    g.resize(std::max<std::size_t>(g.size(), 2), 0);
    g[1] = (g[1] + p - 1) % p;
    trim(g);
    Poly d = poly_gcd(f, g, p);
    if (d.size() != 1) return false;
    if (i < m / 2) h = poly_powmod(h, p, f, p);
  }
  return true;
}

struct FieldData {
  std::uint64_t p = 2;
  std::uint32_t m = 1;
  std::uint64_t q = 2;
  Poly reduction;  // monic, length m+1; empty for prime fields
  // log/exp tables for small extension fields
  std::vector<std::uint32_t> exp_table;
  std::vector<std::uint32_t> log_table;
};

}  // namespace detail

/// A validated finite field GF(p^m). Cheap to copy; shares immutable state.
class Field {
 public:
  /// GF(2).
  Field() : Field(gf2()) {}

  /// Builds GF(p^m). `reduction` lists the coefficients of a monic irreducible
  /// polynomial of degree m from the constant term upwards; it must be given
  /// exactly when m > 1.
  static Field make(std::uint64_t p, std::uint32_t m = 1,
                    std::optional<std::vector<std::uint64_t>> reduction = std::nullopt) {
    if (!detail::is_prime(p)) throw Error(ErrorKind::NonPrimeCharacteristic, std::to_string(p) + " is not prime");
    if (m == 0) throw Error(ErrorKind::InvalidParams, "extension degree must be >= 1");
    if (m == 1 && reduction && !reduction->empty()) {
      throw Error(ErrorKind::InvalidReduction, "prime fields take no reduction polynomial");
    }
    if (m > 1 && (!reduction || reduction->empty())) {
      throw Error(ErrorKind::MissingReduction, "extension fields need a reduction polynomial");
    }
    auto d = std::make_shared<detail::FieldData>();
    d->p = p;
    d->m = m;
    detail::u128 q = 1;
    for (std::uint32_t i = 0; i < m; ++i) {
      q *= p;
      if (q > detail::u128(UINT64_MAX)) throw Error(ErrorKind::FieldTooLarge, "p^m exceeds 64 bits");
    }
    d->q = static_cast<std::uint64_t>(q);
    if (m > 1) {
      const auto& red = *reduction;
      if (red.size() != m + 1) throw Error(ErrorKind::InvalidReduction, "reduction polynomial must have degree m");
      for (auto c : red) {
        if (c >= p) throw Error(ErrorKind::InvalidReduction, "reduction coefficient out of range");
      }
      if (red.back() != 1) throw Error(ErrorKind::InvalidReduction, "reduction polynomial must be monic");
      if (!detail::is_irreducible(red, p)) throw Error(ErrorKind::ReduciblePolynomial, "reduction polynomial is reducible");
      d->reduction = red;
      if (d->q <= (1u << 16)) build_tables(*d);
    }
    return Field(std::move(d));
  }

  std::uint64_t characteristic() const { return d_->p; }
  std::uint32_t degree() const { return d_->m; }
  std::uint64_t order() const { return d_->q; }
  const std::vector<std::uint64_t>& reduction() const { return d_->reduction; }
  bool is_prime_field() const { return d_->m == 1; }

  bool valid(FieldElem a) const { return a < d_->q; }

  FieldElem add(FieldElem a, FieldElem b) const {
    const auto p = d_->p;
    if (d_->m == 1) return a >= p - b ? a - (p - b) : a + b;
    FieldElem r = 0, place = 1;
    for (std::uint32_t i = 0; i < d_->m; ++i) {
      r += ((a % p + b % p) % p) * place;
      a /= p;
      b /= p;
      place *= p;
    }
    return r;
  }

  FieldElem neg(FieldElem a) const {
    const auto p = d_->p;
    if (d_->m == 1) return a == 0 ? 0 : p - a;
    FieldElem r = 0, place = 1;
    for (std::uint32_t i = 0; i < d_->m; ++i) {
      r += ((p - a % p) % p) * place;
      a /= p;
      place *= p;
    }
    return r;
  }

  FieldElem sub(FieldElem a, FieldElem b) const { return add(a, neg(b)); }

  FieldElem mul(FieldElem a, FieldElem b) const {
    if (a == 0 || b == 0) return 0;
    if (d_->m == 1) return detail::mulmod(a, b, d_->p);
    if (!d_->log_table.empty()) {
      const std::uint64_t s = std::uint64_t(d_->log_table[a]) + d_->log_table[b];
      return d_->exp_table[s % (d_->q - 1)];
    }
    return pack(detail::poly_mulmod(unpack(a), unpack(b), d_->reduction, d_->p));
  }

  FieldElem pow(FieldElem a, std::uint64_t e) const {
    FieldElem r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  FieldElem inv(FieldElem a) const {
    if (a == 0) throw Error(ErrorKind::SingularMatrix, "inverse of zero");
    if (d_->m == 1) return detail::inv_mod_p(a, d_->p);
    if (!d_->log_table.empty()) {
      const std::uint64_t l = d_->log_table[a];
      return d_->exp_table[(d_->q - 1 - l) % (d_->q - 1)];
    }
    return pow(a, d_->q - 2);
  }

  FieldElem div(FieldElem a, FieldElem b) const { return mul(a, inv(b)); }

  friend bool operator==(const Field& x, const Field& y) {
    return x.d_ == y.d_ || (x.d_->p == y.d_->p && x.d_->m == y.d_->m && x.d_->reduction == y.d_->reduction);
  }

  std::string name() const {
    std::string s = "GF(" + std::to_string(d_->p);
    if (d_->m > 1) s += "^" + std::to_string(d_->m);
    return s + ")";
  }

 private:
  static const Field& gf2() {
    static const Field f = make(2);
    return f;
  }

  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}

  detail::Poly unpack(FieldElem a) const {
    detail::Poly out(d_->m, 0);
    for (std::uint32_t i = 0; i < d_->m; ++i) {
      out[i] = a % d_->p;
      a /= d_->p;
    }
    detail::trim(out);
    return out;
  }

  FieldElem pack(const detail::Poly& c) const {
    FieldElem r = 0, place = 1;
    for (std::size_t i = 0; i < c.size(); ++i) {
      r += c[i] * place;
      place *= d_->p;
    }
    return r;
  }

  static void build_tables(detail::FieldData& d) {
    const std::uint64_t q = d.q;
    auto pack_poly = [&](const detail::Poly& c) {
      std::uint64_t r = 0, place = 1;
      for (auto v : c) {
        r += v * place;
        place *= d.p;
      }
      return r;
    };
    auto unpack_poly = [&](std::uint64_t a) {
      detail::Poly out(d.m, 0);
      for (std::uint32_t i = 0; i < d.m; ++i) {
        out[i] = a % d.p;
        a /= d.p;
      }
      detail::trim(out);
      return out;
    };
    const auto factors = detail::prime_factors(q - 1);
    for (std::uint64_t g = 2; g < q; ++g) {
      const auto gp = unpack_poly(g);
      bool primitive = true;
      for (auto f : factors) {
        if (detail::poly_powmod(gp, (q - 1) / f, d.reduction, d.p) == detail::Poly{1}) {
          primitive = false;
          break;
        }
      }
      if (!primitive) continue;
      d.exp_table.assign(q - 1, 0);
      d.log_table.assign(q, 0);
      detail::Poly cur{1};
      for (std::uint64_t e = 0; e + 1 < q; ++e) {
        const auto v = pack_poly(cur);
        d.exp_table[e] = static_cast<std::uint32_t>(v);
        d.log_table[v] = static_cast<std::uint32_t>(e);
        cur = detail::poly_mulmod(cur, gp, d.reduction, d.p);
      }
      return;
    }
  }

  std::shared_ptr<const detail::FieldData> d_;
};

}  // namespace msrlab

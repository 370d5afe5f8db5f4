#pragma once

// Upper bounds on the number of systematic nodes k for sub-packetization ell
// and r parities, plus the constructive lower bound for gap reports.
//
// Which k each bound constrains:
//   quadratic  ell^2                          - systematic nodes of the code
//   linear_r2  max(4 ell, 8 log2 ell)         - size of a helper-independent system
//   logsq      2 log2(ell)(floor(log_d ell)+1)+1 - systematic nodes of the code
// A system of m pairs corresponds to a code with m + 1 systematic nodes.

#include <msrlab/error.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>

namespace msrlab {

inline bool is_power_of_two(std::uint64_t x) { return x != 0 && (x & (x - 1)) == 0; }

inline std::uint64_t log2_exact(std::uint64_t x) {
  if (!is_power_of_two(x)) throw Error(ErrorKind::NonPowerOfTwo, std::to_string(x) + " is not a power of two");
  std::uint64_t e = 0;
  while (x > 1) {
    x >>= 1;
    ++e;
  }
  return e;
}

inline std::uint64_t bound_quadratic(std::uint64_t ell) {
  if (ell < 1) throw Error(ErrorKind::InvalidParams, "ell must be positive");
  return ell * ell;
}

inline std::uint64_t bound_linear_r2(std::uint64_t ell) {
  const auto lg = log2_exact(ell);
  return std::max<std::uint64_t>(4 * ell, 8 * lg);
}

/// Largest e with (r/(r-1))^e <= ell, i.e. r^e <= ell (r-1)^e.
inline std::uint64_t floor_log_delta(std::uint64_t ell, std::uint64_t r) {
  if (r < 2 || ell < 1) throw Error(ErrorKind::InvalidParams, "floor_log_delta needs r >= 2, ell >= 1");
  using boost::multiprecision::cpp_int;
  cpp_int lhs = r, rhs = cpp_int(ell) * (r - 1);
  std::uint64_t e = 0;
  while (lhs <= rhs) {
    ++e;
    lhs *= r;
    rhs *= (r - 1);
  }
  return e;
}

inline std::uint64_t bound_logsq(std::uint64_t ell, std::uint64_t r) {
  if (ell < 2 || r < 2) throw Error(ErrorKind::InvalidParams, "logsq bound needs ell >= 2 and r >= 2");
  if (!is_power_of_two(ell)) throw Error(ErrorKind::InvalidParams, "logsq bound needs ell a power of two");
  return 2 * log2_exact(ell) * (floor_log_delta(ell, r) + 1) + 1;
}

/// (r+1) log_r ell; exact when ell is a power of r.
inline double known_achievable(std::uint64_t ell, std::uint64_t r) {
  if (ell < 2 || r < 2) throw Error(ErrorKind::InvalidParams, "known_achievable needs ell, r >= 2");
  std::uint64_t x = ell, e = 0;
  while (x % r == 0) {
    x /= r;
    ++e;
  }
  if (x == 1) return double((r + 1) * e);
  return double(r + 1) * std::log(double(ell)) / std::log(double(r));
}

struct BoundReport {
  std::uint64_t ell = 0;
  std::uint64_t r = 0;
  std::uint64_t quadratic = 0;
  std::optional<std::uint64_t> linear_r2;   // r = 2 and ell a power of two
  std::optional<std::uint64_t> logsq;       // ell >= 2 a power of two, r >= 2
  std::optional<double> known_achievable;   // ell, r >= 2
  std::optional<std::uint64_t> bandwidth;   // (n-1) ell / r when n is known
};

inline BoundReport bound_report(std::uint64_t ell, std::uint64_t r, std::optional<std::uint64_t> n = std::nullopt) {
  if (ell < 1 || r < 1) throw Error(ErrorKind::InvalidParams, "ell and r must be positive");
  BoundReport rep;
  rep.ell = ell;
  rep.r = r;
  rep.quadratic = bound_quadratic(ell);
  if (r == 2 && is_power_of_two(ell)) rep.linear_r2 = bound_linear_r2(ell);
  if (r >= 2 && ell >= 2 && is_power_of_two(ell)) rep.logsq = bound_logsq(ell, r);
  if (r >= 2 && ell >= 2) rep.known_achievable = known_achievable(ell, r);
  if (n) {
    if (ell % r != 0 || *n <= r) throw Error(ErrorKind::InvalidParams, "bandwidth needs r | ell and n > r");
    rep.bandwidth = (*n - 1) * (ell / r);
  }
  return rep;
}

/// How a k value handed to consistency_assert should be read.
enum class KCount { CodeSystematic, SystemSize };

/// True iff k respects every applicable upper bound; otherwise throws
/// BoundViolated carrying `witness` (the offending object, serialized).
inline bool consistency_assert(std::uint64_t k, const BoundReport& rep, KCount what = KCount::CodeSystematic,
                               const std::string& witness = {}) {
  const std::uint64_t code_k = what == KCount::SystemSize ? k + 1 : k;
  auto fail = [&](const std::string& which, std::uint64_t bound) {
    throw Error(ErrorKind::BoundViolated,
                "k = " + std::to_string(code_k) + " exceeds the " + which + " bound " + std::to_string(bound) + " at ell = " +
                    std::to_string(rep.ell) + ", r = " + std::to_string(rep.r),
                witness);
  };
  if (code_k > rep.quadratic) fail("quadratic", rep.quadratic);
  if (rep.logsq && code_k > *rep.logsq) fail("logsq", *rep.logsq);
  if (rep.linear_r2 && code_k > *rep.linear_r2 + 1) fail("linear", *rep.linear_r2 + 1);
  return true;
}

}  // namespace msrlab

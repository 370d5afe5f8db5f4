#pragma once

// Families of operator products whose linear independence follows from the
// helper-independent conditions. Every builder that claims independence
// re-checks it and raises IndependenceFailure, with the whole family as the
// error payload, if the claim ever fails.
//
// Products are taken left to right; within a partition block the operators
// are multiplied in ascending index order.

#include <msrlab/json_matrix.hpp>
#include <msrlab/reduction.hpp>

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace msrlab {

enum class FamilyKind { T, Upsilon, R, Lambda, Gamma, IdentityTheta };

constexpr std::string_view to_string(FamilyKind k) {
  switch (k) {
    case FamilyKind::T: return "T";
    case FamilyKind::Upsilon: return "UPSILON";
    case FamilyKind::R: return "R";
    case FamilyKind::Lambda: return "LAMBDA";
    case FamilyKind::Gamma: return "GAMMA";
    case FamilyKind::IdentityTheta: return "IDENTITY_THETA";
  }
  return "?";
}

struct FamilyMember {
  Matrix matrix;
  std::string label;                // e.g. "(1,2)" or an epsilon bit string
  std::vector<std::size_t> indices; // operator indices used, zero-based
};

struct CertificateFamily {
  FamilyKind kind;
  std::vector<FamilyMember> members;
  std::size_t claim = 0;

  std::vector<Matrix> matrices() const {
    std::vector<Matrix> out;
    out.reserve(members.size());
    for (const auto& m : members) out.push_back(m.matrix);
    return out;
  }

  std::size_t rank() const { return family_rank(matrices()); }
  bool independent() const { return family_independent(matrices()); }
};

inline Json family_to_json(const CertificateFamily& fam) {
  Json j;
  j["schema"] = 1;
  j["kind"] = std::string(to_string(fam.kind));
  j["claim"] = fam.claim;
  Json members = Json::array();
  for (const auto& m : fam.members) {
    Json e;
    e["label"] = m.label;
    Json idx = Json::array();
    for (auto i : m.indices) idx.push_back(i + 1);
    e["indices"] = idx;
    e["matrix"] = matrix_to_json(m.matrix);
    members.push_back(std::move(e));
  }
  j["members"] = std::move(members);
  return j;
}

namespace detail {

inline void require_index(const PhiSystem& sys, std::size_t i) {
  if (i >= sys.size()) throw Error(ErrorKind::IndexOutOfRange, "index " + std::to_string(i + 1) + " outside the system");
}

inline void require_conditions(const PhiSystem& sys) {
  if (!check_sc(sys).ok) throw Error(ErrorKind::ConditionsViolated, "system fails the helper-independent conditions");
}

inline bool meets(const PhiSystem& sys, std::size_t i, std::size_t j) { return !intersect(sys.s(i), sys.s(j)).is_zero(); }

inline void verify_independent(const CertificateFamily& fam) {
  if (!fam.independent()) {
    throw Error(ErrorKind::IndependenceFailure,
                std::string(to_string(fam.kind)) + " family of " + std::to_string(fam.members.size()) + " matrices is dependent",
                family_to_json(fam).dump());
  }
}

inline std::string bits(std::size_t mask, std::size_t n) {
  std::string s;
  for (std::size_t b = 0; b < n; ++b) s += ((mask >> (n - 1 - b)) & 1) ? '1' : '0';
  return s;
}

inline std::string tuple_label(const std::vector<std::size_t>& idx) {
  std::string s = "(";
  for (std::size_t i = 0; i < idx.size(); ++i) s += (i ? "," : "") + std::to_string(idx[i] + 1);
  return s + ")";
}

/// prod_j factors[j]^{eps_j} for every eps, eps_1 most significant.
inline std::vector<std::pair<Matrix, std::size_t>> epsilon_products(const std::vector<Matrix>& factors, const Field& f,
                                                                    std::size_t ell) {
  const auto n = factors.size();
  std::vector<std::pair<Matrix, std::size_t>> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    Matrix acc = Matrix::identity(f, ell);
    for (std::size_t j = 0; j < n; ++j)
      if ((mask >> (n - 1 - j)) & 1) acc = acc * factors[j];
    out.emplace_back(std::move(acc), mask);
  }
  return out;
}

}  // namespace detail

/// {Phi_i Phi_j : i in first, j in second}, |first| = |second| = t.
inline CertificateFamily build_T(const PhiSystem& sys, const std::vector<std::size_t>& first,
                                 const std::vector<std::size_t>& second) {
  sys.validate();
  for (auto i : first) detail::require_index(sys, i);
  for (auto j : second) detail::require_index(sys, j);
  std::set<std::size_t> seen;
  for (auto i : first)
    if (!seen.insert(i).second) throw Error(ErrorKind::OverlappingSets, "repeated index in the first set");
  for (auto j : second)
    if (!seen.insert(j).second) throw Error(ErrorKind::OverlappingSets, "index sets overlap");
  if (first.size() != second.size()) throw Error(ErrorKind::InvalidParams, "both index sets must have size t");
  CertificateFamily fam{FamilyKind::T, {}, first.size() * second.size()};
  for (auto i : first)
    for (auto j : second) fam.members.push_back({sys.phi(i) * sys.phi(j), detail::tuple_label({i, j}), {i, j}});
  return fam;
}

struct Corollary1Check {
  bool holds = false;
  bool hypothesis = false;  // every member pair intersects nontrivially
  bool independent = false;
  std::optional<std::pair<std::size_t, std::size_t>> witness;  // a member in the span of the others
  bool witness_complementary = false;
};

/// If every pair behind T intersects nontrivially, T is independent. When T
/// is dependent, the pair of some member in the span of the rest is reported
/// and must be complementary.
inline Corollary1Check check_corollary1(const PhiSystem& sys, const CertificateFamily& fam) {
  detail::require_conditions(sys);
  Corollary1Check out;
  out.hypothesis = std::all_of(fam.members.begin(), fam.members.end(),
                               [&](const FamilyMember& m) { return detail::meets(sys, m.indices.at(0), m.indices.at(1)); });
  const auto mats = fam.matrices();
  const auto dep = family_dependency(mats);
  out.independent = !dep.has_value();
  if (dep) {
    for (std::size_t x = 0; x < dep->size(); ++x) {
      if ((*dep)[x] == 0) continue;
      const auto i = fam.members[x].indices.at(0), j = fam.members[x].indices.at(1);
      out.witness = std::make_pair(i, j);
      out.witness_complementary = intersect(sys.s(i), sys.s(j)).is_zero() && sum(sys.s(i), sys.s(j)).is_full();
      break;
    }
  }
  out.holds = !out.hypothesis || out.independent;
  return out;
}

namespace detail {

inline std::vector<Matrix> pair_products(const PhiSystem& sys, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  if (sys.r != 2) throw Error(ErrorKind::RequiresTwoParities, "complementary-pair families need r = 2");
  std::set<std::size_t> seen;
  std::vector<Matrix> factors;
  for (const auto& [a, b] : pairs) {
    require_index(sys, a);
    require_index(sys, b);
    if (a == b || !seen.insert(a).second || !seen.insert(b).second) throw Error(ErrorKind::PairsOverlap, "pairs must be disjoint");
    if (meets(sys, a, b)) {
      throw Error(ErrorKind::PairsNotComplementary,
                  "S_" + std::to_string(a + 1) + " and S_" + std::to_string(b + 1) + " intersect nontrivially");
    }
    factors.push_back(sys.phi(a) * sys.phi(b));
  }
  return factors;
}

}  // namespace detail

/// prod_j (Phi_{a_j} Phi_{b_j})^{eps_j} over disjoint complementary pairs; 2^n members.
inline CertificateFamily build_upsilon(const PhiSystem& sys, const std::vector<std::pair<std::size_t, std::size_t>>& pairs) {
  detail::require_conditions(sys);
  const auto factors = detail::pair_products(sys, pairs);
  CertificateFamily fam{FamilyKind::Upsilon, {}, std::size_t{1} << pairs.size()};
  for (auto& [m, mask] : detail::epsilon_products(factors, sys.field, sys.ell)) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < pairs.size(); ++j)
      if ((mask >> (pairs.size() - 1 - j)) & 1) {
        idx.push_back(pairs[j].first);
        idx.push_back(pairs[j].second);
      }
    fam.members.push_back({std::move(m), detail::bits(mask, pairs.size()), std::move(idx)});
  }
  detail::verify_independent(fam);
  return fam;
}

/// {Omega * Upsilon_eps : Omega in T, eps in {0,1}^n}. T must avoid the paired
/// indices and satisfy the nontrivial-intersection hypothesis; an empty T
/// contributes only the identity.
inline CertificateFamily build_R(const PhiSystem& sys, const std::vector<std::pair<std::size_t, std::size_t>>& pairs,
                                 const CertificateFamily& t_family) {
  detail::require_conditions(sys);
  if (t_family.kind != FamilyKind::T) throw Error(ErrorKind::InvalidParams, "R is built from a T family");
  std::set<std::size_t> paired;
  for (const auto& [a, b] : pairs) {
    paired.insert(a);
    paired.insert(b);
  }
  for (const auto& m : t_family.members) {
    for (auto i : m.indices) {
      detail::require_index(sys, i);
      if (paired.count(i)) throw Error(ErrorKind::IndexClash, "T uses paired index " + std::to_string(i + 1));
    }
    if (!detail::meets(sys, m.indices.at(0), m.indices.at(1))) {
      throw Error(ErrorKind::HypothesisViolated, "T member " + m.label + " comes from complementary subspaces");
    }
  }
  const auto factors = detail::pair_products(sys, pairs);
  const auto ups = detail::epsilon_products(factors, sys.field, sys.ell);
  std::vector<FamilyMember> omegas = t_family.members;
  if (omegas.empty()) omegas.push_back({Matrix::identity(sys.field, sys.ell), "I", {}});
  CertificateFamily fam{FamilyKind::R, {}, omegas.size() * ups.size()};
  for (const auto& om : omegas) {
    for (const auto& [u, mask] : ups) {
      fam.members.push_back({om.matrix * u, om.label + ":" + detail::bits(mask, pairs.size()), om.indices});
    }
  }
  detail::verify_independent(fam);
  return fam;
}

/// Lambda_i = ascending product of Phi over block X_i; family prod_i Lambda_i^{eps_i}.
/// Every block's subspaces must sum to the whole space.
inline CertificateFamily build_lambda(const PhiSystem& sys, const std::vector<std::vector<std::size_t>>& partition) {
  detail::require_conditions(sys);
  std::set<std::size_t> seen;
  std::vector<Matrix> lambdas;
  for (auto block : partition) {
    if (block.empty()) throw Error(ErrorKind::PartitionInvalid, "empty block");
    std::sort(block.begin(), block.end());
    Matrix acc = Matrix::identity(sys.field, sys.ell);
    std::vector<Subspace> parts;
    for (auto i : block) {
      detail::require_index(sys, i);
      if (!seen.insert(i).second) throw Error(ErrorKind::PartitionInvalid, "blocks overlap at " + std::to_string(i + 1));
      acc = acc * sys.phi(i);
      parts.push_back(sys.s(i));
    }
    if (!sum_all(parts, sys.field, sys.ell).is_full()) throw Error(ErrorKind::SumNotFull, "block subspaces do not span the space");
    lambdas.push_back(std::move(acc));
  }
  CertificateFamily fam{FamilyKind::Lambda, {}, std::size_t{1} << partition.size()};
  for (auto& [m, mask] : detail::epsilon_products(lambdas, sys.field, sys.ell)) {
    std::vector<std::size_t> idx;
    for (std::size_t b = 0; b < partition.size(); ++b)
      if ((mask >> (partition.size() - 1 - b)) & 1) idx.insert(idx.end(), partition[b].begin(), partition[b].end());
    fam.members.push_back({std::move(m), detail::bits(mask, partition.size()), std::move(idx)});
  }
  detail::verify_independent(fam);
  return fam;
}

inline constexpr std::size_t kMaxGammaTuples = 1'000'000;

/// Products Phi_{i_1} ... Phi_{i_t} over tuples of O_1 x ... x O_t whose
/// subspaces have a nonzero common intersection.
inline CertificateFamily build_gamma(const PhiSystem& sys, const std::vector<std::vector<std::size_t>>& partition) {
  detail::require_conditions(sys);
  if (partition.empty()) throw Error(ErrorKind::PartitionInvalid, "empty partition");
  const auto width = partition.front().size();
  std::set<std::size_t> seen;
  for (const auto& block : partition) {
    if (block.size() != width) throw Error(ErrorKind::UnequalParts, "blocks must be equally sized");
    if (block.empty()) throw Error(ErrorKind::PartitionInvalid, "empty block");
    for (auto i : block) {
      detail::require_index(sys, i);
      if (!seen.insert(i).second) throw Error(ErrorKind::PartitionInvalid, "blocks overlap at " + std::to_string(i + 1));
    }
  }
  const auto t = partition.size();
  double total = 1;
  for (std::size_t b = 0; b < t; ++b) total *= double(width);
  if (total > double(kMaxGammaTuples)) throw Error(ErrorKind::TooLarge, "too many tuples to enumerate");

  CertificateFamily fam{FamilyKind::Gamma, {}, 0};
  std::vector<std::size_t> pos(t, 0);
  while (true) {
    std::vector<std::size_t> tuple(t);
    for (std::size_t b = 0; b < t; ++b) tuple[b] = partition[b][pos[b]];
    Subspace common = sys.s(tuple[0]);
    for (std::size_t b = 1; b < t && !common.is_zero(); ++b) common = intersect(common, sys.s(tuple[b]));
    if (!common.is_zero()) {
      Matrix acc = Matrix::identity(sys.field, sys.ell);
      for (auto i : tuple) acc = acc * sys.phi(i);
      fam.members.push_back({std::move(acc), detail::tuple_label(tuple), tuple});
    }
    std::size_t b = t;
    while (b > 0 && ++pos[b - 1] == width) pos[--b] = 0;
    if (b == 0) break;
  }
  fam.claim = fam.members.size();
  detail::verify_independent(fam);
  return fam;
}

/// {I, Phi_1, ..., Phi_m}.
inline CertificateFamily build_identity_theta(const PhiSystem& sys) {
  detail::require_conditions(sys);
  CertificateFamily fam{FamilyKind::IdentityTheta, {}, sys.size() + 1};
  fam.members.push_back({Matrix::identity(sys.field, sys.ell), "I", {}});
  for (std::size_t i = 0; i < sys.size(); ++i) fam.members.push_back({sys.phi(i), detail::tuple_label({i}), {i}});
  detail::verify_independent(fam);
  return fam;
}

struct SumDimCheck {
  std::size_t dim = 0;
  std::size_t bound = 0;
  bool ok = false;
};

/// ceil((1 - ((r-1)/r)^n) * ell), computed exactly.
inline std::size_t sum_dim_bound(std::size_t ell, std::size_t r, std::size_t n) {
  using boost::multiprecision::cpp_int;
  cpp_int num = 1, den = 1;
  for (std::size_t i = 0; i < n; ++i) {
    num *= (r - 1);
    den *= r;
  }
  // ell - floor(ell * (r-1)^n / r^n)
  const cpp_int lost = cpp_int(ell) * num / den;
  return ell - static_cast<std::size_t>(lost);
}

/// Dimension of S_{i_1} + ... + S_{i_n} against its lower bound.
inline SumDimCheck sum_dim_check(const PhiSystem& sys, const std::vector<std::size_t>& indices) {
  sys.validate();
  std::vector<Subspace> parts;
  for (auto i : indices) {
    detail::require_index(sys, i);
    parts.push_back(sys.s(i));
  }
  SumDimCheck out;
  out.dim = sum_all(parts, sys.field, sys.ell).dim();
  out.bound = sum_dim_bound(sys.ell, sys.r, indices.size());
  out.ok = out.dim >= out.bound;
  return out;
}

}  // namespace msrlab

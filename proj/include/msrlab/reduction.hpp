#pragma once

// Helper-independent operator/subspace systems and the reduction that
// produces them from a two-parity code with a valid repair scheme.

#include <msrlab/code.hpp>
#include <msrlab/repair.hpp>
#include <msrlab/subspace.hpp>

#include <optional>
#include <vector>

namespace msrlab {

struct PhiPair {
  Matrix phi;
  Subspace s;

  friend bool operator==(const PhiPair&, const PhiPair&) = default;
};

/// Operators Phi_i with subspaces S_i of dimension ell/r. Indices in `pairs`
/// are the node labels.
struct PhiSystem {
  Field field;
  std::size_t ell = 1;
  std::size_t r = 2;
  std::vector<PhiPair> pairs;

  std::size_t size() const { return pairs.size(); }
  const Matrix& phi(std::size_t i) const { return pairs.at(i).phi; }
  const Subspace& s(std::size_t i) const { return pairs.at(i).s; }

  void validate() const {
    if (r == 0 || ell % r != 0) throw Error(ErrorKind::InvalidParams, "r must divide ell");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const auto& [phi, s] = pairs[i];
      if (!(phi.field() == field) || !(s.field() == field)) throw Error(ErrorKind::FieldMismatch, "pair over another field");
      if (phi.rows() != ell || phi.cols() != ell) throw Error(ErrorKind::ShapeMismatch, "operator must be ell x ell");
      if (s.ambient() != ell) throw Error(ErrorKind::ShapeMismatch, "subspace ambient must be ell");
      if (s.dim() != ell / r) {
        throw Error(ErrorKind::ShapeMismatch, "subspace " + std::to_string(i) + " has dimension " + std::to_string(s.dim()) +
                                                  ", expected " + std::to_string(ell / r));
      }
      if (!is_invertible(phi)) throw Error(ErrorKind::SingularMatrix, "operator " + std::to_string(i) + " is singular");
    }
  }

  friend bool operator==(const PhiSystem& a, const PhiSystem& b) {
    return a.field == b.field && a.ell == b.ell && a.r == b.r && a.pairs == b.pairs;
  }
};

struct ConditionViolation {
  enum class Kind {
    Invariance,    // S_i * op_j != S_i
    Intersection,  // S_i * Phi_i meets S_i nontrivially
    DeficientSum,  // images fail to span the space
  } kind;
  std::size_t i = 0;
  std::size_t j = 0;      // operator owner (Invariance)
  std::size_t parity = 0; // general form only
  std::size_t dim = 0;    // offending dimension
};

struct ConditionCheck {
  bool ok = false;
  std::vector<ConditionViolation> violations;
};

/// S_i Phi_j = S_i for distinct i, j and S_i Phi_i meets S_i only in zero.
inline ConditionCheck check_sc(const PhiSystem& sys) {
  sys.validate();
  ConditionCheck out;
  for (std::size_t i = 0; i < sys.size(); ++i) {
    for (std::size_t j = 0; j < sys.size(); ++j) {
      if (i == j) continue;
      if (!(sys.s(i).apply(sys.phi(j)) == sys.s(i))) out.violations.push_back({ConditionViolation::Kind::Invariance, i, j, 0, 0});
    }
    const auto meet = intersect(sys.s(i).apply(sys.phi(i)), sys.s(i));
    if (!meet.is_zero()) out.violations.push_back({ConditionViolation::Kind::Intersection, i, i, 0, meet.dim()});
  }
  out.ok = out.violations.empty();
  return out;
}

/// Without a grid: the two-parity form, S_i Phi_j = S_i and S_i Phi_i (+) S_i = F^ell.
/// With an r x size() grid of operators: the general form, S_i A_{t,j} = S_i
/// for every t and j != i, and sum_u S_i A_{u,i} = F^ell.
inline ConditionCheck check_constant_conditions(const PhiSystem& sys,
                                                const std::optional<std::vector<std::vector<Matrix>>>& grid = std::nullopt) {
  sys.validate();
  ConditionCheck out;
  const auto k = sys.size();
  if (!grid) {
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j && !(sys.s(i).apply(sys.phi(j)) == sys.s(i)))
          out.violations.push_back({ConditionViolation::Kind::Invariance, i, j, 0, 0});
      }
      const auto img = sys.s(i).apply(sys.phi(i));
      const auto meet = intersect(img, sys.s(i));
      const auto total = sum(img, sys.s(i));
      if (!meet.is_zero() || !total.is_full())
        out.violations.push_back({ConditionViolation::Kind::DeficientSum, i, i, 0, total.dim()});
    }
  } else {
    const auto& g = *grid;
    if (g.size() != sys.r) throw Error(ErrorKind::ShapeMismatch, "grid must have r rows");
    for (const auto& row : g) {
      if (row.size() != k) throw Error(ErrorKind::ShapeMismatch, "grid must have one column per pair");
      for (const auto& a : row)
        if (a.rows() != sys.ell || a.cols() != sys.ell) throw Error(ErrorKind::ShapeMismatch, "grid operators must be ell x ell");
    }
    for (std::size_t i = 0; i < k; ++i) {
      std::vector<Subspace> images;
      for (std::size_t t = 0; t < sys.r; ++t) {
        for (std::size_t j = 0; j < k; ++j) {
          if (i != j && !(sys.s(i).apply(g[t][j]) == sys.s(i)))
            out.violations.push_back({ConditionViolation::Kind::Invariance, i, j, t, 0});
        }
        images.push_back(sys.s(i).apply(g[t][i]));
      }
      const auto total = sum_all(images, sys.field, sys.ell);
      if (!total.is_full()) out.violations.push_back({ConditionViolation::Kind::DeficientSum, i, i, 0, total.dim()});
    }
  }
  out.ok = out.violations.empty();
  return out;
}

struct ThetaReduction {
  PhiSystem system;
  std::vector<std::size_t> labels;  // code node index behind each pair
  std::size_t anchor = 0;
};

/// Theta_i = A_{1,i} A_{2,i}^{-1} A_{2,a} A_{1,a}^{-1} with S_i = S_{i,k+1}, for
/// every systematic i other than the anchor a (default: the last one).
inline ThetaReduction theta_reduce(const ArrayCode& code, const RepairScheme& scheme,
                                   std::optional<std::size_t> anchor = std::nullopt) {
  const auto& p = code.params();
  if (p.r != 2) throw Error(ErrorKind::RequiresTwoParities, "theta reduction needs exactly two parities");
  const std::size_t a = anchor.value_or(p.k - 1);
  if (a >= p.k) throw Error(ErrorKind::IndexOutOfRange, "anchor must be a systematic node");
  for (std::size_t i = 0; i < p.k; ++i) {
    if (i == a && !scheme.has(i)) continue;
    if (!scheme.has(i)) throw Error(ErrorKind::SchemeInvalid, "scheme lacks node " + std::to_string(i));
    if (!verify_scheme(code, scheme, i).ok) throw Error(ErrorKind::SchemeInvalid, "scheme fails for node " + std::to_string(i));
  }
  const Matrix tail = code.a(1, a) * invert(code.a(0, a));
  ThetaReduction out;
  out.anchor = a;
  out.system.field = code.field();
  out.system.ell = p.ell;
  out.system.r = p.r;
  for (std::size_t i = 0; i < p.k; ++i) {
    if (i == a) continue;
    Matrix theta = code.a(0, i) * invert(code.a(1, i)) * tail;
    out.system.pairs.push_back({std::move(theta), Subspace::span(scheme.node(i).helper(p.k))});
    out.labels.push_back(i);
  }
  if (!check_sc(out.system).ok) throw Error(ErrorKind::ConditionsViolated, "theta system fails the helper-independent conditions");
  return out;
}

struct NormalizedCode {
  ArrayCode code;
  std::vector<Matrix> phis;             // A'_{1,j}
  std::vector<Matrix> coordinate_change; // A_{2,j}^{-1}, applied to node j's coordinates
};

/// Re-coordinatizes each systematic node by v'_j = A_{2,j} v_j so that every
/// second-parity matrix becomes the identity; A'_{t,j} = A_{t,j} A_{2,j}^{-1}.
inline NormalizedCode normalize_identity_parity(const ArrayCode& code) {
  const auto& p = code.params();
  if (p.r < 2) throw Error(ErrorKind::RequiresTwoParities, "normalization targets the second parity");
  std::vector<Matrix> change;
  for (std::size_t j = 0; j < p.k; ++j) {
    try {
      change.push_back(invert(code.a(1, j)));
    } catch (const Error&) {
      throw Error(ErrorKind::SingularEncodingMatrix, "A_{2," + std::to_string(j + 1) + "} is singular");
    }
  }
  std::vector<std::vector<Matrix>> enc(p.r, std::vector<Matrix>(p.k));
  for (std::size_t t = 0; t < p.r; ++t)
    for (std::size_t j = 0; j < p.k; ++j) enc[t][j] = t == 1 ? Matrix::identity(code.field(), p.ell) : code.a(t, j) * change[j];
  std::vector<Matrix> phis = enc[0];
  return {ArrayCode(p, code.field(), std::move(enc)), std::move(phis), std::move(change)};
}

/// Carries a repair scheme across normalize_identity_parity: systematic
/// helpers transmit S_{i,j} A_{2,j}^{-1}; parity transmissions are unchanged.
inline RepairScheme transform_scheme(const RepairScheme& scheme, const NormalizedCode& norm) {
  RepairScheme out;
  const auto k = norm.code.params().k;
  for (const auto& [i, nr] : scheme.nodes()) {
    NodeRepair t = nr;
    for (std::size_t j = 0; j < k && j < t.helpers.size(); ++j)
      if (t.helpers[j]) t.helpers[j] = *t.helpers[j] * norm.coordinate_change[j];
    out.set(std::move(t));
  }
  return out;
}

}  // namespace msrlab

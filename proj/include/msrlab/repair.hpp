#pragma once

// Repair of a failed systematic node from all n-1 surviving nodes. Helper j
// transmits S_{i,j} * v_j where S_{i,j} is an (ell/r) x ell matrix; the stored
// rows of that matrix are the transmission, not just its span.

#include <msrlab/code.hpp>
#include <msrlab/subspace.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace msrlab {

/// Transmission matrices for one failed node, indexed by helper node.
struct NodeRepair {
  std::size_t failed = 0;
  std::vector<std::optional<Matrix>> helpers;  // size n, empty at `failed`

  const Matrix& helper(std::size_t j) const {
    if (j >= helpers.size() || !helpers[j]) throw Error(ErrorKind::IndexOutOfRange, "no transmission for helper " + std::to_string(j));
    return *helpers[j];
  }
};

class RepairScheme {
 public:
  RepairScheme() = default;

  void set(NodeRepair node) {
    const auto i = node.failed;
    nodes_.insert_or_assign(i, std::move(node));
  }

  bool has(std::size_t failed) const { return nodes_.count(failed) != 0; }
  const NodeRepair& node(std::size_t failed) const {
    auto it = nodes_.find(failed);
    if (it == nodes_.end()) throw Error(ErrorKind::IndexOutOfRange, "scheme has no entry for node " + std::to_string(failed));
    return it->second;
  }
  const std::map<std::size_t, NodeRepair>& nodes() const { return nodes_; }

  friend bool operator==(const RepairScheme& a, const RepairScheme& b) {
    if (a.nodes_.size() != b.nodes_.size()) return false;
    for (const auto& [i, na] : a.nodes_) {
      auto it = b.nodes_.find(i);
      if (it == b.nodes_.end() || it->second.helpers != na.helpers) return false;
    }
    return true;
  }

 private:
  std::map<std::size_t, NodeRepair> nodes_;
};

/// Checks transmission shapes: every helper present with an (ell/r) x ell matrix of full row rank.
inline void check_node_shape(const ArrayCode& code, const NodeRepair& nr) {
  const auto& p = code.params();
  if (nr.failed >= p.k) throw Error(ErrorKind::IndexOutOfRange, "only systematic nodes are repaired");
  if (nr.helpers.size() != p.n()) throw Error(ErrorKind::ShapeMismatch, "scheme needs an entry for every node");
  const auto d = p.repair_dim();
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (j == nr.failed) continue;
    if (!nr.helpers[j]) throw Error(ErrorKind::ShapeMismatch, "missing helper " + std::to_string(j));
    const auto& s = *nr.helpers[j];
    if (!(s.field() == code.field())) throw Error(ErrorKind::FieldMismatch, "scheme over another field");
    if (s.rows() != d || s.cols() != p.ell) throw Error(ErrorKind::ShapeMismatch, "transmission matrix must be (ell/r) x ell");
    if (rank(s) != d) throw Error(ErrorKind::ShapeMismatch, "transmission matrix of helper " + std::to_string(j) + " is rank deficient");
  }
}

struct SchemeViolation {
  enum class Kind { Alignment, DeficientSum } kind;
  std::size_t helper = 0;  // systematic helper j (Alignment)
  std::size_t parity = 0;  // parity t (Alignment)
  std::size_t sum_dim = 0; // achieved dimension (DeficientSum)
};

struct SchemeCheck {
  bool ok = false;
  std::vector<SchemeViolation> violations;
};

/// Interference alignment: span(S_{i,j}) = span(S_{i,k+t} A_{t,j}) for every
/// systematic helper j != i and parity t; and the parity images
/// S_{i,k+t} A_{t,i} must sum to the whole space.
inline SchemeCheck verify_scheme(const ArrayCode& code, const RepairScheme& scheme, std::size_t i) {
  const auto& p = code.params();
  const auto& nr = scheme.node(i);
  check_node_shape(code, nr);
  SchemeCheck out;
  for (std::size_t j = 0; j < p.k; ++j) {
    if (j == i) continue;
    const auto target = Subspace::span(nr.helper(j));
    for (std::size_t t = 0; t < p.r; ++t) {
      if (!(Subspace::span(nr.helper(p.k + t) * code.a(t, j)) == target)) {
        out.violations.push_back({SchemeViolation::Kind::Alignment, j, t, 0});
      }
    }
  }
  std::vector<Matrix> images;
  for (std::size_t t = 0; t < p.r; ++t) images.push_back(nr.helper(p.k + t) * code.a(t, i));
  const auto d = rank(Matrix::vstack(images));
  if (d != p.ell) out.violations.push_back({SchemeViolation::Kind::DeficientSum, 0, 0, d});
  out.ok = out.violations.empty();
  return out;
}

struct RepairTranscript {
  std::size_t failed = 0;
  std::vector<std::optional<Matrix>> transmitted;  // (ell/r) x 1 per helper
  NodeVector recovered;
  std::size_t symbols = 0;
};

/// Optimal repair bandwidth (n-1) * ell / r in symbols.
inline std::size_t bandwidth_of(const CodeParams& p) {
  p.validate();
  return (p.n() - 1) * (p.ell / p.r);
}

/// Runs the repair of node i using only what the helpers transmit.
/// `nodes` must hold all n node vectors and be consistent with the code.
inline RepairTranscript execute_repair(const ArrayCode& code, const RepairScheme& scheme, std::size_t i,
                                       std::span<const NodeVector> nodes) {
  const auto& p = code.params();
  if (nodes.size() != p.n()) throw Error(ErrorKind::ShapeMismatch, "need all n node vectors");
  {
    DataFill sys;
    sys.systematic.assign(nodes.begin(), nodes.begin() + p.k);
    const auto enc = encode(code, sys);
    for (std::size_t u = p.k; u < p.n(); ++u)
      if (!(enc[u] == nodes[u])) throw Error(ErrorKind::InconsistentNodeData, "parity node " + std::to_string(u) + " disagrees with the data");
  }
  const auto check = verify_scheme(code, scheme, i);
  if (!check.ok) throw Error(ErrorKind::SchemeInvalid, "scheme fails the subspace properties for node " + std::to_string(i));
  const auto& nr = scheme.node(i);

  RepairTranscript tr;
  tr.failed = i;
  tr.transmitted.resize(p.n());
  for (std::size_t j = 0; j < p.n(); ++j) {
    if (j == i) continue;
    tr.transmitted[j] = nr.helper(j) * nodes[j];
    tr.symbols += tr.transmitted[j]->rows();
  }

  // Remove systematic interference from each parity transmission:
  // S_{i,k+t} A_{t,j} = C_{j,t} S_{i,j}, so the j-term equals C_{j,t} y_j.
  std::vector<Matrix> lhs, rhs;
  for (std::size_t t = 0; t < p.r; ++t) {
    Matrix residual = *tr.transmitted[p.k + t];
    for (std::size_t j = 0; j < p.k; ++j) {
      if (j == i) continue;
      auto c = solve_left(nr.helper(j), nr.helper(p.k + t) * code.a(t, j));
      if (!c) throw Error(ErrorKind::SchemeInvalid, "no change of basis for helper " + std::to_string(j));
      residual = residual - *c * *tr.transmitted[j];
    }
    lhs.push_back(nr.helper(p.k + t) * code.a(t, i));
    rhs.push_back(std::move(residual));
  }
  tr.recovered = solve(Matrix::vstack(lhs), Matrix::vstack(rhs));
  return tr;
}

}  // namespace msrlab

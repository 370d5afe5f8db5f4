#pragma once

// (n, k, ell) MDS array codes. Nodes 0..k-1 are systematic; node k+t holds
// parity t = sum_j A[t][j] * v_j. Node indices are zero-based in the library.

#include <msrlab/matrix.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace msrlab {

struct CodeParams {
  std::size_t ell = 1;
  std::size_t k = 1;
  std::size_t r = 1;

  std::size_t n() const { return k + r; }
  std::size_t repair_dim() const { return ell / r; }

  void validate() const {
    if (ell < 1 || k < 1 || r < 1) throw Error(ErrorKind::InvalidParams, "ell, k and r must be positive");
    if (ell % r != 0) throw Error(ErrorKind::InvalidParams, "r must divide ell");
  }

  friend bool operator==(const CodeParams&, const CodeParams&) = default;
};

/// A node vector is an ell x 1 column.
using NodeVector = Matrix;

struct DataFill {
  std::vector<NodeVector> systematic;
};

class ArrayCode {
 public:
  ArrayCode(CodeParams params, Field field, std::vector<std::vector<Matrix>> encoding)
      : params_(params), field_(std::move(field)), encoding_(std::move(encoding)) {
    params_.validate();
    if (encoding_.size() != params_.r) throw Error(ErrorKind::ShapeMismatch, "encoding grid needs r rows");
    for (const auto& row : encoding_) {
      if (row.size() != params_.k) throw Error(ErrorKind::ShapeMismatch, "encoding grid needs k columns");
      for (const auto& a : row) {
        if (!(a.field() == field_)) throw Error(ErrorKind::FieldMismatch, "encoding matrix over another field");
        if (a.rows() != params_.ell || a.cols() != params_.ell) throw Error(ErrorKind::ShapeMismatch, "encoding matrices must be ell x ell");
      }
    }
  }

  const CodeParams& params() const { return params_; }
  const Field& field() const { return field_; }
  /// A_{t,j}: parity t, systematic node j.
  const Matrix& a(std::size_t t, std::size_t j) const { return encoding_.at(t).at(j); }
  const std::vector<std::vector<Matrix>>& encoding() const { return encoding_; }

  bool is_systematic(std::size_t node) const { return node < params_.k; }

  /// The ell x k*ell block mapping stacked systematic data to a node's contents.
  Matrix node_map(std::size_t node) const {
    const auto ell = params_.ell;
    Matrix m(field_, ell, params_.k * ell);
    if (is_systematic(node)) {
      for (std::size_t i = 0; i < ell; ++i) m(i, node * ell + i) = 1;
      return m;
    }
    const auto t = node - params_.k;
    for (std::size_t j = 0; j < params_.k; ++j) {
      const auto& a = encoding_[t][j];
      for (std::size_t r = 0; r < ell; ++r)
        for (std::size_t c = 0; c < ell; ++c) m(r, j * ell + c) = a(r, c);
    }
    return m;
  }

  /// k*ell square matrix mapping data to the given nodes, stacked in order.
  Matrix subset_map(std::span<const std::size_t> nodes) const {
    std::vector<Matrix> parts;
    parts.reserve(nodes.size());
    for (auto u : nodes) parts.push_back(node_map(u));
    return Matrix::vstack(parts);
  }

  friend bool operator==(const ArrayCode& x, const ArrayCode& y) {
    return x.params_ == y.params_ && x.field_ == y.field_ && x.encoding_ == y.encoding_;
  }

 private:
  CodeParams params_;
  Field field_;
  std::vector<std::vector<Matrix>> encoding_;
};

inline void check_data(const ArrayCode& code, const DataFill& data) {
  if (data.systematic.size() != code.params().k) throw Error(ErrorKind::ShapeMismatch, "data needs k vectors");
  for (const auto& v : data.systematic) {
    if (!(v.field() == code.field())) throw Error(ErrorKind::FieldMismatch, "data over another field");
    if (v.rows() != code.params().ell || v.cols() != 1) throw Error(ErrorKind::ShapeMismatch, "data vectors must be ell x 1");
  }
}

/// All n node contents: systematic vectors verbatim, then parities.
inline std::vector<NodeVector> encode(const ArrayCode& code, const DataFill& data) {
  check_data(code, data);
  const auto& p = code.params();
  std::vector<NodeVector> nodes = data.systematic;
  for (std::size_t t = 0; t < p.r; ++t) {
    Matrix acc(code.field(), p.ell, 1);
    for (std::size_t j = 0; j < p.k; ++j) acc = acc + code.a(t, j) * data.systematic[j];
    nodes.push_back(std::move(acc));
  }
  return nodes;
}

inline std::size_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::size_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > (unsigned __int128)SIZE_MAX) return SIZE_MAX;
  }
  return static_cast<std::size_t>(r);
}

struct MdsReport {
  bool mds = false;
  std::size_t subsets_checked = 0;
  std::vector<std::vector<std::size_t>> failing;  // sorted lexicographically
};

inline constexpr std::size_t kMaxMdsSubsets = 1'000'000;

/// Exhaustive k-subset test: every k nodes must determine the data.
inline MdsReport verify_mds(const ArrayCode& code) {
  const auto& p = code.params();
  const auto n = p.n();
  if (binomial(n, p.k) > kMaxMdsSubsets) throw Error(ErrorKind::TooManySubsets, "C(n,k) exceeds the enumeration cap");
  MdsReport rep;
  std::vector<std::size_t> subset(p.k);
  for (std::size_t i = 0; i < p.k; ++i) subset[i] = i;
  const auto full = p.k * p.ell;
  while (true) {
    ++rep.subsets_checked;
    if (rank(code.subset_map(subset)) != full) rep.failing.push_back(subset);
    // next combination
    std::size_t i = p.k;
    while (i > 0 && subset[i - 1] == n - p.k + i - 1) --i;
    if (i == 0) break;
    ++subset[i - 1];
    for (std::size_t j = i; j < p.k; ++j) subset[j] = subset[j - 1] + 1;
  }
  rep.mds = rep.failing.empty();
  return rep;
}

/// Recovers the data from exactly k distinct (node index, contents) pairs.
inline DataFill reconstruct(const ArrayCode& code, std::span<const std::pair<std::size_t, NodeVector>> surviving) {
  const auto& p = code.params();
  if (surviving.size() != p.k) throw Error(ErrorKind::ShapeMismatch, "reconstruction needs exactly k nodes");
  std::vector<std::size_t> idx;
  std::vector<Matrix> values;
  for (const auto& [u, v] : surviving) {
    if (u >= p.n()) throw Error(ErrorKind::IndexOutOfRange, "node index out of range");
    if (std::find(idx.begin(), idx.end(), u) != idx.end()) throw Error(ErrorKind::ShapeMismatch, "duplicate node index");
    if (v.rows() != p.ell || v.cols() != 1) throw Error(ErrorKind::ShapeMismatch, "node vectors must be ell x 1");
    idx.push_back(u);
    values.push_back(v);
  }
  const Matrix x = solve(code.subset_map(idx), Matrix::vstack(values));
  DataFill out;
  for (std::size_t j = 0; j < p.k; ++j) out.systematic.push_back(x.row_block(j * p.ell, (j + 1) * p.ell));
  return out;
}

}  // namespace msrlab

#pragma once

#include <msrlab/matrix.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

namespace msrlab {

/// A subspace of F^ambient stored as its reduced row-echelon basis with no
/// zero rows. Because the basis is canonical, structural equality of two
/// Subspace values is equality of the subspaces.
class Subspace {
 public:
  /// Row span of m.
  static Subspace span(const Matrix& m) {
    auto res = rref(m);
    return Subspace(res.form.row_block(0, res.rank), m.cols());
  }

  static Subspace zero(const Field& f, std::size_t ambient) { return Subspace(Matrix(f, 0, ambient), ambient); }
  static Subspace full(const Field& f, std::size_t ambient) { return Subspace(Matrix::identity(f, ambient), ambient); }

  const Matrix& basis() const { return basis_; }
  const Field& field() const { return basis_.field(); }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  bool is_zero() const { return dim() == 0; }
  bool is_full() const { return dim() == ambient_; }

  bool contains(const Subspace& other) const {
    check_compatible(*this, other);
    return sum(*this, other).dim() == dim();
  }

  friend Subspace sum(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const Matrix parts[] = {a.basis_, b.basis_};
    return span(Matrix::vstack(parts));
  }

  /// Zassenhaus: row-reduce [[A, A], [B, 0]]; rows whose left half vanishes
  /// carry a basis of the intersection in their right half.
  friend Subspace intersect(const Subspace& a, const Subspace& b) {
    check_compatible(a, b);
    const Field& f = a.field();
    const auto n = a.ambient_;
    if (a.is_zero() || b.is_zero()) return zero(f, n);
    const Matrix top[] = {a.basis_, a.basis_};
    const Matrix bottom[] = {b.basis_, Matrix(f, b.dim(), n)};
    const Matrix blocks[] = {Matrix::hstack(top), Matrix::hstack(bottom)};
    auto res = rref(Matrix::vstack(blocks));
    std::size_t first = res.rank;
    for (std::size_t i = 0; i < res.rank; ++i) {
      if (res.pivots[i] >= n) {
        first = i;
        break;
      }
    }
    return span(res.form.row_block(first, res.rank).col_block(n, 2 * n));
  }

  /// Image of the subspace under right multiplication: span(basis * m).
  Subspace apply(const Matrix& m) const {
    Matrix::check_field(basis_, m);
    if (!m.square() || m.rows() != ambient_) throw Error(ErrorKind::DimensionMismatch, "operator order differs from ambient dimension");
    if (is_zero()) return *this;
    return span(basis_ * m);
  }

  /// True when S*m is contained in S.
  bool invariant_under(const Matrix& m) const { return contains(apply(m)); }

  friend bool operator==(const Subspace& a, const Subspace& b) { return a.ambient_ == b.ambient_ && a.basis_ == b.basis_; }
  friend bool operator<(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) return a.ambient_ < b.ambient_;
    return a.basis_ < b.basis_;
  }

 private:
  Subspace(Matrix basis, std::size_t ambient) : basis_(std::move(basis)), ambient_(ambient) {}

  static void check_compatible(const Subspace& a, const Subspace& b) {
    if (!(a.field() == b.field())) throw Error(ErrorKind::FieldMismatch, "subspaces over different fields");
    if (a.ambient_ != b.ambient_) throw Error(ErrorKind::AmbientMismatch, "ambient dimensions differ");
  }

  Matrix basis_;
  std::size_t ambient_;
};

inline Subspace sum_all(std::span<const Subspace> parts, const Field& f, std::size_t ambient) {
  Subspace acc = Subspace::zero(f, ambient);
  for (const auto& s : parts) acc = sum(acc, s);
  return acc;
}

/// Linear independence of a family of equal-order square matrices, decided by
/// flattening each to a row and comparing rank with the family size.
inline bool family_independent(std::span<const Matrix> mats) {
  if (mats.empty()) return true;
  const auto& first = mats.front();
  for (const auto& m : mats) {
    Matrix::check_field(first, m);
    if (m.rows() != first.rows() || m.cols() != first.cols()) throw Error(ErrorKind::ShapeMismatch, "family members differ in shape");
  }
  if (mats.size() > first.rows() * first.cols()) return false;
  std::vector<Matrix> rows;
  rows.reserve(mats.size());
  for (const auto& m : mats) rows.push_back(m.flattened());
  return rank(Matrix::vstack(rows)) == mats.size();
}

/// Rank of the flattened family.
inline std::size_t family_rank(std::span<const Matrix> mats) {
  if (mats.empty()) return 0;
  std::vector<Matrix> rows;
  for (const auto& m : mats) rows.push_back(m.flattened());
  return rank(Matrix::vstack(rows));
}

/// A nonzero coefficient vector c with sum_i c_i * mats[i] = 0, if the family is dependent.
inline std::optional<std::vector<FieldElem>> family_dependency(std::span<const Matrix> mats) {
  if (mats.empty()) return std::nullopt;
  std::vector<Matrix> rows;
  for (const auto& m : mats) rows.push_back(m.flattened());
  // c * M = 0  <=>  M^T c^T = 0
  const Matrix k = kernel(Matrix::vstack(rows).transpose());
  if (k.cols() == 0) return std::nullopt;
  std::vector<FieldElem> c(mats.size());
  for (std::size_t i = 0; i < mats.size(); ++i) c[i] = k(i, 0);
  return c;
}

}  // namespace msrlab

template <>
struct std::hash<msrlab::Subspace> {
  std::size_t operator()(const msrlab::Subspace& s) const noexcept {
    std::size_t h = s.ambient();
    for (auto v : s.basis().data()) h = h * 1000003u ^ std::hash<std::uint64_t>{}(v);
    return h;
  }
};

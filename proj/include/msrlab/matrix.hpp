#pragma once

#include <msrlab/error.hpp>
#include <msrlab/field.hpp>

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace msrlab {

/// Dense row-major matrix over a finite field.
class Matrix {
 public:
  Matrix() = default;

  Matrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<FieldElem> data)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorKind::ShapeMismatch, "entry count does not match shape");
    for (auto v : data_) {
      if (!field_.valid(v)) throw Error(ErrorKind::ShapeMismatch, "entry " + std::to_string(v) + " outside " + field_.name());
    }
  }

  Matrix(Field field, std::initializer_list<std::initializer_list<FieldElem>> rows) : field_(std::move(field)) {
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (const auto& r : rows) {
      if (r.size() != cols_) throw Error(ErrorKind::ShapeMismatch, "ragged matrix literal");
      for (auto v : r) {
        if (!field_.valid(v)) throw Error(ErrorKind::ShapeMismatch, "entry outside field");
        data_.push_back(v);
      }
    }
  }

  static Matrix identity(const Field& f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix zero(const Field& f, std::size_t r, std::size_t c) { return Matrix(f, r, c); }

  static Matrix scalar(const Field& f, std::size_t n, FieldElem c) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = c;
    return m;
  }

  static Matrix row_vector(const Field& f, std::vector<FieldElem> v) {
    const auto n = v.size();
    return Matrix(f, 1, n, std::move(v));
  }

  static Matrix column_vector(const Field& f, std::vector<FieldElem> v) {
    const auto n = v.size();
    return Matrix(f, n, 1, std::move(v));
  }

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  const std::vector<FieldElem>& data() const { return data_; }

  FieldElem& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElem operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const FieldElem> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const {
    return std::all_of(data_.begin(), data_.end(), [](FieldElem v) { return v == 0; });
  }

  bool is_identity() const {
    if (!square()) return false;
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c)
        if ((*this)(r, c) != (r == c ? 1u : 0u)) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.field_ == b.field_ && a.data_ == b.data_;
  }

  /// Lexicographic order on (rows, cols, entries); used for canonical orderings.
  friend bool operator<(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_) return a.rows_ < b.rows_;
    if (a.cols_ != b.cols_) return a.cols_ < b.cols_;
    return a.data_ < b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.cols_ != b.rows_) throw Error(ErrorKind::DimensionMismatch, "inner dimensions differ");
    const Field& f = a.field_;
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const FieldElem x = a(i, k);
        if (x == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const FieldElem y = b(k, j);
          if (y != 0) c(i, j) = f.add(c(i, j), f.mul(x, y));
        }
      }
    }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "shapes differ");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.add(a.data_[i], b.data_[i]);
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    check_field(a, b);
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::DimensionMismatch, "shapes differ");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] = a.field_.sub(a.data_[i], b.data_[i]);
    return c;
  }

  Matrix scaled(FieldElem s) const {
    Matrix c = *this;
    for (auto& v : c.data_) v = field_.mul(v, s);
    return c;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  /// Rows [begin, end).
  Matrix row_block(std::size_t begin, std::size_t end) const {
    Matrix m(field_, end - begin, cols_);
    std::copy(data_.begin() + begin * cols_, data_.begin() + end * cols_, m.data_.begin());
    return m;
  }

  /// Columns [begin, end).
  Matrix col_block(std::size_t begin, std::size_t end) const {
    Matrix m(field_, rows_, end - begin);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = begin; c < end; ++c) m(r, c - begin) = (*this)(r, c);
    return m;
  }

  /// Flattens row-major into a single 1 x rows*cols row.
  Matrix flattened() const { return Matrix(field_, 1, data_.size(), data_); }

  static Matrix vstack(std::span<const Matrix> parts) {
    if (parts.empty()) throw Error(ErrorKind::ShapeMismatch, "vstack of nothing");
    const auto cols = parts.front().cols_;
    std::size_t rows = 0;
    for (const auto& p : parts) {
      check_field(parts.front(), p);
      if (p.cols_ != cols) throw Error(ErrorKind::DimensionMismatch, "vstack column mismatch");
      rows += p.rows_;
    }
    Matrix m(parts.front().field_, rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
      std::copy(p.data_.begin(), p.data_.end(), m.data_.begin() + off);
      off += p.data_.size();
    }
    return m;
  }

  static Matrix hstack(std::span<const Matrix> parts) {
    if (parts.empty()) throw Error(ErrorKind::ShapeMismatch, "hstack of nothing");
    const auto rows = parts.front().rows_;
    std::size_t cols = 0;
    for (const auto& p : parts) {
      check_field(parts.front(), p);
      if (p.rows_ != rows) throw Error(ErrorKind::DimensionMismatch, "hstack row mismatch");
      cols += p.cols_;
    }
    Matrix m(parts.front().field_, rows, cols);
    std::size_t off = 0;
    for (const auto& p : parts) {
      for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < p.cols_; ++c) m(r, off + c) = p(r, c);
      off += p.cols_;
    }
    return m;
  }

  static void check_field(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw Error(ErrorKind::FieldMismatch, a.field_.name() + " vs " + b.field_.name());
  }

 private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElem> data_;
};

struct RrefResult {
  Matrix form;
  std::size_t rank;
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

/// Reduced row-echelon form: pivots are 1 and the only nonzero in their column.
inline RrefResult rref(Matrix m) {
  const Field& f = m.field();
  std::size_t lead = 0;
  std::vector<std::size_t> pivots;
  for (std::size_t c = 0; c < m.cols() && lead < m.rows(); ++c) {
    std::size_t piv = lead;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != lead)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(lead, j));
    const FieldElem s = f.inv(m(lead, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(lead, j) = f.mul(m(lead, j), s);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead || m(r, c) == 0) continue;
      const FieldElem factor = m(r, c);
      for (std::size_t j = c; j < m.cols(); ++j) {
        if (m(lead, j) != 0) m(r, j) = f.sub(m(r, j), f.mul(factor, m(lead, j)));
      }
    }
    pivots.push_back(c);
    ++lead;
  }
  return {std::move(m), lead, std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

inline Matrix invert(const Matrix& m) {
  if (!m.square()) throw Error(ErrorKind::DimensionMismatch, "inverse of a non-square matrix");
  const auto n = m.rows();
  const Matrix parts[] = {m, Matrix::identity(m.field(), n)};
  auto res = rref(Matrix::hstack(parts));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) throw Error(ErrorKind::SingularMatrix, "matrix is singular");
  return res.form.col_block(n, 2 * n);
}

inline bool is_invertible(const Matrix& m) { return m.square() && rank(m) == m.rows(); }

/// Right null space: returns a matrix whose columns form a basis of {x : m x = 0}.
inline Matrix kernel(const Matrix& m) {
  const Field& f = m.field();
  auto res = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : res.pivots) is_pivot[p] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  Matrix k(f, m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    const auto fc = free_cols[j];
    k(fc, j) = 1;
    for (std::size_t r = 0; r < res.rank; ++r) k(res.pivots[r], j) = f.neg(res.form(r, fc));
  }
  return k;
}

/// Solves C * basis = target for C, where basis has full row rank.
/// Returns std::nullopt when some row of target is outside the row space of basis.
inline std::optional<Matrix> solve_left(const Matrix& basis, const Matrix& target) {
  Matrix::check_field(basis, target);
  if (basis.cols() != target.cols()) throw Error(ErrorKind::DimensionMismatch, "solve_left column mismatch");
  // basis^T C^T = target^T : augmented [basis^T | target^T]
  const auto d = basis.rows();
  const Matrix parts[] = {basis.transpose(), target.transpose()};
  auto res = rref(Matrix::hstack(parts));
  for (std::size_t i = 0; i < res.rank; ++i)
    if (res.pivots[i] >= d) return std::nullopt;
  if (res.rank < d) throw Error(ErrorKind::SingularSystem, "basis is rank deficient");
  // pivots are 0..d-1; solution rows read directly
  Matrix ct(basis.field(), d, target.rows());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < target.rows(); ++j) ct(i, j) = res.form(i, d + j);
  return ct.transpose();
}

/// Solves m x = b for square invertible m.
inline Matrix solve(const Matrix& m, const Matrix& b) {
  Matrix::check_field(m, b);
  if (!m.square() || m.rows() != b.rows()) throw Error(ErrorKind::DimensionMismatch, "solve shape mismatch");
  const auto n = m.rows();
  const Matrix parts[] = {m, b};
  auto res = rref(Matrix::hstack(parts));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) throw Error(ErrorKind::SingularSystem, "system is singular");
  return res.form.col_block(n, n + b.cols());
}

}  // namespace msrlab

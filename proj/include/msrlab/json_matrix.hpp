#pragma once

// JSON encodings of fields, matrices and subspaces shared by every file format.
// Matrices are arrays of rows of packed integers.

#include <msrlab/subspace.hpp>

#include <json.hpp>

namespace msrlab {

using Json = nlohmann::ordered_json;

inline Json field_to_json(const Field& f) {
  Json j;
  j["p"] = f.characteristic();
  j["m"] = f.degree();
  if (f.is_prime_field()) {
    j["reduction"] = nullptr;
  } else {
    j["reduction"] = f.reduction();
  }
  return j;
}

inline Field field_from_json(const Json& j) {
  try {
    const auto p = j.at("p").get<std::uint64_t>();
    const auto m = j.contains("m") ? j.at("m").get<std::uint32_t>() : 1u;
    std::optional<std::vector<std::uint64_t>> red;
    if (j.contains("reduction") && !j.at("reduction").is_null()) red = j.at("reduction").get<std::vector<std::uint64_t>>();
    return Field::make(p, m, red);
  } catch (const Json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string("field: ") + e.what());
  }
}

inline Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(m(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// `cols` is needed to give a shape to empty matrices.
inline Matrix matrix_from_json(const Json& j, const Field& f, std::optional<std::size_t> cols = std::nullopt) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "matrix must be an array of rows");
  const std::size_t rows = j.size();
  std::size_t width = cols.value_or(rows ? j.front().size() : 0);
  std::vector<FieldElem> data;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != width) throw Error(ErrorKind::ParseError, "matrix rows must have equal length");
    for (const auto& v : row) {
      if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
        throw Error(ErrorKind::ParseError, "matrix entries must be nonnegative integers");
      data.push_back(v.get<FieldElem>());
    }
  }
  try {
    return Matrix(f, rows, width, std::move(data));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

inline Json vector_to_json(const Matrix& column) {
  Json v = Json::array();
  for (std::size_t r = 0; r < column.rows(); ++r) v.push_back(column(r, 0));
  return v;
}

inline Matrix vector_from_json(const Json& j, const Field& f) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, "vector must be an array");
  std::vector<FieldElem> data;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw Error(ErrorKind::ParseError, "vector entries must be nonnegative integers");
    data.push_back(v.get<FieldElem>());
  }
  try {
    return Matrix::column_vector(f, std::move(data));
  } catch (const Error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
}

}  // namespace msrlab

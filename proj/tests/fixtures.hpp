#pragma once

#include <msrlab/repair.hpp>

namespace fixtures {

using namespace msrlab;

// (4,2,2) code over GF(2): p1 = v1 + v2, p2 = A v1 + v2.
inline ArrayCode fig1() {
  const auto f = Field::make(2);
  const auto I = Matrix::identity(f, 2);
  return ArrayCode({2, 2, 2}, f, {{I, I}, {Matrix{f, {{0, 1}, {1, 1}}}, I}});
}

// (6,4,2) code over GF(7).
inline ArrayCode table1() {
  const auto f = Field::make(7);
  const auto I = Matrix::identity(f, 2);
  return ArrayCode({2, 4, 2}, f,
                   {{I, I, I, I},
                    {Matrix{f, {{1, 5}, {0, 3}}}, Matrix{f, {{1, 0}, {2, 3}}}, Matrix{f, {{2, 0}, {0, 4}}},
                     Matrix{f, {{5, 0}, {0, 5}}}}});
}

/// Node-1 repair of fig1 where every helper sends its second coordinate.
inline RepairScheme fig1_second_coordinate() {
  const auto f = Field::make(2);
  NodeRepair nr;
  nr.failed = 0;
  nr.helpers.resize(4);
  for (std::size_t j = 1; j < 4; ++j) nr.helpers[j] = Matrix{f, {{0, 1}}};
  RepairScheme s;
  s.set(nr);
  return s;
}

}  // namespace fixtures

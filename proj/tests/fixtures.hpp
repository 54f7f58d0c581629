#pragma once

// Seifert matrices and Alexander polynomials of prime knots, as tabulated by
// KnotInfo (same convention: Alexander polynomial = det(V - t V^t)), together
// with the tabulated algebraic concordance order (0 encodes infinite order).

#include "algconc/matrix.hpp"
#include "algconc/poly.hpp"

#include <string>
#include <vector>

namespace fixtures {

using algconc::IntMat;
using algconc::IntPoly;

struct Knot {
  std::string name;
  IntMat v;
  IntPoly alexander;  ///< constant term first
  int order;          ///< 1, 2, 4, or 0 for infinite
  bool negative_amphicheiral = false;
};

inline const std::vector<Knot>& knots() {
  static const std::vector<Knot> table = {
      {"3_1", IntMat{{-1, 0}, {-1, -1}}, IntPoly{1, -1, 1}, 0},
      {"4_1", IntMat{{1, 0}, {-1, -1}}, IntPoly{1, -3, 1}, 2, true},
      {"6_1", IntMat{{1, 0}, {1, -2}}, IntPoly{2, -5, 2}, 1},
      {"8_17",
       IntMat{{1, 0, 0, 0, 0, 0},
              {1, 1, 0, 1, 0, 0},
              {-1, -1, -1, -1, -1, -1},
              {1, 0, 0, 1, 0, 0},
              {0, -1, 0, 0, -1, 0},
              {0, -1, 0, 0, -1, -1}},
       IntPoly{1, -4, 8, -11, 8, -4, 1}, 2, true},
      {"8_20", IntMat{{-1, -1, -1, -1}, {0, 0, -1, -1}, {0, -1, 0, -1}, {0, 0, -1, 0}}, IntPoly{1, -2, 3, -2, 1}, 1},
      {"9_24",
       IntMat{{-1, 0, 0, 0, 0, 0},
              {-1, -1, 0, 0, 0, 0},
              {-1, -1, 1, 0, -1, 0},
              {-1, -1, 1, 1, -1, 1},
              {0, 0, 0, 0, -1, 0},
              {-1, -1, 1, 0, -1, 1}},
       IntPoly{1, -5, 10, -13, 10, -5, 1}, 2},
      {"9_34",
       IntMat{{-1, 0, -1, -1, 0, 0},
              {-1, -1, -1, -1, 0, 0},
              {0, 0, -1, -1, -1, 0},
              {0, 0, 0, 1, 0, 0},
              {0, 0, 0, 1, 1, 0},
              {-1, 0, -1, 0, 0, 1}},
       IntPoly{1, -6, 16, -23, 16, -6, 1}, 4},
      {"9_46", IntMat{{1, 0, 0, 0}, {0, -1, 0, 0}, {1, 0, 1, 1}, {-1, -1, 0, 0}}, IntPoly{2, -5, 2}, 1},
      {"11a_300",
       IntMat{{-1, 0, -1, 0, 0, -1, 0, 0},
              {-1, -1, -1, 0, 0, -1, 0, 0},
              {0, 0, -1, 0, 0, -1, -1, 0},
              {-1, -1, -1, 1, 1, -1, 0, 1},
              {0, 0, 0, 0, 1, 0, 0, 0},
              {0, 0, 0, 0, 0, -1, -1, 0},
              {0, 0, 0, 0, 0, 0, 1, 0},
              {-1, -1, -1, 0, 1, 0, 0, 1}},
       IntPoly{1, -6, 17, -32, 41, -32, 17, -6, 1}, 2},
      {"12a_169", IntMat{{-1, 0, 0, 0}, {-1, -1, 0, 0}, {0, 0, 1, 0}, {1, 1, -1, 4}}, IntPoly{4, -12, 17, -12, 4}, 1},
      {"12a_990",
       IntMat{{1, 0, 0, 0, 0, 0, 0, 0},
              {1, 1, 0, 0, 1, 0, 0, 0},
              {-1, -1, -1, 0, -1, -1, 0, -1},
              {0, 0, 0, 1, 0, 0, 0, 0},
              {1, 0, 0, 0, 1, 0, 0, 0},
              {-1, -1, 0, -1, -1, -1, 0, 0},
              {1, 0, 0, 1, 1, 0, -1, 0},
              {-1, -1, 0, -1, -1, -1, 0, -1}},
       IntPoly{1, -8, 26, -48, 59, -48, 26, -8, 1}, 1, true},
      {"12a_1170",
       IntMat{{-1, -1, 0, -1, 0, 0, 0, 0},
              {0, -1, 0, 0, 0, 0, 0, 0},
              {-1, 0, 1, 0, -1, 1, 0, 0},
              {0, -1, 0, -1, 0, 0, 0, 0},
              {-1, -1, 0, -1, -1, 0, 0, 0},
              {-1, 0, 0, 0, -1, 1, 0, 0},
              {-1, 0, 1, 0, -1, 1, 1, 0},
              {1, 1, -1, 1, 1, -1, -1, 2}},
       IntPoly{2, -8, 18, -30, 37, -30, 18, -8, 2}, 2},
      {"12n_224",
       IntMat{{-1, -1, -1, -1, 0, -1},
              {0, 0, -1, -1, 0, -1},
              {0, -1, 0, -1, 0, -1},
              {0, 0, -1, 0, 0, -1},
              {0, 0, 0, 0, -1, -1},
              {0, -1, -1, -1, 0, 0}},
       IntPoly{2, -9, 18, -23, 18, -9, 2}, 1},
      {"12n_525",
       IntMat{{-1, 0, 0, 0, 1, 1},
              {0, -1, -1, 0, 0, 0},
              {0, 0, 1, 0, 0, 0},
              {0, 0, 0, 1, 0, 0},
              {0, -1, 0, 0, 1, 0},
              {0, -1, -1, 1, 0, -1}},
       IntPoly{1, -8, 28, -43, 28, -8, 1}, 2},
      {"12n_681",
       IntMat{{-1, 0, 0, 1, 1, 0, 1, 1},
              {0, -1, 0, -1, -1, 0, -1, -1},
              {-1, 0, -1, 1, 1, 0, 1, 1},
              {0, 0, 0, 0, -1, 1, -1, -1},
              {0, 0, 0, 0, 0, 1, 0, -1},
              {0, 0, 0, 0, 0, 1, 0, 0},
              {0, 0, 0, 0, -1, 1, 0, -1},
              {0, 0, 0, -1, -1, 0, -1, 0}},
       IntPoly{1, -2, 3, -4, 5, -4, 3, -2, 1}, 1},
  };
  return table;
}

inline const Knot& knot(const std::string& name) {
  for (const auto& k : knots())
    if (k.name == name) return k;
  throw std::out_of_range("unknown fixture " + name);
}

}  // namespace fixtures

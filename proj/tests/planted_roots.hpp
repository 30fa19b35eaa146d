#pragma once

#include <vector>

#include "qpicard/slice_function.hpp"

namespace qpicard::testing {

// F = P (x) 1 + R (x) u with P + iR = prod (z - r_j), so Q_0 = (P + iR)(P - iR)
// vanishes exactly at the r_j and their conjugates.
inline SliceFunction planted(const std::vector<Complex>& roots, const ImaginaryUnit& u) {
  std::vector<Complex> poly{1.0};
  for (Complex r : roots) {
    std::vector<Complex> next(poly.size() + 1);
    for (std::size_t k = 0; k < poly.size(); ++k) {
      next[k + 1] += poly[k];
      next[k] -= r * poly[k];
    }
    poly = next;
  }
  std::vector<Quaternion> coeffs;
  for (Complex a : poly) coeffs.push_back(Quaternion(a.real()) + a.imag() * u.quaternion());
  return SliceFunction::polynomial(coeffs);
}

}  // namespace qpicard::testing

// Shared test oracles.

#pragma once

#include <cmath>
#include <vector>

#include "qthermo/matrix.hpp"

namespace qthermo::test {

inline constexpr double kInvSqrt2 = 0.70710678118654752440;

inline Ket ket(std::initializer_list<cplx> v) { return Ket(v); }

inline Ket plus() { return {kInvSqrt2, kInvSqrt2}; }
inline Ket minus() { return {kInvSqrt2, -kInvSqrt2}; }

// Reduced state of factor `keep` by explicit index contraction over all
// other factors.
inline ComplexMatrix contract_to(const ComplexMatrix& m, const std::vector<std::size_t>& dims, std::size_t keep) {
  const std::size_t n = m.dim();
  auto digits = [&](std::size_t idx) {
    std::vector<std::size_t> out(dims.size());
    for (std::size_t f = dims.size(); f-- > 0;) {
      out[f] = idx % dims[f];
      idx /= dims[f];
    }
    return out;
  };
  ComplexMatrix r(dims[keep]);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const auto da = digits(a);
      const auto db = digits(b);
      bool match = true;
      for (std::size_t f = 0; f < dims.size(); ++f)
        if (f != keep && da[f] != db[f]) match = false;
      if (match) r(da[keep], db[keep]) += m(a, b);
    }
  return r;
}

inline ComplexMatrix cnot() {
  ComplexMatrix u(4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return u;
}

}  // namespace qthermo::test

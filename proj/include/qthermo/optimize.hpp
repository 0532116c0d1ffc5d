// optimize.hpp
// Derivative-free simplex minimization.

#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace qthermo {

using ScalarFunction = std::function<double(std::span<const double>)>;

struct NelderMeadOptions {
  double initial_step = 0.5;
  // Stop once every vertex is within this distance of the best vertex.
  double diameter_tolerance = 1e-8;
  std::size_t max_evaluations = 10000;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

// Nelder-Mead with dimension-adaptive coefficients (Gao & Han 2012), which
// keeps the simplex from collapsing prematurely for more than a handful of
// parameters.
NelderMeadResult nelder_mead(const ScalarFunction& f, std::vector<double> x0,
                             const NelderMeadOptions& options);

}  // namespace qthermo

// tolerances.hpp
// Numerical tolerances shared by validation code and tests.

#pragma once

namespace qthermo::tol {

// Hermiticity, unit trace, positivity of states.
inline constexpr double kStructural = 1e-9;
inline constexpr double kReconstruction = 1e-9;
inline constexpr double kEquality = 1e-12;
inline constexpr double kUnitary = 1e-10;
inline constexpr double kOrthonormal = 1e-10;

// Gram-Schmidt candidates with a smaller residual are treated as dependent.
inline constexpr double kDependentColumn = 1e-8;

// Jacobi eigensolver stopping rule (off-diagonal Frobenius norm, relative).
inline constexpr double kJacobiOffDiagonal = 1e-12;
inline constexpr int kJacobiMaxSweeps = 100;

inline constexpr double kPassive = 1e-9;

// No-go searches: what a positive control must reach, and the floor a
// blocked task has to stay above.
inline constexpr double kControlReached = 1e-6;
inline constexpr double kReportingFloor = 1e-2;

}  // namespace qthermo::tol

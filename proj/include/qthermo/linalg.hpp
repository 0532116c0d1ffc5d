// linalg.hpp
// Spectral decomposition, tensor products, partial trace, distances and
// unitary completion on ComplexMatrix.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qthermo/matrix.hpp"

namespace qthermo {

// Eigenvalues ascending; column i of `eigenvectors` belongs to eigenvalues[i].
// Inside a degenerate cluster the eigenvector choice is arbitrary.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  ComplexMatrix eigenvectors;

  ComplexMatrix reconstruct() const;
};

// Cyclic complex Jacobi. Deterministic: fixed sweep order, no randomness.
// Throws NotHermitian when max|A - A^dagger| exceeds tol::kStructural.
HermitianSpectrum eig_hermitian(const ComplexMatrix& a);

// Same iteration without accumulating eigenvectors.
std::vector<double> eigvals_hermitian(const ComplexMatrix& a);

// First factor is the slow index.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_all(std::span<const ComplexMatrix> factors);

// Reduces `m` (over subsystems of sizes `dims`, factor 0 slowest) to the
// subsystems listed in `keep`, returned in their original order. An empty
// `keep` yields the 1 x 1 matrix holding Tr m.
ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);

// Both marginals of a pure bipartite state |psi> on C^dim_a (x) C^dim_b.
std::pair<ComplexMatrix, ComplexMatrix> pure_state_marginals(std::span<const cplx> psi,
                                                             std::size_t dim_a,
                                                             std::size_t dim_b);

// (1/2) * sum |eig(a - b)|. Operates on raw Hermitian matrices; the
// DensityMatrix overload lives in states.hpp.
double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b);

struct AssignedColumn {
  std::size_t index;
  Ket vector;
};

// Builds a dim x dim unitary whose column `index` equals `vector` for every
// assigned column. Free columns are filled, in ascending index order, by
// Gram-Schmidt over e_0, e_1, ... skipping candidates whose residual norm is
// below tol::kDependentColumn.
ComplexMatrix complete_to_unitary(std::span<const AssignedColumn> columns, std::size_t dim);

// exp(-i t A) for Hermitian A.
ComplexMatrix expm_i_hermitian(const ComplexMatrix& a, double t);
ComplexMatrix expm_i_hermitian(const HermitianSpectrum& spectrum, double t);

}  // namespace qthermo

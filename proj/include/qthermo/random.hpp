// random.hpp
// Seeded samplers for test states, unitaries and Hamiltonians.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>

#include "qthermo/matrix.hpp"
#include "qthermo/states.hpp"

namespace qthermo {

using Rng = std::mt19937_64;

// Independent stream for (seed, stream) pairs; used to give every sample
// and every restart its own generator.
Rng derived_rng(std::uint64_t seed, std::uint64_t stream);

// (N(0,1) + i N(0,1)) / sqrt(2)
cplx complex_gaussian(Rng& rng);

// G G^dagger / Tr(G G^dagger), G a dim x rank complex Gaussian matrix.
DensityMatrix sample_ginibre_density(std::size_t dim, std::size_t rank, Rng& rng);

// Gram-Schmidt on a complex Gaussian matrix. Modified Gram-Schmidt yields a
// positive real diagonal R, so no further phase correction is needed for
// the result to be Haar distributed.
ComplexMatrix sample_haar_unitary(std::size_t dim, Rng& rng);

Ket sample_pure_ket(std::size_t dim, Rng& rng);

// GUE-like Hermitian matrix with unit-variance entries.
ComplexMatrix sample_hermitian(std::size_t dim, Rng& rng);

}  // namespace qthermo

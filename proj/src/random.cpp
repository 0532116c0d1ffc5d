// random.cpp

#include "qthermo/random.hpp"

#include <cmath>

#include "qthermo/errors.hpp"

namespace qthermo {

Rng derived_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return Rng(seq);
}

cplx complex_gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re / std::sqrt(2.0), im / std::sqrt(2.0)};
}

DensityMatrix sample_ginibre_density(std::size_t dim, std::size_t rank, Rng& rng) {
  if (rank < 1 || rank > dim) throw BadRank("rank must lie in [1, dim]");
  std::vector<cplx> g(dim * rank);
  for (auto& z : g) z = complex_gaussian(rng);
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < rank; ++k) acc += g[i * rank + k] * std::conj(g[j * rank + k]);
      m(i, j) = acc;
    }
  const double tr = m.trace().real();
  m *= cplx(1.0 / tr);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = m(i, i).real();
  return DensityMatrix::trusted(std::move(m));
}

ComplexMatrix sample_haar_unitary(std::size_t dim, Rng& rng) {
  if (dim == 0) throw BadDimension("dim must be positive");
  // Columns stored contiguously while orthonormalizing.
  std::vector<Ket> cols(dim, Ket(dim));
  for (auto& c : cols)
    for (auto& z : c) z = complex_gaussian(rng);
  for (std::size_t j = 0; j < dim; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const cplx proj = inner(cols[i], cols[j]);
      for (std::size_t r = 0; r < dim; ++r) cols[j][r] -= proj * cols[i][r];
    }
    const double n = norm(cols[j]);
    for (auto& z : cols[j]) z /= n;
  }
  ComplexMatrix u(dim);
  for (std::size_t j = 0; j < dim; ++j) u.set_column(j, cols[j]);
  return u;
}

Ket sample_pure_ket(std::size_t dim, Rng& rng) {
  Ket v(dim);
  for (auto& z : v) z = complex_gaussian(rng);
  return normalized(std::move(v));
}

ComplexMatrix sample_hermitian(std::size_t dim, Rng& rng) {
  ComplexMatrix m(dim);
  std::normal_distribution<double> normal(0.0, 1.0);
  for (std::size_t i = 0; i < dim; ++i) {
    m(i, i) = normal(rng);
    for (std::size_t j = i + 1; j < dim; ++j) {
      const cplx z = complex_gaussian(rng);
      m(i, j) = z;
      m(j, i) = std::conj(z);
    }
  }
  return m;
}

}  // namespace qthermo

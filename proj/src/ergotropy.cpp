// ergotropy.cpp

#include "qthermo/ergotropy.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <vector>

#include "qthermo/errors.hpp"

namespace qthermo {

namespace {

void require_dims(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) throw DimensionMismatch("state and Hamiltonian dims differ");
}

// Eigenpairs of rho ordered by non-increasing population; ties keep the
// solver's index order.
struct SortedState {
  std::vector<double> populations;
  ComplexMatrix vectors;
};

SortedState sorted_state(const DensityMatrix& rho) {
  const auto spec = eig_hermitian(rho.matrix());
  const std::size_t n = rho.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return spec.eigenvalues[i] > spec.eigenvalues[j];
  });
  SortedState out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.populations[k] = spec.eigenvalues[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = spec.eigenvectors(r, order[k]);
  }
  return out;
}

}  // namespace

double passive_energy(std::span<const double> populations, std::span<const double> energies) {
  if (populations.size() != energies.size()) throw DimensionMismatch("passive_energy");
  std::vector<double> p(populations.begin(), populations.end());
  std::vector<double> e(energies.begin(), energies.end());
  std::sort(p.begin(), p.end(), std::greater<>());
  std::sort(e.begin(), e.end());
  double s = 0.0;
  for (std::size_t k = 0; k < p.size(); ++k) s += p[k] * e[k];
  return s;
}

DensityMatrix passive_state(const DensityMatrix& rho, const Hamiltonian& h) {
  require_dims(rho, h);
  const auto state = sorted_state(rho);
  const auto& levels = h.spectrum().eigenvectors;
  const std::size_t n = rho.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) {
      const cplx vr = levels(r, k) * state.populations[k];
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(levels(c, k));
    }
  return DensityMatrix::trusted(std::move(out));
}

ComplexMatrix extraction_unitary(const DensityMatrix& rho, const Hamiltonian& h) {
  require_dims(rho, h);
  const auto state = sorted_state(rho);
  return h.spectrum().eigenvectors * state.vectors.adjoint();
}

WorkReport ergotropy(const DensityMatrix& rho, const Hamiltonian& h) {
  require_dims(rho, h);
  const double e_in = energy(rho, h);
  DensityMatrix passive = passive_state(rho, h);
  const double e_passive = energy(passive, h);
  return WorkReport{e_in, e_passive, e_in - e_passive, std::move(passive), extraction_unitary(rho, h)};
}

double ergotropy_double_sum(const DensityMatrix& rho, const Hamiltonian& h) {
  require_dims(rho, h);
  const auto state = sorted_state(rho);
  const auto& levels = h.spectrum().eigenvectors;
  const auto energies = h.energies();
  const std::size_t n = rho.dim();
  double w = 0.0;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t l = 0; l < n; ++l) {
      cplx overlap = 0.0;
      for (std::size_t r = 0; r < n; ++r) overlap += std::conj(state.vectors(r, k)) * levels(r, l);
      const double delta = k == l ? 1.0 : 0.0;
      w += state.populations[k] * energies[l] * (std::norm(overlap) - delta);
    }
  return w;
}

double ergotropy_value(const ComplexMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) throw DimensionMismatch("state and Hamiltonian dims differ");
  const double e = real_trace_of_product(rho, h.matrix());
  if (rho.dim() == 2) {
    // Closed form for the qubit hot path.
    const double a = rho(0, 0).real();
    const double d = rho(1, 1).real();
    const double half_gap = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(rho(0, 1)));
    const double mean = 0.5 * (a + d);
    const std::array<double, 2> p{mean + half_gap, mean - half_gap};
    const auto en = h.energies();
    return e - (p[0] * en[0] + p[1] * en[1]);
  }
  const auto values = eigvals_hermitian(rho);
  return e - passive_energy(values, h.energies());
}

bool is_passive(const DensityMatrix& rho, const Hamiltonian& h, double tol) {
  return ergotropy(rho, h).ergotropy <= tol;
}

double ergotropy_gap(const DensityMatrix& rho_ab, const Hamiltonian& h_a, const Hamiltonian& h_b,
                     std::pair<std::size_t, std::size_t> dims) {
  const auto [da, db] = dims;
  if (da * db != rho_ab.dim() || h_a.dim() != da || h_b.dim() != db)
    throw DimensionMismatch("ergotropy_gap dims");
  const std::array<std::size_t, 2> sub{da, db};
  const std::array<std::size_t, 1> keep_a{0};
  const std::array<std::size_t, 1> keep_b{1};
  const auto rho_a = partial_trace(rho_ab, sub, keep_a);
  const auto rho_b = partial_trace(rho_ab, sub, keep_b);
  const double global = ergotropy(rho_ab, local_sum(h_a, h_b)).ergotropy;
  return global - ergotropy(rho_a, h_a).ergotropy - ergotropy(rho_b, h_b).ergotropy;
}

}  // namespace qthermo

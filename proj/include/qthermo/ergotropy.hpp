// ergotropy.hpp
// Unitarily extractable work: passive states, the optimal extraction
// unitary, ergotropy and the bipartite ergotropy gap.

#pragma once

#include <cstddef>
#include <span>
#include <utility>

#include "qthermo/states.hpp"
#include "qthermo/tolerances.hpp"

namespace qthermo {

struct WorkReport {
  double input_energy = 0.0;
  double passive_energy = 0.0;
  double ergotropy = 0.0;
  DensityMatrix passive_state;
  ComplexMatrix extraction_unitary;
};

// sum_k p_k |k><k| with populations non-increasing and energies
// non-decreasing. Ties are broken by (value, original index).
DensityMatrix passive_state(const DensityMatrix& rho, const Hamiltonian& h);

// U = sum_k |k><psi_k|; U rho U^dagger is the passive state.
ComplexMatrix extraction_unitary(const DensityMatrix& rho, const Hamiltonian& h);

WorkReport ergotropy(const DensityMatrix& rho, const Hamiltonian& h);

// sum_{k,l} p_k e_l (|<psi_k|l>|^2 - delta_kl), evaluated independently of
// the energy-difference route.
double ergotropy_double_sum(const DensityMatrix& rho, const Hamiltonian& h);

// Tr(rho H) - sum_k p_k e_k on a raw Hermitian matrix. Hot path for the
// search objectives; no state validation.
double ergotropy_value(const ComplexMatrix& rho, const Hamiltonian& h);

// Minimum energy reachable from `populations` (any order) on `energies`.
double passive_energy(std::span<const double> populations, std::span<const double> energies);

bool is_passive(const DensityMatrix& rho, const Hamiltonian& h, double tol = tol::kPassive);

// W(rho_ab, H_a (x) I + I (x) H_b) - W(rho_a, H_a) - W(rho_b, H_b)
double ergotropy_gap(const DensityMatrix& rho_ab, const Hamiltonian& h_a, const Hamiltonian& h_b,
                     std::pair<std::size_t, std::size_t> dims);

}  // namespace qthermo

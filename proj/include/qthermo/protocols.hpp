// protocols.hpp
// Explicit system + ancilla constructions: energy cloner, energy splitter,
// diagonal work masker, the four-qubit masker and the signaling state pair
// a work cloner would produce.
//
// Ordering: the system is factor 0 (slowest index), ancillas follow and
// start in |0>.

#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qthermo/states.hpp"

namespace qthermo {

struct EnergyLedger {
  double input_energy = 0.0;   // Tr((rho (x) |0..0><0..0|) H_total)
  double output_energy = 0.0;  // Tr(global_output H_total)
  std::vector<double> marginal_energies;
};

struct ProtocolResult {
  DensityMatrix global_output;
  std::vector<DensityMatrix> marginals;
  ComplexMatrix unitary;
  EnergyLedger energy_ledger;
};

// |k>|j> -> |k>|(j + k) mod d>; d = 2 gives CNOT.
ComplexMatrix energy_cloner(std::size_t d);

// |00> -> |00>, |k0> -> sqrt(p)|k0> + sqrt(1-p)|0k> (k >= 1), completed to a
// full unitary.
ComplexMatrix energy_splitter(std::size_t d, double p);

// |k0> -> (|0k> + |1,k-1> + ... + |k0>) / sqrt(k+1), completed to a full
// unitary. Masks states diagonal in an equally spaced energy basis.
ComplexMatrix diagonal_work_masker(std::size_t d);

// Marginal populations the diagonal masker produces for input populations
// C: p_k = sum_{j >= k} C_j / (j + 1).
std::vector<double> masked_marginal_populations(std::span<const double> c);

// 16 x 16 unitary on (S, A1, A2, A3): |0000> -> |phi+>|phi+>,
// |1000> -> |phi->|phi->, Bell pairs on (S, A1) and (A2, A3).
ComplexMatrix four_party_masker();

// Applies `u` to rho (x) |0><0| (x) ... over the factors described by
// `hamiltonians` (factor 0 = system) and records marginals and energies.
ProtocolResult run_protocol(const ComplexMatrix& u, const DensityMatrix& rho,
                            std::span<const Hamiltonian> hamiltonians);

// Bob's two-qubit states after a hypothetical work cloner acts on his half
// of a singlet, for Alice's z and x measurements:
//   sigma1 = (|00><00| + |11><11|) / 2
//   sigma2 = |chi1><chi1| (x) |chi2><chi2| / 2 + rho_minus / 2,
// chi_i = (|0> + e^{-i phi_i}|1>) / sqrt(2). Phases must lie in (0, 2 pi].
std::pair<DensityMatrix, DensityMatrix> signaling_pair(double phi1, double phi2,
                                                       const DensityMatrix& rho_minus);

}  // namespace qthermo

// nogo.hpp
// Search objectives for devices that cannot exist (work cloner, work
// maskers, the two-radius qubit channel) and a restarted simplex search
// over SU(d) used to show their failure objectives stay away from zero.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qthermo/states.hpp"

namespace qthermo {

// Coordinates over the Gell-Mann generators of SU(dim).
struct UnitaryParams {
  std::size_t dim = 2;
  std::vector<double> theta;
};

// exp(i sum_j theta_j G_j)
ComplexMatrix unitary_from_params(const UnitaryParams& p);
ComplexMatrix unitary_from_params(std::size_t dim, std::span<const double> theta);

// Sum over inputs psi of
//   |W(rho_A) - W(psi)| + |W(rho_B) - W(psi)| + (1 - Tr rho_A^2) + (1 - Tr rho_B^2)
// with rho_A, rho_B the marginals of U (psi (x) |0>). Zero iff every output
// is a product of pure states carrying the input's work.
double objective_work_clone(const ComplexMatrix& u, std::span<const Ket> inputs, const Hamiltonian& h);

// Mean over inputs of W(rho_S) + W(rho_A); zero iff every input is masked.
double objective_universal_mask(const ComplexMatrix& u, std::span<const Ket> inputs,
                                const Hamiltonian& h);

// Two-qubit unitary commuting with H (x) I + I (x) H for H = diag(0, eps):
// phases on |00> and |11>, and an SU(2) block on span{|01>, |10>}:
//   U|01> = cos(a) e^{i p1}|01> + sin(a) e^{i p2}|10>
//   U|10> = -sin(a) e^{-i p2}|01> + cos(a) e^{-i p1}|10>
ComplexMatrix energy_preserving_unitary(double block_angle, double block_phase1,
                                        double block_phase2, double phase00, double phase11);

// Minimum of objective_universal_mask over a uniform grid^5 lattice of
// energy_preserving_unitary: block angle over [0, pi/2] endpoints
// included, phases over [0, 2 pi). `h` must be a qubit Hamiltonian
// diagonal in the computational basis.
double scan_energy_preserving_mask(std::size_t grid, std::span<const Ket> inputs, const Hamiltonian& h);

// Sum over inputs of
//   |<0|rho_S|1>| + |<phi|rho_A|phi_bar>|
//   + max(0, 1/2 - <0|rho_S|0>) + max(0, 1/2 - <phi|rho_A|phi>)
// where |phi> = cos(t/2)|0> + e^{i f} sin(t/2)|1> for angles (t, f).
double objective_bloch_radius(const ComplexMatrix& u, std::array<double, 2> ancilla_basis_angles,
                              std::span<const Ket> inputs);

// min over alpha of ||e^{i alpha} U - target||_F^2 = 2 dim - 2 |Tr(target^dagger U)|.
double phase_invariant_distance(const ComplexMatrix& u, const ComplexMatrix& target);

struct SearchResult {
  double best_objective = 0.0;
  UnitaryParams best_params;
  std::vector<double> best_aux;
  std::size_t restarts = 0;
  std::size_t evaluations = 0;
  std::uint64_t seed = 0;
  // Final objective of every restart, in restart order.
  std::vector<double> converged_restart_objectives;
  std::size_t converged_restarts = 0;
};

struct SearchOptions {
  std::size_t restarts = 50;
  std::uint64_t seed = 42;
  // Extra real parameters appended after the dim^2 - 1 unitary coordinates.
  std::size_t aux_params = 0;
  std::size_t threads = 1;
  double diameter_tolerance = 1e-8;
  std::size_t evaluations_per_param = 2000;
};

using UnitaryObjective = std::function<double(const ComplexMatrix& u, std::span<const double> aux)>;

// Restart r starts from a point uniform in [-pi, pi]^n drawn from a
// generator seeded with seed + r, so the result does not depend on
// `threads` or scheduling.
SearchResult minimize(const UnitaryObjective& objective, std::size_t dim, const SearchOptions& options);

}  // namespace qthermo

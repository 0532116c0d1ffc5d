// nogo.cpp

#include "qthermo/nogo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

#include "qthermo/ergotropy.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/optimize.hpp"
#include "qthermo/random.hpp"

namespace qthermo {

namespace {

// U (psi (x) |0>) for a d x d system + ancilla.
Ket apply_with_ancilla(const ComplexMatrix& u, std::span<const cplx> psi) {
  const std::size_t d = psi.size();
  if (u.dim() != d * d) throw DimensionMismatch("unitary does not act on system (x) ancilla");
  Ket out(u.dim());
  for (std::size_t k = 0; k < d; ++k) {
    if (psi[k] == cplx{}) continue;
    for (std::size_t r = 0; r < out.size(); ++r) out[r] += psi[k] * u(r, k * d);
  }
  return out;
}

double purity(const ComplexMatrix& rho) {
  double s = 0.0;
  for (const auto& z : rho.entries()) s += std::norm(z);
  return s;
}

}  // namespace

ComplexMatrix unitary_from_params(std::size_t dim, std::span<const double> theta) {
  const auto& basis = gell_mann_basis(dim);
  if (theta.size() != basis.size())
    throw DimensionMismatch("expected " + std::to_string(basis.size()) + " parameters");
  return expm_i_hermitian(basis.combine(theta), -1.0);
}

ComplexMatrix unitary_from_params(const UnitaryParams& p) { return unitary_from_params(p.dim, p.theta); }

double objective_work_clone(const ComplexMatrix& u, std::span<const Ket> inputs, const Hamiltonian& h) {
  const std::size_t d = h.dim();
  double total = 0.0;
  for (const auto& psi : inputs) {
    if (psi.size() != d) throw DimensionMismatch("input and Hamiltonian dims differ");
    const double w_in = ergotropy_value(ComplexMatrix::projector(psi), h);
    const auto [ra, rb] = pure_state_marginals(apply_with_ancilla(u, psi), d, d);
    total += std::abs(ergotropy_value(ra, h) - w_in) + std::abs(ergotropy_value(rb, h) - w_in);
    total += std::max(0.0, 1.0 - purity(ra)) + std::max(0.0, 1.0 - purity(rb));
  }
  return total;
}

double objective_universal_mask(const ComplexMatrix& u, std::span<const Ket> inputs,
                                const Hamiltonian& h) {
  const std::size_t d = h.dim();
  if (inputs.empty()) return 0.0;
  double total = 0.0;
  for (const auto& psi : inputs) {
    if (psi.size() != d) throw DimensionMismatch("input and Hamiltonian dims differ");
    const auto [rs, ra] = pure_state_marginals(apply_with_ancilla(u, psi), d, d);
    total += std::max(0.0, ergotropy_value(rs, h)) + std::max(0.0, ergotropy_value(ra, h));
  }
  return total / static_cast<double>(inputs.size());
}

ComplexMatrix energy_preserving_unitary(double block_angle, double block_phase1,
                                        double block_phase2, double phase00, double phase11) {
  const double c = std::cos(block_angle);
  const double s = std::sin(block_angle);
  ComplexMatrix u(4);
  u(0, 0) = std::polar(1.0, phase00);
  u(3, 3) = std::polar(1.0, phase11);
  u(1, 1) = std::polar(c, block_phase1);
  u(2, 1) = std::polar(s, block_phase2);
  u(1, 2) = -std::polar(s, -block_phase2);
  u(2, 2) = std::polar(c, -block_phase1);
  return u;
}

double scan_energy_preserving_mask(std::size_t grid, std::span<const Ket> inputs, const Hamiltonian& h) {
  if (grid < 2) throw BadGrid("grid resolution must be >= 2");
  if (h.dim() != 2) throw DimensionMismatch("energy-preserving scan is defined for qubits");
  const double two_pi = 2.0 * std::numbers::pi;
  std::vector<double> angles(grid);
  std::vector<double> phases(grid);
  for (std::size_t i = 0; i < grid; ++i) {
    angles[i] = 0.5 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid - 1);
    phases[i] = two_pi * static_cast<double>(i) / static_cast<double>(grid);
  }
  double best = std::numeric_limits<double>::infinity();
  for (double a : angles)
    for (double p1 : phases)
      for (double p2 : phases)
        for (double q0 : phases)
          for (double q1 : phases)
            best = std::min(best, objective_universal_mask(energy_preserving_unitary(a, p1, p2, q0, q1), inputs, h));
  return best;
}

double objective_bloch_radius(const ComplexMatrix& u, std::array<double, 2> ancilla_basis_angles,
                              std::span<const Ket> inputs) {
  const double half = 0.5 * ancilla_basis_angles[0];
  const cplx phase = std::polar(1.0, ancilla_basis_angles[1]);
  const Ket phi{std::cos(half), phase * std::sin(half)};
  const Ket phi_bar{-std::conj(phase) * std::sin(half), std::cos(half)};
  double total = 0.0;
  for (const auto& psi : inputs) {
    if (psi.size() != 2) throw DimensionMismatch("bloch-radius objective takes qubit inputs");
    const auto [rs, ra] = pure_state_marginals(apply_with_ancilla(u, psi), 2, 2);
    const Ket ra_phi_bar = ra * std::span<const cplx>(phi_bar);
    const Ket ra_phi = ra * std::span<const cplx>(phi);
    total += std::abs(rs(0, 1)) + std::abs(inner(phi, ra_phi_bar));
    total += std::max(0.0, 0.5 - rs(0, 0).real());
    total += std::max(0.0, 0.5 - inner(phi, ra_phi).real());
  }
  return total;
}

double phase_invariant_distance(const ComplexMatrix& u, const ComplexMatrix& target) {
  if (u.dim() != target.dim()) throw DimensionMismatch("phase_invariant_distance");
  const cplx overlap = (target.adjoint() * u).trace();
  return std::max(0.0, 2.0 * static_cast<double>(u.dim()) - 2.0 * std::abs(overlap));
}

SearchResult minimize(const UnitaryObjective& objective, std::size_t dim, const SearchOptions& options) {
  if (options.restarts == 0) throw InvalidConfig("restarts must be >= 1");
  const std::size_t n_unitary = gell_mann_basis(dim).size();
  const std::size_t n = n_unitary + options.aux_params;

  NelderMeadOptions nm;
  nm.diameter_tolerance = options.diameter_tolerance;
  nm.max_evaluations = options.evaluations_per_param * n;

  const ScalarFunction f = [&](std::span<const double> x) {
    const ComplexMatrix u = unitary_from_params(dim, x.first(n_unitary));
    return objective(u, x.subspan(n_unitary));
  };

  std::vector<NelderMeadResult> runs(options.restarts);
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(options.restarts);
  auto worker = [&] {
    for (std::size_t r = next++; r < options.restarts; r = next++) {
      try {
        Rng rng(options.seed + r);
        std::uniform_real_distribution<double> start(-std::numbers::pi, std::numbers::pi);
        std::vector<double> x0(n);
        for (auto& x : x0) x = start(rng);
        runs[r] = nelder_mead(f, std::move(x0), nm);
      } catch (...) {
        errors[r] = std::current_exception();
      }
    }
  };
  const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, options.restarts);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  SearchResult result;
  result.restarts = options.restarts;
  result.seed = options.seed;
  result.best_objective = std::numeric_limits<double>::infinity();
  std::size_t best = 0;
  for (std::size_t r = 0; r < runs.size(); ++r) {
    result.converged_restart_objectives.push_back(runs[r].value);
    result.evaluations += runs[r].evaluations;
    if (runs[r].converged) ++result.converged_restarts;
    if (runs[r].value < result.best_objective) {
      result.best_objective = runs[r].value;
      best = r;
    }
  }
  const auto& x = runs[best].x;
  result.best_params = UnitaryParams{dim, std::vector<double>(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(n_unitary))};
  result.best_aux.assign(x.begin() + static_cast<std::ptrdiff_t>(n_unitary), x.end());
  return result;
}

}  // namespace qthermo

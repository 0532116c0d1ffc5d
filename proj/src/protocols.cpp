// protocols.cpp

#include "qthermo/protocols.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qthermo/errors.hpp"
#include "qthermo/linalg.hpp"

namespace qthermo {

namespace {

void require_dim(std::size_t d) {
  if (d < 2) throw BadDimension("system dimension must be >= 2, got " + std::to_string(d));
}

}  // namespace

ComplexMatrix energy_cloner(std::size_t d) {
  require_dim(d);
  ComplexMatrix u(d * d);
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t j = 0; j < d; ++j) u(k * d + (j + k) % d, k * d + j) = 1.0;
  return u;
}

ComplexMatrix energy_splitter(std::size_t d, double p) {
  require_dim(d);
  if (!(p >= 0.0 && p <= 1.0)) throw BadFraction("split fraction must lie in [0, 1]");
  const std::size_t n = d * d;
  std::vector<AssignedColumn> cols;
  cols.push_back({0, basis_ket(n, 0)});
  const double keep = std::sqrt(p);
  const double move = std::sqrt(1.0 - p);
  for (std::size_t k = 1; k < d; ++k) {
    Ket v(n);
    v[k * d] += keep;
    v[k] += move;
    cols.push_back({k * d, std::move(v)});
  }
  return complete_to_unitary(cols, n);
}

ComplexMatrix diagonal_work_masker(std::size_t d) {
  require_dim(d);
  const std::size_t n = d * d;
  std::vector<AssignedColumn> cols;
  for (std::size_t k = 0; k < d; ++k) {
    Ket v(n);
    const double amp = 1.0 / std::sqrt(static_cast<double>(k + 1));
    for (std::size_t m = 0; m <= k; ++m) v[m * d + (k - m)] = amp;
    cols.push_back({k * d, std::move(v)});
  }
  return complete_to_unitary(cols, n);
}

std::vector<double> masked_marginal_populations(std::span<const double> c) {
  std::vector<double> p(c.size(), 0.0);
  for (std::size_t k = 0; k < c.size(); ++k)
    for (std::size_t j = k; j < c.size(); ++j) p[k] += c[j] / static_cast<double>(j + 1);
  return p;
}

ComplexMatrix four_party_masker() {
  const std::size_t n = 16;
  const double h = 0.5;
  // Basis index bits: S A1 A2 A3, S most significant.
  Ket plus(n);
  Ket minus(n);
  for (std::size_t idx : {0b0000u, 0b0011u, 0b1100u, 0b1111u}) plus[idx] = h;
  minus[0b0000] = h;
  minus[0b0011] = -h;
  minus[0b1100] = -h;
  minus[0b1111] = h;
  const std::vector<AssignedColumn> cols{{0b0000, plus}, {0b1000, minus}};
  return complete_to_unitary(cols, n);
}

ProtocolResult run_protocol(const ComplexMatrix& u, const DensityMatrix& rho,
                            std::span<const Hamiltonian> hamiltonians) {
  if (hamiltonians.empty()) throw DimensionMismatch("run_protocol needs at least one factor");
  if (hamiltonians[0].dim() != rho.dim()) throw DimensionMismatch("system factor dim");
  std::vector<std::size_t> dims;
  std::size_t total = 1;
  for (const auto& h : hamiltonians) {
    dims.push_back(h.dim());
    total *= h.dim();
  }
  if (u.dim() != total) throw DimensionMismatch("unitary dim does not match factors");

  ComplexMatrix input = rho.matrix();
  for (std::size_t f = 1; f < dims.size(); ++f)
    input = kron(input, ComplexMatrix::projector(basis_ket(dims[f], 0)));
  DensityMatrix global = DensityMatrix::trusted(conjugate_by(u, input));

  // H_total = sum_f I (x) .. H_f .. (x) I
  ComplexMatrix h_total(total);
  for (std::size_t f = 0; f < dims.size(); ++f) {
    std::vector<ComplexMatrix> factors;
    for (std::size_t g = 0; g < dims.size(); ++g)
      factors.push_back(g == f ? hamiltonians[g].matrix() : ComplexMatrix::identity(dims[g]));
    h_total += kron_all(factors);
  }

  EnergyLedger ledger;
  ledger.input_energy = real_trace_of_product(input, h_total);
  ledger.output_energy = real_trace_of_product(global.matrix(), h_total);
  std::vector<DensityMatrix> marginals;
  for (std::size_t f = 0; f < dims.size(); ++f) {
    const std::array<std::size_t, 1> keep{f};
    auto m = partial_trace(global, dims, keep);
    ledger.marginal_energies.push_back(energy(m, hamiltonians[f]));
    marginals.push_back(std::move(m));
  }
  return ProtocolResult{std::move(global), std::move(marginals), u, std::move(ledger)};
}

std::pair<DensityMatrix, DensityMatrix> signaling_pair(double phi1, double phi2,
                                                       const DensityMatrix& rho_minus) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  if (!(phi1 > 0.0 && phi1 <= two_pi) || !(phi2 > 0.0 && phi2 <= two_pi))
    throw InvalidState("phases must lie in (0, 2 pi]");
  if (rho_minus.dim() != 4) throw InvalidState("rho_minus must be a two-qubit state");

  ComplexMatrix s1(4);
  s1(0, 0) = 0.5;
  s1(3, 3) = 0.5;

  const double r = 1.0 / std::sqrt(2.0);
  const Ket chi1{r, std::polar(r, -phi1)};
  const Ket chi2{r, std::polar(r, -phi2)};
  const Ket chi = kron(chi1, chi2);
  ComplexMatrix s2 = ComplexMatrix::projector(chi) * cplx(0.5) + rho_minus.matrix() * cplx(0.5);
  return {DensityMatrix::trusted(std::move(s1)), DensityMatrix(std::move(s2))};
}

}  // namespace qthermo

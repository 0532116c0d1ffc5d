// states.hpp
// Density matrices, Hamiltonians, the generalized Gell-Mann basis and
// Bloch-vector coordinates, energy and closed-system evolution (hbar = 1).

#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <mutex>
#include <span>
#include <vector>

#include "qthermo/linalg.hpp"
#include "qthermo/matrix.hpp"

namespace qthermo {

// Validated quantum state: Hermitian, unit trace and positive semidefinite,
// each within tol::kStructural.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix matrix);

  static DensityMatrix pure(std::span<const cplx> ket);
  static DensityMatrix maximally_mixed(std::size_t dim);
  // Caller guarantees validity (e.g. unitary image or partial trace of a
  // validated state); skips the spectral check.
  static DensityMatrix trusted(ComplexMatrix matrix);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.dim(); }
  double purity() const;

 private:
  struct Trusted {};
  DensityMatrix(ComplexMatrix matrix, Trusted) : matrix_(std::move(matrix)) {}
  ComplexMatrix matrix_;
};

// Hermitian observable with its spectrum cached (energies ascending). The
// matrix is stored as given; no offset is ever applied.
class Hamiltonian {
 public:
  explicit Hamiltonian(ComplexMatrix matrix);
  static Hamiltonian diagonal(std::span<const double> energies);
  // diag(0, spacing, 2*spacing, ...)
  static Hamiltonian equally_spaced(std::size_t dim, double spacing = 1.0);

  const ComplexMatrix& matrix() const { return matrix_; }
  const HermitianSpectrum& spectrum() const { return spectrum_; }
  std::span<const double> energies() const { return spectrum_.eigenvalues; }
  std::size_t dim() const { return matrix_.dim(); }

 private:
  ComplexMatrix matrix_;
  HermitianSpectrum spectrum_;
};

// H_a (x) I + I (x) H_b
Hamiltonian local_sum(const Hamiltonian& a, const Hamiltonian& b);

struct StructureConstant {
  std::size_t j, k, l;
  double value;
};

// Traceless Hermitian basis sigma_1 .. sigma_{d^2-1} with Tr(sigma_j sigma_k)
// = delta_jk. Order: symmetric pairs (j<k), antisymmetric pairs (j<k), then
// the d-1 diagonal elements.
class GellMannBasis {
 public:
  struct Entry {
    std::size_t row, col;
    cplx value;
  };

  explicit GellMannBasis(std::size_t dim);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return elements_.size(); }
  const ComplexMatrix& element(std::size_t k) const { return elements_[k]; }
  std::span<const ComplexMatrix> elements() const { return elements_; }
  // Nonzero entries of element k.
  std::span<const Entry> sparse(std::size_t k) const { return sparse_[k]; }

  // epsilon_jkl from [sigma_j, sigma_k] = i epsilon_jkl sigma_l; nonzero
  // entries only. Computed on first use.
  std::span<const StructureConstant> structure_constants() const;

  // sum_k coefficients[k] * sigma_k
  ComplexMatrix combine(std::span<const double> coefficients) const;

 private:
  std::size_t dim_;
  std::vector<ComplexMatrix> elements_;
  std::vector<std::vector<Entry>> sparse_;
  struct Lazy {
    std::once_flag once;
    std::vector<StructureConstant> constants;
  };
  std::shared_ptr<Lazy> lazy_ = std::make_shared<Lazy>();
};

// Process-wide read-only cache.
const GellMannBasis& gell_mann_basis(std::size_t dim);

// A = (1/dim) (scalar I + sum components_k sigma_k)
struct BlochVector {
  std::size_t dim = 0;
  double scalar = 0.0;
  std::vector<double> components;

  double length() const;
};

BlochVector to_bloch(const ComplexMatrix& a, const GellMannBasis& basis);
BlochVector to_bloch(const ComplexMatrix& a);
// Linear-algebraic inverse of to_bloch; no positivity check.
ComplexMatrix from_bloch(const BlochVector& b, const GellMannBasis& basis);
ComplexMatrix from_bloch(const BlochVector& b);

// Tr(rho H), computed from the matrices.
double energy(const DensityMatrix& rho, const Hamiltonian& h);

// Tr(rho H) from Bloch coordinates with this basis normalization:
// (1 / d^2) (n_0 r_0 + sum n_k r_k), r_0 = Tr(rho) (= 1 for states).
double energy_from_bloch(const BlochVector& rho, const BlochVector& h);

// U rho U^dagger with U = exp(-i H t).
DensityMatrix evolve(const DensityMatrix& rho, const Hamiltonian& h, double t);

// d r_l / dt = (1/d) epsilon_jkl n_j r_k for drho/dt = -i [H, rho].
std::vector<double> bloch_velocity(const BlochVector& rho, const BlochVector& h,
                                   const GellMannBasis& basis);

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b);

// DensityMatrix overloads of the matrix-level helpers.
double trace_distance(const DensityMatrix& a, const DensityMatrix& b);
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep);
DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b);

}  // namespace qthermo

// states.cpp

#include "qthermo/states.hpp"

#include <cmath>
#include <map>
#include <string>

#include "qthermo/errors.hpp"
#include "qthermo/tolerances.hpp"

namespace qthermo {

DensityMatrix::DensityMatrix(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!is_hermitian(matrix_, tol::kStructural)) throw InvalidState("density matrix is not Hermitian");
  const cplx tr = matrix_.trace();
  if (std::abs(tr - 1.0) > tol::kStructural)
    throw InvalidState("density matrix trace is " + std::to_string(tr.real()) + ", expected 1");
  const auto values = eigvals_hermitian(matrix_);
  if (values.front() < -tol::kStructural)
    throw InvalidState("density matrix has eigenvalue " + std::to_string(values.front()));
}

DensityMatrix DensityMatrix::pure(std::span<const cplx> ket) {
  if (std::abs(norm(ket) - 1.0) > tol::kStructural) throw InvalidState("ket is not normalized");
  return DensityMatrix(ComplexMatrix::projector(ket), Trusted{});
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  return DensityMatrix(ComplexMatrix::identity(dim) * cplx(1.0 / static_cast<double>(dim)), Trusted{});
}

DensityMatrix DensityMatrix::trusted(ComplexMatrix matrix) {
  return DensityMatrix(std::move(matrix), Trusted{});
}

double DensityMatrix::purity() const { return real_trace_of_product(matrix_, matrix_); }

Hamiltonian::Hamiltonian(ComplexMatrix matrix)
    : matrix_(std::move(matrix)), spectrum_(eig_hermitian(matrix_)) {}

Hamiltonian Hamiltonian::diagonal(std::span<const double> energies) {
  return Hamiltonian(ComplexMatrix::diagonal(energies));
}

Hamiltonian Hamiltonian::equally_spaced(std::size_t dim, double spacing) {
  std::vector<double> e(dim);
  for (std::size_t k = 0; k < dim; ++k) e[k] = spacing * static_cast<double>(k);
  return diagonal(e);
}

Hamiltonian local_sum(const Hamiltonian& a, const Hamiltonian& b) {
  return Hamiltonian(kron(a.matrix(), ComplexMatrix::identity(b.dim())) +
                     kron(ComplexMatrix::identity(a.dim()), b.matrix()));
}

GellMannBasis::GellMannBasis(std::size_t dim) : dim_(dim) {
  if (dim < 2) throw BadDimension("Gell-Mann basis needs dim >= 2");
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const cplx i{0.0, 1.0};
  std::vector<std::vector<Entry>> entries;
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k)
      entries.push_back({{j, k, inv_sqrt2}, {k, j, inv_sqrt2}});
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t k = j + 1; k < dim; ++k)
      entries.push_back({{j, k, -i * inv_sqrt2}, {k, j, i * inv_sqrt2}});
  for (std::size_t l = 1; l < dim; ++l) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(l * (l + 1)));
    std::vector<Entry> diag;
    for (std::size_t m = 0; m < l; ++m) diag.push_back({m, m, scale});
    diag.push_back({l, l, -static_cast<double>(l) * scale});
    entries.push_back(std::move(diag));
  }
  for (auto& e : entries) {
    ComplexMatrix m(dim);
    for (const auto& x : e) m(x.row, x.col) = x.value;
    elements_.push_back(std::move(m));
    sparse_.push_back(std::move(e));
  }
}

std::span<const StructureConstant> GellMannBasis::structure_constants() const {
  std::call_once(lazy_->once, [this] {
    const std::size_t n = size();
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        if (j == k) continue;
        const ComplexMatrix comm = elements_[j] * elements_[k] - elements_[k] * elements_[j];
        for (std::size_t l = 0; l < n; ++l) {
          // Tr(comm sigma_l) = i epsilon_jkl
          cplx tr = 0.0;
          for (const auto& e : sparse_[l]) tr += comm(e.col, e.row) * e.value;
          const double value = tr.imag();
          if (std::abs(value) > 1e-14) lazy_->constants.push_back({j, k, l, value});
        }
      }
  });
  return lazy_->constants;
}

ComplexMatrix GellMannBasis::combine(std::span<const double> coefficients) const {
  if (coefficients.size() != size()) throw DimensionMismatch("coefficient count");
  ComplexMatrix m(dim_);
  for (std::size_t k = 0; k < size(); ++k) {
    if (coefficients[k] == 0.0) continue;
    for (const auto& e : sparse_[k]) m(e.row, e.col) += coefficients[k] * e.value;
  }
  return m;
}

const GellMannBasis& gell_mann_basis(std::size_t dim) {
  static std::mutex mutex;
  static std::map<std::size_t, std::unique_ptr<GellMannBasis>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[dim];
  if (!slot) slot = std::make_unique<GellMannBasis>(dim);
  return *slot;
}

double BlochVector::length() const {
  double s = 0.0;
  for (double c : components) s += c * c;
  return std::sqrt(s);
}

BlochVector to_bloch(const ComplexMatrix& a, const GellMannBasis& basis) {
  if (a.dim() != basis.dim()) throw DimensionMismatch("to_bloch: matrix and basis dims differ");
  if (!is_hermitian(a, tol::kStructural)) throw NotHermitian("to_bloch needs a Hermitian matrix");
  const double d = static_cast<double>(a.dim());
  BlochVector b{a.dim(), a.trace().real(), std::vector<double>(basis.size())};
  for (std::size_t k = 0; k < basis.size(); ++k) {
    cplx tr = 0.0;
    for (const auto& e : basis.sparse(k)) tr += a(e.col, e.row) * e.value;
    b.components[k] = d * tr.real();
  }
  return b;
}

BlochVector to_bloch(const ComplexMatrix& a) { return to_bloch(a, gell_mann_basis(a.dim())); }

ComplexMatrix from_bloch(const BlochVector& b, const GellMannBasis& basis) {
  if (b.dim != basis.dim() || b.components.size() != basis.size())
    throw DimensionMismatch("from_bloch: vector and basis dims differ");
  ComplexMatrix m = basis.combine(b.components);
  for (std::size_t i = 0; i < b.dim; ++i) m(i, i) += b.scalar;
  return m * cplx(1.0 / static_cast<double>(b.dim));
}

ComplexMatrix from_bloch(const BlochVector& b) { return from_bloch(b, gell_mann_basis(b.dim)); }

double energy(const DensityMatrix& rho, const Hamiltonian& h) {
  if (rho.dim() != h.dim()) throw DimensionMismatch("energy: state and Hamiltonian dims differ");
  return real_trace_of_product(rho.matrix(), h.matrix());
}

double energy_from_bloch(const BlochVector& rho, const BlochVector& h) {
  if (rho.dim != h.dim || rho.components.size() != h.components.size())
    throw DimensionMismatch("energy_from_bloch");
  const double d = static_cast<double>(rho.dim);
  double dot = 0.0;
  for (std::size_t k = 0; k < rho.components.size(); ++k) dot += rho.components[k] * h.components[k];
  return (rho.scalar * h.scalar * d + dot) / (d * d);
}

DensityMatrix evolve(const DensityMatrix& rho, const Hamiltonian& h, double t) {
  if (rho.dim() != h.dim()) throw DimensionMismatch("evolve: state and Hamiltonian dims differ");
  const ComplexMatrix u = expm_i_hermitian(h.spectrum(), t);
  return DensityMatrix::trusted(conjugate_by(u, rho.matrix()));
}

std::vector<double> bloch_velocity(const BlochVector& rho, const BlochVector& h,
                                   const GellMannBasis& basis) {
  if (rho.dim != basis.dim() || h.dim != basis.dim()) throw DimensionMismatch("bloch_velocity");
  std::vector<double> v(basis.size(), 0.0);
  const double inv_d = 1.0 / static_cast<double>(basis.dim());
  for (const auto& sc : basis.structure_constants())
    v[sc.l] += inv_d * sc.value * h.components[sc.j] * rho.components[sc.k];
  return v;
}

std::array<double, 3> cross(const std::array<double, 3>& a, const std::array<double, 3>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

double trace_distance(const DensityMatrix& a, const DensityMatrix& b) {
  return trace_distance(a.matrix(), b.matrix());
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  return DensityMatrix::trusted(partial_trace(rho.matrix(), dims, keep));
}

DensityMatrix kron(const DensityMatrix& a, const DensityMatrix& b) {
  return DensityMatrix::trusted(kron(a.matrix(), b.matrix()));
}

}  // namespace qthermo

// matrix.hpp
// Dense square complex matrices and kets.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qthermo {

using cplx = std::complex<double>;
using Ket = std::vector<cplx>;

// Square matrix, row-major storage. Carries states, Hamiltonians and unitaries.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(1) {}
  explicit ComplexMatrix(std::size_t dim);
  ComplexMatrix(std::size_t dim, std::vector<cplx> entries);
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const cplx> values);
  // |ket><bra|
  static ComplexMatrix outer(std::span<const cplx> ket, std::span<const cplx> bra);
  static ComplexMatrix projector(std::span<const cplx> ket) { return outer(ket, ket); }

  std::size_t dim() const { return dim_; }
  std::span<const cplx> entries() const { return data_; }
  std::span<cplx> entries() { return data_; }

  cplx& operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

  Ket column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const cplx> values);

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cplx s);

  bool operator==(const ComplexMatrix& other) const = default;

 private:
  std::size_t dim_;
  std::vector<cplx> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(ComplexMatrix a, cplx s);
ComplexMatrix operator*(cplx s, ComplexMatrix a);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
Ket operator*(const ComplexMatrix& a, std::span<const cplx> v);

// A * B * A^dagger
ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& a, double tol);
bool is_unitary(const ComplexMatrix& u, double tol);
// max |U^dagger U - I|
double unitarity_error(const ComplexMatrix& u);

// Re Tr(A B) without forming the product.
double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Ket helpers
Ket basis_ket(std::size_t dim, std::size_t index);
cplx inner(std::span<const cplx> bra, std::span<const cplx> ket);
double norm(std::span<const cplx> v);
Ket normalized(Ket v);
Ket kron(std::span<const cplx> a, std::span<const cplx> b);

}  // namespace qthermo

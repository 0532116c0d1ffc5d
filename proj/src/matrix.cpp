// matrix.cpp

#include "qthermo/matrix.hpp"

#include <algorithm>
#include <cmath>

#include "qthermo/errors.hpp"

namespace qthermo {

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
  if (dim == 0) throw BadDimension("matrix dimension must be at least 1");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::vector<cplx> entries)
    : dim_(dim), data_(std::move(entries)) {
  if (dim == 0) throw BadDimension("matrix dimension must be at least 1");
  if (data_.size() != dim * dim)
    throw DimensionMismatch("expected " + std::to_string(dim * dim) + " entries, got " +
                            std::to_string(data_.size()));
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows)
    : ComplexMatrix(rows.size()) {
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != dim_) throw DimensionMismatch("matrix literal is not square");
    std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
    ++r;
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const cplx> values) {
  ComplexMatrix m(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const cplx> ket, std::span<const cplx> bra) {
  if (ket.size() != bra.size()) throw DimensionMismatch("outer product of unequal kets");
  ComplexMatrix m(ket.size());
  for (std::size_t r = 0; r < ket.size(); ++r)
    for (std::size_t c = 0; c < bra.size(); ++c) m(r, c) = ket[r] * std::conj(bra[c]);
  return m;
}

Ket ComplexMatrix::column(std::size_t c) const {
  Ket v(dim_);
  for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
  return v;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const cplx> values) {
  if (values.size() != dim_) throw DimensionMismatch("column length");
  for (std::size_t r = 0; r < dim_; ++r) (*this)(r, c) = values[r];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

cplx ComplexMatrix::trace() const {
  cplx t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("matrix sum");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (other.dim_ != dim_) throw DimensionMismatch("matrix difference");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw DimensionMismatch("matrix product");
  ComplexMatrix c(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx{}) continue;
      for (std::size_t j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
    }
  return c;
}

Ket operator*(const ComplexMatrix& a, std::span<const cplx> v) {
  const std::size_t n = a.dim();
  if (v.size() != n) throw DimensionMismatch("matrix-vector product");
  Ket out(n);
  for (std::size_t i = 0; i < n; ++i) {
    cplx s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a(i, j) * v[j];
    out[i] = s;
  }
  return out;
}

ComplexMatrix conjugate_by(const ComplexMatrix& a, const ComplexMatrix& b) {
  return a * b * a.adjoint();
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff");
  double m = 0.0;
  auto ea = a.entries();
  auto eb = b.entries();
  for (std::size_t i = 0; i < ea.size(); ++i) m = std::max(m, std::abs(ea[i] - eb[i]));
  return m;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  const std::size_t n = a.dim();
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = r; c < n; ++c)
      if (std::abs(a(r, c) - std::conj(a(c, r))) > tol) return false;
  return true;
}

double unitarity_error(const ComplexMatrix& u) {
  return max_abs_diff(u.adjoint() * u, ComplexMatrix::identity(u.dim()));
}

bool is_unitary(const ComplexMatrix& u, double tol) { return unitarity_error(u) <= tol; }

double real_trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim();
  if (b.dim() != n) throw DimensionMismatch("trace of product");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) s += (a(i, k) * b(k, i)).real();
  return s;
}

Ket basis_ket(std::size_t dim, std::size_t index) {
  if (index >= dim) throw DimensionMismatch("basis index out of range");
  Ket v(dim);
  v[index] = 1.0;
  return v;
}

cplx inner(std::span<const cplx> bra, std::span<const cplx> ket) {
  if (bra.size() != ket.size()) throw DimensionMismatch("inner product");
  cplx s = 0.0;
  for (std::size_t i = 0; i < bra.size(); ++i) s += std::conj(bra[i]) * ket[i];
  return s;
}

double norm(std::span<const cplx> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Ket normalized(Ket v) {
  const double n = norm(v);
  if (n == 0.0) throw InvalidState("cannot normalize the zero vector");
  for (auto& z : v) z /= n;
  return v;
}

Ket kron(std::span<const cplx> a, std::span<const cplx> b) {
  Ket out(a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = a[i] * b[j];
  return out;
}

}  // namespace qthermo

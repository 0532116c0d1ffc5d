// linalg.cpp

#include "qthermo/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qthermo/errors.hpp"
#include "qthermo/tolerances.hpp"

namespace qthermo {

namespace {

double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t p = 0; p < n; ++p)
    for (std::size_t q = 0; q < n; ++q)
      if (p != q) s += std::norm(a(p, q));
  return std::sqrt(s);
}

// Diagonalizes `a` in place. When `vectors` is non-null it accumulates the
// rotations so that a_in = V diag V^dagger.
void jacobi(ComplexMatrix& a, ComplexMatrix* vectors) {
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
  const double scale = a.frobenius_norm();
  if (n == 1 || scale == 0.0) return;
  const double threshold = tol::kJacobiOffDiagonal * scale;

  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) return;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0 || mag < 1e-300) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();

        // Phase D = diag(1, e^{-i phi}) makes the pivot real; then a real
        // Jacobi rotation zeroes it. Combined column transform W = D R.
        const cplx phase = apq / mag;
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx wpp = c;
        const cplx wpq = s;
        const cplx wqp = -s * std::conj(phase);
        const cplx wqq = c * std::conj(phase);

        for (std::size_t k = 0; k < n; ++k) {
          const cplx akp = a(k, p);
          const cplx akq = a(k, q);
          a(k, p) = akp * wpp + akq * wqp;
          a(k, q) = akp * wpq + akq * wqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const cplx apk = a(p, k);
          const cplx aqk = a(q, k);
          a(p, k) = std::conj(wpp) * apk + std::conj(wqp) * aqk;
          a(q, k) = std::conj(wpq) * apk + std::conj(wqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = app - t * mag;
        a(q, q) = aqq + t * mag;

        if (vectors != nullptr) {
          ComplexMatrix& v = *vectors;
          for (std::size_t k = 0; k < n; ++k) {
            const cplx vkp = v(k, p);
            const cplx vkq = v(k, q);
            v(k, p) = vkp * wpp + vkq * wqp;
            v(k, q) = vkp * wpq + vkq * wqq;
          }
        }
      }
    }
  }
}

void require_hermitian(const ComplexMatrix& a) {
  if (!is_hermitian(a, tol::kStructural)) throw NotHermitian("matrix is not Hermitian within 1e-9");
}

// Stable ascending order by (value, original index).
std::vector<std::size_t> ascending_order(const std::vector<double>& values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] < values[j]; });
  return order;
}

}  // namespace

ComplexMatrix HermitianSpectrum::reconstruct() const {
  const std::size_t n = eigenvectors.dim();
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t r = 0; r < n; ++r) {
      const cplx vr = eigenvectors(r, k) * eigenvalues[k];
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(eigenvectors(c, k));
    }
  return out;
}

HermitianSpectrum eig_hermitian(const ComplexMatrix& a) {
  require_hermitian(a);
  const std::size_t n = a.dim();
  ComplexMatrix work = a;
  ComplexMatrix vectors = ComplexMatrix::identity(n);
  jacobi(work, &vectors);

  std::vector<double> raw(n);
  for (std::size_t i = 0; i < n; ++i) raw[i] = work(i, i).real();
  const auto order = ascending_order(raw);

  HermitianSpectrum out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.eigenvalues[k] = raw[order[k]];
    for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, k) = vectors(r, order[k]);
  }
  return out;
}

std::vector<double> eigvals_hermitian(const ComplexMatrix& a) {
  require_hermitian(a);
  ComplexMatrix work = a;
  jacobi(work, nullptr);
  std::vector<double> values(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) values[i] = work(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim();
  const std::size_t nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l) out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix kron_all(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw DimensionMismatch("kron_all needs at least one factor");
  ComplexMatrix out = factors[0];
  for (std::size_t i = 1; i < factors.size(); ++i) out = kron(out, factors[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, std::span<const std::size_t> dims,
                            std::span<const std::size_t> keep) {
  const std::size_t nsub = dims.size();
  if (nsub == 0) throw DimensionMismatch("no subsystem dimensions given");
  std::size_t total = 1;
  for (auto d : dims) {
    if (d == 0) throw DimensionMismatch("subsystem dimension 0");
    total *= d;
  }
  if (total != m.dim())
    throw DimensionMismatch("subsystem dimensions multiply to " + std::to_string(total) +
                            ", matrix has dim " + std::to_string(m.dim()));
  std::vector<bool> kept(nsub, false);
  for (auto k : keep) {
    if (k >= nsub) throw DimensionMismatch("keep index out of range");
    if (kept[k]) throw DimensionMismatch("duplicate keep index");
    kept[k] = true;
  }

  // Row-major strides of the full index, and of the kept/traced sub-indices.
  std::vector<std::size_t> stride(nsub);
  std::size_t s = 1;
  for (std::size_t i = nsub; i-- > 0;) {
    stride[i] = s;
    s *= dims[i];
  }
  std::vector<std::size_t> kept_axes;
  std::vector<std::size_t> traced_axes;
  for (std::size_t i = 0; i < nsub; ++i) (kept[i] ? kept_axes : traced_axes).push_back(i);

  auto offsets = [&](const std::vector<std::size_t>& axes) {
    std::size_t count = 1;
    for (auto ax : axes) count *= dims[ax];
    std::vector<std::size_t> out(count, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rem = idx;
      std::size_t off = 0;
      for (std::size_t a = axes.size(); a-- > 0;) {
        const std::size_t ax = axes[a];
        off += (rem % dims[ax]) * stride[ax];
        rem /= dims[ax];
      }
      out[idx] = off;
    }
    return out;
  };
  const auto kept_off = offsets(kept_axes);
  const auto traced_off = offsets(traced_axes);

  ComplexMatrix out(kept_off.size());
  for (std::size_t i = 0; i < kept_off.size(); ++i)
    for (std::size_t j = 0; j < kept_off.size(); ++j) {
      cplx acc = 0.0;
      for (auto t : traced_off) acc += m(kept_off[i] + t, kept_off[j] + t);
      out(i, j) = acc;
    }
  return out;
}

std::pair<ComplexMatrix, ComplexMatrix> pure_state_marginals(std::span<const cplx> psi,
                                                             std::size_t dim_a,
                                                             std::size_t dim_b) {
  if (psi.size() != dim_a * dim_b) throw DimensionMismatch("pure_state_marginals");
  ComplexMatrix ra(dim_a);
  ComplexMatrix rb(dim_b);
  for (std::size_t i = 0; i < dim_a; ++i)
    for (std::size_t j = 0; j < dim_a; ++j) {
      cplx acc = 0.0;
      for (std::size_t k = 0; k < dim_b; ++k) acc += psi[i * dim_b + k] * std::conj(psi[j * dim_b + k]);
      ra(i, j) = acc;
    }
  for (std::size_t k = 0; k < dim_b; ++k)
    for (std::size_t l = 0; l < dim_b; ++l) {
      cplx acc = 0.0;
      for (std::size_t i = 0; i < dim_a; ++i) acc += psi[i * dim_b + k] * std::conj(psi[i * dim_b + l]);
      rb(k, l) = acc;
    }
  return {std::move(ra), std::move(rb)};
}

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("trace_distance");
  const auto values = eigvals_hermitian(a - b);
  double s = 0.0;
  for (double v : values) s += std::abs(v);
  return 0.5 * s;
}

ComplexMatrix complete_to_unitary(std::span<const AssignedColumn> columns, std::size_t dim) {
  std::vector<bool> assigned(dim, false);
  for (const auto& col : columns) {
    if (col.index >= dim) throw DimensionMismatch("column index out of range");
    if (col.vector.size() != dim) throw DimensionMismatch("column length differs from dim");
    if (assigned[col.index]) throw NotOrthonormal("column index assigned twice");
    assigned[col.index] = true;
  }
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i; j < columns.size(); ++j) {
      const cplx ip = inner(columns[i].vector, columns[j].vector);
      const cplx expected = i == j ? 1.0 : 0.0;
      if (std::abs(ip - expected) > tol::kOrthonormal)
        throw NotOrthonormal("columns " + std::to_string(columns[i].index) + " and " +
                             std::to_string(columns[j].index) + " are not orthonormal");
    }
  }

  ComplexMatrix u(dim);
  std::vector<Ket> basis;
  basis.reserve(dim);
  for (const auto& col : columns) {
    u.set_column(col.index, col.vector);
    basis.push_back(col.vector);
  }

  std::size_t next_free = 0;
  auto advance = [&] {
    while (next_free < dim && assigned[next_free]) ++next_free;
  };
  advance();
  for (std::size_t candidate = 0; candidate < dim && next_free < dim; ++candidate) {
    Ket v = basis_ket(dim, candidate);
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& b : basis) {
        const cplx proj = inner(b, v);
        for (std::size_t r = 0; r < dim; ++r) v[r] -= proj * b[r];
      }
    const double n = norm(v);
    if (n < tol::kDependentColumn) continue;
    for (auto& z : v) z /= n;
    u.set_column(next_free, v);
    assigned[next_free] = true;
    basis.push_back(std::move(v));
    advance();
  }
  return u;
}

ComplexMatrix expm_i_hermitian(const HermitianSpectrum& spectrum, double t) {
  const std::size_t n = spectrum.eigenvectors.dim();
  const auto& v = spectrum.eigenvectors;
  ComplexMatrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const cplx phase = std::polar(1.0, -t * spectrum.eigenvalues[k]);
    for (std::size_t r = 0; r < n; ++r) {
      const cplx vr = v(r, k) * phase;
      for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(v(c, k));
    }
  }
  return out;
}

ComplexMatrix expm_i_hermitian(const ComplexMatrix& a, double t) {
  return expm_i_hermitian(eig_hermitian(a), t);
}

}  // namespace qthermo

#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "helpers.hpp"
#include "qthermo/ergotropy.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/protocols.hpp"
#include "qthermo/random.hpp"

using namespace qthermo;

namespace {

std::vector<double> random_levels(std::size_t d, Rng& rng, bool zero_ground) {
  std::uniform_real_distribution<double> level(0.0, 2.0);
  std::vector<double> e(d);
  for (auto& x : e) x = level(rng);
  if (zero_ground) e[0] = 0.0;
  return e;
}

template <std::size_t N>
std::vector<Hamiltonian> repeat(const Hamiltonian& h) {
  return std::vector<Hamiltonian>(N, h);
}

}  // namespace

TEST_SUITE("protocols") {
  TEST_CASE("energy_cloner for d=2 is CNOT") {
    CHECK(energy_cloner(2) == test::cnot());
    for (std::size_t d : {2, 3, 4, 5}) CHECK(is_unitary(energy_cloner(d), 1e-10));
    CHECK_THROWS_AS(energy_cloner(1), BadDimension);
  }

  TEST_CASE("energy_cloner on |+>") {
    const auto h = Hamiltonian::equally_spaced(2);
    const auto res = run_protocol(energy_cloner(2), DensityMatrix::pure(test::plus()), repeat<2>(h));
    const auto half = ComplexMatrix::identity(2) * cplx(0.5);
    for (const auto& m : res.marginals) {
      CHECK(max_abs_diff(m.matrix(), half) < 1e-12);
      CHECK(energy(m, h) == doctest::Approx(0.5));
    }
  }

  TEST_CASE("energy_cloner on a mixed qutrit state") {
    Rng rng(1);
    const Ket a = sample_pure_ket(3, rng);
    const Ket b = sample_pure_ket(3, rng);
    const auto rho = DensityMatrix(ComplexMatrix::projector(a) * cplx(0.6) + ComplexMatrix::projector(b) * cplx(0.4));
    const auto h = Hamiltonian::diagonal(random_levels(3, rng, false));
    const auto res = run_protocol(energy_cloner(3), rho, repeat<2>(h));
    for (const auto& m : res.marginals) CHECK(std::abs(energy(m, h) - energy(rho, h)) < 1e-12);
  }

  TEST_CASE("energy_cloner copies energy for pure and mixed inputs") {
    Rng rng(2);
    for (std::size_t d : {2, 3, 4, 5}) {
      const auto u = energy_cloner(d);
      std::vector<Hamiltonian> hs;
      for (int k = 0; k < 5; ++k) hs.push_back(Hamiltonian::diagonal(random_levels(d, rng, false)));
      for (int n = 0; n < 40; ++n) {
        const auto rho = n % 2 ? DensityMatrix::pure(sample_pure_ket(d, rng)) : sample_ginibre_density(d, 2, rng);
        const auto res = run_protocol(u, rho, repeat<2>(hs[0]));
        for (const auto& h : hs)
          for (const auto& m : res.marginals) CHECK(std::abs(energy(m, h) - energy(rho, h)) < 1e-10);
      }
    }
  }

  TEST_CASE("run_protocol result invariants") {
    Rng rng(3);
    const auto h = Hamiltonian::equally_spaced(3);
    const auto rho = sample_ginibre_density(3, 3, rng);
    const auto res = run_protocol(energy_splitter(3, 0.3), rho, repeat<2>(h));
    CHECK(is_unitary(res.unitary, 1e-10));
    const std::vector<std::size_t> dims{3, 3};
    for (std::size_t k = 0; k < 2; ++k)
      CHECK(max_abs_diff(res.marginals[k].matrix(), test::contract_to(res.global_output.matrix(), dims, k)) < 1e-12);
    CHECK(res.energy_ledger.marginal_energies.size() == 2);
    CHECK(std::abs(res.energy_ledger.input_energy - energy(rho, h)) < 1e-12);
    CHECK_THROWS_AS(run_protocol(energy_cloner(2), rho, repeat<2>(h)), DimensionMismatch);
  }

  TEST_CASE("energy_splitter examples") {
    Rng rng(4);
    const auto h = Hamiltonian::diagonal(random_levels(3, rng, true));
    const auto psi = DensityMatrix::pure(sample_pure_ket(3, rng));
    const auto r1 = run_protocol(energy_splitter(3, 1.0), psi, repeat<2>(h));
    CHECK(std::abs(r1.energy_ledger.marginal_energies[0] - energy(psi, h)) < 1e-12);
    CHECK(std::abs(r1.energy_ledger.marginal_energies[1]) < 1e-12);

    const auto hq = Hamiltonian::equally_spaced(2);
    const auto rh = run_protocol(energy_splitter(2, 0.5), DensityMatrix::pure(basis_ket(2, 1)), repeat<2>(hq));
    CHECK(rh.energy_ledger.marginal_energies[0] == doctest::Approx(0.5));
    CHECK(rh.energy_ledger.marginal_energies[1] == doctest::Approx(0.5));

    const auto h4 = Hamiltonian::diagonal(random_levels(4, rng, true));
    const auto psi4 = DensityMatrix::pure(sample_pure_ket(4, rng));
    const auto r4 = run_protocol(energy_splitter(4, 0.25), psi4, repeat<2>(h4));
    CHECK(std::abs(r4.energy_ledger.marginal_energies[0] / energy(psi4, h4) - 0.25) < 1e-10);
  }

  TEST_CASE("energy_splitter splits energy in the requested ratio") {
    Rng rng(5);
    for (std::size_t d : {2, 3, 4})
      for (double p : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const auto u = energy_splitter(d, p);
        CHECK(unitarity_error(u) < 1e-10);
        for (int n = 0; n < 10; ++n) {
          const auto h = Hamiltonian::diagonal(random_levels(d, rng, true));
          const auto psi = DensityMatrix::pure(sample_pure_ket(d, rng));
          const double e = energy(psi, h);
          const auto& me = run_protocol(u, psi, repeat<2>(h)).energy_ledger.marginal_energies;
          CHECK(std::abs(me[0] - p * e) < 1e-10);
          CHECK(std::abs(me[1] - (1 - p) * e) < 1e-10);
          CHECK(std::abs(me[0] + me[1] - e) < 1e-10);
        }
      }
    CHECK_THROWS_AS(energy_splitter(1, 0.5), BadDimension);
    CHECK_THROWS_AS(energy_splitter(2, -0.1), BadFraction);
    CHECK_THROWS_AS(energy_splitter(2, 1.5), BadFraction);
  }

  TEST_CASE("diagonal_work_masker on the ground state") {
    const auto h = Hamiltonian::equally_spaced(3);
    const auto res = run_protocol(diagonal_work_masker(3), DensityMatrix::pure(basis_ket(3, 0)), repeat<2>(h));
    CHECK(max_abs_diff(res.global_output.matrix(), ComplexMatrix::projector(basis_ket(9, 0))) < 1e-12);
    for (const auto& m : res.marginals) CHECK(max_abs_diff(m.matrix(), ComplexMatrix::projector(basis_ket(3, 0))) < 1e-12);
  }

  TEST_CASE("diagonal_work_masker populations") {
    const auto h2 = Hamiltonian::equally_spaced(2);
    const std::vector<double> c2{0.35, 0.65};
    const auto r2 = run_protocol(diagonal_work_masker(2), DensityMatrix(ComplexMatrix::diagonal(c2)), repeat<2>(h2));
    CHECK(std::abs(r2.marginals[0].matrix()(0, 0) - (0.35 + 0.65 / 2)) < 1e-12);
    CHECK(std::abs(r2.marginals[0].matrix()(1, 1) - 0.65 / 2) < 1e-12);

    const auto h4 = Hamiltonian::equally_spaced(4);
    const std::vector<double> c4(4, 0.25);
    const auto r4 = run_protocol(diagonal_work_masker(4), DensityMatrix(ComplexMatrix::diagonal(c4)), repeat<2>(h4));
    const std::vector<double> expected{25.0 / 48, 13.0 / 48, 7.0 / 48, 3.0 / 48};
    const auto formula = masked_marginal_populations(c4);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(std::abs(formula[k] - expected[k]) < 1e-15);
      for (const auto& m : r4.marginals) CHECK(std::abs(m.matrix()(k, k) - expected[k]) < 1e-12);
    }
    for (const auto& m : r4.marginals) CHECK(is_passive(m, h4));
    CHECK(std::abs(r4.energy_ledger.output_energy - r4.energy_ledger.input_energy) < 1e-12);
  }

  TEST_CASE("diagonal_work_masker masks random diagonal inputs") {
    Rng rng(6);
    for (std::size_t d : {2, 3, 4, 5, 6}) {
      const auto h = Hamiltonian::equally_spaced(d);
      const auto u = diagonal_work_masker(d);
      CHECK(is_unitary(u, 1e-10));
      for (int n = 0; n < 10; ++n) {
        std::vector<double> c(d);
        double s = 0;
        for (auto& x : c) s += (x = std::exponential_distribution<double>(1.0)(rng));
        for (auto& x : c) x /= s;
        const auto res = run_protocol(u, DensityMatrix(ComplexMatrix::diagonal(c)), repeat<2>(h));
        CHECK(max_abs_diff(res.marginals[0].matrix(), res.marginals[1].matrix()) < 1e-12);
        CHECK(max_abs_diff(res.marginals[0].matrix(), ComplexMatrix::diagonal(masked_marginal_populations(c))) < 1e-12);
        CHECK(is_passive(res.marginals[0], h));
        CHECK(is_passive(res.marginals[1], h));
      }
    }
    CHECK_THROWS_AS(diagonal_work_masker(1), BadDimension);
  }

  TEST_CASE("diagonal_work_masker does not mask coherent inputs") {
    const auto h = Hamiltonian::equally_spaced(2);
    const auto res = run_protocol(diagonal_work_masker(2), DensityMatrix::pure(test::plus()), repeat<2>(h));
    const double w = ergotropy(res.marginals[0], h).ergotropy + ergotropy(res.marginals[1], h).ergotropy;
    CHECK(w > 1e-3);
  }

  TEST_CASE("four_party_masker examples") {
    const auto u = four_party_masker();
    CHECK(is_unitary(u, 1e-10));
    const Ket phi_plus{test::kInvSqrt2, 0.0, 0.0, test::kInvSqrt2};
    const Ket out = u * std::span<const cplx>(basis_ket(16, 0));
    const Ket expected = kron(phi_plus, phi_plus);
    for (std::size_t i = 0; i < 16; ++i) CHECK(std::abs(out[i] - expected[i]) < 1e-12);

    const auto h = Hamiltonian::equally_spaced(2);
    const auto half = ComplexMatrix::identity(2) * cplx(0.5);
    const std::vector<std::size_t> dims{2, 2, 2, 2};
    for (const Ket& in : {basis_ket(2, 0), test::plus()}) {
      const auto res = run_protocol(u, DensityMatrix::pure(in), repeat<4>(h));
      for (std::size_t k = 0; k < 4; ++k) {
        CHECK(max_abs_diff(res.marginals[k].matrix(), half) < 1e-12);
        CHECK(max_abs_diff(test::contract_to(res.global_output.matrix(), dims, k), half) < 1e-12);
      }
    }
  }

  TEST_CASE("four_party_masker masks random complex amplitudes") {
    Rng rng(7);
    const auto u = four_party_masker();
    const auto h = Hamiltonian::equally_spaced(2);
    const auto half = ComplexMatrix::identity(2) * cplx(0.5);
    for (int n = 0; n < 100; ++n) {
      const auto res = run_protocol(u, DensityMatrix::pure(sample_pure_ket(2, rng)), repeat<4>(h));
      for (const auto& m : res.marginals) {
        CHECK(max_abs_diff(m.matrix(), half) < 1e-12);
        CHECK(ergotropy(m, h).ergotropy < 1e-10);
      }
    }
  }

  TEST_CASE("signaling_pair examples") {
    const auto [s1, s2] = signaling_pair(std::numbers::pi / 2, std::numbers::pi / 2, DensityMatrix::maximally_mixed(4));
    CHECK(trace_distance(s1, s1) == doctest::Approx(0.0));
    CHECK(trace_distance(s1, s2) >= 0.125);
    CHECK(std::abs(s1.matrix()(0, 0) - 0.5) < 1e-15);
    CHECK(std::abs(s1.matrix()(3, 3) - 0.5) < 1e-15);
    CHECK(std::abs(s1.matrix()(1, 1)) < 1e-15);
    // 1/2 * 1/4 from the chi (x) chi term, plus 1/2 * 1/4 from I/4.
    CHECK(s2.matrix()(1, 1).real() == doctest::Approx(0.25));
  }

  TEST_CASE("signaling_pair witness holds for random inputs") {
    Rng rng(8);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int n = 0; n < 100; ++n) {
      const auto rm = sample_ginibre_density(4, 4, rng);
      const auto [s1, s2] = signaling_pair(2 * std::numbers::pi * (1 - unit(rng)), 2 * std::numbers::pi * (1 - unit(rng)), rm);
      CHECK(trace_distance(s1, s2) >= 0.125 - 1e-12);
      CHECK(s2.matrix()(1, 1).real() >= 0.125 - 1e-12);
    }
  }

  TEST_CASE("signaling_pair errors") {
    const auto rm = DensityMatrix::maximally_mixed(4);
    CHECK_THROWS_AS(signaling_pair(0.0, 1.0, rm), InvalidState);
    CHECK_THROWS_AS(signaling_pair(1.0, 7.0, rm), InvalidState);
    CHECK_THROWS_AS(signaling_pair(1.0, 1.0, DensityMatrix::maximally_mixed(2)), InvalidState);
    CHECK_NOTHROW(signaling_pair(2 * std::numbers::pi, 1.0, rm));
  }
}

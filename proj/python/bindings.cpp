// Python module qthermo._core.

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qthermo/ergotropy.hpp"
#include "qthermo/errors.hpp"
#include "qthermo/experiments.hpp"
#include "qthermo/linalg.hpp"
#include "qthermo/nogo.hpp"
#include "qthermo/protocols.hpp"

namespace py = pybind11;
using namespace qthermo;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

ComplexMatrix to_matrix(const CArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionMismatch("expected a square 2-d array");
  const auto n = static_cast<std::size_t>(a.shape(0));
  ComplexMatrix m(n);
  auto r = a.unchecked<2>();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = r(i, j);
  return m;
}

CArray to_array(const ComplexMatrix& m) {
  const auto n = static_cast<py::ssize_t>(m.dim());
  CArray out({n, n});
  auto w = out.mutable_unchecked<2>();
  for (py::ssize_t i = 0; i < n; ++i)
    for (py::ssize_t j = 0; j < n; ++j) w(i, j) = m(i, j);
  return out;
}

Ket to_ket(const CArray& a) {
  if (a.ndim() != 1) throw DimensionMismatch("expected a 1-d array");
  return Ket(a.data(), a.data() + a.shape(0));
}

std::vector<Ket> to_kets(const std::vector<CArray>& v) {
  std::vector<Ket> out;
  for (const auto& a : v) out.push_back(to_ket(a));
  return out;
}

DensityMatrix to_state(const CArray& a) { return DensityMatrix(to_matrix(a)); }
Hamiltonian to_hamiltonian(const CArray& a) { return Hamiltonian(to_matrix(a)); }

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Energy and work cloning, splitting and masking toolkit";
  m.attr("__version__") = QTHERMO_VERSION;
  py::register_exception<Error>(m, "QThermoError", PyExc_ValueError);

  m.def("eigh", [](const CArray& a) {
    const auto s = eig_hermitian(to_matrix(a));
    return py::make_tuple(s.eigenvalues, to_array(s.eigenvectors));
  }, "Hermitian eigendecomposition, eigenvalues ascending.");
  m.def("kron", [](const CArray& a, const CArray& b) { return to_array(kron(to_matrix(a), to_matrix(b))); });
  m.def("partial_trace", [](const CArray& a, const std::vector<std::size_t>& dims, const std::vector<std::size_t>& keep) {
    return to_array(partial_trace(to_matrix(a), dims, keep));
  }, py::arg("m"), py::arg("dims"), py::arg("keep"));
  m.def("trace_distance", [](const CArray& a, const CArray& b) {
    return trace_distance(to_matrix(a), to_matrix(b));
  });
  m.def("expm_i_hermitian", [](const CArray& a, double t) { return to_array(expm_i_hermitian(to_matrix(a), t)); },
        "exp(-i A t)");

  m.def("energy", [](const CArray& rho, const CArray& h) { return energy(to_state(rho), to_hamiltonian(h)); });
  m.def("to_bloch", [](const CArray& a) {
    const auto b = to_bloch(to_matrix(a));
    return py::make_tuple(b.scalar, b.components);
  }, "Returns (Tr A, components) with A = (Tr A I + sum r_k sigma_k) / d.");
  m.def("from_bloch", [](std::size_t dim, double scalar, const std::vector<double>& components) {
    return to_array(from_bloch(BlochVector{dim, scalar, components}));
  });
  m.def("evolve", [](const CArray& rho, const CArray& h, double t) {
    return to_array(evolve(to_state(rho), to_hamiltonian(h), t).matrix());
  });

  m.def("ergotropy", [](const CArray& rho, const CArray& h) {
    const auto w = ergotropy(to_state(rho), to_hamiltonian(h));
    py::dict d;
    d["input_energy"] = w.input_energy;
    d["passive_energy"] = w.passive_energy;
    d["ergotropy"] = w.ergotropy;
    d["passive_state"] = to_array(w.passive_state.matrix());
    d["extraction_unitary"] = to_array(w.extraction_unitary);
    return d;
  });
  m.def("passive_state", [](const CArray& rho, const CArray& h) {
    return to_array(passive_state(to_state(rho), to_hamiltonian(h)).matrix());
  });
  m.def("is_passive", [](const CArray& rho, const CArray& h, double tol) {
    return is_passive(to_state(rho), to_hamiltonian(h), tol);
  }, py::arg("rho"), py::arg("h"), py::arg("tol") = tol::kPassive);
  m.def("ergotropy_gap", [](const CArray& rho, const CArray& ha, const CArray& hb) {
    const auto a = to_hamiltonian(ha);
    const auto b = to_hamiltonian(hb);
    return ergotropy_gap(to_state(rho), a, b, {a.dim(), b.dim()});
  });

  m.def("energy_cloner", [](std::size_t d) { return to_array(energy_cloner(d)); });
  m.def("energy_splitter", [](std::size_t d, double p) { return to_array(energy_splitter(d, p)); });
  m.def("diagonal_work_masker", [](std::size_t d) { return to_array(diagonal_work_masker(d)); });
  m.def("four_party_masker", [] { return to_array(four_party_masker()); });
  m.def("signaling_pair", [](double phi1, double phi2, const CArray& rho_minus) {
    const auto [s1, s2] = signaling_pair(phi1, phi2, to_state(rho_minus));
    return py::make_tuple(to_array(s1.matrix()), to_array(s2.matrix()));
  });
  m.def("run_protocol", [](const CArray& u, const CArray& rho, const std::vector<CArray>& hams) {
    std::vector<Hamiltonian> hs;
    for (const auto& h : hams) hs.push_back(to_hamiltonian(h));
    const auto r = run_protocol(to_matrix(u), to_state(rho), hs);
    py::list marginals;
    for (const auto& x : r.marginals) marginals.append(to_array(x.matrix()));
    py::dict d;
    d["global_output"] = to_array(r.global_output.matrix());
    d["marginals"] = marginals;
    d["input_energy"] = r.energy_ledger.input_energy;
    d["output_energy"] = r.energy_ledger.output_energy;
    d["marginal_energies"] = r.energy_ledger.marginal_energies;
    return d;
  });

  m.def("objective_work_clone", [](const CArray& u, const std::vector<CArray>& inputs, const CArray& h) {
    return objective_work_clone(to_matrix(u), to_kets(inputs), to_hamiltonian(h));
  });
  m.def("objective_universal_mask", [](const CArray& u, const std::vector<CArray>& inputs, const CArray& h) {
    return objective_universal_mask(to_matrix(u), to_kets(inputs), to_hamiltonian(h));
  });
  m.def("objective_bloch_radius", [](const CArray& u, double theta, double phi, const std::vector<CArray>& inputs) {
    return objective_bloch_radius(to_matrix(u), {theta, phi}, to_kets(inputs));
  });
  m.def("unitary_from_params", [](std::size_t dim, const std::vector<double>& theta) {
    return to_array(unitary_from_params(dim, theta));
  });

  m.def("list_experiments", [] {
    std::vector<std::string> names;
    for (const auto& e : registered_experiments()) names.push_back(e.name);
    return names;
  });
  m.def("_run_json", [](const std::string& config_json, std::size_t threads) {
    const auto cfg = config_from_json(ordered_json::parse(config_json));
    ExperimentReport r;
    {
      py::gil_scoped_release release;
      r = run(cfg, RunOptions{threads});
    }
    return report(std::vector<ExperimentReport>{r}, ReportFormat::Json);
  });
}

import numpy as np
import pytest

import qthermo

H = np.diag([0.0, 1.0]).astype(complex)
PLUS = np.array([1, 1], dtype=complex) / np.sqrt(2)


def proj(v):
    return np.outer(v, v.conj())


def test_ergotropy_of_plus():
    w = qthermo.ergotropy(proj(PLUS), H)
    assert w["ergotropy"] == pytest.approx(0.5)
    assert np.allclose(w["passive_state"], np.diag([1.0, 0.0]))


def test_partial_trace_bell():
    phi = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)
    assert np.allclose(qthermo.partial_trace(proj(phi), [2, 2], [0]), np.eye(2) / 2)


def test_cloner_is_cnot():
    cnot = np.eye(4)[:, [0, 1, 3, 2]]
    assert np.allclose(qthermo.energy_cloner(2), cnot)
    basis = [np.array([1, 0], dtype=complex), np.array([0, 1], dtype=complex)]
    assert qthermo.objective_work_clone(cnot, basis, H) < 1e-12
    assert qthermo.objective_work_clone(cnot, basis + [PLUS], H) == pytest.approx(2.0)


def test_four_party_marginals():
    u = qthermo.four_party_masker()
    res = qthermo.run_protocol(u, proj(PLUS), [H] * 4)
    for m in res["marginals"]:
        assert np.allclose(m, np.eye(2) / 2, atol=1e-12)


def test_masker_keeps_marginals_passive():
    h3 = np.diag([0.0, 1.0, 2.0]).astype(complex)
    rho = np.diag([0.2, 0.3, 0.5]).astype(complex)
    res = qthermo.run_protocol(qthermo.diagonal_work_masker(3), rho, [h3, h3])
    assert all(qthermo.is_passive(m, h3) for m in res["marginals"])


def test_bloch_roundtrip():
    rho = np.array([[0.7, 0.1 - 0.2j], [0.1 + 0.2j, 0.3]])
    scalar, comps = qthermo.to_bloch(rho)
    assert np.allclose(qthermo.from_bloch(2, scalar, comps), rho, atol=1e-12)


def test_errors_raise():
    with pytest.raises(qthermo.QThermoError):
        qthermo.energy_splitter(2, 1.5)
    with pytest.raises(qthermo.QThermoError):
        qthermo.run_experiment("warp-drive")


def test_run_experiment():
    assert "nogo-clone" in qthermo.list_experiments()
    r = qthermo.run_experiment("nosignal-demo", samples=20)
    assert r["verdict"] == "PASS"
    assert r["metrics"]["min_trace_distance"] >= 0.125 - 1e-12

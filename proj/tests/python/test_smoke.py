"""Smoke tests for the python bindings."""

import math

import numpy as np
import pytest

import passivize as pz


def test_spec_and_qsl():
    spec = pz.SystemSpec([0.0, 1.0, 2.0], [0.3, 0.2, 0.5])
    assert spec.dim == 3
    assert pz.discrepancy(spec) == 3
    assert pz.tau_qsl(spec) == pytest.approx(math.pi * math.sqrt(3) / 2)
    assert pz.tau_pas_nondegenerate(spec) == pytest.approx(math.pi * math.sqrt(8) / 3)


def test_validation_error():
    with pytest.raises(ValueError):
        pz.SystemSpec([1.0, 0.0], [0.5, 0.5])


def test_operator_layer_roundtrip():
    h = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex) / math.sqrt(2)
    u = pz.expm_skew(h, math.pi * math.sqrt(2) / 2)
    np.testing.assert_allclose(u, -1j * np.array([[0, 1], [1, 0]]), atol=1e-12)
    entries, phases = pz.principal_log(u)
    assert sorted(np.round(phases, 9)) == [
        pytest.approx(-math.pi / 2),
        pytest.approx(math.pi / 2),
    ]
    assert pz.geodesic_distance(np.eye(2, dtype=complex), u) == pytest.approx(
        math.pi / math.sqrt(2)
    )
    assert pz.bandwidth(h) == pytest.approx(1.0)


def test_bounds_and_hamiltonian():
    spec = pz.SystemSpec(
        [1, 2, 3, 4, 5, 6, 6, 7], [0.17, 0.17, 0.20, 0.11, 0.13, 0.07, 0.06, 0.09]
    )
    bounds = pz.compute_bounds(spec)
    assert bounds["tau_qsl"] == pytest.approx(math.pi * math.sqrt(6) / 2)
    assert bounds["tau_exact"] == pytest.approx(bounds["tau_qsl"])

    built = pz.build_time_optimal_hamiltonian(spec, "involution")
    assert built is not None
    h, tau = built
    assert pz.bandwidth(h) == pytest.approx(1.0)
    rho = np.diag(spec.p).astype(complex)
    u = pz.expm_skew(h, tau)
    assert pz.is_passive(u @ rho @ u.conj().T, spec)


def test_evolution():
    spec = pz.SystemSpec([0.0, 1.0], [0.3, 0.7])
    rho = np.diag([0.3, 0.7]).astype(complex)
    out = pz.von_neumann_evolve(lambda t: np.zeros((2, 2), dtype=complex), rho, 1.0, 10)
    np.testing.assert_allclose(out, rho, atol=1e-14)


def test_collective_and_battery():
    qubit = pz.SystemSpec([0.0, 1.0], [0.3, 0.7])
    assert pz.delta_n(qubit, 2) == 2
    assert pz.delta_n_closed("qubit_mixed", 2) == 2
    assert pz.advantage_ratio(qubit, 2) == pytest.approx(2.0)
    aqsl, upper = pz.assisted_bounds(qubit, 4)
    assert aqsl == pytest.approx(pz.tau_qsl(qubit) / 2)
    assert upper == pytest.approx(aqsl)
    assert pz.ergotropy([0.0, 1.0], [0.3, 0.7], 1.0) == pytest.approx(0.4)


def test_oracle():
    spec = pz.SystemSpec([0.0, 1.0, 2.0], [0.3, 0.2, 0.5])
    res = pz.numeric_min_distance(spec, restarts=6, seed=3)
    assert res["distance"] == pytest.approx(math.pi * math.sqrt(8) / 3, abs=1e-5)
    assert res["converged"]

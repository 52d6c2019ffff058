import io
import math

import numpy as np
import pytest

from eqcalc.exceptions import AccuracyWarning, BlowUpError, DomainError
from eqcalc.dynamics import (
    CSV_COLUMNS,
    IntegratorConfig,
    angular_momentum,
    characteristic_frequency,
    compare_statistics,
    energies,
    gradient,
    integrate,
    read_csv,
    write_csv,
)
from eqcalc.symbol import InconsistencyError, PhysicalParams, enhanced_hamiltonian, eval_hamiltonian

X0 = np.array([0.0, 0.3, 0.0, -0.2, 1.0, 0.0, -1.0, 0.0])


def test_config_validation():
    for kw in (dict(dt=0.0, t_end=1.0), dict(dt=0.1, t_end=-1.0), dict(dt=0.1, t_end=1.0, scheme="rk4"),
               dict(dt=0.1, t_end=1.0, record_every=0)):
        with pytest.raises(DomainError):
            IntegratorConfig(**kw)
    assert IntegratorConfig(0.1, 1.0).n_steps == 10


def test_gradient_matches_finite_differences():
    h = enhanced_hamiltonian(0.5, PhysicalParams(m=1.3, varpi=0.8, g=0.4))
    rng = np.random.default_rng(5)
    for _ in range(10):
        x = rng.uniform(-1.5, 1.5, 8)
        dp, dq = gradient(h, x)
        g = np.concatenate([dp, dq])
        fd = np.empty(8)
        for i in range(8):
            e = np.zeros(8)
            e[i] = 1e-5
            fd[i] = (eval_hamiltonian(h, x + e) - eval_hamiltonian(h, x - e)) / 2e-5
        assert np.max(np.abs(g - fd)) < 1e-8 * max(1.0, np.max(np.abs(g)))


def test_harmonic_motion_is_exact_circle():
    h = enhanced_hamiltonian(0.0, PhysicalParams(g=0.0))
    x0 = np.array([0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 0.0])
    traj = integrate(h, x0, IntegratorConfig(2 * math.pi / 500, 20 * math.pi, record_every=50))
    r = np.hypot(traj.states[:, 4], traj.states[:, 5])
    assert np.max(np.abs(r - 1.0)) < 1e-9
    assert np.allclose(traj.final, x0, atol=1e-6)  # O(dt⁴) phase error


@pytest.mark.parametrize("scheme,tol", [("yoshida4", 1e-9), ("leapfrog", 1e-4)])
def test_energy_and_angular_momentum(scheme, tol):
    h = enhanced_hamiltonian(1.0, PhysicalParams())
    w = characteristic_frequency(h, X0)
    traj = integrate(h, X0, IntegratorConfig(2 * math.pi / w / 1000, 10 * 2 * math.pi / w, scheme, 20))
    assert traj.energy_drift() < tol
    L = angular_momentum(traj.states)
    assert np.max(np.abs(L - L[0])) < 1e-11


def test_time_reversal():
    h = enhanced_hamiltonian(0.5, PhysicalParams())
    cfg = IntegratorConfig(0.002, 3.0)
    end = integrate(h, X0, cfg).final.copy()
    end[:4] *= -1
    back = integrate(h, end, cfg).final
    back[:4] *= -1
    assert np.allclose(back, X0, atol=1e-10)


@pytest.mark.filterwarnings("ignore::eqcalc.exceptions.AccuracyWarning")
def test_convergence_order():
    h = enhanced_hamiltonian(0.5, PhysicalParams())
    ref = integrate(h, X0, IntegratorConfig(1e-3, 2.0)).final
    for scheme, order in (("leapfrog", 2), ("yoshida4", 4)):
        e1 = np.linalg.norm(integrate(h, X0, IntegratorConfig(0.04, 2.0, scheme)).final - ref)
        e2 = np.linalg.norm(integrate(h, X0, IntegratorConfig(0.02, 2.0, scheme)).final - ref)
        assert math.log2(e1 / e2) == pytest.approx(order, abs=0.3)


def test_large_step_warns_and_blows_up():
    h = enhanced_hamiltonian(0.0, PhysicalParams(g=50.0))
    x0 = np.concatenate([np.zeros(4), [30.0, 0.0, 0.0, 0.0]])
    with pytest.warns(AccuracyWarning):
        with pytest.raises(BlowUpError):
            integrate(h, x0, IntegratorConfig(0.5, 50.0))


def test_classical_trajectories_coincide():
    params = PhysicalParams(hbar=0.0)
    hs = [enhanced_hamiltonian(g, params) for g in (0.0, 0.5, 1.0)]
    rep = compare_statistics(hs, X0, IntegratorConfig(0.01, 5.0, record_every=10))
    assert rep.max_distance == 0.0
    assert rep.summary()["gammas"] == [0.0, 0.5, 1.0]


def test_quantum_trajectories_differ_and_params_must_match():
    hs = [enhanced_hamiltonian(g, PhysicalParams()) for g in (0.0, 1.0)]
    rep = compare_statistics(hs, X0, IntegratorConfig(0.01, 5.0))
    assert rep.max_distance > 1e-3
    assert rep.cross_energies.shape == (2, 2)
    mixed = [hs[0], enhanced_hamiltonian(1.0, PhysicalParams(g=2.0))]
    with pytest.raises(InconsistencyError):
        compare_statistics(mixed, X0, IntegratorConfig(0.01, 1.0))


def test_csv_round_trip(tmp_path):
    h = enhanced_hamiltonian(0.5, PhysicalParams())
    traj = integrate(h, X0, IntegratorConfig(0.01, 1.0, record_every=7))
    assert traj.times[-1] == pytest.approx(1.0)
    path = tmp_path / "t.csv"
    write_csv(traj, path, ["hello"])
    text = path.read_text()
    assert text.startswith("# hello\n" + ",".join(CSV_COLUMNS))
    back = read_csv(path)
    assert np.array_equal(back.states, traj.states)
    assert np.array_equal(back.energies, energies(h, traj.states))
    buf = io.StringIO()
    write_csv(traj, buf)
    assert buf.getvalue() == text.split("\n", 1)[1]
    assert len(back.points()) == len(traj)

import numpy as np
import pytest

from tsteer.entanglement import concurrence, concurrence_pure, ef_band, wootters_concurrence
from tsteer.errors import DomainError
from tsteer.families import (
    BellDiagonalParams, bell_diagonal_from_t, random_bell_diagonal, rank2_t_state, werner, werner_pd,
)
from tsteer.quantum_state import MAXIMALLY_MIXED

from oracles import concurrence_sqrtm


def test_concurrence_examples():
    assert concurrence(werner(1.0)).concurrence == pytest.approx(1)
    assert concurrence(werner(0.6)).concurrence == pytest.approx(0.4)
    assert concurrence(MAXIMALLY_MIXED).concurrence == 0
    rep = concurrence(werner_pd(0.8, 0.36))
    assert rep.concurrence == pytest.approx(0.54, abs=1e-14)
    assert rep.method == "t-state-shortcut"
    assert rep.concurrence == pytest.approx(max(0, 2 * rep.lambda_max - 1))


def test_werner_concurrence_follows_werner_line():
    for f in np.linspace(0, 1, 21):
        assert concurrence(werner(f)).concurrence == pytest.approx(max(0, (3 * f - 1) / 2), abs=1e-14)


def test_general_path_for_non_t_states(rng):
    for _ in range(10):
        g = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        rho = g @ g.conj().T
        rho /= np.trace(rho)
        rep = concurrence(rho)
        assert rep.method == "wootters-general"
        assert rep.concurrence == pytest.approx(concurrence_sqrtm(rho), abs=1e-8)


def test_shortcut_matches_general_formula(rng):
    for _ in range(50):
        rho = bell_diagonal_from_t(random_bell_diagonal(rng))
        assert concurrence(rho).concurrence == pytest.approx(wootters_concurrence(rho), abs=1e-8)


def test_concurrence_pure_examples():
    assert concurrence_pure([1 / np.sqrt(2), 0, 0, 1 / np.sqrt(2)]) == pytest.approx(1)
    assert concurrence_pure([1, 0, 0, 0]) == 0
    th = np.pi / 8
    assert concurrence_pure([np.cos(th), 0, 0, np.sin(th)]) == pytest.approx(np.sin(np.pi / 4))
    with pytest.raises(DomainError):
        concurrence_pure([1, 1, 0, 0])


def test_rank2_concurrence_invariance(rng):
    for _ in range(20):
        psi = rng.standard_normal(4) + 1j * rng.standard_normal(4)
        psi /= np.linalg.norm(psi)
        assert concurrence(rank2_t_state(psi)).concurrence == pytest.approx(concurrence_pure(psi), abs=1e-8)


def test_ef_band_examples():
    assert ef_band(1.0) == (1.0, 1.0)
    assert ef_band(0.25)[0] == pytest.approx(0.5)
    assert ef_band(1e-9)[1] == pytest.approx(0.5, abs=1e-8)
    assert ef_band(0) == (0.0, 0.5)
    with pytest.raises(DomainError):
        ef_band(1.5)


def test_ef_band_ordering_and_monotonicity():
    e = np.linspace(1e-6, 1, 2001)
    lower, upper = np.array([ef_band(x) for x in e]).T
    assert np.all(lower[:-1] < upper[:-1])
    assert lower[-1] == upper[-1]
    assert np.all(np.diff(lower) > 0) and np.all(np.diff(upper) > 0)

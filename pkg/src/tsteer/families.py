"""State families: Werner, phase-damped Werner, Bell-diagonal, rank-2 and random T states.

Samplers take either an integer seed or a ``numpy.random.Generator``; there is
no module-level random state.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from .errors import DomainError, InvalidStateError
from .quantum_state import (
    I2, MAXIMALLY_MIXED, PAULI_PAIRS, PAULIS, SYSY, apply_local_unitary, validate,
)

RNG_ALGORITHM = "numpy.random.PCG64"

BELL_PHI_PLUS = np.array([1, 0, 0, 1], dtype=complex) / np.sqrt(2)


@dataclass(frozen=True)
class BellDiagonalParams:
    """Diagonal ``(c1, c2, c3)`` of the correlation matrix of a Bell-diagonal state."""

    c1: float
    c2: float
    c3: float

    @property
    def weights(self) -> np.ndarray:
        c1, c2, c3 = self.c1, self.c2, self.c3
        return np.array([
            1 - c1 - c2 - c3,
            1 - c1 + c2 + c3,
            1 + c1 - c2 + c3,
            1 + c1 + c2 - c3,
        ]) / 4

    @property
    def admissible(self) -> bool:
        return bool(np.all(self.weights >= -1e-12))

    def as_array(self) -> np.ndarray:
        return np.array([self.c1, self.c2, self.c3])


@dataclass(frozen=True)
class SeparableMixture:
    """Convex mixture of product states with unit Bloch vectors ``a_i``, ``b_i``."""

    probabilities: np.ndarray
    a: np.ndarray
    b: np.ndarray

    def symmetrized(self) -> "SeparableMixture":
        """Pair every term with its antipode so both local Bloch vectors vanish."""
        p = np.concatenate([self.probabilities, self.probabilities]) / 2
        return SeparableMixture(p, np.concatenate([self.a, -self.a]), np.concatenate([self.b, -self.b]))

    def correlation(self) -> np.ndarray:
        return np.einsum("i,im,in->mn", self.probabilities, self.a, self.b)


def _rng(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def _qubit(bloch):
    return (I2 + np.einsum("k,kij->ij", np.asarray(bloch, dtype=float), PAULIS)) / 2


def werner(alpha: float) -> np.ndarray:
    """alpha |phi+><phi+| + (1 - alpha) I/4, valid for -1/3 <= alpha <= 1."""
    if not -1 / 3 <= alpha <= 1:
        raise DomainError(f"alpha={alpha} outside [-1/3, 1]")
    return alpha * np.outer(BELL_PHI_PLUS, BELL_PHI_PLUS.conj()) + (1 - alpha) * MAXIMALLY_MIXED


def t_state_from_correlation(t) -> np.ndarray:
    """(I + sum_mn T_mn sigma_m x sigma_n) / 4, checked for positivity."""
    t = np.asarray(t, dtype=float)
    if t.shape != (3, 3):
        raise DomainError(f"correlation matrix must be 3x3, got {t.shape}")
    rho = np.eye(4, dtype=complex) / 4 + np.einsum("mn,mnij->ij", t, PAULI_PAIRS) / 4
    problems = validate(rho)
    if problems:
        raise InvalidStateError(problems)
    return rho


def bell_diagonal_from_t(params: BellDiagonalParams) -> np.ndarray:
    if not params.admissible:
        raise InvalidStateError([f"negative Bell weight in {params.weights.tolist()}"])
    return t_state_from_correlation(np.diag(params.as_array()))


def werner_pd(alpha: float, eta: float) -> np.ndarray:
    """Werner state after phase damping of strength ``eta``.

    Built directly from its correlation matrix ``diag(a s, -a s, a)`` with
    ``s = sqrt(1 - eta)``; equal to ``phase_damp(werner(alpha), eta)``.
    """
    if not -1 / 3 <= alpha <= 1:
        raise DomainError(f"alpha={alpha} outside [-1/3, 1]")
    if not 0 <= eta <= 1:
        raise DomainError(f"eta={eta} outside [0, 1]")
    s = alpha * np.sqrt(1 - eta)
    return bell_diagonal_from_t(BellDiagonalParams(s, -s, alpha))


def spin_flip(psi) -> np.ndarray:
    return SYSY @ np.asarray(psi, dtype=complex).conj()


def rank2_t_state(psi) -> np.ndarray:
    """Equal mixture of ``psi`` and its spin-flipped partner."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (4,) or abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise DomainError("psi must be a normalized 4-vector")
    tilde = spin_flip(psi)
    return 0.5 * (np.outer(psi, psi.conj()) + np.outer(tilde, tilde.conj()))


def sample_bell_diagonal(n: int, seed=None) -> np.ndarray:
    """``n`` points uniform in the Bell-diagonal tetrahedron, shape ``(n, 3)``.

    Rejection sampling from the cube [-1, 1]^3 (acceptance 1/3).
    """
    rng = _rng(seed)
    out = np.empty((0, 3))
    while len(out) < n:
        c = rng.uniform(-1, 1, size=(max(3 * (n - len(out)), 16), 3))
        w = np.stack([
            1 - c[:, 0] - c[:, 1] - c[:, 2],
            1 - c[:, 0] + c[:, 1] + c[:, 2],
            1 + c[:, 0] - c[:, 1] + c[:, 2],
            1 + c[:, 0] + c[:, 1] - c[:, 2],
        ], axis=1)
        out = np.concatenate([out, c[np.all(w >= 0, axis=1)]])
    return out[:n]


def random_bell_diagonal(seed=None) -> BellDiagonalParams:
    return BellDiagonalParams(*(float(x) for x in sample_bell_diagonal(1, seed)[0]))


def random_local_unitaries(seed=None) -> tuple[np.ndarray, np.ndarray]:
    rng = _rng(seed)
    return unitary_group.rvs(2, random_state=rng), unitary_group.rvs(2, random_state=rng)


def random_t_state(seed=None, local_unitaries: bool = True) -> np.ndarray:
    """Uniform Bell-diagonal state, optionally rotated by Haar-random local unitaries."""
    rng = _rng(seed)
    rho = bell_diagonal_from_t(random_bell_diagonal(rng))
    if local_unitaries:
        rho = apply_local_unitary(rho, *random_local_unitaries(rng))
    return rho


def _random_directions(n, rng):
    v = rng.standard_normal((n, 3))
    return v / np.linalg.norm(v, axis=1)[:, None]


def separable_density(mixture: SeparableMixture) -> np.ndarray:
    rho = np.zeros((4, 4), dtype=complex)
    for p, a, b in zip(mixture.probabilities, mixture.a, mixture.b):
        rho += p * np.kron(_qubit(a), _qubit(b))
    return rho


def random_separable_t(n_terms: int, seed=None) -> tuple[SeparableMixture, np.ndarray]:
    """Random separable T state from ``n_terms`` product terms plus their antipodes.

    Weights are Dirichlet(1, ..., 1); directions are uniform on the sphere.
    """
    if n_terms < 1:
        raise DomainError("n_terms must be >= 1")
    rng = _rng(seed)
    p = rng.dirichlet(np.ones(n_terms))
    mixture = SeparableMixture(p, _random_directions(n_terms, rng), _random_directions(n_terms, rng))
    mixture = mixture.symmetrized()
    return mixture, separable_density(mixture)


def family_state(name: str, params: dict) -> np.ndarray:
    """Construct a named family member from JSON-style parameters."""
    if name == "werner":
        return werner(float(params["alpha"]))
    if name == "werner_pd":
        return werner_pd(float(params["alpha"]), float(params["eta"]))
    if name == "bell_diagonal":
        return bell_diagonal_from_t(BellDiagonalParams(*(float(params[k]) for k in ("c1", "c2", "c3"))))
    if name == "rank2":
        psi = np.array([complex(re, im) for re, im in params["psi"]])
        return rank2_t_state(psi)
    if name == "random_t":
        return random_t_state(int(params["seed"]))
    if name == "random_separable":
        return random_separable_t(int(params["n_terms"]), int(params["seed"]))[1]
    raise KeyError(f"unknown family {name!r}")


FAMILIES = ("werner", "werner_pd", "bell_diagonal", "rank2", "random_t", "random_separable")

"""Two-qubit states: Pauli algebra, correlation matrices, local operations.

States are plain ``(4, 4)`` complex numpy arrays in the product basis
``|00>, |01>, |10>, |11>`` (Alice is the first factor). Correlation matrices
are ``(3, 3)`` real arrays indexed by Pauli labels in the order ``x, y, z``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, InvalidStateError

HERMITIAN_TOL = 1e-12
TRACE_TOL = 1e-12
PSD_TOL = 1e-10
UNITARY_TOL = 1e-10
UNIT_VECTOR_TOL = 1e-10
T_STATE_TOL = 1e-8

I2 = np.eye(2, dtype=complex)
SX = np.array([[0, 1], [1, 0]], dtype=complex)
SY = np.array([[0, -1j], [1j, 0]], dtype=complex)
SZ = np.array([[1, 0], [0, -1]], dtype=complex)
PAULIS = np.stack([SX, SY, SZ])

# PAULI_PAIRS[m, n] = sigma_m (x) sigma_n
PAULI_PAIRS = np.einsum("mab,ncd->mnacbd", PAULIS, PAULIS).reshape(3, 3, 4, 4)
SYSY = np.kron(SY, SY)

MAXIMALLY_MIXED = np.eye(4, dtype=complex) / 4


@dataclass(frozen=True)
class BlochPair:
    """Local Bloch vectors of Alice (``a``) and Bob (``b``)."""

    a: np.ndarray
    b: np.ndarray


@dataclass(frozen=True)
class ConditionalStateSpectrum:
    """Eigenvalues of Bob's normalized conditional state, ``lambda1 >= lambda2``."""

    lambda1: float
    lambda2: float


def validate(rho) -> list[str]:
    """Return a list of violated density-matrix invariants (empty if valid).

    Each entry names the invariant and the measured residual.
    """
    rho = np.asarray(rho)
    if rho.shape != (4, 4):
        return [f"shape {rho.shape} is not (4, 4)"]
    if not np.all(np.isfinite(rho)):
        return ["non-finite entries"]
    problems = []
    herm = float(np.max(np.abs(rho - rho.conj().T)))
    if herm > HERMITIAN_TOL:
        problems.append(f"non-Hermitian residual {herm}")
    trace = float(abs(np.trace(rho) - 1))
    if trace > TRACE_TOL:
        problems.append(f"trace residual {trace}")
    lowest = float(np.linalg.eigvalsh((rho + rho.conj().T) / 2)[0])
    if lowest < -PSD_TOL:
        problems.append(f"negative eigenvalue {lowest}")
    return problems


def as_density(rho) -> np.ndarray:
    """Coerce to a complex array, raising InvalidStateError if not a valid state."""
    rho = np.asarray(rho, dtype=complex)
    problems = validate(rho)
    if problems:
        raise InvalidStateError(problems)
    return rho


def correlation_matrix(rho) -> np.ndarray:
    """T_mn = Tr[rho (sigma_m (x) sigma_n)]."""
    rho = as_density(rho)
    return np.einsum("mnij,ji->mn", PAULI_PAIRS, rho).real


def local_bloch(rho) -> BlochPair:
    rho = as_density(rho)
    a = np.einsum("kij,ji->k", np.kron(PAULIS, I2), rho).real
    b = np.einsum("kij,ji->k", np.stack([np.kron(I2, s) for s in PAULIS]), rho).real
    return BlochPair(a=a, b=b)


def is_t_state(rho, tol: float = T_STATE_TOL) -> bool:
    """True iff both local Bloch vectors vanish to within ``tol`` (max norm)."""
    if tol <= 0:
        raise DomainError("tol must be positive")
    pair = local_bloch(rho)
    return max(np.max(np.abs(pair.a)), np.max(np.abs(pair.b))) <= tol


def mix_with_white_noise(rho, gamma: float) -> np.ndarray:
    """gamma * rho + (1 - gamma) * I/4."""
    if not 0 <= gamma <= 1:
        raise DomainError(f"gamma={gamma} outside [0, 1]")
    rho = as_density(rho)
    return gamma * rho + (1 - gamma) * MAXIMALLY_MIXED


def _check_unitary(u, name):
    u = np.asarray(u, dtype=complex)
    if u.shape != (2, 2):
        raise DomainError(f"{name} must be 2x2, got {u.shape}")
    residual = np.max(np.abs(u @ u.conj().T - I2))
    if residual > UNITARY_TOL:
        raise DomainError(f"{name} is not unitary (residual {residual:.3g})")
    return u


def apply_local_unitary(rho, u_a, u_b) -> np.ndarray:
    """(U_A (x) U_B) rho (U_A (x) U_B)^dagger."""
    rho = as_density(rho)
    u = np.kron(_check_unitary(u_a, "u_a"), _check_unitary(u_b, "u_b"))
    return u @ rho @ u.conj().T


def rotation_from_unitary(u) -> np.ndarray:
    """SO(3) matrix induced on Bloch vectors: R_kl = Tr(sigma_k U sigma_l U^dagger) / 2.

    Under local unitaries the correlation matrix maps as ``R_A @ T @ R_B.T``.
    """
    u = _check_unitary(u, "u")
    conj = np.einsum("ab,lbc,dc->lad", u, PAULIS, u.conj())
    return 0.5 * np.einsum("kab,lba->kl", PAULIS, conj).real


def phase_damp(rho, eta: float) -> np.ndarray:
    """Phase-damping channel of strength ``eta`` acting on Bob's qubit.

    Kraus operators ``K0 = |0><0| + sqrt(1-eta)|1><1|`` and ``K1 = sqrt(eta)|1><1|``.
    Coherences of Bob's qubit shrink by ``sqrt(1-eta)``, so for a Werner state the
    correlation matrix becomes ``diag(a*s, -a*s, a)`` with ``s = sqrt(1-eta)``.
    """
    if not 0 <= eta <= 1:
        raise DomainError(f"eta={eta} outside [0, 1]")
    rho = as_density(rho)
    k0 = np.diag([1.0, np.sqrt(1 - eta)]).astype(complex)
    k1 = np.diag([0.0, np.sqrt(eta)]).astype(complex)
    out = np.zeros_like(rho)
    for k in (k0, k1):
        kk = np.kron(I2, k)
        out += kk @ rho @ kk.conj().T
    return out


def _unit(r, name="r"):
    r = np.asarray(r, dtype=float)
    if r.shape != (3,) or abs(np.linalg.norm(r) - 1) > UNIT_VECTOR_TOL:
        raise DomainError(f"{name} must be a unit 3-vector")
    return r


def conditional_spectrum(t, r) -> ConditionalStateSpectrum:
    """Eigenvalues (1 +- sqrt(<r|T T^T|r>))/2 of Bob's state after Alice measures along r."""
    r = _unit(r)
    t = np.asarray(t, dtype=float)
    length = float(np.sqrt(max(r @ t @ t.T @ r, 0.0)))
    lam1 = (1 + length) / 2
    return ConditionalStateSpectrum(lambda1=lam1, lambda2=1 - lam1)

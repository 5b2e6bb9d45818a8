"""Concurrence of two-qubit states and the concurrence-violation band."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .quantum_state import SYSY, T_STATE_TOL, as_density, is_t_state
from .steering import axial_closed_form


@dataclass(frozen=True)
class EntanglementReport:
    concurrence: float
    lambda_max: float
    method: str


def wootters_concurrence(rho) -> float:
    """General two-qubit concurrence from the spin-flipped state.

    Square roots of the eigenvalues of ``rho @ rho_tilde`` in descending order,
    combined as ``l1 - l2 - l3 - l4`` and clipped at zero.
    """
    rho = as_density(rho)
    flipped = SYSY @ rho.conj() @ SYSY
    ev = np.linalg.eigvals(rho @ flipped).real
    lam = np.sort(np.sqrt(np.clip(ev, 0, None)))[::-1]
    return float(max(0.0, lam[0] - lam[1:].sum()))


def concurrence(rho, t_state_tol: float = T_STATE_TOL) -> EntanglementReport:
    """Concurrence, using ``max(0, 2 lambda_max - 1)`` when ``rho`` is a T state.

    T states are invariant under the spin flip, which collapses the general
    formula to the largest eigenvalue of ``rho`` itself.
    """
    rho = as_density(rho)
    lam_max = float(np.linalg.eigvalsh(rho)[-1])
    if is_t_state(rho, t_state_tol):
        return EntanglementReport(max(0.0, 2 * lam_max - 1), lam_max, "t-state-shortcut")
    return EntanglementReport(wootters_concurrence(rho), lam_max, "wootters-general")


def concurrence_pure(psi) -> float:
    """|<psi| (sigma_y x sigma_y) |psi*>| for a normalized two-qubit vector."""
    psi = np.asarray(psi, dtype=complex).reshape(-1)
    if psi.shape != (4,) or abs(np.linalg.norm(psi) - 1) > 1e-10:
        raise DomainError("psi must be a normalized 4-vector")
    return float(abs(psi.conj() @ SYSY @ psi.conj()))


def ef_band(e: float) -> tuple[float, float]:
    """Lower and upper bounds on the maximum violation at concurrence ``e``.

    The lower edge is the Werner line ``(1 + 2e)/3`` and the upper edge is the
    rank-2 family. Separable states (``e = 0``) give ``(0, 1/2)``.
    """
    if not 0 <= e <= 1:
        raise DomainError(f"concurrence {e} outside [0, 1]")
    if e == 0:
        return 0.0, 0.5
    return (1 + 2 * e) / 3, axial_closed_form(e, 1.0)

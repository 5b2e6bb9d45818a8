"""Steering parameter, finite-N bounds and the infinite-measurement criterion.

A two-qubit T state is steerable from Alice to Bob exactly when its maximum
violation

    F = (1/4pi) * integral over the sphere of sqrt(<v| T^T T |v>) dS

exceeds 1/2. ``F`` depends only on the singular values of ``T``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import NamedTuple

import numpy as np

from . import quadrature
from .errors import DomainError, NotTStateError
from .quantum_state import (
    SX, SY, SZ, T_STATE_TOL, UNIT_VECTOR_TOL, as_density, conditional_spectrum,
    correlation_matrix, is_t_state,
)

LIMIT_BOUND = 0.5
DEFAULT_TARGET_REL_ERR = 1e-9
# relative spread below which singular values are treated as equal
DEGENERACY_TOL = 1e-12
# rounding allowance attached to closed-form values
ROUNDOFF = 8 * np.finfo(float).eps
MAX_EXHAUSTIVE_AXES = 24


@dataclass(frozen=True)
class SingularSpectrum:
    """Singular values of a correlation matrix, ``1 >= t1 >= t2 >= t3 >= 0``."""

    t1: float
    t2: float
    t3: float

    def __post_init__(self):
        t = (self.t1, self.t2, self.t3)
        if min(t) < 0 or not (t[0] >= t[1] >= t[2]) or t[0] > 1 + 1e-9:
            raise DomainError(f"not an ordered singular spectrum in [0, 1]: {t}")

    def __iter__(self):
        return iter((self.t1, self.t2, self.t3))

    def scaled(self, gamma: float) -> "SingularSpectrum":
        return SingularSpectrum(gamma * self.t1, gamma * self.t2, gamma * self.t3)


@dataclass(frozen=True)
class MeasurementGeometry:
    """A named list of measurement axes (unit vectors, pairwise non-collinear)."""

    name: str
    axes: np.ndarray

    def __post_init__(self):
        axes = np.atleast_2d(np.asarray(self.axes, dtype=float))
        if axes.size == 0 or axes.shape[1] != 3:
            raise DomainError("geometry needs a non-empty list of 3-vectors")
        if np.max(np.abs(np.linalg.norm(axes, axis=1) - 1)) > UNIT_VECTOR_TOL:
            raise DomainError(f"geometry {self.name!r} has non-unit axes")
        gram = np.abs(axes @ axes.T)
        np.fill_diagonal(gram, 0)
        if np.any(gram > 1 - 1e-8):
            raise DomainError(f"geometry {self.name!r} has collinear axes")
        axes.flags.writeable = False
        object.__setattr__(self, "axes", axes)

    @classmethod
    def from_vectors(cls, name, vectors):
        """Normalize arbitrary non-zero vectors into a geometry."""
        v = np.asarray(vectors, dtype=float)
        return cls(name, v / np.linalg.norm(v, axis=1)[:, None])

    def __len__(self):
        return len(self.axes)


class MaxViolation(NamedTuple):
    f_value: float
    method: str
    estimated_error: float


@dataclass(frozen=True)
class SteeringReport:
    f_value: float
    bound: float
    steerable: bool
    concurrence: float
    method: str
    estimated_error: float

    def to_dict(self) -> dict:
        return asdict(self)


def _geometry_catalog():
    g = (1 + 5**0.5) / 2
    return {
        geom.name: geom for geom in (
            MeasurementGeometry.from_vectors("orthogonal-2", [(1, 0, 0), (0, 1, 0)]),
            MeasurementGeometry.from_vectors("orthogonal-3", np.eye(3)),
            MeasurementGeometry.from_vectors(
                "cube-diagonals-4", [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1)]),
            MeasurementGeometry.from_vectors(
                "icosahedron-6",
                [(0, 1, g), (0, 1, -g), (1, g, 0), (1, -g, 0), (g, 0, 1), (-g, 0, 1)]),
            MeasurementGeometry.from_vectors(
                "dodecahedron-10",
                [(1, 1, 1), (1, 1, -1), (1, -1, 1), (1, -1, -1),
                 (0, 1 / g, g), (0, 1 / g, -g), (1 / g, g, 0), (1 / g, -g, 0),
                 (g, 0, 1 / g), (-g, 0, 1 / g)]),
        )
    }


GEOMETRIES = _geometry_catalog()


def singular_spectrum(t) -> SingularSpectrum:
    s = np.linalg.svd(np.asarray(t, dtype=float), compute_uv=False)
    return SingularSpectrum(*(float(x) for x in s))


def axial_closed_form(a: float, c: float) -> float:
    """Maximum violation for the spectrum ``(a, a, c)`` (in any order).

    Prolate (``c > a``) and oblate (``c < a``) cases use the log and arcsine
    forms respectively; both are written through ``asinh(x)/x`` and
    ``arcsin(x)/x`` with ``x = sqrt|c^2 - a^2| / a`` so the ``c -> a`` limit is
    evaluated without cancellation.
    """
    if a < 0 or c < 0:
        raise DomainError(f"singular values must be non-negative, got a={a}, c={c}")
    if a == 0:
        return c / 2
    if c == a:
        return a
    x = np.sqrt(abs(c - a) * (c + a)) / a
    if c > a:
        ratio = 1 - x**2 / 6 + 3 * x**4 / 40 if x < 1e-4 else np.arcsinh(x) / x
    else:
        ratio = 1 + x**2 / 6 + 3 * x**4 / 40 if x < 1e-4 else np.arcsin(min(x, 1.0)) / x
    return float(0.5 * (c + a * ratio))


def violation_integrand(t):
    """Vectorized ``v -> sqrt(<v| T^T T |v>)``."""
    gram = np.asarray(t, dtype=float).T @ np.asarray(t, dtype=float)

    def f(v):
        return np.sqrt(np.maximum(np.einsum("ni,ij,nj->n", v, gram, v), 0.0))

    return f


def _diagonal_integrand(spec: SingularSpectrum):
    # largest singular value on the grid pole: prolate cases then depend on
    # cos(theta) only and near-rank-deficient kinks land on the split equator
    sq = np.array([spec.t2, spec.t3, spec.t1]) ** 2

    def f(v):
        return np.sqrt((v * v) @ sq)

    return f


def max_violation(spec: SingularSpectrum, target_rel_err: float = DEFAULT_TARGET_REL_ERR,
                  force_quadrature: bool = False, scheme: str = "split-gauss") -> MaxViolation:
    """Evaluate F from the singular spectrum.

    Isotropic spectra give ``F = t1``; two equal values use
    :func:`axial_closed_form`; anything else (or ``force_quadrature``) goes
    through adaptive sphere quadrature.
    """
    t1, t2, t3 = spec
    scale = max(t1, np.finfo(float).tiny)
    if not force_quadrature:
        if t1 - t3 <= DEGENERACY_TOL * scale:
            return MaxViolation(t1, "isotropic", float((t1 - t3) + ROUNDOFF * t1))
        if t1 - t2 <= DEGENERACY_TOL * scale:
            f = axial_closed_form((t1 + t2) / 2, t3)
            return MaxViolation(f, "closed-form-axial", float((t1 - t2) + ROUNDOFF * t1))
        if t2 - t3 <= DEGENERACY_TOL * scale:
            f = axial_closed_form((t2 + t3) / 2, t1)
            return MaxViolation(f, "closed-form-axial", float((t2 - t3) + ROUNDOFF * t1))
    res = quadrature.integrate_adaptive(_diagonal_integrand(spec), target_rel_err, scheme=scheme)
    return MaxViolation(res.value / (4 * np.pi), "quadrature", res.estimated_error / (4 * np.pi))


def steering_verdict(rho, target_rel_err: float = DEFAULT_TARGET_REL_ERR) -> SteeringReport:
    """Full steerability report for a T state.

    Steerability is only certified when ``f_value - estimated_error > 1/2``.
    """
    from .entanglement import concurrence

    rho = as_density(rho)
    if not is_t_state(rho, T_STATE_TOL):
        raise NotTStateError(
            "state has non-zero local Bloch vectors; the criterion applies to T states only")
    mv = max_violation(singular_spectrum(correlation_matrix(rho)), target_rel_err)
    return SteeringReport(
        f_value=mv.f_value,
        bound=LIMIT_BOUND,
        steerable=bool(mv.f_value - mv.estimated_error > LIMIT_BOUND),
        concurrence=concurrence(rho).concurrence,
        method=mv.method,
        estimated_error=mv.estimated_error,
    )


def steering_parameter_finite(t, geom: MeasurementGeometry) -> float:
    """Alice-optimized steering parameter ``(1/N) sum_k sqrt(<s_k|T^T T|s_k>)``."""
    return float(np.mean(violation_integrand(t)(geom.axes)))


def finite_bound(geom: MeasurementGeometry) -> float:
    """C_N: max over declared outcomes of ``|sum_k A_k s_k| / N``.

    Exhaustive over sign patterns with the first sign fixed to +1.
    """
    n = len(geom)
    if n > MAX_EXHAUSTIVE_AXES:
        raise DomainError(
            f"{n} axes exceeds the exhaustive limit of {MAX_EXHAUSTIVE_AXES}; "
            "a heuristic search would be needed")
    axes = geom.axes
    if n == 1:
        return 1.0
    rest = axes[1:]
    best = 0.0
    block = 1 << min(n - 1, 16)
    for start in range(0, 1 << (n - 1), block):
        codes = np.arange(start, start + block)[:, None]
        signs = 1 - 2 * ((codes >> np.arange(n - 1)) & 1)
        sums = axes[0] + signs @ rest
        best = max(best, float(np.max(np.einsum("ij,ij->i", sums, sums))))
    return float(np.sqrt(best) / n)


def limit_bound_operator(grid: quadrature.SphereGrid | None = None) -> np.ndarray:
    """The N -> infinity pre-existing-state operator on a quadrature grid.

    Outcomes are declared +1 on the upper hemisphere and -1 on the lower one,
    so the result approximates ``sigma_z / 2``.
    """
    if grid is None:
        grid = quadrature.build_grid("split-gauss", 64)
    bloch = np.zeros(3)
    for vecs, w in grid.chunks():
        bloch += (w * np.sign(vecs[:, 2])) @ vecs
    bloch /= 4 * np.pi
    return bloch[0] * SX + bloch[1] * SY + bloch[2] * SZ


def lhs_condition_holds(t, r) -> bool:
    """Sufficient local-hidden-state condition for Alice's setting ``r``.

    ``sqrt(<r|T T^T|r>) <= 1/2``, equivalently ``lambda1 <= 2 sqrt(lambda2) - lambda2``
    for the conditional-state eigenvalues.
    """
    t = np.asarray(t, dtype=float)
    spec = conditional_spectrum(t, r)
    r = np.asarray(r, dtype=float)
    length = float(np.sqrt(max(r @ t @ t.T @ r, 0.0)))
    holds = length <= LIMIT_BOUND + 1e-12
    by_eigenvalues = spec.lambda1 <= 2 * np.sqrt(spec.lambda2) - spec.lambda2 + 1e-12
    if holds != by_eigenvalues and abs(length - LIMIT_BOUND) > 1e-9:
        raise RuntimeError(f"LHS condition formulations disagree at |T^T r| = {length}")
    return holds


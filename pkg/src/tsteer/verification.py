"""Randomized property suites shared by ``tsteer verify`` and the test suite."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .entanglement import concurrence, wootters_concurrence
from .families import (
    bell_diagonal_from_t, random_bell_diagonal, random_local_unitaries, random_separable_t,
    random_t_state,
)
from .quantum_state import apply_local_unitary, correlation_matrix
from .steering import (
    LIMIT_BOUND, SingularSpectrum, axial_closed_form, max_violation, singular_spectrum,
    steering_verdict,
)

BULK_TARGET_REL_ERR = 1e-7


@dataclass(frozen=True)
class SuiteResult:
    name: str
    passed: bool
    cases: int
    worst: float
    tolerance: float

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: {self.cases} cases, worst {self.worst:.3g} (tol {self.tolerance:g})"


def _random_spectrum(rng) -> SingularSpectrum:
    return SingularSpectrum(*np.sort(rng.uniform(0, 1, 3))[::-1])


def scaling_suite(rng, n=100, fault: float = 0.0) -> SuiteResult:
    """|F(gamma * spectrum) - gamma * F(spectrum)|; ``fault`` skews the reference."""
    tol = 1e-8
    worst = 0.0
    for _ in range(n):
        spec = _random_spectrum(rng)
        gamma = rng.uniform(0, 1)
        scaled = max_violation(spec.scaled(gamma)).f_value
        worst = max(worst, abs(scaled - gamma * max_violation(spec).f_value * (1 + fault)))
    return SuiteResult("scaling", worst <= tol, n, worst, tol)


def unitary_invariance_suite(rng, n=50) -> SuiteResult:
    """Local unitaries preserve the singular spectrum (1e-10) and F (1e-7)."""
    worst_spec = worst_f = 0.0
    for _ in range(n):
        rho = random_t_state(rng)
        rotated = apply_local_unitary(rho, *random_local_unitaries(rng))
        s0 = np.array(list(singular_spectrum(correlation_matrix(rho))))
        s1 = np.array(list(singular_spectrum(correlation_matrix(rotated))))
        worst_spec = max(worst_spec, float(np.max(np.abs(s0 - s1))))
        worst_f = max(worst_f, abs(steering_verdict(rho).f_value - steering_verdict(rotated).f_value))
    passed = worst_spec <= 1e-10 and worst_f <= 1e-7
    return SuiteResult("unitary-invariance", passed, n, max(worst_spec, worst_f), 1e-7)


def closed_form_suite(rng, n=50) -> SuiteResult:
    """Axially symmetric spectra: closed form against forced quadrature."""
    tol = 1e-7
    worst = 0.0
    for _ in range(n):
        a, c = rng.uniform(0.02, 1, 2)
        spec = SingularSpectrum(*sorted((a, a, c), reverse=True))
        quad = max_violation(spec, force_quadrature=True).f_value
        worst = max(worst, abs(quad - axial_closed_form(a, c)))
    return SuiteResult("closed-form-vs-quadrature", worst <= tol, n, worst, tol)


def separable_suite(rng, n=200, max_terms=6) -> SuiteResult:
    """Random separable T states never exceed the limit bound (slack 1e-6)."""
    tol = 1e-6
    worst = -np.inf
    for _ in range(n):
        _, rho = random_separable_t(int(rng.integers(1, max_terms + 1)), rng)
        f = max_violation(singular_spectrum(correlation_matrix(rho)), BULK_TARGET_REL_ERR).f_value
        worst = max(worst, f - LIMIT_BOUND)
    return SuiteResult("separable-bound", worst <= tol, n, worst, tol)


def concurrence_suite(rng, n=200) -> SuiteResult:
    """T-state shortcut against the general spin-flip formula."""
    tol = 1e-8
    worst = 0.0
    for _ in range(n):
        rho = bell_diagonal_from_t(random_bell_diagonal(rng))
        report = concurrence(rho)
        assert report.method == "t-state-shortcut"
        worst = max(worst, abs(report.concurrence - wootters_concurrence(rho)))
    return SuiteResult("shortcut-vs-wootters", worst <= tol, n, worst, tol)


def run_all(seed: int, fault: str | None = None) -> list[SuiteResult]:
    """Run every suite on independent streams derived from ``seed``."""
    streams = [np.random.default_rng([seed, k]) for k in range(5)]
    return [
        scaling_suite(streams[0], fault=1e-3 if fault == "scaling" else 0.0),
        unitary_invariance_suite(streams[1]),
        closed_form_suite(streams[2]),
        separable_suite(streams[3]),
        concurrence_suite(streams[4]),
    ]

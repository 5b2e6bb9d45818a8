import numpy as np
import pytest

from tsteer.errors import DomainError, NotTStateError
from tsteer.families import BellDiagonalParams, bell_diagonal_from_t, werner, werner_pd
from tsteer.quadrature import build_grid
from tsteer.steering import (
    GEOMETRIES, LIMIT_BOUND, MeasurementGeometry, SingularSpectrum, axial_closed_form, finite_bound,
    limit_bound_operator, lhs_condition_holds, max_violation, singular_spectrum,
    steering_parameter_finite, steering_verdict,
)

from oracles import finite_bound_bruteforce, violation_dblquad

# frozen from oracles.violation_dblquad
ORACLE_F = {
    (0.8, 0.3, 0.1): 0.4609956738532198,
    (0.9, 0.5, 0.0): 0.5610571399810245,
    (0.6, 0.4, 0.2): 0.4202463574935133,
    (0.9, 0.9, 0.3): 0.7375333321727946,
    (1.0, 0.5, 0.5): 0.6900864990752366,
}


def test_singular_spectrum_examples():
    assert tuple(singular_spectrum(np.diag([1, -1, 1]))) == pytest.approx((1, 1, 1))
    assert tuple(singular_spectrum(np.zeros((3, 3)))) == (0, 0, 0)
    s = 0.8 * np.sqrt(1 - 0.36)
    assert tuple(singular_spectrum(np.diag([s, -s, 0.8]))) == pytest.approx((0.8, 0.64, 0.64), abs=1e-15)


def test_singular_spectrum_type_rejects_unordered():
    with pytest.raises(DomainError):
        SingularSpectrum(0.2, 0.5, 0.1)
    with pytest.raises(DomainError):
        SingularSpectrum(0.5, 0.2, -0.1)


@pytest.mark.parametrize("spec,expected", sorted(ORACLE_F.items()))
def test_max_violation_against_oracle(spec, expected):
    got = max_violation(SingularSpectrum(*spec))
    assert got.f_value == pytest.approx(expected, abs=1e-9)
    forced = max_violation(SingularSpectrum(*spec), force_quadrature=True)
    assert forced.method == "quadrature"
    assert forced.f_value == pytest.approx(expected, abs=1e-9)


def test_max_violation_dispatch():
    assert max_violation(SingularSpectrum(1, 1, 1)) == (1.0, "isotropic", pytest.approx(0, abs=1e-14))
    assert max_violation(SingularSpectrum(0.7, 0.7, 0.7)).f_value == 0.7
    res = max_violation(SingularSpectrum(1, 0, 0))
    assert res.method == "closed-form-axial" and res.f_value == 0.5
    assert max_violation(SingularSpectrum(0.8, 0.5, 0.2)).method == "quadrature"


def test_max_violation_of_zero_spectrum():
    assert max_violation(SingularSpectrum(0, 0, 0)).f_value == 0
    assert max_violation(SingularSpectrum(0, 0, 0), force_quadrature=True).f_value == 0


def test_axial_closed_form_examples():
    alpha, eta = 0.8, 0.36
    expected = 0.4 * (1 + (0.64 / 0.6) * np.log(1.6 / 0.8))
    assert axial_closed_form(alpha * np.sqrt(1 - eta), alpha) == pytest.approx(expected, abs=1e-15)
    assert axial_closed_form(0, 1) == 0.5
    assert axial_closed_form(1e-12, 1) == pytest.approx(0.5, abs=1e-9)
    assert axial_closed_form(0.7, 0.7) == 0.7
    # oblate limit c -> 0 is pi a / 4
    assert axial_closed_form(0.6, 0) == pytest.approx(np.pi * 0.6 / 4, abs=1e-15)
    with pytest.raises(DomainError):
        axial_closed_form(-0.1, 0.5)


def test_axial_closed_form_is_continuous_across_branches():
    a = 0.5
    vals = [axial_closed_form(a, a + d) for d in (-1e-3, -1e-6, -1e-9, 0, 1e-9, 1e-6, 1e-3)]
    assert np.all(np.diff(vals) > 0)
    assert vals[2] == pytest.approx(0.5, abs=1e-9) and vals[4] == pytest.approx(0.5, abs=1e-9)


@pytest.mark.parametrize("a,c", [(0.2, 0.9), (0.9, 0.2), (0.05, 0.5), (0.5, 0.05), (0.999, 1.0)])
def test_axial_closed_form_against_dblquad(a, c):
    assert axial_closed_form(a, c) == pytest.approx(violation_dblquad(a, a, c), abs=1e-10)


def test_steering_verdict_werner_threshold():
    r = steering_verdict(werner(0.51))
    assert r.steerable and r.f_value == pytest.approx(0.51, abs=1e-14)
    r = steering_verdict(werner(0.5))
    assert not r.steerable and r.f_value == pytest.approx(0.5, abs=1e-14)
    assert r.bound == LIMIT_BOUND


def test_steering_verdict_classically_correlated():
    r = steering_verdict(bell_diagonal_from_t(BellDiagonalParams(1, 0, 0)))
    assert r.f_value == pytest.approx(0.5, abs=1e-15) and not r.steerable
    assert r.concurrence == 0


def test_steering_verdict_rejects_non_t_state():
    with pytest.raises(NotTStateError, match="T states"):
        steering_verdict(np.diag([1, 0, 0, 0]).astype(complex))


def test_steering_verdict_flag_is_twice_f_above_one():
    for alpha in np.linspace(0, 1, 11):
        for eta in (0.0, 0.2, 0.7):
            r = steering_verdict(werner_pd(alpha, eta))
            assert r.steerable == (2 * (r.f_value - r.estimated_error) > 1)
            if abs(r.f_value - 0.5) > 1e-9:
                assert r.steerable == (2 * r.f_value > 1)


def test_steering_parameter_finite_examples():
    geom = GEOMETRIES["icosahedron-6"]
    assert steering_parameter_finite(np.diag([0.6, -0.6, 0.6]), geom) == pytest.approx(0.6)
    assert steering_parameter_finite(np.zeros((3, 3)), geom) == 0
    x_only = MeasurementGeometry("x", [[1, 0, 0]])
    assert steering_parameter_finite(np.diag([1, 0, 0]), x_only) == 1


def test_steering_parameter_approaches_max_violation():
    # a fine quadrature grid used as a measurement set recovers F in the limit
    t = np.diag([0.8, 0.3, 0.1])
    grid = build_grid("subdivision", 32)
    weighted = grid.weights @ np.sqrt((grid.vectors**2) @ np.diag(t)**2) / (4 * np.pi)
    assert weighted == pytest.approx(ORACLE_F[(0.8, 0.3, 0.1)], abs=1e-4)


@pytest.mark.parametrize("name,expected,tol", [
    ("orthogonal-2", 1 / np.sqrt(2), 1e-12),
    ("orthogonal-3", 1 / np.sqrt(3), 1e-12),
    ("cube-diagonals-4", 1 / np.sqrt(3), 1e-12),
    ("icosahedron-6", 0.5393, 5e-4),
    ("dodecahedron-10", 0.5236, 5e-4),
])
def test_finite_bound_catalog(name, expected, tol):
    geom = GEOMETRIES[name]
    assert finite_bound(geom) == pytest.approx(expected, abs=tol)
    assert finite_bound(geom) == pytest.approx(finite_bound_bruteforce(geom.axes), abs=1e-14)


def test_finite_bounds_decrease_towards_limit():
    c = [finite_bound(GEOMETRIES[n]) for n in
         ("orthogonal-2", "orthogonal-3", "icosahedron-6", "dodecahedron-10")]
    assert all(x >= y for x, y in zip(c, c[1:]))
    assert all(x >= LIMIT_BOUND for x in c)


def test_finite_bound_random_geometry_matches_bruteforce(rng):
    for n in (5, 8, 11):
        geom = MeasurementGeometry.from_vectors("random", rng.standard_normal((n, 3)))
        assert finite_bound(geom) == pytest.approx(finite_bound_bruteforce(geom.axes), abs=1e-14)


def test_finite_bound_limit():
    too_many = MeasurementGeometry.from_vectors(
        "many", [(np.cos(k), np.sin(k), 0.1 * k) for k in range(25)])
    with pytest.raises(DomainError, match="heuristic"):
        finite_bound(too_many)


def test_geometry_validation():
    with pytest.raises(DomainError):
        MeasurementGeometry("bad", [[1, 0, 0], [-1, 0, 0]])
    with pytest.raises(DomainError):
        MeasurementGeometry("bad", [[2, 0, 0]])
    with pytest.raises(DomainError):
        MeasurementGeometry("empty", np.zeros((0, 3)))


def test_limit_bound_operator_is_half_sigma_z():
    op = limit_bound_operator(build_grid("split-gauss", 32))
    np.testing.assert_allclose(op, np.diag([0.5, -0.5]), atol=1e-12)


def test_lhs_condition_examples(rng):
    dirs = rng.standard_normal((20, 3))
    dirs /= np.linalg.norm(dirs, axis=1)[:, None]
    for r in dirs:
        assert lhs_condition_holds(np.zeros((3, 3)), r)
        assert not lhs_condition_holds(np.diag([1, -1, 1]), r)
        assert lhs_condition_holds(np.diag([0.4, 0.4, 0.4]), r)
    assert lhs_condition_holds(np.diag([0.5, 0, 0]), [1, 0, 0])

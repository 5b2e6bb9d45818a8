"""Quadrature rules for scalar functions on the unit sphere.

Three schemes are available:

``product-gauss``
    Gauss-Legendre nodes in ``cos(theta)`` times a uniform (trapezoid) rule in
    ``phi``. Order ``n`` gives ``n`` polar rings of ``2n`` nodes each.
``split-gauss``
    As ``product-gauss`` but with ``n/2`` Gauss-Legendre nodes on each
    hemisphere. Functions with a kink on the equator (``|v_z|``, or the
    steering integrand for nearly rank-deficient correlation matrices) converge
    much faster on this grid.
``subdivision``
    Icosahedron whose faces are split ``order x order`` times; one node per
    spherical triangle at its normalized centroid, weighted by the exact
    triangle area.

Integrands are vectorized: ``f`` receives an ``(N, 3)`` array of unit vectors
and returns ``N`` values.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np
from scipy.special import roots_legendre

from .errors import ConvergenceError, DomainError

SCHEMES = ("product-gauss", "split-gauss", "subdivision")
MAX_POLAR_ORDER = 4096
MAX_SUBDIVISION_ORDER = 512
CHUNK_NODES = 1 << 20

Integrand = Callable[[np.ndarray], np.ndarray]


@dataclass(frozen=True, eq=False)
class SphereGrid:
    """An immutable quadrature rule on the unit sphere.

    Product grids store their polar and azimuthal factors and expand nodes on
    demand, so a 4096-ring grid never has to sit in memory as one array.
    """

    scheme: str
    order: int
    # product schemes
    polar_nodes: np.ndarray | None = None
    polar_weights: np.ndarray | None = None
    n_azimuth: int = 0
    # subdivision scheme
    points: np.ndarray | None = None
    point_weights: np.ndarray | None = None

    @property
    def size(self) -> int:
        if self.points is not None:
            return len(self.points)
        return len(self.polar_nodes) * self.n_azimuth

    def chunks(self, max_nodes: int = CHUNK_NODES) -> Iterator[tuple[np.ndarray, np.ndarray]]:
        """Yield ``(vectors, weights)`` blocks covering the grid."""
        if self.points is not None:
            for start in range(0, self.size, max_nodes):
                yield self.points[start:start + max_nodes], self.point_weights[start:start + max_nodes]
            return
        m = self.n_azimuth
        phi = 2 * np.pi * np.arange(m) / m
        cos_phi, sin_phi = np.cos(phi), np.sin(phi)
        dphi = 2 * np.pi / m
        rings = max(1, max_nodes // m)
        for start in range(0, len(self.polar_nodes), rings):
            mu = self.polar_nodes[start:start + rings]
            w = self.polar_weights[start:start + rings]
            st = np.sqrt(1 - mu**2)
            vecs = np.empty((len(mu), m, 3))
            vecs[..., 0] = st[:, None] * cos_phi
            vecs[..., 1] = st[:, None] * sin_phi
            vecs[..., 2] = mu[:, None]
            weights = np.repeat(w * dphi, m)
            yield vecs.reshape(-1, 3), weights

    @property
    def vectors(self) -> np.ndarray:
        return np.concatenate([v for v, _ in self.chunks()])

    @property
    def weights(self) -> np.ndarray:
        return np.concatenate([w for _, w in self.chunks()])


@dataclass(frozen=True)
class QuadratureResult:
    value: float
    estimated_error: float
    nodes_used: int


def _readonly(a):
    a = np.ascontiguousarray(a, dtype=float)
    a.flags.writeable = False
    return a


def _product_grid(scheme, order):
    if scheme == "product-gauss":
        mu, w = roots_legendre(order)
    else:
        half, wh = roots_legendre(order // 2)
        mu = np.concatenate([(half - 1) / 2, (half + 1) / 2])
        w = np.concatenate([wh, wh]) / 2
    return SphereGrid(scheme, order, polar_nodes=_readonly(mu), polar_weights=_readonly(w),
                      n_azimuth=2 * order)


_GOLDEN = (1 + 5**0.5) / 2
_ICO_VERTICES = np.array([
    (-1, _GOLDEN, 0), (1, _GOLDEN, 0), (-1, -_GOLDEN, 0), (1, -_GOLDEN, 0),
    (0, -1, _GOLDEN), (0, 1, _GOLDEN), (0, -1, -_GOLDEN), (0, 1, -_GOLDEN),
    (_GOLDEN, 0, -1), (_GOLDEN, 0, 1), (-_GOLDEN, 0, -1), (-_GOLDEN, 0, 1),
], dtype=float)
_ICO_VERTICES /= np.linalg.norm(_ICO_VERTICES, axis=1)[:, None]
_ICO_FACES = np.array([
    (0, 11, 5), (0, 5, 1), (0, 1, 7), (0, 7, 10), (0, 10, 11),
    (1, 5, 9), (5, 11, 4), (11, 10, 2), (10, 7, 6), (7, 1, 8),
    (3, 9, 4), (3, 4, 2), (3, 2, 6), (3, 6, 8), (3, 8, 9),
    (4, 9, 5), (2, 4, 11), (6, 2, 10), (8, 6, 7), (9, 8, 1),
])


def _spherical_triangle_area(a, b, c):
    # Van Oosterom & Strackee solid angle
    num = np.abs(np.einsum("ij,ij->i", a, np.cross(b, c)))
    den = 1 + np.einsum("ij,ij->i", a, b) + np.einsum("ij,ij->i", b, c) + np.einsum("ij,ij->i", c, a)
    return 2 * np.arctan2(num, den)


def _subdivision_grid(order):
    # barycentric lattice of each face, split into order**2 small triangles
    ij = [(i, j) for i in range(order + 1) for j in range(order + 1 - i)]
    index = {p: k for k, p in enumerate(ij)}
    tris = []
    for i in range(order):
        for j in range(order - i):
            tris.append((index[i, j], index[i + 1, j], index[i, j + 1]))
            if i + j < order - 1:
                tris.append((index[i + 1, j], index[i + 1, j + 1], index[i, j + 1]))
    tris = np.array(tris)
    bary = np.array([(i, j, order - i - j) for i, j in ij], dtype=float) / order

    corners = _ICO_VERTICES[_ICO_FACES]                      # (20, 3, 3)
    lattice = np.einsum("pk,fkd->fpd", bary, corners)
    lattice /= np.linalg.norm(lattice, axis=-1, keepdims=True)
    a, b, c = (lattice[:, tris[:, k]].reshape(-1, 3) for k in range(3))
    centroid = a + b + c
    centroid /= np.linalg.norm(centroid, axis=1)[:, None]
    area = _spherical_triangle_area(a, b, c)
    return SphereGrid("subdivision", order, points=_readonly(centroid), point_weights=_readonly(area))


@lru_cache(maxsize=32)
def _build(scheme, order):
    if scheme == "subdivision":
        return _subdivision_grid(order)
    return _product_grid(scheme, order)


def build_grid(scheme: str = "product-gauss", order: int = 16) -> SphereGrid:
    """Build (or fetch from cache) a quadrature grid.

    ``order`` is the number of polar rings for the Gauss schemes and the edge
    subdivision factor for ``subdivision``. ``split-gauss`` needs an even order.
    """
    if scheme not in SCHEMES:
        raise DomainError(f"unknown scheme {scheme!r}; expected one of {SCHEMES}")
    if int(order) != order or order < 2:
        raise DomainError(f"order must be an integer >= 2, got {order}")
    order = int(order)
    if scheme == "split-gauss" and order % 2:
        raise DomainError("split-gauss needs an even order")
    cap = MAX_SUBDIVISION_ORDER if scheme == "subdivision" else MAX_POLAR_ORDER
    if order > cap:
        raise DomainError(f"order {order} exceeds the {scheme} cap of {cap}")
    return _build(scheme, order)


def _sum(grid: SphereGrid, f: Integrand) -> float:
    total = 0.0
    for vecs, w in grid.chunks():
        total += float(w @ np.asarray(f(vecs), dtype=float))
    return total


def _coarser(grid: SphereGrid) -> SphereGrid | None:
    half = grid.order // 2
    if grid.scheme == "subdivision":
        return _build("subdivision", half) if half >= 1 else None
    if grid.scheme == "split-gauss" and half % 2:
        return None
    return _build(grid.scheme, half) if half >= 1 else None


def integrate(grid: SphereGrid, f: Integrand) -> QuadratureResult:
    """Sum ``w_i f(v_i)`` over the grid.

    The error estimate is the difference from the same scheme at half the
    order. When no such grid exists the magnitude of the value is reported,
    which is deliberately pessimistic.
    """
    value = _sum(grid, f)
    coarse = _coarser(grid)
    err = abs(value - _sum(coarse, f)) if coarse is not None else abs(value)
    return QuadratureResult(value=value, estimated_error=err, nodes_used=grid.size)


def integrate_adaptive(f: Integrand, target_rel_err: float = 1e-9, scheme: str = "product-gauss",
                       start_order: int = 16, max_order: int | None = None) -> QuadratureResult:
    """Double the grid order until successive estimates agree to ``target_rel_err``.

    Raises ConvergenceError (carrying the last estimate) if the order cap is
    reached first.
    """
    if not target_rel_err > 0:
        raise DomainError("target_rel_err must be positive")
    if max_order is None:
        max_order = MAX_SUBDIVISION_ORDER if scheme == "subdivision" else MAX_POLAR_ORDER
    order = start_order
    grid = build_grid(scheme, order)
    prev = _sum(grid, f)
    err = float("inf")
    while 2 * order <= max_order:
        order *= 2
        grid = build_grid(scheme, order)
        cur = _sum(grid, f)
        err = abs(cur - prev)
        if err <= target_rel_err * abs(cur):
            return QuadratureResult(value=cur, estimated_error=err, nodes_used=grid.size)
        prev = cur
    raise ConvergenceError(f"no convergence to {target_rel_err:g} by order {order}",
                           estimate=prev, estimated_error=err, nodes_used=grid.size)

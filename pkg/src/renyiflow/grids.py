"""Uniform grids on R^n with midpoint quadrature weights and difference operators.

Two geometries are supported: a 1-D Cartesian interval and a radially
symmetric n-D half-line.  Radial grids are cell centered, starting at
r = spacing/2, and carry the volume weight |S^{n-1}| r^{n-1} spacing per
node, with |S^{n-1}| = 2 pi^{n/2} / Gamma(n/2).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

CARTESIAN = "cartesian1d"
RADIAL = "radial"


def sphere_surface(n: int) -> float:
    """Surface measure of the unit sphere S^{n-1}."""
    return 2.0 * math.pi ** (n / 2.0) / math.gamma(n / 2.0)


@dataclass(frozen=True)
class Grid:
    kind: str
    dim: int
    node_count: int
    spacing: float
    origin: float  # coordinate of the first node

    def __post_init__(self):
        if self.kind not in (CARTESIAN, RADIAL):
            raise DomainError(f"unknown grid kind {self.kind!r}")
        if self.kind == CARTESIAN and self.dim != 1:
            raise DomainError("cartesian1d grids are one-dimensional")
        if self.kind == RADIAL and self.dim < 1:
            raise DomainError("radial dimension must be a positive integer")
        if self.node_count < 8:
            raise DomainError("grid needs at least 8 nodes")
        if not self.spacing > 0.0:
            raise DomainError("grid spacing must be positive")

    @classmethod
    def cartesian(cls, node_count: int, radius: float, center: float = 0.0) -> Grid:
        """Cell-centered grid covering [center-radius, center+radius]."""
        if not radius > 0.0:
            raise DomainError("domain radius must be positive")
        h = 2.0 * radius / node_count
        return cls(CARTESIAN, 1, node_count, h, center - radius + h / 2.0)

    @classmethod
    def radial(cls, dim: int, node_count: int, radius: float) -> Grid:
        """Cell-centered radial grid covering [0, radius] in dimension dim."""
        if not radius > 0.0:
            raise DomainError("domain radius must be positive")
        h = radius / node_count
        return cls(RADIAL, dim, node_count, h, h / 2.0)

    def nodes(self) -> np.ndarray:
        return self.origin + self.spacing * np.arange(self.node_count)

    def weights(self) -> np.ndarray:
        """Quadrature weight per node (length, or shell volume for radial grids)."""
        if self.kind == CARTESIAN:
            return np.full(self.node_count, self.spacing)
        r = self.nodes()
        return sphere_surface(self.dim) * r ** (self.dim - 1) * self.spacing

    def face_areas(self) -> np.ndarray:
        """Areas of the node_count+1 cell faces, used by the flux solver."""
        if self.kind == CARTESIAN:
            return np.ones(self.node_count + 1)
        faces = self.spacing * np.arange(self.node_count + 1)
        return sphere_surface(self.dim) * faces ** (self.dim - 1)

    def radius(self) -> float:
        """Outer edge of the covered domain (half-width for Cartesian grids)."""
        if self.kind == CARTESIAN:
            return self.node_count * self.spacing / 2.0
        return self.node_count * self.spacing

    def scaled(self, a: float) -> Grid:
        """Grid dilated by a > 0 about the origin (node i maps to a*x_i)."""
        if not a > 0.0:
            raise DomainError("dilation factor must be positive")
        return Grid(self.kind, self.dim, self.node_count, a * self.spacing, a * self.origin)


@dataclass(frozen=True)
class DensityField:
    """Nonnegative samples of a density on a grid."""

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        v = np.ascontiguousarray(self.values, dtype=float)
        object.__setattr__(self, "values", v)
        if v.shape != (self.grid.node_count,):
            raise DomainError("values shape does not match the grid")
        if not np.all(np.isfinite(v)):
            raise DomainError("density values must be finite")
        if v.min() < 0.0:
            raise DomainError("density values must be nonnegative")
        if not float(self.grid.weights() @ v) > 0.0:
            raise DomainError("density must have positive mass")


def gradient(values: np.ndarray, grid: Grid) -> np.ndarray:
    """First derivative: central in the interior, one-sided second order at ends.

    Radial grids use the even-extension ghost (g'(0) = 0) at the inner end.
    """
    h = grid.spacing
    if grid.kind == CARTESIAN:
        return np.gradient(values, h, edge_order=2)
    ext = np.concatenate(([values[0]], values))  # mirror node at -h/2
    return np.gradient(ext, h, edge_order=2)[1:]


def second_derivative(values: np.ndarray, grid: Grid) -> np.ndarray:
    """Second derivative with the same boundary treatment as `gradient`."""
    h2 = grid.spacing ** 2
    v = values
    d2 = np.empty_like(v)
    d2[1:-1] = (v[2:] - 2.0 * v[1:-1] + v[:-2]) / h2
    d2[-1] = (2.0 * v[-1] - 5.0 * v[-2] + 4.0 * v[-3] - v[-4]) / h2
    if grid.kind == CARTESIAN:
        d2[0] = (2.0 * v[0] - 5.0 * v[1] + 4.0 * v[2] - v[3]) / h2
    else:
        d2[0] = (v[1] - v[0]) / h2  # mirror ghost: v[-1] == v[0]
    return d2


def hessian_invariants(values: np.ndarray, grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """(|D^2 g|^2, Laplacian g) for a radial or 1-D profile g.

    For a radial function the Hessian eigenvalues are g'' and g'/r with
    multiplicity n-1, so |D^2 g|^2 = g''^2 + (n-1)(g'/r)^2 and
    Lap g = g'' + (n-1) g'/r.  Nodes never sit at r = 0.
    """
    d2 = second_derivative(values, grid)
    if grid.kind == CARTESIAN or grid.dim == 1:
        return d2 * d2, d2
    slope_over_r = gradient(values, grid) / grid.nodes()
    m = grid.dim - 1
    return d2 * d2 + m * slope_over_r ** 2, d2 + m * slope_over_r

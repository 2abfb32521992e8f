"""Composite Gauss-Legendre quadrature with adaptive panel doubling.

Integrands in this package are smooth and exponentially localized, so a
16-point rule per panel gives spectral accuracy and the panel count only
has to resolve oscillation scale, not tails.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from wignerflow.errors import ConvergenceError

GAUSS_ORDER = 16
ABS_FLOOR = 1e-14


@lru_cache(maxsize=8)
def _gauss_nodes(n: int = GAUSS_ORDER):
    x, w = np.polynomial.legendre.leggauss(n)
    return x, w


@dataclass(frozen=True)
class QuadratureResult:
    """Value plus a conservative error estimate from the last refinement."""

    value: float
    abs_error_estimate: float
    panels_used: int


@dataclass(frozen=True)
class PhaseGrid:
    """Uniform rectangular sampling of the phase plane."""

    s_min: float
    s_max: float
    q_min: float
    q_max: float
    n_s: int
    n_q: int

    def __post_init__(self):
        if not self.s_min < self.s_max:
            raise ValueError(f"require s_min < s_max, got [{self.s_min}, {self.s_max}]")
        if not self.q_min < self.q_max:
            raise ValueError(f"require q_min < q_max, got [{self.q_min}, {self.q_max}]")
        if self.n_s < 2 or self.n_q < 2:
            raise ValueError("need at least 2 points per axis")

    @property
    def s_nodes(self) -> np.ndarray:
        return np.linspace(self.s_min, self.s_max, self.n_s)

    @property
    def q_nodes(self) -> np.ndarray:
        return np.linspace(self.q_min, self.q_max, self.n_q)

    def mesh(self):
        return np.meshgrid(self.s_nodes, self.q_nodes, indexing="ij")


def _eval_vectorized(f, x: np.ndarray) -> np.ndarray:
    y = f(x)
    y = np.asarray(y, dtype=float)
    if y.shape != x.shape:
        if y.ndim == 0:
            return np.full_like(x, float(y))
        # f was written point-wise; fall back to a scalar loop
        return np.array([float(f(xi)) for xi in x])
    return y


def _composite(f, a: float, b: float, panels: int) -> float:
    x, w = _gauss_nodes()
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    vals = _eval_vectorized(f, nodes).reshape(panels, x.size)
    return float(np.sum(half * (vals @ w)))


def integrate_1d(f, a: float, b: float, rel_tol: float = 1e-10,
                 initial_panels: int = 1, max_panels: int = 4096) -> QuadratureResult:
    """Integrate ``f`` over [a, b] to the requested relative tolerance.

    ``f`` should accept an ndarray of abscissae and return values of the same
    shape; point-wise callables are accepted with a performance penalty.
    Panels are doubled until two successive composite values agree to
    ``max(rel_tol * |value|, 1e-14)``.

    Raises
    ------
    ConvergenceError
        If the panel cap is reached; the best estimate is attached.
    """
    if not a < b:
        raise ValueError(f"require a < b, got [{a}, {b}]")
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    panels = max(1, int(initial_panels))
    prev = _composite(f, a, b, panels)
    err = np.inf
    while panels <= max_panels:
        panels *= 2
        value = _composite(f, a, b, panels)
        err = abs(value - prev)
        if err <= max(rel_tol * abs(value), ABS_FLOOR):
            return QuadratureResult(value, err, panels)
        prev = value
    raise ConvergenceError(
        f"integrate_1d did not stabilize within {max_panels} panels "
        f"(last refinement changed by {err:.3e})",
        best_estimate=QuadratureResult(prev, err, panels // 2),
    )


def _composite_2d(f, grid: PhaseGrid, panels: int) -> float:
    x, w = _gauss_nodes()
    s_edges = np.linspace(grid.s_min, grid.s_max, panels + 1)
    q_edges = np.linspace(grid.q_min, grid.q_max, panels + 1)
    hs = 0.5 * (s_edges[1:] - s_edges[:-1])
    hq = 0.5 * (q_edges[1:] - q_edges[:-1])
    s_nodes = (0.5 * (s_edges[1:] + s_edges[:-1])[:, None] + hs[:, None] * x[None, :]).ravel()
    q_nodes = (0.5 * (q_edges[1:] + q_edges[:-1])[:, None] + hq[:, None] * x[None, :]).ravel()
    s_w = (hs[:, None] * w[None, :]).ravel()
    q_w = (hq[:, None] * w[None, :]).ravel()
    S, Q = np.meshgrid(s_nodes, q_nodes, indexing="ij")
    vals = np.asarray(f(S, Q), dtype=float)
    if vals.shape != S.shape:
        raise ValueError("integrate_2d requires a broadcasting integrand f(s, q)")
    return float(s_w @ vals @ q_w)


def integrate_2d(f, grid: PhaseGrid, rel_tol: float = 1e-9,
                 initial_panels: int = 1, max_panels: int = 64) -> QuadratureResult:
    """Tensor-product Gauss-Legendre integral of ``f(s, q)`` over the grid box.

    Same stabilization contract as :func:`integrate_1d`; the panel count is
    per axis, so work grows fourfold per refinement.
    """
    if rel_tol <= 0:
        raise ValueError("rel_tol must be positive")
    panels = max(1, int(initial_panels))
    prev = _composite_2d(f, grid, panels)
    err = np.inf
    while panels <= max_panels:
        panels *= 2
        value = _composite_2d(f, grid, panels)
        err = abs(value - prev)
        if err <= max(rel_tol * abs(value), ABS_FLOOR):
            return QuadratureResult(value, err, panels)
        prev = value
    raise ConvergenceError(
        f"integrate_2d did not stabilize within {max_panels} panels per axis",
        best_estimate=QuadratureResult(prev, err, panels // 2),
    )

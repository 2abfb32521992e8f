"""Batched truncated-Taylor (power series) kernels.

All routines operate on ndarrays whose LAST axis holds Taylor coefficients
c[k] = f^(k)(x0) / k! about a (possibly batched) expansion point.  Leading
axes broadcast, so one call propagates derivatives through thousands of
evaluation points at once.  Recurrences are the standard ones for truncated
power series and are exact to rounding for analytic inputs.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

from wignerflow.errors import SingularityError


def var(x0, order: int) -> np.ndarray:
    """Series of the identity function at x0 (batched over x0)."""
    x0 = np.asarray(x0, dtype=float)
    c = np.zeros(x0.shape + (order + 1,))
    c[..., 0] = x0
    if order >= 1:
        c[..., 1] = 1.0
    return c


def const(value, order: int, shape=()) -> np.ndarray:
    c = np.zeros(tuple(shape) + (order + 1,))
    c[..., 0] = value
    return c


def mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated Cauchy product along the last axis."""
    n = max(a.shape[-1], b.shape[-1])
    shape = np.broadcast_shapes(a.shape[:-1], b.shape[:-1])
    out = np.zeros(shape + (n,))
    for k in range(n):
        i0 = max(0, k - (b.shape[-1] - 1))
        i1 = min(k, a.shape[-1] - 1)
        for i in range(i0, i1 + 1):
            out[..., k] += a[..., i] * b[..., k - i]
    return out


def recip(a: np.ndarray) -> np.ndarray:
    a0 = a[..., 0]
    if np.any(a0 == 0.0):
        raise SingularityError("series reciprocal at a zero of the function")
    out = np.zeros_like(a)
    out[..., 0] = 1.0 / a0
    for k in range(1, a.shape[-1]):
        acc = np.zeros_like(a0)
        for i in range(1, k + 1):
            acc += a[..., i] * out[..., k - i]
        out[..., k] = -acc / a0
    return out


def div(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return mul(a, recip(b))


def exp(a: np.ndarray) -> np.ndarray:
    out = np.zeros_like(a)
    out[..., 0] = np.exp(a[..., 0])
    for k in range(1, a.shape[-1]):
        acc = np.zeros_like(out[..., 0])
        for j in range(1, k + 1):
            acc += j * a[..., j] * out[..., k - j]
        out[..., k] = acc / k
    return out


def sin_cos(a: np.ndarray):
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    s[..., 0] = np.sin(a[..., 0])
    c[..., 0] = np.cos(a[..., 0])
    for k in range(1, a.shape[-1]):
        sa = np.zeros_like(s[..., 0])
        ca = np.zeros_like(s[..., 0])
        for j in range(1, k + 1):
            sa += j * a[..., j] * c[..., k - j]
            ca += j * a[..., j] * s[..., k - j]
        s[..., k] = sa / k
        c[..., k] = -ca / k
    return s, c


def sinh_cosh(a: np.ndarray):
    s = np.zeros_like(a)
    c = np.zeros_like(a)
    s[..., 0] = np.sinh(a[..., 0])
    c[..., 0] = np.cosh(a[..., 0])
    for k in range(1, a.shape[-1]):
        sa = np.zeros_like(s[..., 0])
        ca = np.zeros_like(s[..., 0])
        for j in range(1, k + 1):
            sa += j * a[..., j] * c[..., k - j]
            ca += j * a[..., j] * s[..., k - j]
        s[..., k] = sa / k
        c[..., k] = ca / k
    return s, c


def sqrt(a: np.ndarray) -> np.ndarray:
    a0 = a[..., 0]
    if np.any(a0 <= 0.0):
        raise SingularityError("series sqrt needs a positive leading value")
    out = np.zeros_like(a)
    out[..., 0] = np.sqrt(a0)
    for k in range(1, a.shape[-1]):
        acc = np.zeros_like(a0)
        for i in range(1, k):
            acc += out[..., i] * out[..., k - i]
        out[..., k] = (a[..., k] - acc) / (2.0 * out[..., 0])
    return out


def asinh(a: np.ndarray) -> np.ndarray:
    """arcsinh composed with a series, via term-wise integration of a'/sqrt(1+a^2)."""
    n = a.shape[-1]
    out = np.zeros_like(a)
    out[..., 0] = np.arcsinh(a[..., 0])
    if n == 1:
        return out
    one_plus = mul(a, a)
    one_plus[..., 0] += 1.0
    da = np.zeros_like(a)
    da[..., :-1] = a[..., 1:] * np.arange(1, n)
    integrand = div(da, sqrt(one_plus))
    out[..., 1:] = integrand[..., :-1] / np.arange(1, n)
    return out


def derive(a: np.ndarray) -> np.ndarray:
    """Series of the derivative (order drops by one)."""
    n = a.shape[-1]
    if n == 1:
        return np.zeros_like(a[..., :1])
    return a[..., 1:] * np.arange(1, n)


def coeffs_to_derivatives(a: np.ndarray) -> np.ndarray:
    """Convert Taylor coefficients to plain derivatives (multiply by k!)."""
    k = np.arange(a.shape[-1])
    return a * np.array([math.factorial(int(i)) for i in k])


# ---------------------------------------------------------------------------
# Maclaurin tables and polynomial recentering for the removable-singularity
# factors sin(u)/u and u/sinh(u).
# ---------------------------------------------------------------------------

@lru_cache(maxsize=32)
def maclaurin_sinc(n: int) -> np.ndarray:
    c = np.zeros(n + 1)
    for j in range(0, n // 2 + 1):
        c[2 * j] = (-1.0) ** j / math.factorial(2 * j + 1)
    return c


@lru_cache(maxsize=32)
def maclaurin_xcsch(n: int) -> np.ndarray:
    """Maclaurin coefficients of u / sinh(u) (radius pi)."""
    sh = np.zeros(n + 1)
    for j in range(0, n // 2 + 1):
        sh[2 * j] = 1.0 / math.factorial(2 * j + 1)
    return recip(sh[None, :])[0]


@lru_cache(maxsize=32)
def maclaurin_xsinh(n: int) -> np.ndarray:
    """Maclaurin coefficients of sinh(u) / u (entire)."""
    sh = np.zeros(n + 1)
    for j in range(0, n // 2 + 1):
        sh[2 * j] = 1.0 / math.factorial(2 * j + 1)
    return sh


def taylor_shift(coeffs: np.ndarray, t, order: int) -> np.ndarray:
    """Recenter a polynomial: coefficients about x=0 -> about x=t (batched t).

    Synthetic-division (Horner) form; stable for |t| inside the series'
    useful radius.  Returns the first ``order + 1`` shifted coefficients.
    """
    t = np.asarray(t, dtype=float)
    n = coeffs.shape[-1] - 1
    b = np.broadcast_to(coeffs, t.shape + (n + 1,)).copy()
    for j in range(min(order, n) + 1):
        for k in range(n - 1, j - 1, -1):
            b[..., k] += t * b[..., k + 1]
    return b[..., : order + 1]


_SERIES_SWITCH = 1.0  # |u0| below which the recentering branch is used
_SERIES_EXTRA = 40    # extra Maclaurin terms carried before recentering


def sinc_jet(u0, order: int) -> np.ndarray:
    """Series of sin(u)/u about u0 (batched); regular through u0 = 0."""
    u0 = np.asarray(u0, dtype=float)
    near = np.abs(u0) <= _SERIES_SWITCH
    out = np.empty(u0.shape + (order + 1,))
    if np.any(near):
        mac = maclaurin_sinc(order + _SERIES_EXTRA)
        out[near] = taylor_shift(mac, u0[near], order)
    far = ~near
    if np.any(far):
        u = var(u0[far], order)
        s, _ = sin_cos(u)
        out[far] = div(s, u)
    return out


def xcsch_jet(u0, order: int) -> np.ndarray:
    """Series of u/sinh(u) about u0 (batched); regular through u0 = 0."""
    u0 = np.asarray(u0, dtype=float)
    near = np.abs(u0) <= _SERIES_SWITCH
    out = np.empty(u0.shape + (order + 1,))
    if np.any(near):
        mac = maclaurin_xcsch(order + _SERIES_EXTRA)
        out[near] = taylor_shift(mac, u0[near], order)
    far = ~near
    if np.any(far):
        u = var(u0[far], order)
        s, _ = sinh_cosh(u)
        out[far] = div(u, s)
    return out

"""Truncated Taylor (jet) arithmetic for exact high-order derivatives.

A :class:`Jet` holds Taylor coefficients c_0..c_order of a function about an
expansion point, with c_k = f^(k)(x0)/k!.  Arithmetic and the elementary
functions below propagate these coefficients exactly (to rounding), which is
how the package obtains arbitrary-order derivatives without symbolic algebra
or finite differencing.

Typical use::

    >>> j = jet_eval(lambda x: sech(x) * sech(x), 0.0, 4)
    >>> j.coeffs            # sech^2(s) = 1 - s^2 + (2/3) s^4 - ...
    array([ 1. ,  0. , -1. ,  0. ,  0.66666667])
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from wignerflow.errors import SingularityError
from wignerflow.numerics import _series


def _as_operand(x, order: int):
    if isinstance(x, Jet):
        return x
    return Jet(_const_coeffs(float(x), order))


def _const_coeffs(value: float, order: int) -> np.ndarray:
    c = np.zeros(order + 1)
    c[0] = value
    return c


@dataclass(frozen=True)
class Jet:
    """Taylor coefficients c_k = f^(k)(x0)/k!, k = 0..order."""

    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", np.asarray(self.coeffs, dtype=float))
        if self.coeffs.ndim != 1 or self.coeffs.size == 0:
            raise ValueError("Jet coefficients must be a non-empty 1-D sequence")

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    @property
    def value(self) -> float:
        return float(self.coeffs[0])

    def derivative(self, k: int) -> float:
        """k-th derivative at the expansion point."""
        if not 0 <= k <= self.order:
            raise ValueError(f"derivative order {k} outside jet order {self.order}")
        return float(self.coeffs[k] * math.factorial(k))

    def _bin(self, other, fn):
        other = _as_operand(other, self.order)
        return Jet(fn(self.coeffs[None, :], other.coeffs[None, :])[0])

    def __add__(self, other):
        other = _as_operand(other, self.order)
        n = max(self.coeffs.size, other.coeffs.size)
        out = np.zeros(n)
        out[: self.coeffs.size] += self.coeffs
        out[: other.coeffs.size] += other.coeffs
        return Jet(out)

    __radd__ = __add__

    def __neg__(self):
        return Jet(-self.coeffs)

    def __sub__(self, other):
        return self + (-_as_operand(other, self.order))

    def __rsub__(self, other):
        return _as_operand(other, self.order) + (-self)

    def __mul__(self, other):
        if np.isscalar(other):
            return Jet(self.coeffs * float(other))
        return self._bin(other, _series.mul)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if np.isscalar(other):
            return Jet(self.coeffs / float(other))
        return self._bin(other, _series.div)

    def __rtruediv__(self, other):
        return _as_operand(other, self.order)._bin(self, _series.div)

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("jet powers must be non-negative integers")
        out = jet_const(1.0, self.order)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out


def jet_var(x0: float, order: int) -> Jet:
    """The identity function x about x0."""
    return Jet(_series.var(np.asarray([float(x0)]), order)[0])


def jet_const(value: float, order: int) -> Jet:
    return Jet(_const_coeffs(float(value), order))


def _lift(fn):
    def wrapped(j: Jet) -> Jet:
        return Jet(fn(j.coeffs[None, :])[0])
    return wrapped


exp = _lift(_series.exp)
sqrt = _lift(_series.sqrt)
arcsinh = _lift(_series.asinh)


def sin(j: Jet) -> Jet:
    s, _ = _series.sin_cos(j.coeffs[None, :])
    return Jet(s[0])


def cos(j: Jet) -> Jet:
    _, c = _series.sin_cos(j.coeffs[None, :])
    return Jet(c[0])


def sinh(j: Jet) -> Jet:
    s, _ = _series.sinh_cosh(j.coeffs[None, :])
    return Jet(s[0])


def cosh(j: Jet) -> Jet:
    _, c = _series.sinh_cosh(j.coeffs[None, :])
    return Jet(c[0])


def tanh(j: Jet) -> Jet:
    s, c = _series.sinh_cosh(j.coeffs[None, :])
    return Jet(_series.div(s, c)[0])


def sech(j: Jet) -> Jet:
    _, c = _series.sinh_cosh(j.coeffs[None, :])
    return Jet(_series.recip(c)[0])


def csch(j: Jet) -> Jet:
    s, _ = _series.sinh_cosh(j.coeffs[None, :])
    if abs(s[0, 0]) < 1e-300:
        raise SingularityError("csch evaluated at a zero of sinh")
    return Jet(_series.recip(s)[0])


def coth(j: Jet) -> Jet:
    s, c = _series.sinh_cosh(j.coeffs[None, :])
    if abs(s[0, 0]) < 1e-300:
        raise SingularityError("coth evaluated at a zero of sinh")
    return Jet(_series.div(c, s)[0])


def reciprocal(j: Jet) -> Jet:
    if abs(j.value) < 1e-300:
        raise SingularityError("reciprocal of a jet with zero value")
    return Jet(_series.recip(j.coeffs[None, :])[0])


def compose(outer: Jet, inner: Jet) -> Jet:
    """Jet of f(g(x)) given ``outer`` = jet of f about g(x0) and ``inner`` = jet of g.

    The caller is responsible for expanding ``outer`` about ``inner.value``.
    """
    n = inner.order
    delta = Jet(inner.coeffs.copy())
    delta = delta - inner.value
    out = jet_const(float(outer.coeffs[min(outer.order, n)]), n)
    for k in range(min(outer.order, n) - 1, -1, -1):
        out = out * delta + float(outer.coeffs[k])
    return out


def jet_eval(f, x0: float, order: int) -> Jet:
    """Evaluate an elementary-function expression as a jet at x0.

    ``f`` receives a seed :class:`Jet` for the variable and must build the
    expression with jet arithmetic and the module's elementary functions.
    """
    if order < 0:
        raise ValueError("order must be non-negative")
    return f(jet_var(x0, order))

"""Dimensionless potential models with exact n-th derivatives.

The hyperbolic Poschl-Teller well U(s) = -lam(lam+1) sech^2(s) is the main
subject; its derivatives follow the closed recurrence

    d^n/ds^n sech^2(s) = sech^2(s) * P_n(tanh s),
    P_{n+1}(t) = -2 t P_n(t) + (1 - t^2) P_n'(t),   P_0 = 1,

whose coefficients are exact integers.  The harmonic and polynomial models
exist for the Liouvillian reference case and for tests.

Conventions: the dimensionless Hamiltonian is H = q^2 + U(s); it generates
the dynamics ds/dtau = q, dq/dtau = -U'(s)/2 (the flow module owns the 1/2).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np


@dataclass(frozen=True)
class TanhPolynomial:
    """P_n with d^n/ds^n sech^2(s) = sech^2(s) P_n(tanh s); integer coefficients."""

    coeffs: tuple[int, ...]  # ascending powers of t = tanh(s)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        acc = np.zeros_like(t)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc


@lru_cache(maxsize=64)
def tanh_polynomial(n: int) -> TanhPolynomial:
    """n-th polynomial of the sech^2 derivative recurrence (exact integers)."""
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    if n == 0:
        return TanhPolynomial((1,))
    prev = tanh_polynomial(n - 1).coeffs
    deg = len(prev) - 1
    out = [0] * (deg + 2)
    for i, c in enumerate(prev):
        out[i + 1] -= 2 * c          # -2 t P_n
        if i >= 1:
            out[i - 1] += i * c      # P_n'
            out[i + 1] -= i * c      # -t^2 P_n'
    while len(out) > 1 and out[-1] == 0:
        out.pop()
    return TanhPolynomial(tuple(out))


class PotentialModel:
    """Base for potentials exposing exact derivatives of any order."""

    def value(self, s):
        return self.derivative(0, s)

    def derivative(self, n: int, s):
        raise NotImplementedError

    def hamiltonian(self, s, q):
        s = np.asarray(s, dtype=float)
        q = np.asarray(q, dtype=float)
        return q * q + self.value(s)

    @property
    def max_derivative_order(self):
        """Highest n with a not-identically-zero derivative (None = unbounded)."""
        return None

    @property
    def is_quantum_free(self) -> bool:
        """True when all derivatives of order >= 3 vanish, so the Wigner flow
        carries no quantum correction at all."""
        order = self.max_derivative_order
        return order is not None and order <= 2


@dataclass(frozen=True)
class PoschlTeller(PotentialModel):
    """U(s) = -lam (lam + 1) sech^2(s), lam a positive integer."""

    lam: int

    def __post_init__(self):
        if not isinstance(self.lam, (int, np.integer)) or self.lam < 1:
            raise ValueError(f"lam must be a positive integer, got {self.lam!r}")

    @property
    def depth(self) -> float:
        return float(self.lam * (self.lam + 1))

    def derivative(self, n: int, s):
        if n < 0:
            raise ValueError("derivative order must be non-negative")
        s = np.asarray(s, dtype=float)
        sech2 = 1.0 / np.cosh(s) ** 2
        return -self.depth * sech2 * tanh_polynomial(n)(np.tanh(s))

    def bound_window(self) -> tuple[float, float]:
        """Open interval of the energy parameter l for bound classical motion."""
        return (0.0, self.depth)


@dataclass(frozen=True)
class Harmonic(PotentialModel):
    """U(s) = omega_sq * s^2."""

    omega_sq: float = 1.0

    def __post_init__(self):
        if self.omega_sq <= 0:
            raise ValueError("omega_sq must be positive")

    def derivative(self, n: int, s):
        s = np.asarray(s, dtype=float)
        if n == 0:
            return self.omega_sq * s * s
        if n == 1:
            return 2.0 * self.omega_sq * s
        if n == 2:
            return np.full_like(s, 2.0 * self.omega_sq)
        return np.zeros_like(s)

    @property
    def max_derivative_order(self):
        return 2


@dataclass(frozen=True)
class Polynomial(PotentialModel):
    """U(s) = sum c_k s^k with coeffs given ascending."""

    coeffs: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(float(c) for c in self.coeffs))

    def derivative(self, n: int, s):
        s = np.asarray(s, dtype=float)
        c = np.polynomial.polynomial.polyder(np.asarray(self.coeffs), n) if n else np.asarray(self.coeffs)
        acc = np.zeros_like(s)
        for ck in c[::-1]:
            acc = acc * s + ck
        return acc

    @property
    def max_derivative_order(self):
        return max(len(self.coeffs) - 1, 0)


def poschl_teller(lam: int) -> PoschlTeller:
    return PoschlTeller(lam)


def harmonic(omega_sq: float = 1.0) -> Harmonic:
    return Harmonic(omega_sq)


def polynomial(coeffs) -> Polynomial:
    return Polynomial(tuple(coeffs))


def potential_derivative(model: PotentialModel, n: int, s):
    """Exact n-th derivative of the model potential at s."""
    out = model.derivative(n, s)
    return float(out) if np.isscalar(s) else out


def hamiltonian_value(model: PotentialModel, s, q):
    """Dimensionless H = q^2 + U(s)."""
    out = model.hamiltonian(s, q)
    return float(out) if np.isscalar(s) and np.isscalar(q) else out

"""Wigner-state representations and their exact derivative stacks.

Three concrete states are provided:

* :class:`PTGroundState` -- the Poschl-Teller ground state in closed form,
  built from the iterated operator D = -(1/sinh 2s) d/ds applied to the
  kernel f(s, q) = sin(2qs) / (sinh(2s) sinh(pi q)).
* :class:`HarmonicGroundState` -- the Gaussian reference state.
* :class:`WavefunctionState` -- the numerically Weyl-transformed state of an
  arbitrary sampled wavefunction.

Every state exposes ``derivative_block(s, q, dq_max)`` returning the pure
q-derivatives of W and of dW/ds up to the requested order.  For the closed
forms these are exact to rounding: the kernel is evaluated through the
everywhere-regular factorization

    f(s, q) = (1/pi) * sinc(2qs) * [2s/sinh(2s)] * [pi q/sinh(pi q)],

so the removable singularities on both axes never appear explicitly, and the
D applications use truncated-Taylor (jet) arithmetic in s.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.interpolate import CubicSpline

from wignerflow.errors import IntegrationFailureError
from wignerflow.numerics import _series
from wignerflow.numerics.quadrature import integrate_1d

DEFAULT_S_BOUND = 10.0
DEFAULT_Q_BOUND = 10.0
TAIL_CUTOFF_S = 300.0   # |s| beyond which W underflows to exactly 0
TAIL_CUTOFF_Q = 215.0   # |q| cutoff keeping sinh(pi q) finite
IMAG_DISCARD = 1e-10
IMAG_ERROR = 1e-8

_S_SWITCH = 0.4         # |s| below which the s=0 series branch handles D


def _factorials(n: int) -> np.ndarray:
    return np.array([math.factorial(k) for k in range(n + 1)], dtype=float)


def pt_normalization(lam: int) -> float:
    """(2/sqrt(pi)) Gamma(lam + 1/2) / Gamma(lam)^2, reduced to factorials."""
    return (2.0 * math.factorial(2 * lam)
            / (4.0 ** lam * math.factorial(lam) * math.factorial(lam - 1) ** 2))


def pt_psi_norm(lam: int) -> float:
    """Normalization c with psi = c sech^lam, from int sech^(2 lam) ds."""
    return math.sqrt(math.gamma(lam + 0.5) / (math.sqrt(math.pi) * math.gamma(lam)))


# ---------------------------------------------------------------------------
# Poschl-Teller kernel engine (batched over points)
# ---------------------------------------------------------------------------

def _xcsch_q_jet(q0: np.ndarray, order: int) -> np.ndarray:
    """q-series of pi*q/sinh(pi*q) at q0."""
    base = _series.xcsch_jet(np.pi * q0, order)
    return base * np.pi ** np.arange(order + 1)


def _conv_s(t: np.ndarray, r: np.ndarray) -> np.ndarray:
    """Multiply container (N, A+1, M+1) by an s-only series r (N, B+1) or (B+1,)."""
    out = np.zeros_like(t)
    r = np.atleast_2d(r) if r.ndim == 1 else r
    nb = r.shape[-1]
    for b in range(t.shape[1]):
        for p in range(min(b + 1, nb)):
            out[:, b, :] += r[..., p, None] * t[:, b - p, :]
    return out


def _conv_q(t: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Multiply container by a q-only series c (N, M+1)."""
    out = np.zeros_like(t)
    for m in range(t.shape[2]):
        for p in range(m + 1):
            out[:, :, m] += c[:, p, None] * t[:, :, m - p]
    return out


def _sinc_block(s0: np.ndarray, q0: np.ndarray, a_ord: int, m_ord: int) -> np.ndarray:
    """Mixed Taylor block of sinc(2qs) at (s0, q0): shape (N, a_ord+1, m_ord+1)."""
    fact = _factorials(a_ord + m_ord)
    g = _series.sinc_jet(2.0 * q0 * s0, a_ord + m_ord)
    out = np.zeros((s0.size, a_ord + 1, m_ord + 1))
    for b in range(a_ord + 1):
        for m in range(m_ord + 1):
            acc = np.zeros(s0.size)
            for k in range(min(b, m) + 1):
                n = b + m - k
                w = fact[n] / (fact[b - k] * fact[m - k] * fact[k])
                acc += (g[:, n] * w * (2.0 * q0) ** (b - k)
                        * (2.0 * s0) ** (m - k) * 2.0 ** k)
            out[:, b, m] = acc
    return out


def _pt_blocks_away(s0, q0, lam, m_ord):
    """q-jets of D^(lam-1) f and its s-derivative, |s0| > _S_SWITCH."""
    a_ord = lam
    t = _sinc_block(s0, q0, a_ord, m_ord)
    r = _series.xcsch_jet(2.0 * s0, a_ord) * 2.0 ** np.arange(a_ord + 1)
    t = _conv_s(t, r)
    t = _conv_q(t, _xcsch_q_jet(q0, m_ord)) / np.pi

    if lam > 1:
        u = _series.var(2.0 * s0, lam - 1)
        sh, _ = _series.sinh_cosh(u)
        csch = _series.recip(sh) * 2.0 ** np.arange(lam)
        for step in range(lam - 1):
            a_cur = t.shape[1] - 1
            dt = t[:, 1:, :] * np.arange(1, a_cur + 1)[None, :, None]
            t = _conv_s(dt, -csch[:, : a_cur])
    return t[:, 0, :], t[:, 1, :]


def _pt_blocks_central(s0, q0, lam, m_ord):
    """Same as above for |s0| <= _S_SWITCH, via the even series about s = 0."""
    a_big = 30 + 2 * lam
    n = s0.size
    fact = _factorials(2 * (a_big // 2) + 1)
    p = np.zeros((n, a_big + 1, m_ord + 1))
    for j in range(a_big // 2 + 1):
        coef = (-1.0) ** j * 4.0 ** j / fact[2 * j + 1]
        for m in range(min(2 * j, m_ord) + 1):
            p[:, 2 * j, m] = coef * math.comb(2 * j, m) * q0 ** (2 * j - m)
    xc = _series.maclaurin_xcsch(a_big) * 2.0 ** np.arange(a_big + 1)
    t = _conv_s(p, xc)
    t = _conv_q(t, _xcsch_q_jet(q0, m_ord)) / np.pi

    for _ in range(lam - 1):
        a_cur = t.shape[1] - 1
        dt = t[:, 1:, :] * np.arange(1, a_cur + 1)[None, :, None]
        # D f = -(1/2) (f'(s)/s) * [2s/sinh 2s]; f' is odd so the shift is exact
        shifted = dt[:, 1:, :]
        t = _conv_s(shifted, xc[: shifted.shape[1]]) * (-0.5)

    a_cur = t.shape[1] - 1
    powers = s0[:, None] ** np.arange(a_cur + 1)
    dpowers = np.arange(a_cur + 1) * np.concatenate(
        [np.zeros((n, 1)), powers[:, :-1]], axis=1)
    val = np.einsum("nb,nbm->nm", powers, t)
    dval = np.einsum("nb,nbm->nm", dpowers, t)
    return val, dval


def _pt_derivative_block(s, q, lam, dq_max):
    """Derivatives (d/dq)^m W and (d/dq)^m dW/ds for the PT ground state."""
    s = np.atleast_1d(np.asarray(s, dtype=float)).ravel()
    q = np.atleast_1d(np.asarray(q, dtype=float)).ravel()
    w = np.zeros((s.size, dq_max + 1))
    dw = np.zeros((s.size, dq_max + 1))
    live = (np.abs(s) <= TAIL_CUTOFF_S) & (np.abs(q) <= TAIL_CUTOFF_Q)
    central = live & (np.abs(s) <= _S_SWITCH)
    away = live & ~central
    norm = pt_normalization(lam)
    fact = _factorials(dq_max)
    for mask, fn in ((away, _pt_blocks_away), (central, _pt_blocks_central)):
        if np.any(mask):
            val, dval = fn(s[mask], q[mask], lam, dq_max)
            w[mask] = norm * val * fact
            dw[mask] = norm * dval * fact
    return w, dw


# ---------------------------------------------------------------------------
# State classes
# ---------------------------------------------------------------------------

class WignerState:
    """Common interface: exact-to-quadrature W with its q-derivative stack."""

    s_bound: float = DEFAULT_S_BOUND
    q_bound: float = DEFAULT_Q_BOUND

    def derivative_block(self, s, q, dq_max: int):
        """Return (w, dw): arrays of (d/dq)^m W and (d/dq)^m dW/ds, m <= dq_max.

        Output shape is ``np.shape(s) + (dq_max + 1,)`` after broadcasting.
        """
        raise NotImplementedError

    def pure_components(self):
        """List of (weight, psi, dpsi) callables when the state is a convex
        combination of pure states with known wavefunctions, else None."""
        return None

    # -- conveniences ------------------------------------------------------

    def value(self, s, q):
        w, _ = self.derivative_block(s, q, 0)
        out = w[..., 0]
        return float(out) if np.isscalar(s) and np.isscalar(q) else out

    def q_derivatives(self, s, q, max_order: int):
        w, _ = self.derivative_block(s, q, max_order)
        return w

    def s_derivative(self, s, q):
        _, dw = self.derivative_block(s, q, 0)
        out = dw[..., 0]
        return float(out) if np.isscalar(s) and np.isscalar(q) else out

    # -- domain and positivity --------------------------------------------

    def _tail_envelope_s(self, b, poly_degree):
        raise NotImplementedError

    def _tail_envelope_q(self, b, poly_degree):
        raise NotImplementedError

    def bounds_for_tail(self, tol: float, poly_degree: int = 0):
        """Box half-widths pushing the envelope tail estimate below tol."""
        def solve(envelope, start):
            b = start
            while envelope(b, poly_degree) > tol and b < 400.0:
                b += 0.5
            return b
        return (solve(self._tail_envelope_s, self.s_bound),
                solve(self._tail_envelope_q, self.q_bound))

    _w_min_cache: float | None = None

    @property
    def w_min(self) -> float:
        """Measured minimum of W on the default box (121 x 121 scan)."""
        if self._w_min_cache is None:
            ss = np.linspace(-self.s_bound, self.s_bound, 121)
            qq = np.linspace(-self.q_bound, self.q_bound, 121)
            S, Q = np.meshgrid(ss, qq, indexing="ij")
            self._w_min_cache = float(np.min(self.value(S, Q)))
        return self._w_min_cache

    @property
    def is_positive(self) -> bool:
        return self.w_min >= -1e-12


def _reshape_block(w, dw, shape, dq_max):
    out_shape = tuple(shape) + (dq_max + 1,)
    return w.reshape(out_shape), dw.reshape(out_shape)


@dataclass(frozen=True)
class PTGroundState(WignerState):
    """Ground-state Wigner function of the Poschl-Teller well (closed form)."""

    lam: int

    def __post_init__(self):
        if not isinstance(self.lam, (int, np.integer)) or self.lam < 1:
            raise ValueError(f"lam must be a positive integer, got {self.lam!r}")

    def derivative_block(self, s, q, dq_max: int):
        s_arr = np.asarray(s, dtype=float)
        q_arr = np.asarray(q, dtype=float)
        shape = np.broadcast_shapes(s_arr.shape, q_arr.shape)
        s_b = np.broadcast_to(s_arr, shape).ravel()
        q_b = np.broadcast_to(q_arr, shape).ravel()
        w, dw = _pt_derivative_block(s_b, q_b, self.lam, dq_max)
        return _reshape_block(w, dw, shape, dq_max)

    def pure_components(self):
        lam, c = self.lam, pt_psi_norm(self.lam)

        def psi(x):
            return c / np.cosh(np.asarray(x, dtype=float)) ** lam

        def dpsi(x):
            x = np.asarray(x, dtype=float)
            return -lam * np.tanh(x) * c / np.cosh(x) ** lam

        return [(1.0, psi, dpsi)]

    def _tail_envelope_s(self, b, poly_degree):
        return 4.0 * (1.0 + b) ** (1 + poly_degree) * math.exp(-2.0 * self.lam * b)

    def _tail_envelope_q(self, b, poly_degree):
        return 4.0 * (1.0 + b) ** (1 + poly_degree) * math.exp(-math.pi * b)


@dataclass(frozen=True)
class HarmonicGroundState(WignerState):
    """W(s, q) = (1/pi) exp(-w s^2 - q^2/w) for U = w^2 s^2 (w = omega)."""

    omega_sq: float = 1.0

    def __post_init__(self):
        if self.omega_sq <= 0:
            raise ValueError("omega_sq must be positive")

    @property
    def omega(self) -> float:
        return math.sqrt(self.omega_sq)

    def derivative_block(self, s, q, dq_max: int):
        s_arr = np.asarray(s, dtype=float)
        q_arr = np.asarray(q, dtype=float)
        shape = np.broadcast_shapes(s_arr.shape, q_arr.shape)
        s_b = np.broadcast_to(s_arr, shape).ravel()
        q_b = np.broadcast_to(q_arr, shape).ravel()
        om = self.omega
        arg = np.zeros((s_b.size, dq_max + 1))
        arg[:, 0] = -q_b * q_b / om
        if dq_max >= 1:
            arg[:, 1] = -2.0 * q_b / om
        if dq_max >= 2:
            arg[:, 2] = -1.0 / om
        eq = _series.exp(arg)
        pref = np.exp(-om * s_b * s_b) / np.pi
        w = pref[:, None] * eq * _factorials(dq_max)
        dw = (-2.0 * om * s_b)[:, None] * w
        return _reshape_block(w, dw, shape, dq_max)

    def pure_components(self):
        om = self.omega
        c = (om / math.pi) ** 0.25

        def psi(x):
            x = np.asarray(x, dtype=float)
            return c * np.exp(-0.5 * om * x * x)

        def dpsi(x):
            x = np.asarray(x, dtype=float)
            return -om * x * c * np.exp(-0.5 * om * x * x)

        return [(1.0, psi, dpsi)]

    def _tail_envelope_s(self, b, poly_degree):
        return 2.0 * (1.0 + b) ** poly_degree * math.exp(-self.omega * b * b)

    def _tail_envelope_q(self, b, poly_degree):
        return 2.0 * (1.0 + b) ** poly_degree * math.exp(-b * b / self.omega)


# ---------------------------------------------------------------------------
# Sampled wavefunctions and their Weyl transform
# ---------------------------------------------------------------------------

@dataclass
class Wavefunction:
    """A complex wavefunction sampled on a strictly increasing uniform grid.

    Normalized to unit probability at construction; evaluation off the nodes
    uses cubic splines and returns 0 outside the sampled range.
    """

    s: np.ndarray
    values: np.ndarray
    _spline: CubicSpline = field(init=False, repr=False)
    _dspline: CubicSpline = field(init=False, repr=False)

    def __post_init__(self):
        self.s = np.asarray(self.s, dtype=float)
        self.values = np.asarray(self.values, dtype=complex)
        if self.s.ndim != 1 or self.s.size < 8:
            raise ValueError("wavefunction grid needs at least 8 samples")
        steps = np.diff(self.s)
        if np.any(steps <= 0):
            raise ValueError("wavefunction grid must be strictly increasing")
        if not np.allclose(steps, steps[0], rtol=1e-8, atol=1e-12):
            raise ValueError("wavefunction grid must be uniform")
        if self.values.shape != self.s.shape:
            raise ValueError("grid and amplitude arrays must have equal length")
        spline = CubicSpline(self.s, self.values, extrapolate=False)
        norm = integrate_1d(lambda x: np.abs(np.nan_to_num(spline(x))) ** 2,
                            float(self.s[0]), float(self.s[-1]),
                            rel_tol=1e-12, initial_panels=4).value
        self.values = self.values / math.sqrt(norm)
        self._spline = CubicSpline(self.s, self.values, extrapolate=False)
        self._dspline = self._spline.derivative()

    def __call__(self, x):
        return np.nan_to_num(self._spline(np.asarray(x, dtype=float)))

    def derivative(self, x):
        return np.nan_to_num(self._dspline(np.asarray(x, dtype=float)))

    @property
    def support(self):
        return float(self.s[0]), float(self.s[-1])

    @classmethod
    def from_callable(cls, fn, s_min: float, s_max: float, n: int = 4001):
        s = np.linspace(s_min, s_max, n)
        return cls(s, np.asarray(fn(s), dtype=complex))

    @classmethod
    def from_file(cls, path):
        """Load the 3-column text format: s, Re(psi), Im(psi); '#' comments."""
        rows = []
        with open(path) as fh:
            for line in fh:
                line = line.strip()
                if not line or line.startswith("#"):
                    continue
                parts = line.split()
                if len(parts) != 3:
                    raise ValueError(f"expected 3 columns, got {len(parts)}: {line!r}")
                rows.append([float(p) for p in parts])
        data = np.asarray(rows)
        if data.size == 0:
            raise ValueError(f"no samples found in {path}")
        return cls(data[:, 0], data[:, 1] + 1j * data[:, 2])


def _weyl_moment_block(psi, dpsi, support, s, q, dq_max, panels_per_unit=2.5):
    """(d/dq)^m W and its s-derivative by Gauss-Legendre y-quadrature.

    W(s,q) = (1/pi) int dy e^{2iqy} psi(s-y) conj(psi)(s+y); the m-th
    q-derivative inserts (2iy)^m.  Panel density follows the oscillation
    frequency max|2q|.
    """
    lo, hi = support
    half_width = 0.5 * (hi - lo)
    n_pts = s.size
    y_max = half_width
    osc = np.max(np.abs(q)) * y_max if n_pts else 0.0
    panels = max(16, int(panels_per_unit * osc / math.pi) + 16)
    x16, w16 = np.polynomial.legendre.leggauss(16)
    edges = np.linspace(-y_max, y_max, panels + 1)
    h = 0.5 * (edges[1:] - edges[:-1])
    mid = 0.5 * (edges[1:] + edges[:-1])
    y = (mid[:, None] + h[:, None] * x16[None, :]).ravel()
    wts = (h[:, None] * w16[None, :]).ravel()

    pm = psi(s[:, None] - y[None, :])
    pp = np.conj(psi(s[:, None] + y[None, :]))
    phase = np.exp(2j * q[:, None] * y[None, :])
    kern = pm * pp * phase
    dkern = (dpsi(s[:, None] - y[None, :]) * pp
             + pm * np.conj(dpsi(s[:, None] + y[None, :]))) * phase

    w = np.empty((n_pts, dq_max + 1))
    dw = np.empty((n_pts, dq_max + 1))
    moment = np.ones_like(y, dtype=complex)
    for m in range(dq_max + 1):
        vals = (kern * moment[None, :]) @ wts / np.pi
        dvals = (dkern * moment[None, :]) @ wts / np.pi
        if m == 0:
            imag = float(np.max(np.abs(vals.imag))) if n_pts else 0.0
            if imag > IMAG_ERROR:
                raise IntegrationFailureError(
                    f"Weyl transform left imaginary residue {imag:.2e} "
                    "(wavefunction grid too coarse)")
        w[:, m] = vals.real
        dw[:, m] = dvals.real
        moment = moment * (2j * y)
    return w, dw


@dataclass(frozen=True)
class WavefunctionState(WignerState):
    """Wigner state built from a sampled wavefunction via the Weyl transform."""

    wavefunction: Wavefunction

    @property
    def s_bound(self):
        lo, hi = self.wavefunction.support
        return max(abs(lo), abs(hi))

    @property
    def q_bound(self):
        return DEFAULT_Q_BOUND

    def derivative_block(self, s, q, dq_max: int):
        s_arr = np.asarray(s, dtype=float)
        q_arr = np.asarray(q, dtype=float)
        shape = np.broadcast_shapes(s_arr.shape, q_arr.shape)
        s_b = np.broadcast_to(s_arr, shape).ravel()
        q_b = np.broadcast_to(q_arr, shape).ravel()
        w, dw = _weyl_moment_block(self.wavefunction, self.wavefunction.derivative,
                                   self.wavefunction.support, s_b, q_b, dq_max)
        return _reshape_block(w, dw, shape, dq_max)

    def pure_components(self):
        return [(1.0, self.wavefunction, self.wavefunction.derivative)]

    def _tail_envelope_s(self, b, poly_degree):
        return 0.0 if b >= self.s_bound else 1.0

    def _tail_envelope_q(self, b, poly_degree):
        # oscillatory decay in q is set by psi smoothness; keep the default box
        return 0.0 if b >= DEFAULT_Q_BOUND else 1.0


@dataclass(frozen=True)
class ShiftedState(WignerState):
    """W(s, q) = base(s - shift, q): translation covariance of the transform."""

    base: WignerState
    shift: float

    @property
    def s_bound(self):
        return self.base.s_bound + abs(self.shift)

    @property
    def q_bound(self):
        return self.base.q_bound

    def derivative_block(self, s, q, dq_max: int):
        return self.base.derivative_block(np.asarray(s, dtype=float) - self.shift,
                                          q, dq_max)

    def pure_components(self):
        comps = self.base.pure_components()
        if comps is None:
            return None
        out = []
        for wgt, psi, dpsi in comps:
            out.append((wgt,
                        (lambda f: lambda x: f(np.asarray(x) - self.shift))(psi),
                        (lambda f: lambda x: f(np.asarray(x) - self.shift))(dpsi)))
        return out

    def _tail_envelope_s(self, b, poly_degree):
        return self.base._tail_envelope_s(max(b - abs(self.shift), 0.0), poly_degree)

    def _tail_envelope_q(self, b, poly_degree):
        return self.base._tail_envelope_q(b, poly_degree)


@dataclass(frozen=True)
class MixtureState(WignerState):
    """Convex mixture: W = sum_i w_i W_i (density-matrix mixing is linear)."""

    states: tuple[WignerState, ...]
    weights: tuple[float, ...]

    def __post_init__(self):
        if len(self.states) != len(self.weights) or not self.states:
            raise ValueError("states and weights must be equal-length, non-empty")
        if any(w < 0 for w in self.weights):
            raise ValueError("mixture weights must be non-negative")
        total = sum(self.weights)
        if abs(total - 1.0) > 1e-12:
            object.__setattr__(self, "weights",
                               tuple(w / total for w in self.weights))

    @property
    def s_bound(self):
        return max(st.s_bound for st in self.states)

    @property
    def q_bound(self):
        return max(st.q_bound for st in self.states)

    def derivative_block(self, s, q, dq_max: int):
        w = dw = None
        for wgt, st in zip(self.weights, self.states):
            wi, dwi = st.derivative_block(s, q, dq_max)
            w = wgt * wi if w is None else w + wgt * wi
            dw = wgt * dwi if dw is None else dw + wgt * dwi
        return w, dw

    def pure_components(self):
        out = []
        for wgt, st in zip(self.weights, self.states):
            comps = st.pure_components()
            if comps is None:
                return None
            out.extend((wgt * w2, psi, dpsi) for w2, psi, dpsi in comps)
        return out

    def _tail_envelope_s(self, b, poly_degree):
        return max(st._tail_envelope_s(b, poly_degree) for st in self.states)

    def _tail_envelope_q(self, b, poly_degree):
        return max(st._tail_envelope_q(b, poly_degree) for st in self.states)


# ---------------------------------------------------------------------------
# Constructors and the operation-level API
# ---------------------------------------------------------------------------

def pt_ground(lam: int) -> PTGroundState:
    return PTGroundState(lam)


def harmonic_ground(omega_sq: float = 1.0) -> HarmonicGroundState:
    return HarmonicGroundState(omega_sq)


def from_wavefunction(psi: Wavefunction) -> WavefunctionState:
    return WavefunctionState(psi)


def mix(states, weights) -> MixtureState:
    return MixtureState(tuple(states), tuple(float(w) for w in weights))


def shifted(state: WignerState, shift: float) -> ShiftedState:
    return ShiftedState(state, float(shift))


MAX_DQ_ORDER = 16


def _check_dq(dq_order: int):
    if dq_order % 2 != 0:
        raise ValueError(f"dq_order must be even, got {dq_order}")
    if not 0 <= dq_order <= MAX_DQ_ORDER:
        raise ValueError(f"dq_order must be in [0, {MAX_DQ_ORDER}]")


def pt_ground_wigner(lam: int, s, q, dq_order: int = 0):
    """(d/dq)^dq_order of the PT ground-state Wigner function (dq_order even)."""
    _check_dq(dq_order)
    w = PTGroundState(lam).q_derivatives(s, q, dq_order)[..., dq_order]
    return float(w) if np.isscalar(s) and np.isscalar(q) else w


def harmonic_ground_wigner(s, q, dq_order: int = 0):
    """(d/dq)^dq_order of (1/pi) exp(-s^2 - q^2)."""
    _check_dq(dq_order)
    w = HarmonicGroundState(1.0).q_derivatives(s, q, dq_order)[..., dq_order]
    return float(w) if np.isscalar(s) and np.isscalar(q) else w


def wigner_from_wavefunction(psi: Wavefunction, s: float, q: float,
                             rel_tol: float = 1e-10) -> float:
    """Direct Weyl transform W(s, q) = (1/pi) int e^{2iqy} psi(s-y) psi*(s+y) dy.

    Uses adaptive quadrature; raises IntegrationFailureError when the
    imaginary residue exceeds 1e-8 (too-coarse psi grid), and silently
    discards residues below 1e-10.
    """
    lo, hi = psi.support
    y_max = 0.5 * (hi - lo)
    osc_panels = max(1, int(abs(q) * y_max / math.pi))

    def kernel(y):
        return psi(s - y) * np.conj(psi(s + y)) * np.exp(2j * q * y)

    real = integrate_1d(lambda y: kernel(y).real, -y_max, y_max,
                        rel_tol=rel_tol, initial_panels=osc_panels).value / math.pi
    imag = integrate_1d(lambda y: kernel(y).imag, -y_max, y_max,
                        rel_tol=rel_tol, initial_panels=osc_panels).value / math.pi
    if abs(imag) > IMAG_ERROR:
        raise IntegrationFailureError(
            f"imaginary residue {imag:.2e} above 1e-8 at (s={s}, q={q})")
    return float(real)


def marginal_position(state: WignerState, s: float, rel_tol: float = 1e-10) -> float:
    """Position marginal int W(s, q) dq (the probability density |psi|^2)."""
    _, qb = state.bounds_for_tail(1e-12)
    res = integrate_1d(lambda q: state.value(np.full_like(q, s), q),
                       -qb, qb, rel_tol=rel_tol)
    return res.value


def marginal_momentum(state: WignerState, q: float, rel_tol: float = 1e-10) -> float:
    """Momentum marginal int W(s, q) ds (the momentum distribution)."""
    sb, _ = state.bounds_for_tail(1e-12)
    res = integrate_1d(lambda s: state.value(s, np.full_like(s, q)),
                       -sb, sb, rel_tol=rel_tol)
    return res.value


def momentum_wavefunction(psi: Wavefunction, p, rel_tol: float = 1e-10):
    """phi(p) = (2 pi)^(-1/2) int psi(s) e^{i p s} ds.

    The 1/sqrt(2 pi) factor makes |phi(p)|^2 integrate to one, so it matches
    the momentum marginal of the corresponding Wigner state (for real psi;
    complex psi matches at the reflected argument).
    """
    lo, hi = psi.support

    def one(pv: float) -> complex:
        osc_panels = max(1, int(abs(pv) * (hi - lo) / (2 * math.pi)))
        re = integrate_1d(lambda x: (psi(x) * np.exp(1j * pv * x)).real,
                          lo, hi, rel_tol=rel_tol, initial_panels=osc_panels).value
        im = integrate_1d(lambda x: (psi(x) * np.exp(1j * pv * x)).imag,
                          lo, hi, rel_tol=rel_tol, initial_panels=osc_panels).value
        return complex(re, im) / math.sqrt(2.0 * math.pi)

    if np.isscalar(p):
        return one(float(p))
    return np.array([one(float(pv)) for pv in np.asarray(p).ravel()]).reshape(np.shape(p))

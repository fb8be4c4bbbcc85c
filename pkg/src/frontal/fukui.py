"""Surface germs in Fukui's normal form ``f = gamma + a * a2 + b * a3``.

Input data are Taylor coefficients in the usual factorial-scaled sense
(``kappa(s) = sum kappa_i s^i / i!`` and ``b_k(s) = sum b_ik s^i / i!``).
Coefficients not supplied are zero, so every spec describes polynomial
curve data and can be expanded to any truncation order.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from dataclasses import dataclass, field, replace
from enum import Enum

import numpy as np

from .errors import FrameUndefined, SpecValidationError
from .jets import Jet1, Jet2, VecJet, as_scalar, is_zero

FRENET_TORSION_SIGN = -1
"""Sign in the Frenet equation b' = (sign) * tau * n.  Negative controls flip it."""

DEFAULT_ORDER = 6


class SurfaceClass(str, Enum):
    CUSPIDAL_EDGE = "cuspidal_edge"
    CUSPIDAL_CROSS_CAP = "cuspidal_cross_cap"
    CUSPIDAL_S1 = "cuspidal_s1"
    DEGENERATE_CUSPIDAL_S1 = "degenerate_cuspidal_s1"
    UNCLASSIFIED = "unclassified"


def _scalars(values, exact):
    return tuple(as_scalar(v, exact) for v in values)


@dataclass(frozen=True)
class FrontalSpec:
    """Curve invariants and b-series of a Fukui normal form.

    ``kappa``, ``tau`` hold kappa_0, kappa_1, ... ; ``theta`` holds the
    derivatives theta_1, theta_2, ... (theta_0 enters only through
    ``cos0``/``sin0``); ``b[k]`` holds b_0k, b_1k, ... .
    """

    kappa: tuple
    tau: tuple = ()
    cos0: object = 1
    sin0: object = 0
    theta: tuple = ()
    b: dict = field(default_factory=dict)
    order: int = DEFAULT_ORDER
    exact: bool = True

    def __post_init__(self):
        ex = self.exact
        object.__setattr__(self, "kappa", _scalars(self.kappa, ex))
        object.__setattr__(self, "tau", _scalars(self.tau, ex))
        object.__setattr__(self, "theta", _scalars(self.theta, ex))
        object.__setattr__(self, "cos0", as_scalar(self.cos0, ex))
        object.__setattr__(self, "sin0", as_scalar(self.sin0, ex))
        b = {}
        for k, vals in dict(self.b).items():
            k = int(k)
            if k < 3:
                raise SpecValidationError(f"b_{k} is fixed by the normal form; only k >= 3 allowed")
            b[k] = _scalars(vals, ex)
        object.__setattr__(self, "b", dict(sorted(b.items())))
        if self.order < 0:
            raise SpecValidationError("order must be non-negative")
        norm = self.cos0 ** 2 + self.sin0 ** 2
        if ex and norm != 1:
            raise SpecValidationError(f"cos0^2 + sin0^2 = {norm}, expected 1")
        if not ex and abs(norm - 1) > 1e-12:
            raise SpecValidationError(f"cos0^2 + sin0^2 = {norm}, expected 1")

    def with_order(self, order: int) -> "FrontalSpec":
        return replace(self, order=order)

    def to_numeric(self) -> "FrontalSpec":
        if not self.exact:
            return self
        return replace(
            self,
            kappa=tuple(map(float, self.kappa)),
            tau=tuple(map(float, self.tau)),
            theta=tuple(map(float, self.theta)),
            cos0=float(self.cos0),
            sin0=float(self.sin0),
            b={k: tuple(map(float, v)) for k, v in self.b.items()},
            exact=False,
        )

    def _zero(self):
        return as_scalar(0, self.exact)

    def k(self, i: int):
        """kappa_i, the i-th derivative of the curvature at 0."""
        return self.kappa[i] if i < len(self.kappa) else self._zero()

    def tau_(self, i: int):
        return self.tau[i] if i < len(self.tau) else self._zero()

    def th(self, i: int):
        """theta_i for i >= 1."""
        if i < 1:
            raise ValueError("theta_0 is carried by (cos0, sin0)")
        return self.theta[i - 1] if i - 1 < len(self.theta) else self._zero()

    def bij(self, i: int, j: int):
        """b_ij = d^i b_j / ds^i at 0."""
        vals = self.b.get(j, ())
        return vals[i] if i < len(vals) else self._zero()

    @property
    def kappa_t0(self):
        """tau_0 - theta_1, the cusp-directional torsion at the origin."""
        return self.tau_(0) - self.th(1)

    @property
    def kappa_s0(self):
        return self.k(0) * self.sin0

    @property
    def kappa_i0(self):
        return self.k(0) * self.tau_(0) * self.cos0 + self.k(1) * self.sin0

    # Jets of the curve data, all at the spec's order.
    def kappa_jet(self, order=None) -> Jet1:
        return Jet1.from_derivatives(self.kappa, self.order if order is None else order, self.exact)

    def tau_jet(self, order=None) -> Jet1:
        return Jet1.from_derivatives(self.tau, self.order if order is None else order, self.exact)

    def theta_shift_jet(self, order=None) -> Jet1:
        """theta(s) - theta_0."""
        n = self.order if order is None else order
        return Jet1.from_derivatives((0,) + self.theta, n, self.exact)

    def b_jet(self, k: int, order=None) -> Jet1:
        return Jet1.from_derivatives(self.b.get(k, ()), self.order if order is None else order, self.exact)

    def cos_sin_jets(self, order=None) -> tuple[Jet1, Jet1]:
        """cos(theta(s)) and sin(theta(s)) from the rotation of (cos0, sin0)."""
        n = self.order if order is None else order
        delta = self.theta_shift_jet(n)
        cos_d = Jet1.constant_jet(0, n, self.exact)
        sin_d = Jet1.constant_jet(0, n, self.exact)
        power = delta.const_like(1)
        for m in range(n + 1):
            term = power * (as_scalar(1, self.exact) / math.factorial(m))
            if m % 4 == 0:
                cos_d = cos_d + term
            elif m % 4 == 1:
                sin_d = sin_d + term
            elif m % 4 == 2:
                cos_d = cos_d - term
            else:
                sin_d = sin_d - term
            power = power * delta
        c0, s0 = self.cos0, self.sin0
        return cos_d * c0 - sin_d * s0, sin_d * c0 + cos_d * s0


@dataclass(frozen=True)
class SurfaceGerm:
    spec: FrontalSpec
    f: VecJet
    frame: tuple
    gamma: VecJet
    a_series: dict
    a_jet: Jet2
    b_jet: Jet2

    @property
    def order(self) -> int:
        return self.f.order


def _linear_recursion(blocks: list, initial: np.ndarray, order: int, exact: bool) -> list:
    """Taylor coefficients of X' = A X with X(0) = initial.

    ``blocks[k]`` is the 3x3 coefficient matrix of s^k in A(s).
    """
    coeffs = [initial]
    for n in range(order):
        acc = np.dot(blocks[0], coeffs[n])
        for k in range(1, n + 1):
            if k < len(blocks):
                acc = acc + np.dot(blocks[k], coeffs[n - k])
        coeffs.append(acc * (as_scalar(1, exact) / (n + 1)))
    return coeffs


def _rows_as_vecjets(coeffs: list, order: int, exact: bool) -> tuple:
    out = []
    for row in range(3):
        comps = [Jet1([c[row, col] for c in coeffs], order, exact) for col in range(3)]
        out.append(VecJet(*comps))
    return tuple(out)


def _matrix_blocks(entries, order: int, exact: bool) -> list:
    """Split a 3x3 matrix of Jet1 (None meaning zero) into coefficient blocks."""
    blocks = []
    for k in range(order + 1):
        m = np.empty((3, 3), dtype=object) if exact else np.zeros((3, 3))
        for i in range(3):
            for j in range(3):
                e = entries[i][j]
                m[i, j] = as_scalar(0, exact) if e is None else e[k]
        blocks.append(m)
    return blocks


def _identity(exact: bool) -> np.ndarray:
    m = np.empty((3, 3), dtype=object) if exact else np.zeros((3, 3))
    for i in range(3):
        for j in range(3):
            m[i, j] = as_scalar(1 if i == j else 0, exact)
    return m


def frame_matrix(spec: FrontalSpec, order=None) -> tuple:
    """Entries (kappa cos theta, kappa sin theta, tau - theta') of the frame ODE."""
    n = spec.order if order is None else order
    kap = spec.kappa_jet(n)
    cos_t, sin_t = spec.cos_sin_jets(n)
    omega = spec.tau_jet(n) - spec.theta_shift_jet(n + 1).diff()
    return kap * cos_t, kap * sin_t, omega


def solve_frame(spec: FrontalSpec, order=None) -> tuple:
    """The adapted frame (a1, a2, a3) along the singular curve."""
    n = spec.order if order is None else order
    if is_zero(spec.k(0)):
        raise FrameUndefined("kappa_0 = 0: the Frenet frame is not defined")
    alpha, beta, omega = frame_matrix(spec, n)
    entries = [
        [None, alpha, beta],
        [-alpha, None, omega],
        [-beta, -omega, None],
    ]
    ex = spec.exact
    init = np.empty((3, 3), dtype=object) if ex else np.zeros((3, 3))
    c0, s0 = spec.cos0, spec.sin0
    zero, one = as_scalar(0, ex), as_scalar(1, ex)
    rows = [(one, zero, zero), (zero, c0, -s0), (zero, s0, c0)]
    for i, r in enumerate(rows):
        init[i, :] = r
    coeffs = _linear_recursion(_matrix_blocks(entries, n, ex), init, n, ex)
    return _rows_as_vecjets(coeffs, n, ex)


def solve_frenet(spec: FrontalSpec, order=None) -> tuple:
    """Frenet frame (t, n, b) with (t, n, b)(0) = identity."""
    n = spec.order if order is None else order
    kap, tau = spec.kappa_jet(n), spec.tau_jet(n)
    entries = [
        [None, kap, None],
        [-kap, None, tau],
        [None, tau * FRENET_TORSION_SIGN, None],
    ]
    ex = spec.exact
    coeffs = _linear_recursion(_matrix_blocks(entries, n, ex), _identity(ex), n, ex)
    return _rows_as_vecjets(coeffs, n, ex)


def solve_gamma(spec: FrontalSpec, order=None) -> VecJet:
    """Arc-length singular curve gamma(s) = integral of the Frenet tangent."""
    n = spec.order if order is None else order
    if n == 0:
        return VecJet(*(Jet1.zero(0, spec.exact) for _ in range(3)))
    tangent = solve_frenet(spec, n - 1)[0]
    return tangent.map(lambda c: c.integrate())


def derive_a_series(spec: FrontalSpec, order=None) -> dict:
    """a_k(s) for 2 <= k <= order from <f_t, f_t> = t^2.

    Write the a2- and a3-components of f_t as sum P_m t^m and sum Q_m t^m,
    with P_m = a_{m+1}/m! and Q_m = b_{m+1}/m!.  Matching t^(r+1) gives
    2 P_1 P_r + sum_{i=2}^{r-1} (P_i P_{r+1-i} + Q_i Q_{r+1-i}) = 0 with P_1 = 1.
    """
    n = spec.order if order is None else order
    ex = spec.exact
    if any(k > n for k in spec.b):
        warnings.warn(f"b_k with k > {n} do not affect the {n}-jet and are ignored", stacklevel=2)
    zero = Jet1.zero(n, ex)
    P = {1: Jet1.constant_jet(1, n, ex)}
    Q = {1: zero}
    for m in range(2, n):
        Q[m] = spec.b_jet(m + 1, n) * (as_scalar(1, ex) / math.factorial(m))
    for r in range(2, n):
        acc = zero
        for i in range(2, r):
            acc = acc + P[i] * P[r + 1 - i] + Q[i] * Q[r + 1 - i]
        P[r] = acc * as_scalar(Fraction(-1, 2), ex)
    series = {2: Jet1.constant_jet(1, n, ex)}
    for r in range(2, n):
        series[r + 1] = P[r] * math.factorial(r)
    return {k: v for k, v in series.items() if k <= n}


def _t_series(coeff_jets: dict, n: int, exact: bool) -> Jet2:
    """sum_k c_k(s) t^k / k! as a Jet2 of order n."""
    out = Jet2.zero(n, exact)
    for k, c in coeff_jets.items():
        if k > n:
            continue
        term = c.truncate(n - k).lift("s").mul_t(k) * (as_scalar(1, exact) / math.factorial(k))
        out = out + term
    return out


def assemble(spec: FrontalSpec, order=None) -> SurfaceGerm:
    """f = gamma + a(s,t) a2(s) + b(s,t) a3(s) as a Jet2-valued vector."""
    n = spec.order if order is None else order
    ex = spec.exact
    frame = solve_frame(spec, n)
    gamma = solve_gamma(spec, n)
    a_series = derive_a_series(spec, n)
    a_jet = _t_series(a_series, n, ex)
    b_jet = _t_series({k: spec.b_jet(k, n) for k in spec.b if k <= n}, n, ex)
    a2 = frame[1].lift("s")
    a3 = frame[2].lift("s")
    f = gamma.lift("s") + a2 * a_jet + a3 * b_jet
    return SurfaceGerm(spec, f, frame, gamma, a_series, a_jet, b_jet)


def classify_surface(spec: FrontalSpec) -> SurfaceClass:
    """Cuspidal edge / cross cap / S1 from b_03, b_13, b_23, b_05."""
    if not is_zero(spec.bij(0, 3)):
        return SurfaceClass.CUSPIDAL_EDGE
    if not is_zero(spec.bij(1, 3)):
        return SurfaceClass.CUSPIDAL_CROSS_CAP
    if not is_zero(spec.bij(2, 3)) and not is_zero(spec.bij(0, 5)):
        return SurfaceClass.CUSPIDAL_S1
    return SurfaceClass.UNCLASSIFIED

"""Classification of function germs g(u, v) at a critical point.

Criteria are phrased with the derivative coefficients c_ij = i! j! [u^i v^j] g
(``Jet2.scaled``).  Corank-1 germs are brought to c20 = c11 = 0, c02 != 0 by a
linear change; the reduction to ``c02 v^2 / 2 + h(u)`` is computed explicitly
by ``reduce_corank1`` and serves as the oracle for the closed-form tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import NonCriticalGerm, OrderTooLow, PreconditionError
from .jets import Jet1, Jet2, as_scalar

ZERO_TOL = 1e-9
"""Relative zero tolerance used in numeric mode."""


class Family(str, Enum):
    REGULAR = "Regular"
    A1 = "A1"
    A2 = "A2"
    A3 = "A3"
    A4 = "A4"
    A5 = "A5"
    AT_LEAST_A6 = "AtLeastA6"
    D4 = "D4"
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"
    CORANK_TWO_OTHER = "CorankTwoOther"
    BEYOND_SIMPLE = "BeyondSimple"


A_FAMILIES = {1: Family.A1, 2: Family.A2, 3: Family.A3, 4: Family.A4, 5: Family.A5}


@dataclass(frozen=True)
class GermClass:
    family: Family
    sign: int | None = None
    kernel_direction: tuple | None = None
    witness: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        if self.sign is None:
            return self.family.value
        return f"{self.family.value}{'+' if self.sign > 0 else '-'}"

    def __str__(self):
        return self.label


@dataclass(frozen=True)
class CorankData:
    corank: int
    hessian: tuple
    kernel_direction: tuple | None = None
    substitution: tuple | None = None
    """(phi1, phi2) bringing the kernel to the u-axis, as linear Jet2s."""


def _sign(x) -> int:
    return 1 if x > 0 else -1


class _Zero:
    """Zero test with an absolute scale in numeric mode."""

    def __init__(self, g: Jet2, tol: float | None):
        self.exact = g.exact
        scale = max(g.max_abs(), 1.0)
        self.tol = 0.0 if g.exact else (ZERO_TOL if tol is None else tol) * scale

    def __call__(self, x, scale: float = 1.0) -> bool:
        if self.exact:
            return x == 0
        return abs(x) <= self.tol * max(scale, 1.0)


def _need(g: Jet2, order: int, what: str):
    if g.order < order:
        raise OrderTooLow(f"order too low for {what} test (need {order}, have {g.order})")


def linear_substitution(g: Jet2, m11, m12, m21, m22) -> Jet2:
    """g(m11 u + m12 v, m21 u + m22 v)."""
    n, ex = g.order, g.exact
    u, v = Jet2.s(n, ex), Jet2.t(n, ex)
    return g.compose(u * m11 + v * m12, u * m21 + v * m22)


def corank(g: Jet2, tol: float | None = None) -> CorankData:
    """Rank defect of the Hessian; for corank 1 also a normalizing substitution."""
    z = _Zero(g, tol)
    if g.order < 2:
        raise OrderTooLow("order too low for the Hessian")
    if not (z(g.coeff(1, 0)) and z(g.coeff(0, 1))):
        raise NonCriticalGerm("linear part is nonzero")
    c20, c11, c02 = g.scaled(2, 0), g.scaled(1, 1), g.scaled(0, 2)
    hess = (c20, c11, c02)
    det = c20 * c02 - c11 * c11
    if not z(det, max(abs(c20), abs(c02), abs(c11)) ** 2):
        return CorankData(0, hess)
    if z(c20) and z(c11) and z(c02):
        return CorankData(2, hess)
    one, zero = as_scalar(1, g.exact), as_scalar(0, g.exact)
    if z(c20) and z(c11):
        k = (one, zero)
    else:
        k = (-c11, c20)
    w = (zero, one) if not z(k[0]) else (one, zero)
    # (u, v) = k * u' + w * v'
    return CorankData(1, hess, k, (k[0], w[0], k[1], w[1]))


def normalize_corank1(g: Jet2, tol: float | None = None) -> tuple[Jet2, tuple]:
    data = corank(g, tol)
    if data.corank != 1:
        raise PreconditionError(f"germ has corank {data.corank}, expected 1")
    return linear_substitution(g, *data.substitution), data.kernel_direction


def a_discriminants(g: Jet2) -> dict:
    """The quantities deciding A2..A5 for a germ with c20 = c11 = 0.

    ``h3..h6`` are the u^k monomial coefficients of the reduced germ
    c02 v^2/2 + h(u) written as closed forms in the c_ij.
    """
    c = g.scaled
    n = g.order
    out = {"c02": c(0, 2)}
    c02 = c(0, 2)
    if n >= 3:
        out["c30"] = c(3, 0)
    if n >= 4:
        out["delta3"] = c02 * c(4, 0) - 3 * c(2, 1) ** 2
    if n >= 5:
        out["delta4"] = c02 ** 2 * c(5, 0) - 10 * c02 * c(2, 1) * c(3, 1) + 15 * c(1, 2) * c(2, 1) ** 2
    if n >= 6:
        out["delta5"] = a5_quantity(g)
    return out


def a5_quantity_printed(g: Jet2):
    """The A5 numerator as it is usually displayed (omits c60)."""
    c = g.scaled
    c02, c21, c12, c31 = c(0, 2), c(2, 1), c(1, 2), c(3, 1)
    return (
        c02 ** 2 * (3 * c21 * c(4, 1) + 2 * c31 ** 2)
        - 3 * c02 * c21 * (4 * c12 * c31 + 3 * c21 * c(2, 2))
        + 3 * c21 ** 2 * (c(0, 3) * c21 + 6 * c12 ** 2)
    )


def a5_quantity(g: Jet2):
    """720 c02^3 times the u^6 coefficient of the reduced germ, valid when c30 = 0."""
    c02 = g.scaled(0, 2)
    return c02 ** 3 * g.scaled(6, 0) - 5 * a5_quantity_printed(g)


def classify_Ak(g: Jet2, tol: float | None = None, kernel_direction=None) -> GermClass:
    """A2..A5 (or AtLeastA6) for a germ normalized to c20 = c11 = 0, c02 != 0."""
    z = _Zero(g, tol)
    _need(g, 3, "A2")
    c02 = g.scaled(0, 2)
    if not (z(g.scaled(2, 0)) and z(g.scaled(1, 1))) or z(c02):
        raise PreconditionError("classify_Ak needs c20 = c11 = 0 and c02 != 0")
    d = {"c02": c02, "c30": g.scaled(3, 0)}
    if not z(d["c30"]):
        return GermClass(Family.A2, _sign(c02), kernel_direction, d)
    for k, key, need in ((3, "delta3", 4), (4, "delta4", 5), (5, "delta5", 6)):
        _need(g, need, f"A{k}")
        d.update(a_discriminants(g.truncate(need)))
        value = d[key]
        if not z(value, max(abs(c02), 1.0) ** (k - 2)):
            if k % 2 == 1:
                # value = c02^(k-2) h_(k+1) up to a positive factor
                sign = _sign(value)
            else:
                sign = _sign(c02)
            return GermClass(A_FAMILIES[k], sign, kernel_direction, d)
    return GermClass(Family.AT_LEAST_A6, _sign(c02), kernel_direction, d)


def d4_determinant(g: Jet2):
    """Resultant of the two partial derivatives of the cubic part."""
    c = g.scaled
    c30, c21, c12, c03 = c(3, 0), c(2, 1), c(1, 2), c(0, 3)
    rows = [
        [c30, 2 * c21, c12, 0],
        [0, c30, 2 * c21, c12],
        [c21, 2 * c12, c03, 0],
        [0, c21, 2 * c12, c03],
    ]
    return _det4(rows)


def _det4(m):
    def det3(a):
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )

    total = 0
    for j in range(4):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        total += (-1) ** j * m[0][j] * det3(minor)
    return total


def cubic_discriminant(g: Jet2):
    """Discriminant of the cubic part a u^3 + b u^2 v + c u v^2 + d v^3 (monomial)."""
    a, b, c, d = (g.coeff(3 - k, k) for k in range(4))
    return b * b * c * c - 4 * a * c ** 3 - 4 * b ** 3 * d - 27 * a * a * d * d + 18 * a * b * c * d


def classify_D4(g: Jet2, tol: float | None = None) -> GermClass:
    z = _Zero(g, tol)
    _need(g, 3, "D4")
    if not all(z(g.scaled(*ij)) for ij in ((2, 0), (1, 1), (0, 2))):
        raise PreconditionError("classify_D4 needs a vanishing Hessian")
    det = d4_determinant(g)
    disc = cubic_discriminant(g)
    w = {"d4_determinant": det, "cubic_discriminant": disc}
    scale = max(abs(g.scaled(3 - k, k)) for k in range(4)) or 1.0
    if z(det, scale ** 6):
        return GermClass(Family.CORANK_TWO_OTHER, None, None, w)
    return GermClass(Family.D4, 1 if disc < 0 else -1, None, w)


def _triple_root_substitution(g: Jet2, z) -> tuple | None:
    """Linear map putting a cube cubic part into the form c u^3; None if not a cube."""
    a3, a2, a1, a0 = (g.coeff(3 - k, k) for k in range(4))
    one, zero = as_scalar(1, g.exact), as_scalar(0, g.exact)
    if not z(a3):
        r = -a2 / (3 * a3)
        if z(a1 - 3 * a3 * r * r) and z(a0 + a3 * r ** 3):
            return (one, r, zero, one)
        return None
    if z(a2) and z(a1) and not z(a0):
        return (zero, one, one, zero)
    return None


def classify_E(g: Jet2, tol: float | None = None) -> GermClass:
    """E6 / E7 / E8 after moving the triple root of the cubic to the v-axis."""
    z = _Zero(g, tol)
    _need(g, 4, "E6")
    sub = _triple_root_substitution(g, z)
    if sub is None:
        return classify_D4(g, tol)
    h = linear_substitution(g, *sub)
    c = h.scaled
    w = {"c30": c(3, 0), "c04": c(0, 4), "c13": c(1, 3)}
    if not z(w["c04"]):
        return GermClass(Family.E6, _sign(w["c04"]), None, w)
    if not z(w["c13"]):
        return GermClass(Family.E7, None, None, w)
    _need(g, 5, "E8")
    w["c05"] = c(0, 5)
    if not z(w["c05"]):
        # u^2 v^2 has weight 16 > 15, so c22 cannot affect E8; flagged for the record
        w["multiplicity_unverified"] = z(c(2, 2))
        return GermClass(Family.E8, None, None, w)
    return GermClass(Family.BEYOND_SIMPLE, None, None, w)


def classify(g: Jet2, tol: float | None = None) -> GermClass:
    """Full dispatch on the germ's 1-jet, Hessian rank and cubic part."""
    z = _Zero(g, tol)
    if g.order < 1:
        raise OrderTooLow("order too low / beyond scope: need at least the linear part")
    if not (z(g.coeff(1, 0)) and z(g.coeff(0, 1))):
        return GermClass(Family.REGULAR, None, None, {"gradient": (g.coeff(1, 0), g.coeff(0, 1))})
    data = corank(g, tol)
    if data.corank == 0:
        c20, c11, c02 = data.hessian
        det = c20 * c02 - c11 * c11
        return GermClass(Family.A1, _sign(det), None, {"hessian_det": det})
    if data.corank == 1:
        h = linear_substitution(g, *data.substitution)
        return classify_Ak(h, tol, data.kernel_direction)
    _need(g, 3, "corank-2")
    if all(z(g.coeff(3 - k, k)) for k in range(4)):
        return GermClass(Family.BEYOND_SIMPLE, None, None, {"cubic": 0})
    d4 = classify_D4(g, tol)
    if d4.family is Family.D4:
        return d4
    return classify_E(g, tol)


def reduce_corank1(g: Jet2) -> tuple[Jet2, Jet2]:
    """Coordinate change v -> phi2(u, v) with g(u, phi2) = c02 v^2/2 + h(u).

    The jet is treated as a polynomial germ, so the result keeps order N.
    Construction: V(u) solves g_v(u, V) = 0; then g(u, V + w) = h(u) + w^2 Q
    with Q(0) = c02/2, and v = w sqrt(2Q/c02) is inverted for w by Lagrange
    inversion, w = sum_m v^m/m [w^(m-1)] (c02/(2Q))^(m/2).
    """
    z = _Zero(g, None)
    n, ex = g.order, g.exact
    c02 = g.scaled(0, 2)
    if not (z(g.scaled(2, 0)) and z(g.scaled(1, 1))) or z(c02):
        raise PreconditionError("reduce_corank1 needs c20 = c11 = 0 and c02 != 0")
    if not (z(g.coeff(1, 0)) and z(g.coeff(0, 1))):
        raise NonCriticalGerm("linear part is nonzero")
    one = as_scalar(1, ex)
    # g = sum_j cols[j](u) v^j, each column a polynomial in u
    cols = [g.t_coefficient(j).pad(n) for j in range(n + 1)]

    def horner(cs, x):
        acc = cs[-1]
        for c in reversed(cs[:-1]):
            acc = acc * x + c
        return acc

    slope = [cols[j] * j for j in range(1, n + 1)]
    V = Jet1.zero(n, ex)
    for _ in range(n):
        V = V - horner(slope, V) * (one / c02)
    powers = [V.const_like(1)]
    for _ in range(n):
        powers.append(powers[-1] * V)
    h = sum((cols[j] * powers[j] for j in range(1, n + 1)), cols[0])

    # Q(u, w) = (g(u, V + w) - h(u)) / w^2 from the Taylor shift in v
    terms = {}
    for k in range(2, n + 1):
        qk = sum((cols[j] * powers[j - k] * math.comb(j, k) for j in range(k + 1, n + 1)), cols[k])
        for i in range(n - k + 3):
            terms[i, k - 2] = qk[i]
    P = (Jet2(terms, n, ex) * (2 * one / c02)).sqrt_recip()

    w_terms = {}
    Pm = P.const_like(1)
    for m in range(1, n + 1):
        Pm = Pm * P
        for i in range(n - m + 1):
            w_terms[i, m] = Pm.coeff(i, m - 1) / m
    u = Jet2.s(n, ex)
    phi2 = V.lift("s", n) + Jet2(w_terms, n, ex)
    return phi2, g.compose(u, phi2)


def _only_u(j: Jet2) -> Jet2:
    """Drop every monomial containing v (the jet should not have any)."""
    out = Jet2.zero(j.order, j.exact)
    for i in range(j.order + 1):
        out = out + Jet2({(i, 0): j.coeff(i, 0)}, j.order, j.exact)
    return out


def classify_by_reduction(g: Jet2, reduced: Jet2 | None = None) -> GermClass:
    """Read A_k off the pure-u part of the reduced germ (computed unless given)."""
    red = reduce_corank1(g)[1] if reduced is None else reduced
    c02 = g.scaled(0, 2)
    w = {"reduced_u": [red.coeff(k, 0) for k in range(3, min(red.order, 6) + 1)]}
    for k in range(3, min(red.order, 6) + 1):
        hk = red.coeff(k, 0)
        if hk != 0:
            idx = k - 1
            if idx % 2 == 1:
                sign = _sign(c02 * hk)
            else:
                sign = _sign(c02)
            return GermClass(A_FAMILIES[idx], sign, None, w)
    if red.order < 6:
        raise OrderTooLow("order too low for A5 test")
    return GermClass(Family.AT_LEAST_A6, _sign(c02), None, w)

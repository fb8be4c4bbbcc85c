"""Distance squared unfolding Phi = |p - f(s,t)|^2 - eps^2 of a Fukui germ.

Phi is handled as a Jet2 in (s, t) after substituting a concrete probe
p = (x, y, z); coordinates are those of the Frenet frame of the singular
curve at the origin, so nu(0) = (0, sin0, cos0).  Closed-form coefficients
below are monomial coefficients of s^i t^j.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from . import germlab
from .conventions import EpsConvention, as_convention, c2, c2_coefficients, normal_probe
from .errors import InternalInconsistency, TableInapplicable
from .fukui import FrontalSpec, SurfaceGerm, assemble
from .germlab import Family, GermClass
from .jets import Jet2, as_scalar, rational_sqrt

DSU_ORDER = 6

# Entries of the commonly printed coefficient list that were recomputed.
CORRECTED_ENTRIES = {
    (3, 0): "sign of the kappa_0 tau_0 z term",
    (4, 0): "sign of the kappa_1 tau_0 z term",
    (5, 0): "kappa_0 kappa_1 vs kappa_0^2 kappa_1 in the y and constant terms",
    (3, 2): "missing from the list",
    (2, 3): "missing from the list",
}


@dataclass(frozen=True)
class PhiGerm:
    jet: Jet2
    probe: tuple

    def coeff(self, i: int, j: int):
        return self.jet.coeff(i, j)

    def germ(self) -> Jet2:
        """Phi minus its constant term, i.e. the function germ being classified."""
        return self.jet - self.jet.const_like(self.jet.constant)

    def truncate(self, n: int) -> "PhiGerm":
        return PhiGerm(self.jet.truncate(n), self.probe)


def _probe(spec_or_exact, probe):
    exact = spec_or_exact if isinstance(spec_or_exact, bool) else spec_or_exact.exact
    if len(probe) == 3:
        probe = (*probe, 0)
    return tuple(as_scalar(v, exact) for v in probe)


def phi_direct(g: SurfaceGerm, probe) -> PhiGerm:
    """|p - f|^2 - eps^2 expanded from the assembled surface."""
    x, y, z, eps = _probe(g.spec.exact, probe)
    out = None
    for p, fc in zip((x, y, z), g.f):
        d = fc.const_like(p) - fc
        out = d * d if out is None else out + d * d
    return PhiGerm(out - out.const_like(eps * eps), (x, y, z, eps))


def phi_table(spec: FrontalSpec, probe, verbatim: bool = False) -> PhiGerm:
    """Phi through total order 5 from closed-form coefficients.

    ``verbatim=True`` reproduces the commonly printed list unchanged
    (including its misprints and without the s^3 t^2, s^2 t^3 entries).
    """
    if spec.bij(0, 3) != 0:
        raise TableInapplicable("closed-form table assumes b_03 = 0")
    ex = spec.exact
    x, y, z, eps = _probe(spec, probe)
    one = as_scalar(1, ex)
    k, tau, th = spec.k, spec.tau_, spec.th
    c0, s0 = spec.cos0, spec.sin0
    k0, k1, k2, k3 = k(0), k(1), k(2), k(3)
    t0, t1, t2 = tau(0), tau(1), tau(2)
    th1, th2 = th(1), th(2)
    w0, w1, w2 = t0 - th1, t1 - th2, t2 - th(3)
    b13, b23 = spec.bij(1, 3), spec.bij(2, 3)
    b04, b14, b05 = spec.bij(0, 4), spec.bij(1, 4), spec.bij(0, 5)
    normal = s0 * y + c0 * z

    def fr(p, q):
        return one * p / q

    c = {
        (0, 0): -eps * eps + x * x + y * y + z * z,
        (1, 0): -2 * x,
        (2, 0): 1 - k0 * y,
        (0, 2): -c0 * y + s0 * z,
        (1, 2): k0 * c0 * x - w0 * normal,
        (1, 3): -fr(1, 3) * b13 * normal,
        (0, 4): -fr(1, 12) * b04 * normal + fr(1, 4),
        (0, 5): -fr(1, 60) * b05 * normal,
        (2, 2): fr(1, 2) * (k0 * (t0 - 2 * th1) * s0 + k1 * c0) * x
        - fr(1, 2) * (w0 ** 2 * s0 + w1 * c0) * z
        - fr(1, 2) * (w1 * s0 - (w0 ** 2 + k0 ** 2) * c0) * y
        - fr(1, 2) * k0 * c0,
        (1, 4): fr(1, 12) * (
            b04 * k0 * s0 * x + (b04 * w0 * c0 - b14 * s0) * y - (b04 * w0 * s0 + b14 * c0) * z
        ),
    }
    if verbatim:
        c[(3, 0)] = fr(1, 3) * (k0 ** 2 * x - k1 * y + k0 * t0 * z)
        c[(4, 0)] = (
            fr(1, 4) * k0 * k1 * x + fr(1, 12) * (k0 * t0 ** 2 - k2 + k0 ** 3) * y
            - fr(1, 12) * (k0 * t1 - 2 * k1 * t0) * z - fr(1, 12) * k0 ** 2
        )
        c[(5, 0)] = (
            -fr(1, 60) * (k0 ** 2 * t0 ** 2 - 4 * k0 * k2 - 3 * k1 ** 2 + k0 ** 4) * x
            + fr(1, 60) * (3 * k0 * t0 * t1 + 3 * k1 * t0 ** 2 - k3 + 6 * k0 * k1) * y
            - fr(1, 60) * (k0 * t2 + 3 * k1 * t1 - k0 * t0 ** 3 + 3 * k2 * t0 - k0 ** 3 * t0) * z
            - fr(1, 12) * k0 ** 2 * k1
        )
    else:
        c[(3, 0)] = fr(1, 3) * (k0 ** 2 * x - k1 * y - k0 * t0 * z)
        c[(4, 0)] = (
            fr(1, 4) * k0 * k1 * x + fr(1, 12) * (k0 * t0 ** 2 - k2 + k0 ** 3) * y
            - fr(1, 12) * (k0 * t1 + 2 * k1 * t0) * z - fr(1, 12) * k0 ** 2
        )
        c[(5, 0)] = (
            -fr(1, 60) * (k0 ** 2 * t0 ** 2 - 4 * k0 * k2 - 3 * k1 ** 2 + k0 ** 4) * x
            + fr(1, 60) * (3 * k0 * t0 * t1 + 3 * k1 * t0 ** 2 - k3 + 6 * k0 ** 2 * k1) * y
            - fr(1, 60) * (k0 * t2 + 3 * k1 * t1 - k0 * t0 ** 3 + 3 * k2 * t0 - k0 ** 3 * t0) * z
            - fr(1, 12) * k0 * k1
        )
        c[(3, 2)] = fr(1, 6) * (
            (c0 * (k2 - k0 ** 3 - k0 * th1 ** 2 + k0 * th1 * w0 - k0 * w0 ** 2)
             + s0 * (2 * k0 * w1 - k0 * th2 + k1 * w0 - 2 * k1 * th1)) * x
            + (3 * c0 * (k0 * k1 + w0 * w1) + s0 * (k0 ** 2 * (w0 - 2 * th1) + w0 ** 3 - w2)) * y
            + (c0 * (k0 ** 2 * (th1 + w0) + w0 ** 3 - w2) - 3 * s0 * w0 * w1) * z
            - 2 * c0 * k1 - k0 * s0 * (w0 - 2 * th1)
        )
        c[(2, 3)] = (
            fr(1, 3) * b13 * k0 * s0 * x
            + fr(1, 6) * (2 * b13 * c0 * w0 - b23 * s0) * y
            - fr(1, 6) * (2 * b13 * s0 * w0 + b23 * c0) * z
        )
    return PhiGerm(Jet2(c, 5, ex), (x, y, z, eps))


# ---------------------------------------------------------------------------
# Classification of Phi at a probe point


@dataclass(frozen=True)
class DsuClass:
    germ_class: GermClass
    superscript: str | None
    clause: str
    witness: dict = field(default_factory=dict)
    within_hypotheses: bool = True
    library_class: GermClass | None = None

    @property
    def family(self) -> Family:
        return self.germ_class.family

    @property
    def label(self) -> str:
        base = self.germ_class.family.value
        if self.superscript:
            base += "^" + self.superscript
        if self.germ_class.sign is not None:
            base += "+" if self.germ_class.sign > 0 else "-"
        return base

    def __str__(self):
        return self.label


_A_ORDER = [Family.A1, Family.A2, Family.A3, Family.A4, Family.A5, Family.AT_LEAST_A6]


def _at_least(family: Family, floor: Family) -> bool:
    return family in _A_ORDER and _A_ORDER.index(family) >= _A_ORDER.index(floor)


def _superscript(cls: GermClass) -> str | None:
    k = cls.kernel_direction
    if k is None:
        return None
    if k[1] == 0:
        return "s"
    if k[0] == 0:
        return "t"
    return None


def _zero_test(spec: FrontalSpec):
    if spec.exact:
        return lambda v: v == 0
    return lambda v: abs(v) <= 1e-9


def _closed_form_class(spec: FrontalSpec, x, y, z):
    """(family, superscript, clause, at_least, witness) from the closed-form conditions.

    Returns None when the probe or the spec is outside their hypotheses.
    """
    zero = _zero_test(spec)
    if not zero(spec.bij(0, 3)):
        return None
    k0, k1, k2 = spec.k(0), spec.k(1), spec.k(2)
    t0, t1 = spec.tau_(0), spec.tau_(1)
    c0, s0 = spec.cos0, spec.sin0
    if not zero(x):
        return Family.REGULAR, None, "linear term -2x", False, {"x": x}
    n = 1 - k0 * y
    m = -c0 * y + s0 * z
    w = {"s2": n, "t2": m}
    if not zero(n) and not zero(m):
        return Family.A1, None, "A1: q != 1/kappa_0 and -q cos0 + r sin0 != 0", False, w
    if zero(n) and not zero(m):
        if zero(t0):
            return None
        cubic = k1 + k0 ** 2 * t0 * z
        w["cubic"] = cubic
        if not zero(cubic):
            return Family.A2, "s", "A2s: r != -kappa_1/(kappa_0^2 tau_0)", False, w
        quartic = k0 ** 2 * t0 ** 3 + k0 * (k1 * t1 - k2 * t0) + 2 * k1 ** 2 * t0
        w["quartic"] = quartic
        if not zero(quartic):
            return Family.A3, "s", "A3s: quartic condition", False, w
        return Family.A4, "s", "A4s or worse", True, w
    mu = s0 * y + c0 * z
    kt, ks = spec.kappa_t0, spec.kappa_s0
    if not zero(n) and zero(m):
        value = c2(spec, -mu)
        w.update(mu=mu, C2=value)
        if not zero(value):
            return Family.A3, "t", "A3t: C2 != 0", False, w
        b13, b05 = spec.bij(1, 3), spec.bij(0, 5)
        lin = (b13 * kt - b05 / 10 * ks) * mu + b05 / 10
        w["a5_linear"] = lin
        if not zero(lin):
            return Family.A4, "t", "A4t: C2 = 0 and linear condition != 0", False, w
        return Family.A5, "t", "A5t or worse", True, w
    ki = spec.kappa_i0
    b04, b13, b05 = spec.bij(0, 4), spec.bij(1, 3), spec.bij(0, 5)
    w.update(kappa_t=kt, kappa_i=ki)
    if zero(ki):
        fam = Family.CORANK_TWO_OTHER if not zero(kt) else Family.BEYOND_SIMPLE
        return fam, None, "corank 2 with degenerate cubic", False, w
    if not zero(kt):
        return Family.D4, None, "D4: tau_0 - theta_1 != 0, kappa_i != 0", False, w
    if not zero(b04 / 3 - ks):
        return Family.E6, None, "E6: b04/3 != kappa_s", False, w
    if not zero(b13):
        return Family.E7, None, "E7: b04/3 = kappa_s, b13 != 0", False, w
    if not zero(b05):
        return Family.E8, None, "E8: b13 = 0, b05 != 0", False, w
    return Family.BEYOND_SIMPLE, None, "beyond E8", False, w


def classify_dsu(spec: FrontalSpec, probe, order: int | None = None) -> DsuClass:
    """Singularity of Phi(., ., p) at the origin.

    The closed-form conditions decide the class; germlab on the directly
    expanded Phi must agree, otherwise InternalInconsistency is raised.
    """
    n = max(spec.order, DSU_ORDER) if order is None else order
    x, y, z, eps = _probe(spec, probe)
    phi = phi_direct(assemble(spec, n), (x, y, z, eps))
    lib = germlab.classify(phi.germ())
    lib_sup = _superscript(lib)
    closed = _closed_form_class(spec, x, y, z)
    if closed is None:
        return DsuClass(lib, lib_sup, "outside closed-form hypotheses", {}, False, lib)
    family, sup, clause, at_least, w = closed
    if at_least:
        ok = _at_least(lib.family, family)
    else:
        ok = lib.family is family
    if ok and sup is not None and lib_sup is not None:
        ok = sup == lib_sup
    if not ok:
        raise InternalInconsistency(
            f"closed-form class {family.value}{sup or ''} disagrees with expansion {lib.label}"
        )
    cls = lib if not at_least else GermClass(lib.family, lib.sign, lib.kernel_direction, lib.witness)
    return DsuClass(cls, sup if sup is not None else lib_sup, clause, w, True, lib)


def classify_at_distance(spec: FrontalSpec, eps, convention=EpsConvention.CANONICAL) -> DsuClass:
    """classify_dsu at the normal-line probe of a parallel at distance eps."""
    return classify_dsu(spec, normal_probe(spec, eps, convention))


# ---------------------------------------------------------------------------
# Degeneration distances


class CrossCapType(str, Enum):
    ELLIPTIC = "Elliptic"
    PARABOLIC = "Parabolic"
    HYPERBOLIC = "Hyperbolic"


@dataclass(frozen=True)
class BifurcationReport:
    type: CrossCapType
    convention: EpsConvention
    c2_coefficients: tuple
    c2_roots: tuple
    d_family_root: object
    a5_condition: object
    a5_root: object
    a5_order_sign: int | None
    ordering: tuple
    adjacency: tuple
    root_between: bool | None
    exact_roots: bool


def _quadratic_roots(coeffs: tuple, exact: bool):
    c, b, a = coeffs
    if a == 0:
        if b == 0:
            return (), True
        return (-c / b,), True
    disc = b * b - 4 * a * c
    if disc < 0:
        return (), True
    root = rational_sqrt(disc) if exact else None
    if root is not None:
        r1, r2 = (-b - root) / (2 * a), (-b + root) / (2 * a)
        return tuple(sorted({r1, r2})), True
    sq = math.sqrt(float(disc))
    fa, fb = float(a), float(b)
    roots = sorted({(-fb - sq) / (2 * fa), (-fb + sq) / (2 * fa)})
    return tuple(roots), False


def a5_condition(spec: FrontalSpec):
    """Resultant condition for an A4t distance to be an A5 distance."""
    b13, b05, b04 = spec.bij(1, 3), spec.bij(0, 5), spec.bij(0, 4)
    kt, ks = spec.kappa_t0, spec.kappa_s0
    return (b13 ** 2 - b05 ** 2 / 100) * kt + b13 * (b05 / 10) * (b04 / 3 - ks)


def a5_linear(spec: FrontalSpec, eps):
    """The linear A4t condition in canonical eps."""
    b13, b05 = spec.bij(1, 3), spec.bij(0, 5)
    kt, ks = spec.kappa_t0, spec.kappa_s0
    return -(b13 * kt - b05 / 10 * ks) * eps + b05 / 10


def a5_order_formula(spec: FrontalSpec):
    """Closed form of mu* - mu_0 (paper_minus distances) when the A5 condition holds."""
    b13, b05, b04 = spec.bij(1, 3), spec.bij(0, 5), spec.bij(0, 4)
    kt, ks = spec.kappa_t0, spec.kappa_s0
    return kt / (b13 * b05 / 10) * (ks * b04 / 3 - kt ** 2) * (b13 ** 2 + b05 ** 2 / 100)


def critical_distances(spec: FrontalSpec, convention=EpsConvention.CANONICAL) -> BifurcationReport:
    conv = as_convention(convention)
    ex = spec.exact
    zero = _zero_test(spec)
    coeffs = c2_coefficients(spec)
    roots, exact_roots = _quadratic_roots(coeffs, ex)
    for r in roots:
        val = c2(spec, r)
        if not (val == 0 if exact_roots and ex else abs(float(val)) <= 1e-8 * (1 + abs(float(r))) ** 2):
            raise InternalInconsistency(f"C2 root {r} does not satisfy C2 = {val}")
    ks, kt, ki = spec.kappa_s0, spec.kappa_t0, spec.kappa_i0
    b04, b13, b05 = spec.bij(0, 4), spec.bij(1, 3), spec.bij(0, 5)
    gauss = b04 / 3 * ks - kt ** 2
    if zero(gauss):
        kind = CrossCapType.PARABOLIC
    else:
        kind = CrossCapType.ELLIPTIC if gauss > 0 else CrossCapType.HYPERBOLIC
    eps_d = None if zero(ks) else -1 / ks

    cond = a5_condition(spec)
    lin_slope = -(b13 * kt - b05 / 10 * ks)
    a5_root = None
    order_sign = None
    if zero(cond):
        a5_root = float("inf") if zero(lin_slope) else (-(b05 / 10)) / lin_slope
        if a5_root != float("inf") and not zero(coeffs[2]) and not zero(a5_root):
            other = coeffs[0] / coeffs[2] / a5_root
            diff = a5_root - other
            order_sign = 0 if zero(diff) else (1 if diff > 0 else -1)

    between = None
    if eps_d is not None and roots:
        lo, hi = sorted((0, eps_d))
        between = any(lo < r < hi for r in roots)

    labels = []
    for r in roots:
        tag = "A4t"
        if a5_root is not None and a5_root != float("inf") and zero(r - a5_root):
            tag = "A5t"
        labels.append((r, tag))
    if eps_d is not None:
        if zero(kt):
            tag = "E6" if not zero(b04 / 3 - ks) else "E7"
            if zero(ki):
                tag = "X9"
        else:
            tag = "D4" if not zero(ki) else "D5"
        labels.append((eps_d, tag))
    ordering = tuple(
        (conv.from_canonical(r), tag) for r, tag in sorted(labels, key=lambda p: float(p[0]))
    )

    events = []
    if eps_d is not None and zero(kt):
        if zero(ki):
            events.append("A4+D5=X9")
        elif not zero(b04 / 3 - ks):
            events.append("A4+D4=E6")
        else:
            events.append("A4+E6=E7")
        if zero(cond):
            if zero(b05) and not zero(b04 / 3 - ks):
                events.append("A5+D4=E6")
            elif not zero(b05):
                events.append("A5+D4=E7")
    return BifurcationReport(
        type=kind,
        convention=conv,
        c2_coefficients=coeffs,
        c2_roots=tuple(conv.from_canonical(r) for r in roots),
        d_family_root=None if eps_d is None else conv.from_canonical(eps_d),
        a5_condition=cond,
        a5_root=None if a5_root is None else (a5_root if a5_root == float("inf") else conv.from_canonical(a5_root)),
        a5_order_sign=None if order_sign is None else order_sign * conv.sign,
        ordering=ordering,
        adjacency=tuple(events),
        root_between=between,
        exact_roots=exact_roots,
    )

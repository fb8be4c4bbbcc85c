"""Parallel surfaces of a Fukui germ and the recognition of their singularities.

With the canonical distance convention the parallel at distance eps is
f - eps*nu, so that (f^eps_s, f^eps_t) = (f_s, f_t)(I + eps W).  Its signed
area density lambda = det(f^eps_s, f^eps_t, nu) then has linear part
(eps b13 / 2) C1 s - C2 t for a cuspidal cross cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .conventions import EpsConvention, as_convention, c1, c2
from .errors import ConditionDegenerate, DegenerateLocus, FrameUndefined, NotOriginPreserving
from .fukui import FrontalSpec, SurfaceClass, SurfaceGerm, assemble, classify_surface
from .geomforms import unit_normal, weingarten
from .jets import Jet1, Jet2, LaurentJet, VecJet, as_scalar, det3
from .unfolding import a5_linear

PARALLEL_ORDER = 8
"""Order of the underlying germ; f^eps loses two orders to the normal."""


class ParallelClassName(str, Enum):
    CUSPIDAL_CROSS_CAP = "CuspidalCrossCap"
    DEGENERATE_CUSPIDAL_S1 = "DegenerateCuspidalS1"
    CUSPIDAL_S1 = "CuspidalS1"
    CORANK_TWO_LOCUS = "CorankTwoLocus"
    UNCLASSIFIED = "Unclassified"


@dataclass(frozen=True)
class ParallelSurface:
    germ: SurfaceGerm
    eps: object
    """Canonical signed distance: f_eps = f - eps * nu."""
    nu: VecJet
    f_eps: VecJet
    jacobian: tuple
    """Rows (<f^eps_s, a_i>, <f^eps_t, a_i>) for i = 1, 2, 3 in the moving frame."""
    lam: Jet2
    C1: object
    C2: object

    @property
    def exact(self) -> bool:
        return self.germ.spec.exact

    @property
    def tol(self) -> float:
        return 0.0 if self.exact else 1e-10


@dataclass(frozen=True)
class SingularLocus:
    parameter: str
    """'t' when s is solved as a function of t, 's' otherwise."""
    s: Jet1
    t: Jet1
    residual: Jet1


@dataclass(frozen=True)
class NullField:
    eta: tuple
    row: int
    """Jacobian row (1-based) whose orthogonal complement gives eta."""
    psi: Jet1
    transversality: object
    """eta(lambda) at the origin."""


@dataclass(frozen=True)
class ParallelClass:
    name: ParallelClassName | SurfaceClass
    witness: dict = field(default_factory=dict)

    @property
    def label(self) -> str:
        return self.name.value

    def __str__(self):
        return self.label


def _zero(ps_or_exact, value) -> bool:
    exact = ps_or_exact if isinstance(ps_or_exact, bool) else ps_or_exact.exact
    if exact:
        return value == 0
    return abs(value) <= 1e-9


def build_parallel(g: SurfaceGerm, eps, convention=EpsConvention.CANONICAL) -> ParallelSurface:
    spec = g.spec
    e = as_scalar(as_convention(convention).to_canonical(eps), spec.exact)
    nu = unit_normal(g)
    m = nu.order
    f_eps = g.f.truncate(m) - nu * e
    fs, ft = f_eps.diff_s(), f_eps.diff_t()
    n = fs.order
    frame = [a.truncate(n).lift("s") for a in g.frame]
    jac = tuple((fs.dot(a), ft.dot(a)) for a in frame)
    lam = det3(fs, ft, nu.truncate(n))
    return ParallelSurface(g, e, nu, f_eps, jac, lam, c1(spec, e), c2(spec, e))


def lambda_factorized(ps: ParallelSurface) -> Jet2:
    """det(I + eps W) * det(f_s, f_t, nu), assembled from the Weingarten matrix."""
    g = ps.germ
    tol = ps.tol
    w = weingarten(g)
    e = ps.eps
    one = LaurentJet(w.w11.body.const_like(1))
    i_w = (one + w.w11 * e) * (one + w.w22 * e) - w.w12 * w.w21 * (e * e)
    n = ps.nu.order
    fs, ft = g.f.diff_s().truncate(n), g.f.diff_t().truncate(n)
    base = det3(fs, ft, ps.nu)
    return (i_w.normalize(tol) * LaurentJet(base)).normalize(tol).to_jet()


def _product(a: list, b: list, n: int) -> list:
    out = [0] * (n + 1)
    right = [(k, y) for k, y in enumerate(b) if y != 0]
    for i, x in enumerate(a):
        if x != 0:
            for k, y in right:
                if i + k > n:
                    break
                out[i + k] += x * y
    return out


def _along(x: Jet2, s: Jet1, t: Jet1, upto: int | None = None) -> Jet1:
    """x(s(p), t(p)) as a jet in p, optionally only up to p^upto."""
    n = min(x.order, s.order) if upto is None else min(x.order, s.order, upto)
    if s.constant != 0 or t.constant != 0:
        raise NotOriginPreserving("curve does not pass through the origin")
    # plain coefficient lists: Horner in s over t-polynomials
    sc = [s[k] for k in range(n + 1)]
    tc = [t[k] for k in range(min(n, t.order) + 1)] + [0] * max(0, n - t.order)
    t_pow = [[1] + [0] * n]
    for _ in range(n):
        t_pow.append(_product(t_pow[-1], tc, n))
    acc = None
    for i in range(n, -1, -1):
        inner = [0] * (n + 1)
        for j in range(n + 1 - i):
            c = x.coeff(i, j)
            if c != 0:
                tp = t_pow[j]
                for k in range(j, n + 1):
                    if tp[k] != 0:
                        inner[k] += c * tp[k]
        acc = inner if acc is None else [u + v for u, v in zip(_product(acc, sc, n), inner)]
    return Jet1(acc, n, x.exact)


def singular_locus(ps: ParallelSurface, solve_for: str = "s") -> SingularLocus:
    """Solve lambda = 0 for s as a function of t (or t as a function of s)."""
    lam = ps.lam
    n = lam.order
    ex = ps.exact
    if solve_for == "s":
        lead = lam.coeff(1, 0)
    elif solve_for == "t":
        lead = lam.coeff(0, 1)
    else:
        raise ValueError("solve_for must be 's' or 't'")
    if _zero(ps, lead):
        raise DegenerateLocus(f"lambda has no linear {solve_for}-term; cannot solve for {solve_for}")
    p = Jet1.variable(n, ex)
    unknown = Jet1.zero(n, ex)
    for _ in range(n + 1):
        s, t = (unknown, p) if solve_for == "s" else (p, unknown)
        unknown = unknown - _along(lam, s, t) * (as_scalar(1, ex) / lead)
    s, t = (unknown, p) if solve_for == "s" else (p, unknown)
    return SingularLocus("t" if solve_for == "s" else "s", s, t, _along(lam, s, t))


def null_field_and_psi(ps: ParallelSurface, locus: SingularLocus) -> NullField:
    """Null vector field along the locus and psi = det((f^eps o gamma)', nu o gamma, d nu(eta))."""
    s, t = locus.s, locus.t
    nu = ps.nu
    # psi is known to order m; every factor is evaluated only that far
    m = min(ps.f_eps.order - 1, ps.jacobian[0][0].order, nu.order - 1, s.order - 1)
    jac = [(_along(a, s, t, m), _along(b, s, t, m)) for a, b in ps.jacobian]
    row = 2
    eta = (-jac[1][1], jac[1][0])
    if _zero(ps, eta[0].constant) and _zero(ps, eta[1].constant):
        row = 1
        eta = (-jac[0][1], jac[0][0])
        if _zero(ps, eta[0].constant) and _zero(ps, eta[1].constant):
            raise FrameUndefined("both Jacobian rows vanish at the origin")
    nu_s, nu_t = nu.diff_s(), nu.diff_t()
    curve = ps.f_eps.map(lambda c: _along(c, s, t, m + 1)).diff()
    nu_c = nu.map(lambda c: _along(c, s, t, m))
    d_nu = nu_s.map(lambda c: _along(c, s, t, m)) * eta[0] + nu_t.map(lambda c: _along(c, s, t, m)) * eta[1]
    psi = det3(curve.truncate(m), nu_c, d_nu)
    lam = ps.lam
    trans = eta[0].constant * lam.coeff(1, 0) + eta[1].constant * lam.coeff(0, 1)
    return NullField(eta, row, psi, trans)


def _test_curve_constants(spec: FrontalSpec, mu):
    """k and l of the printed test curve, as functions of the paper_minus distance."""
    kt, ks = spec.kappa_t0, spec.kappa_s0
    b04, b05, b13 = spec.bij(0, 4), spec.bij(0, 5), spec.bij(1, 3)
    den = 3 * mu * mu * kt * kt - (b04 * mu - 3) * (mu * ks - 1)
    if _zero(spec.exact, den):
        raise ConditionDegenerate(
            "test-curve denominator 3 mu^2 kappa_t^2 - (b04 mu - 3)(mu kappa_s - 1) vanishes"
        )
    k = mu ** 4 * kt ** 3 * (3 * b05 * kt + 4 * (3 - b04 * mu)) / (24 * den)
    ell = 3 * mu * mu * kt * (4 * b13 * mu * kt + b05 * (1 - mu * ks)) / (4 * den)
    return k, ell


def cusp_closed_form(spec: FrontalSpec, eps, convention=EpsConvention.PAPER_MINUS):
    """-b05 mu^7 (b04 mu - 3) kappa_t^7 with mu the paper_minus distance."""
    mu = EpsConvention.PAPER_MINUS.from_canonical(as_convention(convention).to_canonical(eps))
    return -spec.bij(0, 5) * mu ** 7 * (spec.bij(0, 4) * mu - 3) * spec.kappa_t0 ** 7


@dataclass(frozen=True)
class CurveCheck:
    determinant: object
    k: object
    ell: object
    parallel_residual: tuple
    """c''' - l c'' at the origin; zero when the curve meets the cusp hypothesis."""


def curve_substitution_check(spec: FrontalSpec, eps, convention=EpsConvention.CANONICAL,
                             order: int = PARALLEL_ORDER) -> CurveCheck:
    """Push c(x) = (k x^3, mu kappa_t x) through the parallel and evaluate the cusp determinant.

    k and l are the printed closed forms in the paper_minus distance mu; the
    first column of the determinant is the unit tangent a1(0) of the singular
    curve.  Raises ConditionDegenerate when their common denominator vanishes.
    """
    conv = as_convention(convention)
    e = as_scalar(conv.to_canonical(eps), spec.exact)
    mu = EpsConvention.PAPER_MINUS.from_canonical(e)
    k, ell = _test_curve_constants(spec, mu)
    ps = build_parallel(assemble(spec.with_order(order), order), e)
    ex = ps.exact
    p = Jet1.variable(5, ex)
    image = ps.f_eps.truncate(5).map(lambda c: _along(c, p * p * p * k, p * (mu * spec.kappa_t0)))
    d2, d3, d4, d5 = (tuple(c.derivative_at_zero(i) for c in image) for i in (2, 3, 4, 5))
    combo = tuple(3 * a - 10 * ell * b for a, b in zip(d5, d4))
    tangent = tuple(c.constant for c in ps.germ.frame[0])
    det = _dot(tangent, _cross(d2, combo))
    return CurveCheck(det, k, ell, tuple(a - ell * b for a, b in zip(d3, d2)))


def sncc_value(spec: FrontalSpec, eps, convention=EpsConvention.CANONICAL) -> dict:
    """Left side of the degenerate cuspidal S1 side condition.

    ``printed`` evaluates the closed form in the paper_minus distance;
    ``canonical`` is the version consistent with the distance squared unfolding.
    """
    e = as_convention(convention).to_canonical(eps)
    mu = EpsConvention.PAPER_MINUS.from_canonical(e)
    b05, b13 = spec.bij(0, 5), spec.bij(1, 3)
    printed = (b13 * spec.kappa_t0 - b05 * spec.kappa_s0 / 10) * mu + b05 / 10
    return {"printed": printed, "canonical": a5_linear(spec, e)}


def classify_parallel(spec: FrontalSpec, eps, convention=EpsConvention.CANONICAL,
                      order: int = PARALLEL_ORDER) -> ParallelClass:
    """Singularity of the parallel surface at the origin, with its witnesses."""
    conv = as_convention(convention)
    e = as_scalar(conv.to_canonical(eps), spec.exact)
    source = classify_surface(spec)
    if _zero(spec.exact, e):
        return ParallelClass(source, {"identity": True})
    ps = build_parallel(assemble(spec.with_order(order), order), e)
    C1, C2 = ps.C1, ps.C2
    witness = {"C1": C1, "C2": C2, "lambda_s": ps.lam.coeff(1, 0), "lambda_t": ps.lam.coeff(0, 1)}
    if _zero(spec.exact, C1) or _zero(spec.exact, spec.bij(1, 3)):
        if _zero(spec.exact, C2):
            witness["psi"] = None
        else:
            _attach_psi(ps, "t", witness)
    else:
        _attach_psi(ps, "s", witness)
    sn = sncc_value(spec, e)
    witness["sncc_printed"] = sn["printed"]
    witness["sncc_canonical"] = sn["canonical"]
    try:
        witness["cusp_determinant"] = curve_substitution_check(spec, e, order=order).determinant
    except ConditionDegenerate as exc:
        witness["cusp_determinant"] = None
        witness["cusp_determinant_error"] = str(exc)

    z = lambda v: _zero(spec.exact, v)
    if source is SurfaceClass.CUSPIDAL_CROSS_CAP:
        if not z(C2) and not z(C1):
            name = ParallelClassName.CUSPIDAL_CROSS_CAP
        elif z(C1) and z(C2):
            name = ParallelClassName.CORANK_TWO_LOCUS
        elif z(C2) and not z(spec.bij(0, 5)) and not z(sn["canonical"]):
            name = ParallelClassName.DEGENERATE_CUSPIDAL_S1
        else:
            name = ParallelClassName.UNCLASSIFIED
    elif source is SurfaceClass.CUSPIDAL_S1:
        name = ParallelClassName.CUSPIDAL_S1 if not z(C2) else ParallelClassName.UNCLASSIFIED
    else:
        name = ParallelClassName.UNCLASSIFIED
    return ParallelClass(name, witness)


def _attach_psi(ps: ParallelSurface, solve_for: str, witness: dict) -> None:
    try:
        locus = singular_locus(ps, solve_for)
        nf = null_field_and_psi(ps, locus)
    except (DegenerateLocus, FrameUndefined) as exc:
        witness["psi"] = None
        witness["psi_error"] = str(exc)
        return
    witness["locus_parameter"] = locus.parameter
    witness["psi"] = nf.psi
    witness["eta_row"] = nf.row
    witness["transversality"] = nf.transversality


def _cross(a, b):
    return (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0])


def _dot(a, b):
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]

"""Fundamental forms, Weingarten matrix and curvature expansions of a germ.

The Weingarten matrix W is defined columnwise by (nu_s, nu_t) = -(f_s, f_t) W.
Because EG - F^2 vanishes to second order along t = 0, the second row of W
carries a simple pole in t; those entries are LaurentJets.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InternalInconsistency
from .fukui import SurfaceGerm
from .jets import Jet1, Jet2, LaurentJet, VecJet, det3


@dataclass(frozen=True)
class FundamentalForms:
    E: Jet2
    F: Jet2
    G: Jet2
    L: Jet2
    M: Jet2
    N2: Jet2
    nu: VecJet


@dataclass(frozen=True)
class WeingartenMatrix:
    w11: LaurentJet
    w12: LaurentJet
    w21: LaurentJet
    w22: LaurentJet

    def det(self) -> LaurentJet:
        return (self.w11 * self.w22 - self.w12 * self.w21).normalize()

    def half_trace(self) -> LaurentJet:
        return ((self.w11 + self.w22) * self._half()).normalize()

    def _half(self):
        from fractions import Fraction

        return Fraction(1, 2) if self.w11.exact else 0.5


@dataclass(frozen=True)
class EdgeInvariants:
    """Curvatures along the singular curve, computed by definition and in closed form."""

    kappa_nu: Jet1
    kappa_s: Jet1
    kappa_c: Jet1
    kappa_t: Jet1
    kappa_i: Jet1
    closed_form: dict

    @property
    def origin(self) -> dict:
        names = ("kappa_nu", "kappa_s", "kappa_c", "kappa_t", "kappa_i")
        return {n: getattr(self, n).constant for n in names}

    def agrees(self, tol: float = 0.0) -> bool:
        for name, jet in self.closed_form.items():
            mine = getattr(self, name)
            n = min(mine.order, jet.order)
            if not (mine.truncate(n) - jet.truncate(n)).is_zero(tol):
                return False
        return True


def _tol(g: SurfaceGerm) -> float:
    return 0.0 if g.spec.exact else 1e-10


def first_forms(g: SurfaceGerm) -> tuple[Jet2, Jet2, Jet2]:
    fs, ft = g.f.diff_s(), g.f.diff_t()
    return fs.dot(fs), fs.dot(ft), ft.dot(ft)


def unit_normal(g: SurfaceGerm) -> VecJet:
    """nu = (f_s x f_t / t) normalized; known to order N - 2."""
    tol = _tol(g)
    fs, ft = g.f.diff_s(), g.f.diff_t()
    m = fs.cross(ft).map(lambda c: c.divide_t(tol))
    return m * m.dot(m).sqrt_recip(tol)


def second_forms(g: SurfaceGerm, nu: VecJet | None = None) -> tuple[Jet2, Jet2, Jet2]:
    nu = unit_normal(g) if nu is None else nu
    n = nu.order
    fs = g.f.diff_s()
    ft = g.f.diff_t()
    fss = fs.diff_s().truncate(n)
    fst = fs.diff_t().truncate(n)
    ftt = ft.diff_t().truncate(n)
    return fss.dot(nu), fst.dot(nu), ftt.dot(nu)


def fundamental_forms(g: SurfaceGerm) -> FundamentalForms:
    E, F, G = first_forms(g)
    nu = unit_normal(g)
    L, M, N2 = second_forms(g, nu)
    return FundamentalForms(E, F, G, L, M, N2, nu)


def weingarten(g: SurfaceGerm, forms: FundamentalForms | None = None) -> WeingartenMatrix:
    """W = I^{-1} II with EG - F^2 = t^2 D, D a unit."""
    ff = fundamental_forms(g) if forms is None else forms
    tol = _tol(g)
    E, F, G, L, M, N2 = ff.E, ff.F, ff.G, ff.L, ff.M, ff.N2
    n = L.order
    D = (E * G - F * F).divide_t(tol).divide_t(tol)
    inv_d = LaurentJet(D.recip(tol))
    E, F, G = (x.truncate(n) for x in (E, F, G))

    def entry(num: Jet2) -> LaurentJet:
        return (LaurentJet(num, 2).normalize(tol) * inv_d).normalize(tol)

    w = WeingartenMatrix(
        entry(G * L - F * M),
        entry(G * M - F * N2),
        entry(E * M - F * L),
        entry(E * N2 - F * M),
    )
    if w.w11.pole or w.w12.pole or w.w21.pole > 1 or w.w22.pole > 1:
        raise InternalInconsistency("Weingarten entries have poles beyond the second row")
    return w


def weingarten_residual(g: SurfaceGerm, w: WeingartenMatrix | None = None,
                        nu: VecJet | None = None) -> VecJet:
    """(nu_s, nu_t) + (f_s, f_t) W stacked as the six components of two vectors."""
    nu = unit_normal(g) if nu is None else nu
    w = weingarten(g) if w is None else w
    tol = _tol(g)
    fs, ft = g.f.diff_s(), g.f.diff_t()
    out = []
    for nu_x, wa, wb in ((nu.diff_s(), w.w11, w.w21), (nu.diff_t(), w.w12, w.w22)):
        comps = []
        for k in range(3):
            lj = LaurentJet(nu_x[k]) + LaurentJet(fs[k]) * wa + LaurentJet(ft[k]) * wb
            comps.append(lj.normalize(tol).to_jet())
        out.append(VecJet(*comps))
    return out


def gauss_mean(g: SurfaceGerm, w: WeingartenMatrix | None = None) -> tuple[LaurentJet, LaurentJet]:
    w = weingarten(g) if w is None else w
    return w.det(), w.half_trace()


def edge_invariants(g: SurfaceGerm) -> EdgeInvariants:
    """kappa_nu, kappa_s, kappa_c, kappa_t, kappa_i along t = 0."""
    spec = g.spec
    f = g.f
    fs, ft = f.diff_s(), f.diff_t()
    fss, ftt = fs.diff_s(), ft.diff_t()
    fsss, fttt, fstt = fss.diff_s(), ftt.diff_t(), ftt.diff_s()
    nu = unit_normal(g)
    n = fsss.order

    def edge(v: VecJet) -> VecJet:
        return v.truncate(n).at_t0()

    kappa_nu = det3(edge(fs), edge(fss), edge(nu))
    kappa_s = edge(fss).dot(edge(nu))
    kappa_c = det3(edge(fs), edge(ftt), edge(fttt))
    kappa_t = det3(edge(fs), edge(ftt), edge(fstt))
    kappa_i = det3(edge(fs), edge(ftt), edge(fsss))

    kap = spec.kappa_jet(n)
    cos_t, sin_t = spec.cos_sin_jets(n)
    omega = spec.tau_jet(n) - spec.theta_shift_jet(n + 1).diff()
    closed = {
        "kappa_nu": kap * cos_t,
        "kappa_s": kap * sin_t,
        "kappa_c": spec.b_jet(3, n),
        "kappa_t": omega,
        "kappa_i": kap * spec.tau_jet(n) * cos_t + spec.kappa_jet(n + 1).diff() * sin_t,
    }
    return EdgeInvariants(kappa_nu, kappa_s, kappa_c, kappa_t, kappa_i, closed)

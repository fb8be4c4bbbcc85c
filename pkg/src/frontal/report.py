"""Aggregated analyses and named verification checks behind the command line."""

from __future__ import annotations

import random
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .conventions import EpsConvention, c1, c2, normal_probe
from .errors import FrontalError, TableInapplicable
from .fukui import (
    FrontalSpec,
    SurfaceClass,
    assemble,
    classify_surface,
    derive_a_series,
    solve_frame,
    solve_frenet,
)
from .geomforms import edge_invariants, fundamental_forms, weingarten_residual
from .jets import Jet1, VecJet, as_scalar
from .parallels import build_parallel, classify_parallel, lambda_factorized, null_field_and_psi, singular_locus
from .specio import SpecDocument, random_spec
from .unfolding import classify_dsu, critical_distances, phi_direct, phi_table


def tag(x, exact: bool):
    """Scalar as {"exact": "p/q"} or {"numeric": float}."""
    if x is None:
        return None
    if isinstance(x, float) and x in (float("inf"), float("-inf")):
        return {"numeric": str(x)}
    if exact:
        q = Fraction(x)
        return {"exact": str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"}
    return {"numeric": float(x)}


def tag_jet(jet: Jet1, exact: bool) -> dict:
    """Derivatives at 0 (factorial-scaled, like the input document)."""
    return {
        "mode": "exact" if exact else "numeric",
        "order": jet.order,
        "derivatives": [tag(jet.derivative_at_zero(i), exact)[("exact" if exact else "numeric")] for i in range(jet.order + 1)],
    }


def bifurcation_dict(spec: FrontalSpec, convention=EpsConvention.CANONICAL) -> dict:
    ex = spec.exact
    rep = critical_distances(spec, convention)
    roots_exact = ex and rep.exact_roots
    return {
        "type": rep.type.value,
        "convention": rep.convention.value,
        "C2_coefficients": [tag(c, ex) for c in rep.c2_coefficients],
        "C2_roots": [tag(r, roots_exact) for r in rep.c2_roots],
        "C2_roots_exact": rep.exact_roots,
        "D_family_root": tag(rep.d_family_root, ex),
        "A5_condition": tag(rep.a5_condition, ex),
        "A5_root": tag(rep.a5_root, ex and rep.a5_root != float("inf")),
        "A5_order_sign": rep.a5_order_sign,
        "ordering": [[tag(r, roots_exact or tag_name.startswith(("D", "E", "X"))), tag_name] for r, tag_name in rep.ordering],
        "adjacency": list(rep.adjacency),
        "root_between_zero_and_D_root": rep.root_between,
    }


def analyze(doc: SpecDocument, eps_values=None, probes=None) -> dict:
    """Full report for one surface document."""
    spec = doc.spec
    conv = doc.convention
    ex = spec.exact
    mode = "exact" if ex else "numeric"
    g = assemble(spec)
    surface_class = classify_surface(spec)
    inv = edge_invariants(g)
    report = {
        "mode": mode,
        "order": spec.order,
        "convention": conv.value,
        "surface_class": surface_class.value,
        "invariants": {
            "origin": {k: tag(v, ex) for k, v in inv.origin.items()},
            "jets": {k: tag_jet(getattr(inv, k), ex) for k in inv.origin},
            "closed_form_agrees": inv.agrees(0.0 if ex else 1e-9),
        },
        "C1": {"at_zero": tag(c1(spec, 0), ex), "slope": tag(spec.kappa_s0, ex)},
        "C2": {"at_zero": tag(c2(spec, 0), ex)},
    }
    try:
        report["bifurcation"] = bifurcation_dict(spec, conv)
    except FrontalError as exc:
        report["bifurcation"] = {"error": str(exc)}

    eps_list = list(eps_values or [])
    parallels = []
    if surface_class in (SurfaceClass.CUSPIDAL_CROSS_CAP, SurfaceClass.CUSPIDAL_S1):
        for e in eps_list:
            try:
                pc = classify_parallel(spec, e, conv)
                parallels.append({
                    "eps": tag(e, ex),
                    "class": pc.label,
                    "C1": tag(pc.witness.get("C1"), ex),
                    "C2": tag(pc.witness.get("C2"), ex),
                    "sncc": tag(pc.witness.get("sncc_canonical"), ex),
                })
            except FrontalError as exc:
                parallels.append({"eps": tag(e, ex), "error": str(exc)})
    report["parallels"] = parallels

    dsu = []
    for e in eps_list:
        dsu.append(_dsu_entry(spec, normal_probe(spec, e, conv), ex, distance=e))
    for p in probes or []:
        dsu.append(_dsu_entry(spec, tuple(p), ex))
    report["dsu"] = dsu
    report["residuals"] = residual_summary(spec)
    return report


def _dsu_entry(spec, probe, ex, distance=None) -> dict:
    entry = {"probe": [tag(x, ex) for x in probe]}
    if distance is not None:
        entry["distance"] = tag(distance, ex)
    try:
        cls = classify_dsu(spec, probe)
        entry["class"] = cls.label
        entry["within_hypotheses"] = cls.within_hypotheses
    except FrontalError as exc:
        entry["error"] = str(exc)
    return entry


def residual_summary(spec: FrontalSpec) -> dict:
    """Largest coefficient of each structural identity residual."""
    g = assemble(spec)
    out = {}
    try:
        res = weingarten_residual(g)
        out["weingarten"] = max(max(c.max_abs() for c in v) for v in res)
    except FrontalError as exc:
        out["weingarten"] = str(exc)
    out["frame_orthonormality"] = _frame_orthonormality(spec)
    out["frame_vs_frenet"] = _frame_vs_frenet(spec)
    return out


# ---------------------------------------------------------------------------
# Named checks


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    residual: float
    detail: str = ""


def _max_abs_vec(v: VecJet) -> float:
    return max(c.max_abs() for c in v)


def _frame_orthonormality(spec: FrontalSpec) -> float:
    a = solve_frame(spec)
    worst = 0.0
    for i in range(3):
        for j in range(3):
            d = a[i].dot(a[j])
            target = d.const_like(1 if i == j else 0)
            worst = max(worst, (d - target).max_abs())
    return worst


def _frame_vs_frenet(spec: FrontalSpec) -> float:
    """a1 = t, a2 = cos(theta) n - sin(theta) b, a3 = sin(theta) n + cos(theta) b."""
    a1, a2, a3 = solve_frame(spec)
    t, n, b = solve_frenet(spec)
    cos_t, sin_t = spec.cos_sin_jets()
    r1 = a1 - t
    r2 = a2 - (n * cos_t - b * sin_t)
    r3 = a3 - (n * sin_t + b * cos_t)
    return max(_max_abs_vec(r) for r in (r1, r2, r3))


def _a_series_residual(spec: FrontalSpec) -> float:
    a = derive_a_series(spec)
    n = spec.order
    worst = 0.0
    if 4 in a:
        b3 = spec.b_jet(3, n)
        worst = max(worst, (a[4] + b3 * b3 * as_scalar(Fraction(3, 4), spec.exact)).max_abs())
    if 5 in a:
        b3, b4 = spec.b_jet(3, n), spec.b_jet(4, n)
        worst = max(worst, (a[5] + b3 * b4 * 2).max_abs())
    return worst


def checks_for_spec(spec: FrontalSpec, with_phi: bool = True) -> list:
    """Structural identities that must hold for every spec (exact: residual 0)."""
    ex = spec.exact
    tol = 0.0 if ex else 1e-9
    out = []

    def add(name, fn):
        try:
            r = fn()
            if isinstance(r, bool):
                out.append(Check(name, r, 0.0 if r else 1.0))
            else:
                out.append(Check(name, float(r) <= tol, float(r)))
        except FrontalError as exc:
            out.append(Check(name, False, float("nan"), str(exc)))

    add("a_series_identities", lambda: _a_series_residual(spec))
    add("frame_orthonormality", lambda: _frame_orthonormality(spec))
    add("frame_vs_frenet", lambda: _frame_vs_frenet(spec))
    g = assemble(spec)
    add("edge_invariants_dual_path", lambda: edge_invariants(g).agrees(tol))
    add("weingarten_equation", lambda: max(_max_abs_vec(v) for v in weingarten_residual(g)))
    add("C2_at_zero", lambda: abs(c2(spec, 0) + 1))
    if classify_surface(spec) is SurfaceClass.CUSPIDAL_CROSS_CAP:
        eps = Fraction(1, 3) if ex else 1 / 3

        def lam_checks():
            ps = build_parallel(g, eps)
            lf = lambda_factorized(ps)
            m = min(lf.order, ps.lam.order)
            fact = (lf.truncate(m) - ps.lam.truncate(m)).max_abs()
            lin_s = abs(ps.lam.coeff(1, 0) - eps * spec.bij(1, 3) / 2 * ps.C1)
            lin_t = abs(ps.lam.coeff(0, 1) + ps.C2)
            return max(fact, lin_s, lin_t)

        add("parallel_lambda", lam_checks)
        if with_phi:
            rng = random.Random(repr(spec.kappa))

            def phi_check():
                probe = tuple(as_probe(rng, ex))
                try:
                    t = phi_table(spec, probe).jet
                except TableInapplicable:
                    return 0.0
                d = phi_direct(assemble(spec.with_order(5), 5), probe).jet
                return (t.truncate(5) - d.truncate(5)).max_abs()

            add("phi_table_vs_direct", phi_check)
    return out


def as_probe(rng: random.Random, exact: bool):
    vals = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in range(4)]
    return vals if exact else [float(v) for v in vals]


def degeneration_signals(spec: FrontalSpec, eps, order: int = 5, germ=None) -> tuple:
    """(lambda_t == 0, C2 == 0, psi'(0) == 0 on the branch parametrized by t).

    Order 5 is the lowest at which psi'(0) is determined; pass ``germ`` to
    reuse one assembly across many distances.
    """
    ex = spec.exact
    z = (lambda v: v == 0) if ex else (lambda v: abs(v) <= 1e-9)
    if germ is None:
        germ = assemble(spec.with_order(order), order)
    ps = build_parallel(germ, eps)
    lam_t = z(ps.lam.coeff(0, 1))
    c2_zero = z(ps.C2)
    try:
        nf = null_field_and_psi(ps, singular_locus(ps, "s"))
        psi_zero = z(nf.psi[1])
    except FrontalError:
        # no t-parametrized branch: lambda has no s-term
        psi_zero = z(ps.C2)
    return lam_t, c2_zero, psi_zero


def random_checks(count: int, seed: int, exact: bool = True, jobs: int = 1) -> list:
    rng = random.Random(seed)
    specs = []
    for i in range(count):
        kind = ("ccc", "cs1", "any")[i % 3]
        specs.append(random_spec(rng, kind=kind, exact=exact))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(checks_for_spec, specs))
    else:
        results = [checks_for_spec(s) for s in specs]
    merged = {}
    for res in results:
        for ch in res:
            prev = merged.get(ch.name)
            if prev is None:
                merged[ch.name] = ch
            else:
                merged[ch.name] = Check(
                    ch.name,
                    prev.passed and ch.passed,
                    max(prev.residual, ch.residual),
                    prev.detail or ch.detail,
                )
    return list(merged.values())


def numeric_convergence(spec: FrontalSpec, order: int = 4, hs=(1e-2, 1e-3)) -> dict:
    """Errors of the order-N jets of f, E and L against the high-precision reference."""
    from .oracle import ReferenceSurface

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        fine = spec.with_order(order + 2)
        ref = ReferenceSurface(fine)
        g = assemble(fine.to_numeric(), order + 2)
        ff = fundamental_forms(g)
    jets = {"f": g.f.truncate(order), "E": ff.E.truncate(order), "L": ff.L.truncate(order)}
    errors = {k: [] for k in jets}
    for h in hs:
        fr = ref.f(h, h)
        fl = ref.first_second(h, h)
        errors["f"].append(max(abs(float(a) - float(c(h, h))) for a, c in zip(fr, jets["f"])))
        errors["E"].append(abs(float(fl["E"]) - float(jets["E"](h, h))))
        errors["L"].append(abs(float(fl["L"]) - float(jets["L"](h, h))))
    ratios = {k: v[0] / v[1] if v[1] else float("inf") for k, v in errors.items()}
    return {"order": order, "h": list(hs), "errors": errors, "ratios": ratios}

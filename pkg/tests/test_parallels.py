import random
from fractions import Fraction as Q

import pytest

from frontal.conventions import EpsConvention, c1, c2
from frontal.errors import ConditionDegenerate, DegenerateLocus
from frontal.fukui import SurfaceClass, assemble
from frontal.parallels import (
    ParallelClassName,
    build_parallel,
    classify_parallel,
    curve_substitution_check,
    lambda_factorized,
    null_field_and_psi,
    singular_locus,
    sncc_value,
)
from frontal.specio import random_spec
from frontal.unfolding import a5_linear, critical_distances

pytestmark = pytest.mark.filterwarnings("ignore::UserWarning")


def _spec(seed, kind="ccc", **kw):
    return random_spec(random.Random(seed), kind=kind, order=8, **kw)


@pytest.fixture(scope="module", params=[31, 32, 33])
def rooted(request):
    """CCC spec whose C2 has rational roots, with its order-5 germ."""
    sp = _spec(request.param, c2_root=True)
    return sp, assemble(sp.with_order(5), 5)


def _psi_slope(sp, eps):
    """psi'(0) on the t-branch, closed form in the canonical distance."""
    C1, C2 = c1(sp, eps), c2(sp, eps)
    kt, b13 = sp.kappa_t0, sp.bij(1, 3)
    return -2 * C2 * kt * (C1 ** 2 + eps ** 2 * kt ** 2) / (C1 ** 2 * b13 * eps)


def test_parallel_at_zero_distance_is_surface(rooted):
    sp, g = rooted
    ps = build_parallel(g, 0)
    n = ps.f_eps.order
    assert ps.f_eps == g.f.truncate(n)
    assert ps.C1 == 1 and ps.C2 == -1


def test_parallel_origin_offset(rooted):
    sp, g = rooted
    eps = Q(2, 7)
    ps = build_parallel(g, eps)
    origin = tuple(c.coeff(0, 0) for c in ps.f_eps)
    assert origin == (0, -eps * sp.sin0, -eps * sp.cos0)


def test_lambda_factorization(rooted):
    sp, g = rooted
    for eps in (Q(1, 3), Q(-5, 2)) + critical_distances(sp).c2_roots:
        ps = build_parallel(g, eps)
        fact = lambda_factorized(ps)
        n = min(fact.order, ps.lam.order)
        assert fact.truncate(n) == ps.lam.truncate(n)


def test_lambda_low_coefficients(rooted):
    sp, g = rooted
    for eps in (Q(1, 3), Q(-4, 5), Q(9, 2)):
        ps = build_parallel(g, eps)
        assert ps.lam.coeff(0, 0) == 0
        assert ps.lam.coeff(0, 1) == -c2(sp, eps)
        assert ps.lam.coeff(1, 0) == sp.bij(1, 3) / 2 * eps * c1(sp, eps)


def test_convention_adapter(rooted):
    sp, g = rooted
    a = build_parallel(g, Q(3, 4))
    b = build_parallel(g, Q(-3, 4), EpsConvention.PAPER_MINUS)
    assert a.eps == b.eps and a.lam == b.lam


def test_singular_locus_residual(rooted):
    sp, g = rooted
    ps = build_parallel(g, Q(1, 3))
    for solve in ("s", "t"):
        loc = singular_locus(ps, solve)
        assert loc.residual.is_zero()


def test_psi_slope_closed_form(rooted):
    sp, g = rooted
    for eps in (Q(1, 3), Q(-2, 5), Q(7, 4)) + critical_distances(sp).c2_roots:
        ps = build_parallel(g, eps)
        nf = null_field_and_psi(ps, singular_locus(ps, "s"))
        assert nf.psi[0] == 0
        assert nf.psi[1] == _psi_slope(sp, eps)


def test_psi_slope_stable_in_order(rooted):
    sp, _ = rooted
    eps = Q(3, 5)
    g8 = assemble(sp, 8)
    ps = build_parallel(g8, eps)
    nf = null_field_and_psi(ps, singular_locus(ps, "s"))
    assert nf.psi[1] == _psi_slope(sp, eps)


def test_locus_degenerates_at_c1_root(rooted):
    sp, g = rooted
    ps = build_parallel(g, -1 / sp.kappa_s0)
    with pytest.raises(DegenerateLocus):
        singular_locus(ps, "s")


def test_classify_generic_distance(rooted):
    sp, _ = rooted
    for eps in (Q(1, 3), Q(-1, 4)):
        assert c2(sp, eps) != 0
        assert classify_parallel(sp, eps).name is ParallelClassName.CUSPIDAL_CROSS_CAP


def test_classify_at_c2_roots(rooted):
    sp, _ = rooted
    for eps in critical_distances(sp).c2_roots:
        cls = classify_parallel(sp, eps)
        assert cls.witness["C2"] == 0 and cls.witness["lambda_t"] == 0
        assert cls.witness["sncc_canonical"] == a5_linear(sp, eps)
        if sp.bij(0, 5) != 0 and cls.witness["sncc_canonical"] != 0:
            assert cls.name is ParallelClassName.DEGENERATE_CUSPIDAL_S1
        else:
            assert cls.name is ParallelClassName.UNCLASSIFIED


def test_classify_zero_distance_returns_source(rooted):
    sp, _ = rooted
    assert classify_parallel(sp, 0).name is SurfaceClass.CUSPIDAL_CROSS_CAP


def test_classify_corank_two_locus():
    sp = _spec(34)
    ks, kt = sp.kappa_s0, sp.kappa_t0
    eps = -1 / ks
    # C2(eps) = eps^2 kappa_t^2 when C1 = 0, so kappa_t = 0 puts both roots together
    flat = type(sp)(sp.kappa, sp.tau, sp.cos0, sp.sin0, (sp.tau[0],) + tuple(sp.theta[1:]), sp.b, sp.order)
    assert c1(flat, eps) == 0 and c2(flat, eps) == 0
    assert classify_parallel(flat, eps).name is ParallelClassName.CORANK_TWO_LOCUS
    assert kt != 0 and classify_parallel(sp, eps).name is ParallelClassName.UNCLASSIFIED


def test_classify_cuspidal_s1():
    sp = _spec(35, kind="cs1")
    for eps in (Q(1, 2), Q(-2, 3)):
        if c2(sp, eps) != 0:
            assert classify_parallel(sp, eps).name is ParallelClassName.CUSPIDAL_S1


def test_sncc_printed_equals_canonical():
    for seed in range(10):
        sp = _spec(40 + seed, c2_root=True)
        for eps in critical_distances(sp).c2_roots + (Q(1, 3),):
            v = sncc_value(sp, eps)
            assert v["printed"] == v["canonical"]


def test_cusp_curve_degenerate_at_c2_roots(rooted):
    sp, _ = rooted
    for eps in critical_distances(sp).c2_roots:
        with pytest.raises(ConditionDegenerate):
            curve_substitution_check(sp, eps)


def test_cusp_curve_off_root_is_not_a_cusp(rooted):
    """Away from the C2 roots the test curve's image does not satisfy c''' = l c''."""
    sp, _ = rooted
    check = curve_substitution_check(sp, Q(1, 3))
    assert any(v != 0 for v in check.parallel_residual)


def test_numeric_mode_agrees(rooted):
    sp, g = rooted
    eps = Q(2, 5)
    ex = build_parallel(g, eps)
    num = build_parallel(assemble(sp.with_order(5).to_numeric(), 5), float(eps))
    for (i, j), v in ex.lam.terms().items():
        assert num.lam.coeff(i, j) == pytest.approx(float(v), rel=1e-10, abs=1e-10)

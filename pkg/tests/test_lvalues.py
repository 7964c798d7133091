from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mmvkit.errors import PoleError, UnsupportedError
from mmvkit.lvalues import completed_l_value, lambda_cuspform, lambda_eisenstein
from mmvkit.modforms import DELTA, DELTA_PRIME, G, delta
from mmvkit.numerics import PrecisionContext, bernoulli


@pytest.mark.parametrize("k2", [4, 6, 8, 10, 12])
def test_eisenstein_even_closed_form(k2, ctx):
    for i in range(1, k2 // 2):
        closed = Fraction((-1) ** i, 2) * bernoulli(2 * i) / (2 * i) * bernoulli(k2 - 2 * i) / (k2 - 2 * i)
        v = lambda_eisenstein(k2, 2 * i, ctx).value
        assert abs(v - ctx.mpf(closed)) <= abs(v) * ctx.mpf("1e-45")


def test_eisenstein_trivial_zeros(ctx):
    for k2 in (6, 8, 10, 12):
        for n in range(3, k2 - 2, 2):
            assert lambda_eisenstein(k2, n, ctx).value == 0


def test_g4_at_3(ctx):
    v = lambda_eisenstein(4, 3, ctx).value
    assert abs(v + ctx.mp.zeta(3) / (2 * ctx.mp.pi) ** 3) < ctx.mpf("1e-60")


@pytest.mark.parametrize("k2", [4, 8, 12])
def test_eisenstein_poles(k2, ctx):
    for s in (0, k2):
        with pytest.raises(PoleError):
            lambda_eisenstein(k2, s, ctx)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([4, 6, 8, 10, 12]), st.integers(min_value=-6, max_value=20))
def test_eisenstein_functional_equation(k2, s):
    ctx = PrecisionContext(30)
    if s in (0, k2):
        return
    a = lambda_eisenstein(k2, s, ctx).value
    b = lambda_eisenstein(k2, k2 - s, ctx).value
    sign = (-1) ** (k2 // 2)
    assert abs(a - sign * b) <= ctx.mpf("1e-35") * max(1, abs(a))


@pytest.mark.parametrize("s", range(1, 12))
def test_delta_functional_equation(s, ctx):
    a = lambda_cuspform(DELTA, s, ctx).value
    b = lambda_cuspform(DELTA, 12 - s, ctx).value
    assert abs(a - b) <= abs(a) * ctx.mpf("1e-60")


def test_delta_noncritical_against_dirichlet_series(ctx30):
    # L(Delta, 20) = sum tau(n) n^-20 converges fast enough for a 1e-25 check
    ctx = ctx30
    mp = ctx.mp
    N = 4000
    t = delta(N)
    L = mp.fsum(ctx.mpf(t[n]) * mp.mpf(n) ** -20 for n in range(1, N + 1))
    expect = (2 * mp.pi) ** -20 * mp.factorial(19) * L
    got = lambda_cuspform(DELTA, 20, ctx).value
    assert abs(got - expect) <= abs(expect) * ctx.mpf("1e-25")


def test_delta_critical_ratios(ctx):
    v = {s: completed_l_value(DELTA, s, ctx).value for s in (3, 5, 7, 9)}
    assert all(x > 0 for x in v.values())
    assert abs(v[5] / v[3] - ctx.mpf(Fraction(9, 14))) < ctx.mpf("1e-60")
    assert abs(v[7] - v[5]) < v[5] * ctx.mpf("1e-60")


def test_precision_doubling_persistence():
    lo, hi = PrecisionContext(40), PrecisionContext(80)
    a = lambda_cuspform(DELTA, 12, lo).value
    b = lambda_cuspform(DELTA, 12, hi).value
    assert abs(a - b) <= abs(b) * lo.mpf("1e-40")


def test_unsupported_forms(ctx):
    with pytest.raises(UnsupportedError):
        completed_l_value(DELTA_PRIME, 3, ctx)
    with pytest.raises(UnsupportedError):
        lambda_cuspform(DELTA, 0, ctx)

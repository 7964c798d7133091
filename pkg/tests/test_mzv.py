from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mmvkit.errors import DomainError
from mmvkit.mzv import (
    FWord,
    ZETA_REP_INDICES,
    dimension_series,
    mzv,
    mzv_direct,
    shuffle_product,
    shuffle_words,
    to_descending,
    zeta_rep,
)
from mmvkit.numerics import PrecisionContext

F93_INDICES = [(5, 3, 2, 2), (5, 7), (7, 5), (3,), (9,), (3, 7), (7, 3), (2,), (3, 5), (5, 3), (4,), (6,), (12,)]


def test_single_zeta(ctx):
    assert abs(mzv((2,), ctx) - ctx.mp.pi**2 / 6) < ctx.eps * 10


def test_euler_relation(ctx):
    # zeta(1, 2) = zeta(3) in the ascending convention
    assert abs(mzv((1, 2), ctx) - mzv((3,), ctx)) < ctx.eps * 10


@settings(max_examples=20, deadline=None)
@given(st.integers(2, 7), st.integers(2, 7))
def test_stuffle(a, b):
    ctx = PrecisionContext(30)
    lhs = mzv((a,), ctx) * mzv((b,), ctx)
    rhs = mzv((a, b), ctx) + mzv((b, a), ctx) + mzv((a + b,), ctx)
    assert abs(lhs - rhs) <= abs(lhs) * ctx.mpf("1e-35")


@settings(max_examples=10, deadline=None)
@given(st.integers(3, 8))
def test_euler_sum_formula(n):
    # sum_{a+b=n, b>=2} zeta(a, b) = zeta(n) (ascending, a >= 1)
    ctx = PrecisionContext(30)
    total = sum(mzv((n - b, b), ctx) for b in range(2, n))
    assert abs(total - mzv((n,), ctx)) <= ctx.mpf("1e-35")


def test_gkz(ctx):
    z = lambda *i: mzv(i, ctx)  # noqa: E731
    lhs = 28 * z(3, 9) + 150 * z(5, 7) + 168 * z(7, 5)
    assert abs(lhs - ctx.mpf(Fraction(5197, 691)) * z(12)) < ctx.mpf("1e-60")


@pytest.mark.parametrize("idx", F93_INDICES)
def test_against_oracle(idx):
    ctx = PrecisionContext(30)
    a = mzv(idx, ctx)
    b = mzv_direct(idx, digits=12)
    assert abs(a - b) <= abs(a) * 1e-12


def test_oracle_domain():
    with pytest.raises(DomainError):
        mzv_direct((1, 2))


@pytest.mark.parametrize("bad", [(), (2, 1), (0, 3), (2, -1)])
def test_bad_index(bad, ctx):
    with pytest.raises(DomainError):
        mzv(bad, ctx)


def test_descending_adapter():
    assert to_descending((3, 9)) == (9, 3)


def test_representatives(ctx):
    assert set(ZETA_REP_INDICES) >= {(3, 9), (5, 7), (3, 7), (5, 3)}
    r = zeta_rep((5, 3), ctx)
    assert abs(r.value + mzv((3, 5), ctx) / 5) < ctx.eps * 10
    assert r.weight == 8
    with pytest.raises(DomainError):
        zeta_rep((3, 11), ctx)


def test_ihara_takao_zeta_combination(ctx):
    # zeta_{5,7} + 3 zeta_{3,9} is a combination of double zetas and products
    z = lambda *i: mzv(i, ctx)  # noqa: E731
    lhs = zeta_rep((5, 7), ctx).value + 3 * zeta_rep((3, 9), ctx).value
    rhs = z(3, 9) / 9 + 3 * z(3) * z(9) + ctx.mpf(Fraction(5, 3)) * z(5) * z(7) - ctx.mpf(Fraction(31 * 139, 2 * 691)) * z(12)
    assert abs(lhs - rhs) < ctx.mpf("1e-60")


def test_dimension_series():
    d = dimension_series(30)
    assert d[:13] == [1, 0, 1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12]
    assert all(d[n] == d[n - 2] + d[n - 3] for n in range(3, 31))
    with pytest.raises(DomainError):
        dimension_series(100)


@settings(max_examples=40)
@given(st.lists(st.sampled_from([3, 5, 7]), max_size=3), st.lists(st.sampled_from([3, 5, 7]), max_size=3))
def test_shuffle_counts(u, v):
    from math import comb

    out = shuffle_words(tuple(u), tuple(v))
    assert sum(out.values()) == comb(len(u) + len(v), len(u))
    assert out == shuffle_words(tuple(v), tuple(u))


def test_shuffle_product_fwords():
    a, b = FWord((3,), 1), FWord((5,), 0)
    prod = shuffle_product(a, b)
    assert prod == Counter({FWord((3, 5), 1): 1, FWord((5, 3), 1): 1})
    assert all(w.weight == a.weight + b.weight for w in prod)
    assert FWord((3, 3), 0).coradical_degree == 2

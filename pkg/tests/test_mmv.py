from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings, strategies as st

from mmvkit.errors import DomainError, TruncationError, UnsupportedError
from mmvkit.lvalues import completed_l_value
from mmvkit.mmv import (
    IterandWord,
    _axis_tail,
    default_qterms,
    lambda_mmv,
    mmv,
    mmv_table,
    reflection,
    s_pullback,
    tail_integral,
)
from mmvkit.modforms import DELTA, G
from mmvkit.numerics import PrecisionContext

FORMS = [G(4), G(6), G(8), DELTA]


def _close(a, b, tol, *scale):
    s = max([abs(a), abs(b), *map(abs, scale)])
    return abs(a - b) <= tol * s


def test_g4g4_rational_entry(ctx):
    assert _close(mmv("G4,G4", (2, 2), ctx), ctx.mpf(Fraction(1, 2**11 * 3**4)), ctx.mpf("1e-60"))


def test_g4g4_zeta_entry(ctx):
    mp = ctx.mp
    assert _close(mmv("G4,G4", (1, 1), ctx), mp.zeta(3) ** 2 / (2**7 * mp.pi**6), ctx.mpf("1e-60"))


def test_value_is_real(ctx):
    res = lambda_mmv(IterandWord.of(("G6", "G4"), (1, 1)), ctx)
    assert abs(res.value.imag) < ctx.mpf("1e-60") * abs(res.value)
    assert abs(abs(res.normalization) - 1) < ctx.eps * 10


def test_axis_and_tau_kernels_agree():
    ctx = PrecisionContext(25)
    for word in [(("G4", "G6"), (1, 3)), (("Delta", "G4"), (5, 2)), (("G4", "G4", "G4"), (1, 2, 3))]:
        a = lambda_mmv(IterandWord.of(*word), ctx).value
        b = lambda_mmv(IterandWord.of(*word), ctx, kernel="tau").value
        assert _close(a, b, ctx.mpf("1e-25"))


@settings(max_examples=25, deadline=None)
@given(st.sampled_from(FORMS), st.sampled_from(FORMS), st.data())
def test_shuffle_length_two(f, g, data):
    ctx = PrecisionContext(30)
    n1 = data.draw(st.integers(1, f.weight - 1))
    n2 = data.draw(st.integers(1, g.weight - 1))
    a = mmv((f, g), (n1, n2), ctx)
    b = mmv((g, f), (n2, n1), ctx)
    prod = completed_l_value(f, n1, ctx).value * completed_l_value(g, n2, ctx).value
    # both sides vanish identically when n1, n2 are trivial zeros; compare at the pair's scale
    floor = completed_l_value(f, 1, ctx).value * completed_l_value(g, 1, ctx).value
    assert _close(a + b, prod, ctx.mpf("1e-30"), a, b, floor)


@settings(max_examples=25, deadline=None)
@given(st.lists(st.sampled_from(FORMS), min_size=1, max_size=2), st.data())
def test_reflection(forms, data):
    ctx = PrecisionContext(30)
    idx = [data.draw(st.integers(1, f.weight - 1)) for f in forms]
    word = IterandWord.of(forms, idx)
    sign, other = reflection(word)
    a = lambda_mmv(word, ctx).value.real
    b = lambda_mmv(other, ctx).value.real
    floor = 1
    for f in forms:
        floor *= completed_l_value(f, 1, ctx).value
    assert _close(a, sign * b, ctx.mpf("1e-30"), floor)


def test_reflection_sign_on_g6g4(ctx):
    # sign (-1)^((6 + 4)/2) = -1: Lambda(G6,G4;5,3) = -Lambda(G4,G6;1,1)
    sign, other = reflection(IterandWord.of(("G6", "G4"), (5, 3)))
    assert sign == -1 and other == IterandWord.of(("G4", "G6"), (1, 1))
    assert _close(mmv("G6,G4", (5, 3), ctx), -mmv("G4,G6", (1, 1), ctx), ctx.mpf("1e-60"))


def test_length_three_shuffle():
    ctx = PrecisionContext(30)
    f, g, h = G(4), G(6), G(4)
    a = (1, 2, 3)
    # Lambda(f) * Lambda(g, h) = Lambda(f,g,h) + Lambda(g,f,h) + Lambda(g,h,f)
    L1 = completed_l_value(f, a[0], ctx).value
    L2 = mmv((g, h), (a[1], a[2]), ctx)
    s = (mmv((f, g, h), a, ctx) + mmv((g, f, h), (a[1], a[0], a[2]), ctx)
         + mmv((g, h, f), (a[1], a[2], a[0]), ctx))
    assert _close(L1 * L2, s, ctx.mpf("1e-30"))


def test_path_split_point_independence(ctx):
    """Chen's formula with the path split at iy0 (tails at y0 and 1/y0) for several y0."""
    mp = ctx.mp
    word = IterandWord.of(("G4", "G10"), (1, 1))
    ref = lambda_mmv(word, ctx).value
    N = 3 * default_qterms(ctx, 2)
    for y0 in (Fraction(3, 2), Fraction(2), Fraction(3)):
        total = mp.zero
        letters = word.letters
        for k in range(len(letters) + 1):
            head, rest = letters[:k], letters[k:]
            sign = 1
            for f, _ in head:
                sign *= -1 if (f.weight // 2) % 2 else 1
            mirrored = tuple((f, f.weight - n) for f, n in reversed(head))
            total += sign * _axis_tail(mirrored, ctx, N, 1 / y0) * _axis_tail(rest, ctx, N, y0)
        assert _close(total, ref, ctx.mpf("1e-50"))


def test_qterms_convergence(ctx):
    word = IterandWord.of(("G6", "G8"), (1, 1))
    a = lambda_mmv(word, ctx).value
    b = lambda_mmv(word, ctx, qterms=2 * default_qterms(ctx, 2)).value
    assert _close(a, b, ctx.mpf("1e-60"))
    with pytest.raises(TruncationError):
        lambda_mmv(word, ctx, qterms=5)


def test_precision_doubling():
    lo, hi = PrecisionContext(40), PrecisionContext(80)
    a = mmv("G4,G10", (1, 1), lo)
    b = mmv("G4,G10", (1, 1), hi)
    assert _close(a, b, lo.mpf("1e-40"))


def test_table_shape_and_symmetry(ctx):
    t = mmv_table(G(4), G(4), ctx)
    assert t.shape == (3, 3)
    rows = t.rows()
    for i, j in product(range(3), range(3)):
        # Lambda_{i,j} = Lambda_{4-j,4-i}
        assert _close(rows[i][j].real, rows[2 - j][2 - i].real, ctx.mpf("1e-60"))


def test_tail_integral_empty_word(ctx):
    assert tail_integral(IterandWord(()), ctx) == 1


def test_s_pullback():
    assert s_pullback((G(4), 1)) == (1, (G(4), 3))
    assert s_pullback((G(4), 2)) == (-1, (G(4), 2))


def test_errors(ctx):
    with pytest.raises(UnsupportedError):
        lambda_mmv(IterandWord.of(["G4"] * 4, (1, 1, 1, 1)), ctx)
    with pytest.raises(DomainError):
        lambda_mmv(IterandWord.of(("G4",), (1,)), ctx, kernel="spline")
    with pytest.raises(DomainError):
        IterandWord.of(("G4",), (4,))

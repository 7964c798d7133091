import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mmvkit.errors import DomainError
from mmvkit.modforms import DELTA, G
from mmvkit.numerics import PrecisionContext
from mmvkit.perpoly import (
    BiPolynomial,
    DeltaStack,
    P_DELTA_MINUS,
    P_DELTA_PLUS,
    UniPolynomial,
    cancellation_check,
    coboundary,
    decompose,
    delta_layer,
    delta_stack,
    generating_function,
    lifted_period_polynomial,
    manin_split,
    period_polynomial,
    period_relation_residuals,
    solve_from_stack,
    stack_normalizer,
)

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=50)


@st.composite
def bipolys(draw, max_deg=6):
    d1 = draw(st.integers(0, max_deg))
    d2 = draw(st.integers(0, max_deg))
    rows = [[draw(fractions) for _ in range(d2 + 1)] for _ in range(d1 + 1)]
    return BiPolynomial((d1, d2), rows)


@settings(max_examples=60, deadline=None)
@given(bipolys())
def test_stack_round_trip_exact(P):
    assert solve_from_stack(delta_stack(P)) == P


def test_hundred_random_round_trips():
    rng = random.Random(7)
    for _ in range(100):
        d1, d2 = rng.randint(0, 8), rng.randint(0, 8)
        P = BiPolynomial((d1, d2), [[Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(d2 + 1)]
                                    for _ in range(d1 + 1)])
        assert solve_from_stack(delta_stack(P)) == P


@settings(max_examples=30, deadline=None)
@given(bipolys(), bipolys())
def test_stack_is_linear(P, Q):
    if P.bidegree != Q.bidegree:
        return
    a, b, c = delta_stack(P), delta_stack(Q), delta_stack(P + Q)
    for x, y, z in zip(a.layers, b.layers, c.layers):
        assert (x + y).coeffs == z.coeffs


def test_normalised_layer_of_b2():
    # B^(2) = (y1 - y2)^2 (y2^6 - 1) in bidegree (2, 8): normalised delta^2 gives y^6 - 1
    y1y2 = {(2, 0): 1, (1, 1): -2, (0, 2): 1}
    terms = {}
    for (i, j), c in y1y2.items():
        terms[(i, j + 6)] = terms.get((i, j + 6), 0) + c
        terms[(i, j)] = terms.get((i, j), 0) - c
    B2 = BiPolynomial.from_terms((2, 8), terms)
    st_ = delta_stack(B2)
    assert st_.layers[2].coeffs == UniPolynomial([-1, 0, 0, 0, 0, 0, 1]).coeffs
    assert all(c == 0 for c in st_.layers[0].coeffs) and all(c == 0 for c in st_.layers[1].coeffs)
    raw = delta_stack(B2, normalized=False)
    assert raw.layers[2].coeffs == tuple(144 * c for c in st_.layers[2].coeffs)
    assert stack_normalizer((2, 8), 2) == 144


def test_lifted_and_coboundary_live_in_single_layers():
    for bideg, k in (((2, 8), 0), ((4, 8), 1), ((4, 10), 2)):
        for sign, ref in (("+", P_DELTA_PLUS), ("-", P_DELTA_MINUS)):
            s = delta_stack(lifted_period_polynomial(bideg, sign, k))
            assert s.layers[k].coeffs == ref.coeffs
            assert all(all(c == 0 for c in s.layers[j].coeffs) for j in range(len(s.layers)) if j != k)
    with pytest.raises(DomainError):
        lifted_period_polynomial((2, 8), "+", 2)
    C = delta_stack(coboundary((2, 8), 2))
    assert C.layers[2].coeffs == UniPolynomial([-1, 0, 0, 0, 0, 0, 1]).coeffs


def test_json_round_trips():
    P = BiPolynomial((1, 2), [[Fraction(1, 3), 0, -2], [5, Fraction(7, 11), 0]])
    assert BiPolynomial.from_json(P.to_json()) == P
    u = UniPolynomial([Fraction(1, 2), 0, 3])
    assert UniPolynomial.from_json(u.to_json()) == u
    st_ = delta_stack(P)
    assert json.loads(st_.to_json())["bidegree"] == [1, 2]


def test_bad_shapes():
    with pytest.raises(DomainError):
        BiPolynomial((1, 1), [[1, 2]])
    with pytest.raises(DomainError):
        DeltaStack((2, 2), [UniPolynomial([1])])


def test_period_polynomial_of_delta(ctx):
    P = period_polynomial(DELTA, ctx)
    wp, wm = manin_split(P, ctx)
    assert abs(wp - ctx.mpf("0.114379022438848")) < ctx.mpf("1e-15")
    assert abs(wm - ctx.mpf("0.009269276162370")) < ctx.mpf("1e-15")
    two, three = period_relation_residuals(P)
    scale = max(abs(c) for c in P.coeffs)
    assert max(abs(c) for c in two.coeffs) < scale * ctx.mpf("1e-60")
    assert max(abs(c) for c in three.coeffs) < scale * ctx.mpf("1e-60")


def test_period_relations_exact_on_reference_polynomials():
    for P in (P_DELTA_PLUS, P_DELTA_MINUS):
        two, three = period_relation_residuals(P)
        assert all(c == 0 for c in two.coeffs) and all(c == 0 for c in three.coeffs)


@pytest.fixture(scope="module")
def P_g4g10(ctx):
    return generating_function(G(4), G(10), ctx)


def test_generating_function_parity(P_g4g10, ctx):
    # coefficients are purely real or purely imaginary
    for row in P_g4g10.coeffs:
        for c in row:
            c = ctx.convert(c)
            assert min(abs(c.real), abs(c.imag)) <= ctx.mpf("1e-60") * max(abs(c), 1e-30)


def test_delta_vanishing_beyond_min(P_g4g10, ctx):
    m = min(P_g4g10.bidegree)
    scale = P_g4g10.max_abs()
    for k in (m + 1, m + 2, m + 5):
        assert all(abs(c) <= scale * ctx.mpf("1e-60") for c in delta_layer(P_g4g10, k).coeffs)


def test_delta_at_min_does_not_vanish(P_g4g10, ctx):
    # the top layer delta^2 P_{G4,G10} carries zeta_{3,7}; it is not zero
    m = min(P_g4g10.bidegree)
    assert max(abs(c) for c in delta_layer(P_g4g10, m).coeffs) > ctx.mpf("1e-6")


@pytest.mark.slow
def test_decompose_g4g10():
    dec = decompose(G(4), G(10), PrecisionContext(50))
    assert not dec.unresolved
    comp = {k: v for k, v in dec.components.items()}
    assert comp[(0, "zeta_{3,9}/pi^12")] == Fraction(-315, 64)
    assert comp[(0, "c(Delta;12)")] == 1
    assert comp[(0, "Lambda(Delta;12)/pi")] == Fraction(1, 180)
    assert comp[(2, "zeta_{3,7}/pi^10")] == Fraction(175, 352)


@pytest.mark.slow
def test_cancellation(ctx):
    rep = cancellation_check(ctx)
    assert rep.passed
    assert rep.modular_free and rep.individual_needs_modular

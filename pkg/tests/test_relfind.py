from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from mmvkit.errors import DomainError
from mmvkit.mmv import mmv
from mmvkit.numerics import PrecisionContext
from mmvkit.periods import period_basis
from mmvkit.relfind import (
    IdentityCheck,
    PeriodBasis,
    Relation,
    find_relation,
    identify_rational,
    integer_relation,
    lll_reduce,
    required_digits,
    verify_identity,
)


def test_lll_small_example():
    b, d = lll_reduce([[1, 0, 0, 1000], [0, 1, 0, 1414], [0, 0, 1, 1732]])
    assert len(b) == 3 and d[0] == 1
    # reduced vectors are short
    assert min(sum(x * x for x in v) for v in b) < 1000**2


def test_lll_rejects_dependent():
    with pytest.raises(DomainError):
        lll_reduce([[1, 2], [2, 4]])


@settings(max_examples=20, deadline=None)
@given(st.integers(-50, 50), st.integers(1, 50), st.integers(-50, 50).filter(lambda x: x != 0))
def test_recovers_planted_relation(a, b, c):
    ctx = PrecisionContext(40)
    mp = ctx.mp
    x = mp.zeta(3) / mp.pi**3
    y = mp.log(2)
    target = (a * x + c * y) / b
    basis = PeriodBasis(("x", "y"), (x, y))
    rel = find_relation(target, basis, ctx, max_height=10**3)
    assert rel.found
    assert rel.coefficients == {"x": Fraction(a, b), "y": Fraction(c, b)}


def test_pslq_and_lll_agree(ctx):
    mp = ctx.mp
    basis = PeriodBasis(("z3^2/pi^6",), (mp.zeta(3) ** 2 / mp.pi**6,))
    t = mmv("G4,G4", (1, 1), ctx)
    a = find_relation(t, basis, ctx, max_height=10**3, engine="lll", cross_check=True)
    b = find_relation(t, basis, ctx, max_height=10**3, engine="pslq")
    assert a.integer_vector == b.integer_vector == (128, -1)


def test_no_relation_certificate(ctx):
    mp = ctx.mp
    basis = PeriodBasis(("pi",), (mp.pi,))
    rel = find_relation(mp.sqrt(2), basis, ctx, max_height=10**4)
    assert not rel.found and rel.margin > 1


def test_rediscovery_with_rational_and_confirmation(ctx):
    basis = period_basis(("1", "z(3)^2/pi^6"), ctx)
    t = mmv("G4,G4", (1, 3), ctx)
    rel = find_relation(t, basis, ctx, max_height=10**8, confirm=lambda c: mmv("G4,G4", (1, 3), c))
    assert rel.found
    assert rel.coefficients == {"1": Fraction(-209, 10368000), "z(3)^2/pi^6": Fraction(1, 64)}
    assert rel.confirmed_digits > 90


def test_relation_json_round_trip(ctx):
    basis = period_basis(("z(3)^2/pi^6",), ctx)
    rel = find_relation(mmv("G4,G4", (1, 1), ctx), basis, ctx, max_height=1000)
    assert Relation.from_json(rel.to_json()) == rel


def test_basis_json(ctx):
    b = period_basis(("z(3)/pi^3", "z(5)/pi^5"), ctx)
    back = PeriodBasis.from_json(b.to_json(60), ctx)
    assert back.names == b.names
    assert all(abs(x - y) < ctx.mpf("1e-55") for x, y in zip(b.values, back.values))


def test_basis_validation():
    with pytest.raises(DomainError):
        PeriodBasis(("a", "a"), (1, 2))
    with pytest.raises(DomainError):
        PeriodBasis(("a",), (1, 2))


def test_identify_rational(ctx):
    assert identify_rational(mmv("G4,G4", (2, 2), ctx), ctx) == Fraction(1, 165888)
    assert identify_rational(ctx.mp.pi, ctx) is None
    assert identify_rational(0, ctx) == 0


def test_required_digits_grows_with_height():
    assert required_digits(3, 10**12) > required_digits(3, 10**6)
    assert required_digits(2, 10**3) == 16


def test_verify_identity(ctx):
    c = verify_identity("x", ctx.mpf(1), ctx.mpf(1) + ctx.mpf("1e-45"), ctx.mpf("1e-40"), ctx)
    assert isinstance(c, IdentityCheck) and c.passed
    c = verify_identity("x", ctx.mpf("1e-50"), ctx.mpf("2e-50"), ctx.mpf("1e-40"), ctx, relative=True)
    assert not c.passed

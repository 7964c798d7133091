import json

import mpmath
import pytest

from mmvkit.errors import DomainError
from mmvkit.identities import REGISTRY, identity_ids, verify
from mmvkit.numerics import PrecisionContext

SPEC_IDS = ["gkz12", "f93period", "f75period", "f37period", "transfer-G4G8", "transfer-Delta",
            "ihara-takao-modular", "rankin-selberg-12", "legendre-delta", "critical-ratio-delta"]


def test_registry_contains_required_ids():
    assert set(SPEC_IDS) <= set(identity_ids())


@pytest.mark.parametrize("ident", identity_ids())
def test_every_identity_confirms(ident, ctx):
    rep = verify(ident, ctx)
    assert rep.passed, rep.text()
    expected = "CONJECTURAL-CONFIRMED" if REGISTRY[ident].status == "CONJECTURAL" else "PROVED-CONFIRMED"
    assert rep.label == expected


def test_conjectural_labels():
    for i in ("f93period", "f75period", "f37period", "ihara-takao-modular"):
        assert REGISTRY[i].status == "CONJECTURAL"


def test_persistence_under_doubling():
    lo = verify("f93period", PrecisionContext(40)).checks[0]
    hi = verify("f93period", PrecisionContext(80)).checks[0]
    assert hi.residual < lo.residual * mpmath.mpf("1e-30")


def test_json_round_trip_reproduces_residuals(ctx):
    rep = verify("f37period", ctx)
    d = json.loads(rep.to_json())
    for chk, orig in zip(d["checks"], rep.checks):
        with mpmath.workdps(ctx.working_digits + 40):
            r = abs(mpmath.mpf(chk["lhs"]) - mpmath.mpf(chk["rhs"]))
            assert abs(r - orig.residual) <= orig.residual * mpmath.mpf("1e-3") + mpmath.mpf(10) ** -(ctx.working_digits + 20)


def test_critical_ratio_notes(ctx):
    rep = verify("critical-ratio-delta", ctx)
    assert any("14:9:9:14" in n for n in rep.notes)


def test_unknown_id(ctx):
    with pytest.raises(DomainError):
        verify("nope", ctx)

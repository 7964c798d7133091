"""Registry of the explicit identities between multiple modular values, L-values and MZVs.

Every entry evaluates both sides at a given precision and returns a report.
Identities that are only known numerically are labelled CONJECTURAL and a
passing check reports CONJECTURAL-CONFIRMED, never PROVED.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .errors import DomainError
from .lvalues import completed_l_value
from .mmv import mmv
from .modforms import DELTA, G
from .mzv import mzv, zeta_rep
from .numerics import PrecisionContext
from .periods import c_delta_12, lambda_delta_12_over_pi, omega_minus, omega_plus
from .relfind import IdentityCheck, verify_identity

__all__ = ["Identity", "IdentityReport", "REGISTRY", "identity_ids", "verify"]

PROVED = "PROVED"
CONJECTURAL = "CONJECTURAL"

# Quasi-periods of Delta, as printed (15 digits)
ETA_PLUS = "211.113366616704346"
ETA_MINUS = "17.055972753974248"


@dataclass(frozen=True)
class IdentityReport:
    id: str
    title: str
    status: str
    checks: tuple[IdentityCheck, ...]
    digits: int
    notes: tuple[str, ...] = ()

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def label(self) -> str:
        return f"{self.status}-{'CONFIRMED' if self.passed else 'FAILED'}"

    def text(self) -> str:
        lines = [f"{self.id}: {self.label}  ({self.title})"]
        for c in self.checks:
            lines.append(
                f"  {c.name}: residual {float(c.residual):.3e}, tolerance {float(c.tolerance):.0e}, "
                f"agreement {c.agreement_digits:.1f} digits"
            )
        lines.extend(f"  note: {n}" for n in self.notes)
        return "\n".join(lines)

    def to_dict(self, digits: int | None = None) -> dict:
        def s(x):
            # enough digits to recover the stored binary value, so that the
            # residual can be recomputed from the strings alone
            n = digits or x.context.dps + 25
            return mpmath.nstr(x, n, strip_zeros=False, min_fixed=-30, max_fixed=30)

        return {
            "id": self.id,
            "title": self.title,
            "status": self.label,
            "digits": self.digits,
            "checks": [
                {"name": c.name, "lhs": s(c.lhs), "rhs": s(c.rhs), "residual": mpmath.nstr(c.residual, 5),
                 "tolerance": mpmath.nstr(c.tolerance, 5), "passed": c.passed}
                for c in self.checks
            ],
            "notes": list(self.notes),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class Identity:
    """``sides(ctx)`` returns ``[(name, lhs, rhs), ...]``; all must agree.

    ``slack`` is subtracted from the requested digits to get the relative
    tolerance exponent; ``fixed_tolerance`` overrides it (for identities with printed
    constants of limited precision).
    """

    id: str
    title: str
    status: str
    sides: Callable[[PrecisionContext], list]
    slack: int = 10
    fixed_tolerance: str | None = None
    notes: Callable[[PrecisionContext], tuple] = field(default=lambda ctx: ())

    def tolerance(self, ctx: PrecisionContext):
        if self.fixed_tolerance is not None:
            return ctx.mpf(self.fixed_tolerance)
        return ctx.mp.mpf(10) ** (-(ctx.decimal_digits - self.slack))

    def run(self, ctx: PrecisionContext) -> IdentityReport:
        tol = self.tolerance(ctx)
        checks = tuple(verify_identity(name, lhs, rhs, tol, ctx, relative=True) for name, lhs, rhs in self.sides(ctx))
        return IdentityReport(self.id, self.title, self.status, checks, ctx.decimal_digits, tuple(self.notes(ctx)))


# ---------------------------------------------------------------------------


def _L(ctx, forms, indices):
    return mmv(forms, indices, ctx)


def _q(ctx, num, den=1):
    return ctx.mpf(Fraction(num, den))


def _gkz(ctx):
    z = lambda *i: mzv(i, ctx)  # noqa: E731
    return [("28 z(3,9) + 150 z(5,7) + 168 z(7,5) = 5197/691 z(12)",
             28 * z(3, 9) + 150 * z(5, 7) + 168 * z(7, 5), _q(ctx, 5197, 691) * z(12))]


def _f93(ctx):
    pi = ctx.mp.pi
    rhs = _q(ctx, 2**2 * 3**2, 691) * c_delta_12(ctx) - _q(ctx, 3**2 * 5 * 7, 2**6) * zeta_rep((3, 9), ctx).value / pi**12
    return [("Lambda(G4,G10;1,1)", _L(ctx, (G(4), G(10)), (1, 1)), rhs)]


def _f75(ctx):
    pi = ctx.mp.pi
    rhs = -_q(ctx, 2 * 3**4, 7 * 691) * c_delta_12(ctx) - _q(ctx, 3**3 * 5, 2**7) * zeta_rep((5, 7), ctx).value / pi**12
    return [("Lambda(G6,G8;1,1)", _L(ctx, (G(6), G(8)), (1, 1)), rhs)]


def _f37(ctx):
    pi = ctx.mp.pi
    rhs = (_q(ctx, 4027, 2**8 * 3**5 * 5**2 * 7 * 11**2) + c_delta_12(ctx) / 45
           - _q(ctx, 5**2 * 7, 2**5 * 11) * zeta_rep((3, 7), ctx).value / pi**10)
    return [("Lambda(G4,G10;3,1)", _L(ctx, (G(4), G(10)), (3, 1)), rhs)]


def _shift(ctx):
    lhs = _L(ctx, (G(4), G(10)), (2, 6)) - _L(ctx, (G(4), G(10)), (3, 5))
    return [("Lambda(G4,G10;2,6) - Lambda(G4,G10;3,5)", lhs, _q(ctx, 13, 2**12 * 3**5 * 5**2 * 7 * 11))]


def _transfer_g4g8(ctx):
    lhs = 14 * _L(ctx, (G(4), G(10)), (3, 5)) - 9 * _L(ctx, (G(4), G(10)), (3, 1))
    rhs = _q(ctx, 2**2 * 5 * 7, 11) * _L(ctx, (G(4), G(8)), (1, 1)) + _q(ctx, 157, 2**7 * 3**3 * 5**2 * 11**2)
    return [("14 L(G4,G10;3,5) - 9 L(G4,G10;3,1)", lhs, rhs)]


def _g4g8_period(ctx):
    pi = ctx.mp.pi
    rhs = _q(ctx, 3**2 * 5, 2**7) * zeta_rep((3, 7), ctx).value / pi**10 - _q(ctx, 83, 2**10 * 3**2 * 5 * 7**2 * 11)
    return [("Lambda(G4,G8;1,1)", _L(ctx, (G(4), G(8)), (1, 1)), rhs)]


def _transfer_delta(ctx):
    pi = ctx.mp.pi
    lam = lambda s: completed_l_value(DELTA, s, ctx).value  # noqa: E731
    left = (44 * _L(ctx, (DELTA, G(4)), (11, 1)) - 110 * _L(ctx, (DELTA, G(4)), (10, 2))
            + 15 * _L(ctx, (DELTA, G(4)), (6, 2))) / (2**3 * 3**3 * 5**2 * 11)
    middle = (lam(3) * (30 * _L(ctx, (G(4), G(10)), (2, 5)) + 24 * _L(ctx, (G(4), G(10)), (3, 4)))
              - 35 * lam(2) * _L(ctx, (G(4), G(10)), (3, 5)))
    right = omega_plus(ctx) * completed_l_value(DELTA, 12, ctx).value / (900 * pi) - omega_minus(ctx) * c_delta_12(ctx) / 5
    return [("Lambda(Delta,G4) side = Lambda(Delta)Lambda(G4,G10) side", left, middle),
            ("Lambda(Delta)Lambda(G4,G10) side = periods", middle, right)]


def _ihara_takao(ctx):
    pi = ctx.mp.pi
    lhs = 9 * _L(ctx, (G(4), G(10)), (1, 1)) + 14 * _L(ctx, (G(6), G(8)), (1, 1))
    rhs = -_q(ctx, 3**3 * 5 * 7, 2**6) * (zeta_rep((5, 7), ctx).value + 3 * zeta_rep((3, 9), ctx).value) / pi**12
    return [("9 L(G4,G10;1,1) + 14 L(G6,G8;1,1)", lhs, rhs)]


def _rankin_selberg(ctx):
    rhs = 600 * _L(ctx, (G(4), G(10)), (2, 5)) + 480 * _L(ctx, (G(4), G(10)), (3, 4))
    return [("Lambda(Delta;12)/pi", lambda_delta_12_over_pi(ctx), rhs)]


def _legendre(ctx):
    mp = ctx.mp
    lhs = ctx.mpf(ETA_PLUS) * omega_minus(ctx) - omega_plus(ctx) * ctx.mpf(ETA_MINUS)
    return [("eta+ omega- - omega+ eta-", lhs, mp.factorial(10) / (2 * mp.pi) ** 11)]


def _critical_ratio(ctx):
    lam = {s: completed_l_value(DELTA, s, ctx).value for s in (3, 5, 7, 9)}
    unit = lam[3] / 14
    return [
        ("Lambda(Delta;5) / Lambda(Delta;3) = 9/14", lam[5], 9 * unit),
        ("Lambda(Delta;7) / Lambda(Delta;3) = 9/14", lam[7], 9 * unit),
        ("Lambda(Delta;9) / Lambda(Delta;3) = 1", lam[9], 14 * unit),
    ]


def _critical_notes(ctx):
    mp = ctx.mp
    vals = [completed_l_value(DELTA, s, ctx).value for s in (3, 5, 7, 9)]
    signs = [(-1 if k % 4 == 3 else 1) for k in (3, 5, 7, 9)]  # i^k = sign * i
    ratio = [mp.nint(14 * sg * v / (signs[0] * vals[0])) for sg, v in zip(signs, vals)]
    shown = ":".join(str(int(r)) for r in ratio)
    return (
        "Lambda(Delta;k), k = 3,5,7,9 are all positive and proportional to 14:9:9:14",
        f"multiplying by i^k gives ({shown}) times i; the printed sign pattern 14:-9:-9:14 "
        "is not of the form i^k Lambda(Delta;k)",
    )


_ENTRIES = [
    Identity("gkz12", "weight 12 double zeta relation", PROVED, _gkz),
    Identity("f93period", "Lambda(G4,G10;1,1) via c(Delta;12) and zeta_{3,9}", CONJECTURAL, _f93),
    Identity("f75period", "Lambda(G6,G8;1,1) via c(Delta;12) and zeta_{5,7}", CONJECTURAL, _f75),
    Identity("f37period", "Lambda(G4,G10;3,1) via c(Delta;12) and zeta_{3,7}", CONJECTURAL, _f37),
    Identity("rational-shift", "Lambda(G4,G10;2,6) and 70^-1 c(Delta;12) differ by a rational", PROVED, _shift),
    Identity("transfer-G4G8", "transference between (G4,G10) and (G4,G8)", PROVED, _transfer_g4g8, slack=15),
    Identity("g4g8-period", "Lambda(G4,G8;1,1) via zeta_{3,7}", CONJECTURAL, _g4g8_period),
    Identity("transfer-Delta", "transference between (Delta,G4) and (G4,G10)", PROVED, _transfer_delta, slack=15),
    Identity("ihara-takao-modular", "modular incarnation of the Ihara-Takao relation", CONJECTURAL, _ihara_takao,
             slack=15),
    Identity("rankin-selberg-12", "non-critical value Lambda(Delta;12) as double Eisenstein integrals", PROVED,
             _rankin_selberg),
    Identity("legendre-delta", "Legendre relation for the periods of Delta", PROVED, _legendre,
             fixed_tolerance="1e-10"),
    Identity("critical-ratio-delta", "ratios of the odd critical values of Delta", PROVED, _critical_ratio,
             notes=_critical_notes),
]

REGISTRY: dict[str, Identity] = {e.id: e for e in _ENTRIES}


def identity_ids() -> tuple[str, ...]:
    return tuple(REGISTRY)


def verify(identity_id: str, ctx: PrecisionContext) -> IdentityReport:
    try:
        entry = REGISTRY[identity_id]
    except KeyError:
        raise DomainError(f"unknown identity {identity_id!r}; known: {', '.join(REGISTRY)}") from None
    return entry.run(ctx)

"""Named periods shared by the decomposition, the identity registry and the CLI."""

from __future__ import annotations

from typing import Callable

from .lvalues import completed_l_value
from .mmv import mmv
from .modforms import DELTA, G
from .mzv import mzv, zeta_rep
from .numerics import PrecisionContext
from .relfind import PeriodBasis

__all__ = [
    "c_delta_12",
    "lambda_delta_12_over_pi",
    "omega_plus",
    "omega_minus",
    "EVEN_ELEMENTS",
    "ODD_ELEMENTS",
    "MODULAR_NAMES",
    "period_basis",
]


def c_delta_12(ctx: PrecisionContext):
    """``c(Delta; 12) = 70 Lambda(G4, G10; 3, 5)``; a modular period, defined up to a rational."""
    return 70 * mmv((G(4), G(10)), (3, 5), ctx)


def lambda_delta_12_over_pi(ctx: PrecisionContext):
    return completed_l_value(DELTA, 12, ctx).value / ctx.mp.pi


def omega_plus(ctx: PrecisionContext):
    return 45 * completed_l_value(DELTA, 3, ctx).value


def omega_minus(ctx: PrecisionContext):
    return completed_l_value(DELTA, 2, ctx).value * 5 / 2


def _zprod(*indices) -> Callable:
    weight = sum(sum(i) for i in indices)

    def fn(ctx):
        v = ctx.mp.one
        for i in indices:
            v *= mzv(i, ctx)
        return v / ctx.mp.pi ** weight

    return fn


def _rep(index) -> Callable:
    return lambda ctx: zeta_rep(index, ctx).value / ctx.mp.pi ** sum(index)


# Real coefficients of P_{f,g} (even total weight) for weights f + g <= 12.
EVEN_ELEMENTS: dict[str, Callable] = {
    "1": lambda ctx: ctx.mp.one,
    "z(3)^2/pi^6": _zprod((3,), (3,)),
    "z(3)z(5)/pi^8": _zprod((3,), (5,)),
    "zeta_{5,3}/pi^8": _rep((5, 3)),
    "z(3)z(7)/pi^10": _zprod((3,), (7,)),
    "z(5)^2/pi^10": _zprod((5,), (5,)),
    "zeta_{3,7}/pi^10": _rep((3, 7)),
    "z(3)z(9)/pi^12": _zprod((3,), (9,)),
    "z(5)z(7)/pi^12": _zprod((5,), (7,)),
    "zeta_{3,9}/pi^12": _rep((3, 9)),
    "zeta_{5,7}/pi^12": _rep((5, 7)),
    "c(Delta;12)": c_delta_12,
}

# Imaginary coefficients (odd total weight).
ODD_ELEMENTS: dict[str, Callable] = {
    "z(3)/pi^3": _zprod((3,)),
    "z(5)/pi^5": _zprod((5,)),
    "z(7)/pi^7": _zprod((7,)),
    "z(9)/pi^9": _zprod((9,)),
    "z(11)/pi^11": _zprod((11,)),
    "Lambda(Delta;12)/pi": lambda_delta_12_over_pi,
}

MODULAR_NAMES = ("c(Delta;12)", "Lambda(Delta;12)/pi")


def period_basis(names, ctx: PrecisionContext) -> PeriodBasis:
    """Basis of the named elements (from :data:`EVEN_ELEMENTS` or :data:`ODD_ELEMENTS`)."""
    table = {**EVEN_ELEMENTS, **ODD_ELEMENTS}
    return PeriodBasis.build({n: table[n] for n in names}, ctx)

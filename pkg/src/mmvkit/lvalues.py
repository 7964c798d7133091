"""Completed L-values Lambda(f; s) = (2 pi)^-s Gamma(s) L(f, s) for G_2k and Delta."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError, PoleError, UnsupportedError
from .modforms import DELTA, FormId, G, delta
from .numerics import PrecisionContext, riemann_zeta, upper_incomplete_gamma

__all__ = [
    "CompletedLValue",
    "lambda_eisenstein",
    "lambda_cuspform",
    "completed_l_value",
]


@dataclass(frozen=True)
class CompletedLValue:
    form: FormId
    s: int
    value: object
    method: str  # "zeta_factorization" or "incomplete_gamma"


def lambda_eisenstein(k2: int, s: int, ctx: PrecisionContext) -> CompletedLValue:
    """Completed L-value of ``G_k2`` from ``L(G_k2, s) = zeta(s) zeta(s - k2 + 1)``.

    The completed function has simple poles at ``s = 0`` and ``s = k2`` only.  At
    ``s = 1`` the pole of ``zeta(s)`` meets a trivial zero, and the value is taken
    from the functional equation; arguments ``s < 0`` go through it as well.
    """
    form = G(k2)
    if s in (0, k2):
        raise PoleError(f"Lambda(G{k2}; s) has a pole at s = {s}")
    if s == 1 or s < 0:
        reflected = lambda_eisenstein(k2, k2 - s, ctx).value
        sign = -1 if (k2 // 2) % 2 else 1
        return CompletedLValue(form, s, sign * reflected, "zeta_factorization")
    mp = ctx.mp
    second = riemann_zeta(s - k2 + 1, ctx)
    if second == 0:
        return CompletedLValue(form, s, mp.zero, "zeta_factorization")
    value = (2 * mp.pi) ** (-s) * mp.factorial(s - 1) * riemann_zeta(s, ctx) * second
    return CompletedLValue(form, s, value, "zeta_factorization")


def _delta_terms(ctx: PrecisionContext, s: int, w: int) -> int:
    # |a_n| <= n^7 and Gamma(m, x) <= m! x^m e^{-x} (x >= m); solve e^{-2 pi n} n^(7+m) < eps
    target = ctx.working_digits * math.log(10) + 10
    n = 1
    m = max(s, abs(w - s)) + 8
    while 2 * math.pi * n - m * math.log(2 * math.pi * n + 1) - math.lgamma(m + 1) < target:
        n += 1
    return n + 2


def lambda_cuspform(form: FormId, s: int, ctx: PrecisionContext) -> CompletedLValue:
    """``Lambda(Delta; s)`` for integers ``s >= 1`` (critical or not).

    Uses ``Lambda(s) = int_1^oo Delta(iy) (y^{s-1} + y^{w-1-s}) dy`` termwise:
    the second integral is ``(2 pi n)^{s-w} Gamma(w - s, 2 pi n)`` for ``s < w`` and
    the generalized exponential integral ``E_{s-w+1}(2 pi n)`` for ``s >= w``.
    """
    if form != DELTA:
        raise UnsupportedError(f"only Delta is implemented among cusp forms, got {form}")
    if s <= 0:
        raise UnsupportedError("lambda_cuspform needs s >= 1")
    mp = ctx.mp
    w = form.weight
    N = _delta_terms(ctx, s, w)
    f = delta(N)
    sign = -1 if (w // 2) % 2 else 1
    total = mp.zero
    for n, a in f.items():
        if a == 0:
            continue
        x = 2 * mp.pi * n
        first = x ** (-s) * upper_incomplete_gamma(s, x, ctx)
        if w - s >= 1:
            second = x ** (s - w) * upper_incomplete_gamma(w - s, x, ctx)
        else:
            second = mp.expint(s - w + 1, x)
        total += ctx.mpf(a) * (first + sign * second)
    return CompletedLValue(form, s, total, "incomplete_gamma")


def completed_l_value(form: FormId, s: int, ctx: PrecisionContext) -> CompletedLValue:
    if form.is_eisenstein:
        return lambda_eisenstein(form.weight, s, ctx)
    if form == DELTA:
        return lambda_cuspform(form, s, ctx)
    raise UnsupportedError(f"no L-function implemented for {form}")

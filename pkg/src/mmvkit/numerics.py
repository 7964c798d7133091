"""Arbitrary-precision plumbing: precision contexts, Bernoulli numbers, zeta, Gamma(s, x).

Every high-precision number in mmvkit is an mpmath ``mpf`` (real) or ``mpc``
(complex) created by the private :class:`mpmath.MPContext` of a
:class:`PrecisionContext`.  Nothing touches the global ``mpmath.mp`` state, so
contexts can be shared between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import mpmath

from .errors import DomainError, PoleError

__all__ = [
    "PrecisionContext",
    "bernoulli",
    "riemann_zeta",
    "upper_incomplete_gamma",
    "agreement_digits",
]


@dataclass(frozen=True)
class PrecisionContext:
    """Requested output digits plus guard digits used internally.

    >>> ctx = PrecisionContext(30)
    >>> ctx.working_digits
    50
    """

    decimal_digits: int = 50
    guard_digits: int = 20
    mp: mpmath.ctx_mp.MPContext = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if self.decimal_digits < 1:
            raise DomainError("decimal_digits must be positive")
        if self.guard_digits < 20:
            raise DomainError("guard_digits must be at least 20")
        mp = mpmath.MPContext()
        mp.dps = self.working_digits
        object.__setattr__(self, "mp", mp)

    @property
    def working_digits(self) -> int:
        return self.decimal_digits + self.guard_digits

    @property
    def eps(self):
        """10**(-working_digits) as an mpf of this context."""
        return self.mp.mpf(10) ** (-self.working_digits)

    @property
    def tolerance(self):
        """10**(-decimal_digits): the accuracy every public value is expected to meet."""
        return self.mp.mpf(10) ** (-self.decimal_digits)

    def doubled(self) -> "PrecisionContext":
        return PrecisionContext(2 * self.decimal_digits, self.guard_digits)

    def mpf(self, x):
        """Convert an int, Fraction, str or mpmath number into this context."""
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        return self.mp.mpf(x)

    def convert(self, x):
        """Like :meth:`mpf` but keeps complex values complex."""
        if isinstance(x, Fraction):
            return self.mpf(x)
        if isinstance(x, complex) or hasattr(x, "_mpc_"):
            return self.mp.mpc(x.real, x.imag)
        return self.mp.mpf(x)

    def nstr(self, x, digits: int | None = None) -> str:
        """Decimal string with ``decimal_digits`` digits after the leading one.

        >>> PrecisionContext(15).nstr(PrecisionContext(15).mp.pi)
        '3.141592653589793'
        """
        return self.mp.nstr(x, (digits or self.decimal_digits) + 1, min_fixed=-30, max_fixed=30)


@lru_cache(maxsize=None)
def _bernoulli_table(n: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{m} C(m+1, k) B_k = 0 for m >= 1, with B_0 = 1.
    table = [Fraction(1)]
    for m in range(1, n + 1):
        total = sum(math.comb(m + 1, k) * table[k] for k in range(m))
        table.append(-total / (m + 1))
    return tuple(table)


def bernoulli(n: int) -> Fraction:
    """Bernoulli number ``b_n`` for even ``n >= 2`` (so ``b_2 = 1/6``).

    >>> bernoulli(12)
    Fraction(-691, 2730)
    """
    if n < 2 or n % 2:
        raise DomainError(f"bernoulli expects an even integer >= 2, got {n}")
    return _bernoulli_table(n)[n]


def riemann_zeta(s: int, ctx: PrecisionContext):
    """Riemann zeta at an integer ``s != 1``.

    Non-positive arguments use the closed forms ``zeta(0) = -1/2``,
    ``zeta(-2n) = 0`` and ``zeta(1 - 2n) = -b_2n / 2n``.  For ``s >= 2`` mpmath's zeta is used.
    """
    if s == 1:
        raise PoleError("zeta has a pole at s = 1")
    if s == 0:
        return ctx.mpf(Fraction(-1, 2))
    if s < 0:
        if s % 2 == 0:
            return ctx.mp.zero
        n = (1 - s) // 2
        return ctx.mpf(-bernoulli(2 * n) / (2 * n))
    return ctx.mp.zeta(s)


def upper_incomplete_gamma(s: int, x, ctx: PrecisionContext):
    """``Gamma(s, x)`` for a natural number ``s`` via the finite closed form.

    ``Gamma(s, x) = (s-1)! e^{-x} sum_{j<s} x^j / j!``.
    """
    if s < 1 or int(s) != s:
        raise DomainError("upper_incomplete_gamma expects a natural number s >= 1")
    mp = ctx.mp
    x = ctx.mpf(x)
    if x < 0:
        raise DomainError("upper_incomplete_gamma expects x > 0")
    term = mp.one
    acc = mp.one
    for j in range(1, s):
        term = term * x / j
        acc += term
    return mp.factorial(s - 1) * mp.exp(-x) * acc


def agreement_digits(a, b, ctx: PrecisionContext) -> float:
    """Number of agreeing decimal digits, relative to ``max(1, |a|)``."""
    mp = ctx.mp
    diff = abs(a - b)
    scale = max(mp.one, abs(a))
    if diff == 0:
        return float(ctx.working_digits)
    return float(-mp.log10(diff / scale))

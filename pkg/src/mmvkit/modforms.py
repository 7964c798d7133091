"""Exact q-expansions of the level-one forms used throughout: G_2k, Delta and Delta'.

Coefficients are kept as :class:`fractions.Fraction` (integers for Delta and
Delta') and only converted to mpmath numbers at evaluation time.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, TruncationError, UnsupportedError
from .numerics import PrecisionContext, bernoulli

__all__ = [
    "FormId",
    "QExpansion",
    "G",
    "DELTA",
    "DELTA_PRIME",
    "eisenstein",
    "delta",
    "delta_prime",
    "expansion",
    "evaluate_at_iy",
    "truncation_for_digits",
    "divisor_sigma",
]

EISENSTEIN = "Eisenstein"
DELTA_KIND = "Delta"
DELTA_PRIME_KIND = "DeltaPrime"


@dataclass(frozen=True, order=True)
class FormId:
    kind: str
    weight: int

    def __post_init__(self):
        if self.kind == EISENSTEIN:
            if self.weight < 4 or self.weight % 2:
                raise DomainError(f"Eisenstein series need even weight >= 4, got {self.weight}")
        elif self.kind in (DELTA_KIND, DELTA_PRIME_KIND):
            if self.weight != 12:
                raise DomainError(f"{self.kind} has weight 12")
        else:
            raise DomainError(f"unknown form kind {self.kind!r}")

    @property
    def is_cusp_form(self) -> bool:
        return self.kind == DELTA_KIND

    @property
    def is_eisenstein(self) -> bool:
        return self.kind == EISENSTEIN

    def __str__(self):
        return f"G{self.weight}" if self.kind == EISENSTEIN else self.kind

    @classmethod
    def parse(cls, text: str) -> "FormId":
        """Parse ``"G4"``, ``"E10"``, ``"Delta"`` or ``"DeltaPrime"``."""
        t = text.strip()
        m = re.fullmatch(r"[GgEe](\d+)", t)
        if m:
            return cls(EISENSTEIN, int(m.group(1)))
        low = t.lower()
        if low in ("delta", "d", "Δ"):
            return DELTA
        if low in ("deltaprime", "delta'", "delta_prime"):
            return DELTA_PRIME
        raise DomainError(f"cannot parse form {text!r}")


def G(k2: int) -> FormId:
    """Identifier of the Eisenstein series of weight ``k2``."""
    return FormId(EISENSTEIN, k2)


DELTA = FormId(DELTA_KIND, 12)
DELTA_PRIME = FormId(DELTA_PRIME_KIND, 12)


@dataclass(frozen=True)
class QExpansion:
    """Truncated Fourier expansion ``sum_{n = leading_order}^{N} a_n q^n``."""

    kind: str
    weight: int
    leading_order: int
    coeffs: tuple[Fraction, ...]

    @property
    def truncation(self) -> int:
        return self.leading_order + len(self.coeffs) - 1

    def __getitem__(self, n: int) -> Fraction:
        if n < self.leading_order:
            return Fraction(0)
        if n > self.truncation:
            raise TruncationError(f"coefficient a_{n} beyond truncation N={self.truncation}")
        return self.coeffs[n - self.leading_order]

    def items(self):
        return enumerate(self.coeffs, start=self.leading_order)

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind,
                "weight": self.weight,
                "leading_order": self.leading_order,
                "coeffs": [str(c) for c in self.coeffs],
            }
        )

    @classmethod
    def from_json(cls, text: str) -> "QExpansion":
        d = json.loads(text)
        return cls(d["kind"], int(d["weight"]), int(d["leading_order"]),
                   tuple(Fraction(c) for c in d["coeffs"]))


def divisor_sigma(k: int, n: int) -> int:
    total = 0
    d = 1
    while d * d <= n:
        if n % d == 0:
            total += d**k
            e = n // d
            if e != d:
                total += e**k
        d += 1
    return total


def eisenstein(k2: int, N: int) -> QExpansion:
    """``G_k2 = -b_k2 / (2 k2) + sum sigma_{k2-1}(n) q^n`` up to ``q^N``."""
    if k2 == 2:
        raise UnsupportedError("weight 2 Eisenstein series is not modular and not supported")
    FormId(EISENSTEIN, k2)
    a0 = -bernoulli(k2) / (2 * k2)
    coeffs = (a0,) + tuple(Fraction(divisor_sigma(k2 - 1, n)) for n in range(1, N + 1))
    return QExpansion(EISENSTEIN, k2, 0, coeffs)


def _series_mul(a: list, b: list, n_terms: int) -> list:
    out = [0] * n_terms
    for i, x in enumerate(a[:n_terms]):
        if x:
            for j, y in enumerate(b[: n_terms - i]):
                out[i + j] += x * y
    return out


def _series_pow(a: list, e: int, n_terms: int) -> list:
    result = [1] + [0] * (n_terms - 1)
    base = a[:n_terms]
    while e:
        if e & 1:
            result = _series_mul(result, base, n_terms)
        e >>= 1
        if e:
            base = _series_mul(base, base, n_terms)
    return result


def _euler_product(n_terms: int) -> list[int]:
    # prod (1 - q^n) via the pentagonal number theorem
    out = [0] * n_terms
    k = 0
    while True:
        hit = False
        for kk in ((k, -k) if k else (0,)):
            e = kk * (3 * kk - 1) // 2
            if e < n_terms:
                out[e] += -1 if kk % 2 else 1
                hit = True
        if not hit:
            break
        k += 1
    return out


@lru_cache(maxsize=64)
def delta(N: int) -> QExpansion:
    """Ramanujan's ``Delta = q prod (1 - q^n)^24`` up to ``q^N``."""
    if N < 1:
        raise DomainError("delta needs N >= 1")
    eta24 = _series_pow(_euler_product(N), 24, N)
    return QExpansion(DELTA_KIND, 12, 1, tuple(Fraction(c) for c in eta24))


def _e4(n_terms: int) -> list[int]:
    return [1] + [240 * divisor_sigma(3, n) for n in range(1, n_terms)]


def _series_inverse(a: list, n_terms: int) -> list:
    # a[0] must be +-1 so the inverse stays integral
    assert a[0] in (1, -1)
    inv = [Fraction(0)] * n_terms
    inv[0] = Fraction(1, a[0])
    for n in range(1, n_terms):
        s = sum(a[k] * inv[n - k] for k in range(1, min(n, len(a) - 1) + 1))
        inv[n] = -s / a[0]
    return inv


@lru_cache(maxsize=16)
def delta_prime(N: int) -> QExpansion:
    """Weakly holomorphic ``Delta' = q^-1 + O(q^2)`` of weight 12, up to ``q^N``.

    Built as ``Delta (j^2 + alpha j + beta)`` with ``alpha``, ``beta`` chosen to
    kill the ``q^0`` and ``q^1`` coefficients.
    """
    if N < 2:
        raise DomainError("delta_prime needs N >= 2")
    L = N + 2  # series in q shifted by one: index i <-> q^(i-1)
    eta24 = _series_pow(_euler_product(L + 1), 24, L + 1)  # Delta / q
    inv = _series_inverse(eta24, L + 1)  # q / Delta
    e4 = _e4(L + 1)
    e4_3 = _series_pow(e4, 3, L + 1)
    e4_6 = _series_mul(e4_3, e4_3, L + 1)
    # Delta j^2 = E4^6 / Delta  -> q^{-1} * (e4_6 * inv)
    a = _series_mul(e4_6, inv, L + 1)  # index i <-> q^(i-1)
    b = [0] + e4_3[:L]  # Delta j = E4^3, shifted into the same indexing
    c = [0, 0] + eta24[: L - 1]  # Delta
    # Solve a[1] + alpha b[1] + beta c[1] = 0 and a[2] + alpha b[2] + beta c[2] = 0.
    det = b[1] * c[2] - b[2] * c[1]
    assert det != 0, "singular system for Delta' (cannot happen)"
    alpha = Fraction(-a[1] * c[2] + a[2] * c[1], det)
    beta = Fraction(-b[1] * a[2] + b[2] * a[1], det)
    coeffs = [a[i] + alpha * b[i] + beta * c[i] for i in range(N + 2)]
    assert coeffs[1] == 0 and coeffs[2] == 0
    return QExpansion(DELTA_PRIME_KIND, 12, -1, tuple(Fraction(x) for x in coeffs))


def expansion(form: FormId, N: int) -> QExpansion:
    if form.kind == EISENSTEIN:
        return _eisenstein_cached(form.weight, N)
    if form == DELTA:
        return delta(N)
    return delta_prime(N)


@lru_cache(maxsize=128)
def _eisenstein_cached(k2: int, N: int) -> QExpansion:
    return eisenstein(k2, N)


def truncation_for_digits(digits: int, extra: int = 10) -> int:
    """q-truncation giving ``digits`` correct digits at ``y >= 1``."""
    return math.ceil(digits * math.log(10) / (2 * math.pi)) + extra


def coefficient_bound(kind: str, weight: int, n: int) -> float:
    """Crude upper bound for ``|a_n|``, used for tail estimates."""
    if kind == DELTA_PRIME_KIND:
        return math.exp(4 * math.pi * math.sqrt(n))
    # sigma_{w-1}(n) <= zeta(w-1) n^{w-1} <= 2 n^{w-1}; Deligne: |tau(n)| <= d(n) n^{11/2}
    return 2.0 * float(n) ** (weight - 1)


def evaluate_at_iy(f: QExpansion, y, drop_constant: bool, ctx: PrecisionContext):
    """``sum a_n e^{-2 pi n y}`` (without ``a_0`` if ``drop_constant``).

    Raises :class:`TruncationError` when the neglected tail could exceed the
    working precision.
    """
    mp = ctx.mp
    y = ctx.mpf(y)
    if y <= 0:
        raise DomainError("evaluate_at_iy needs y > 0")
    if y == mp.inf:
        return ctx.mpf(f[0]) if not drop_constant and f.leading_order <= 0 else mp.zero
    q = mp.exp(-2 * mp.pi * y)
    total = mp.zero
    for n, a in f.items():
        if a == 0 or (drop_constant and n == 0):
            continue
        total += ctx.mpf(a) * q**n
    N = f.truncation
    tail_bound = 2 * coefficient_bound(f.kind, f.weight, N + 1) * mp.exp(-2 * mp.pi * (N + 1) * y)
    if tail_bound > ctx.eps * max(mp.one, abs(total)):
        raise TruncationError(
            f"truncation N={N} too small for {ctx.working_digits} digits at y={mp.nstr(y, 5)}"
        )
    return total

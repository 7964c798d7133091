"""Integer relation detection against a declared basis of periods.

The primary engine is an exact integral LLL reduction (all arithmetic on
Python integers) of the lattice spanned by ``e_i (+) round(C x_i)``.  mpmath's
PSLQ is available as a second, unrelated engine; :func:`find_relation` can run
both and insists that they agree.

A relation is accepted only when

* the residual ``|a_0 x_0 + ... + a_n x_n|`` is below ``10^(-digits/2)`` (scaled),
* the height ``max |a_i|`` is below ``max_height``,

and the precision is large enough for such a height to be meaningful:
``digits >= 10 + (n + 1) log10(max_height)``.  When no relation is found the
result carries a certificate: no relation of height ``<= max_height`` exists
as long as ``margin > 1``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .errors import DomainError, InsufficientPrecisionError
from .numerics import PrecisionContext

__all__ = [
    "PeriodBasis",
    "Relation",
    "IdentityCheck",
    "lll_reduce",
    "integer_relation",
    "find_relation",
    "identify_rational",
    "verify_identity",
    "required_digits",
]


@dataclass(frozen=True)
class PeriodBasis:
    """Named real numbers to express a target in.

    ``factory`` (optional) recomputes the values in another context; it is
    used for confirmation at doubled precision.
    """

    names: tuple[str, ...]
    values: tuple
    factory: Callable[[PrecisionContext], Sequence] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "values", tuple(self.values))
        if len(self.names) != len(self.values):
            raise DomainError("names and values differ in length")
        if len(set(self.names)) != len(self.names):
            raise DomainError("duplicate basis names")

    @classmethod
    def build(cls, elements: dict[str, Callable[[PrecisionContext], object]], ctx: PrecisionContext) -> "PeriodBasis":
        """From ``{name: ctx -> value}``; keeps the callables as factory."""
        names = tuple(elements)
        fns = tuple(elements.values())

        def factory(c):
            return tuple(fn(c) for fn in fns)

        return cls(names, factory(ctx), factory)

    def __len__(self):
        return len(self.names)

    def to_json(self, digits: int = 60) -> str:
        return json.dumps({"names": list(self.names),
                           "values": [_mpstr(v, digits) for v in self.values]})

    @classmethod
    def from_json(cls, text: str, ctx: PrecisionContext) -> "PeriodBasis":
        d = json.loads(text)
        return cls(tuple(d["names"]), tuple(ctx.mp.mpf(v) for v in d["values"]))


def _mpstr(v, digits):
    try:
        import mpmath

        return mpmath.nstr(v, digits, strip_zeros=False)
    except (TypeError, ValueError):
        return str(v)


@dataclass(frozen=True)
class Relation:
    """Outcome of a relation search for ``target`` in terms of ``basis``.

    If ``found``: ``target = sum coefficients[name] * basis[name]``.
    Otherwise ``margin`` bounds away all relations of height ``<= max_height``
    (no such relation exists when ``margin > 1``).
    """

    target: str
    basis: tuple[str, ...]
    found: bool
    coefficients: dict
    integer_vector: tuple[int, ...]
    residual: float
    height: int
    max_height: int
    digits: int
    engine: str
    margin: float | None = None
    confirmed_digits: int | None = None

    def expression(self) -> str:
        if not self.found:
            return f"{self.target}: no relation of height <= {self.max_height}"
        parts = [f"({c})*{n}" for n, c in self.coefficients.items() if c != 0]
        return f"{self.target} = " + (" + ".join(parts) or "0")

    def to_json(self) -> str:
        d = {
            "target": self.target,
            "basis": list(self.basis),
            "found": self.found,
            "coefficients": {k: str(v) for k, v in self.coefficients.items()},
            "integer_vector": list(self.integer_vector),
            "residual": self.residual,
            "height": self.height,
            "max_height": self.max_height,
            "digits": self.digits,
            "engine": self.engine,
            "margin": self.margin,
            "confirmed_digits": self.confirmed_digits,
        }
        return json.dumps(d)

    @classmethod
    def from_json(cls, text: str) -> "Relation":
        d = json.loads(text)
        d["basis"] = tuple(d["basis"])
        d["coefficients"] = {k: Fraction(v) for k, v in d["coefficients"].items()}
        d["integer_vector"] = tuple(d["integer_vector"])
        return cls(**d)


# ---------------------------------------------------------------------------
# integral LLL


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def lll_reduce(basis: list[list[int]]) -> tuple[list[list[int]], list[int]]:
    """LLL-reduce linearly independent integer vectors (delta = 3/4), exactly.

    Integral version working with the Gram determinants ``d_i`` and the scaled
    Gram-Schmidt coefficients ``lam[k][j] = d_{j+1} mu_{kj}``, so that no
    rationals ever appear.  Returns the reduced basis and ``d_0 .. d_n``;
    ``|b_i*|^2 = d_{i+1} / d_i``.
    """
    b = [list(v) for v in basis]
    n = len(b)
    if n == 0:
        return b, [1]
    d = [1] + [0] * n
    lam = [[0] * n for _ in range(n)]

    def red(k, l):
        if 2 * abs(lam[k][l]) > d[l + 1]:
            q = (2 * lam[k][l] + d[l + 1]) // (2 * d[l + 1])
            b[k] = [x - q * y for x, y in zip(b[k], b[l])]
            lam[k][l] -= q * d[l + 1]
            for i in range(l):
                lam[k][i] -= q * lam[l][i]

    def swap(k):
        b[k], b[k - 1] = b[k - 1], b[k]
        for j in range(k - 1):
            lam[k][j], lam[k - 1][j] = lam[k - 1][j], lam[k][j]
        mu = lam[k][k - 1]
        B = (d[k - 1] * d[k + 1] + mu * mu) // d[k]
        for i in range(k + 1, kmax + 1):
            t = lam[i][k]
            lam[i][k] = (d[k + 1] * lam[i][k - 1] - mu * t) // d[k]
            lam[i][k - 1] = (B * t + mu * lam[i][k]) // d[k + 1]
        d[k] = B

    d[1] = _dot(b[0], b[0])
    if d[1] == 0:
        raise DomainError("zero vector in LLL input")
    k, kmax = 1, 0
    while k < n:
        if k > kmax:
            kmax = k
            for j in range(k + 1):
                u = _dot(b[k], b[j])
                for i in range(j):
                    u = (d[i + 1] * u - lam[k][i] * lam[j][i]) // d[i]
                if j < k:
                    lam[k][j] = u
                else:
                    if u == 0:
                        raise DomainError("LLL input vectors are linearly dependent")
                    d[k + 1] = u
        red(k, k - 1)
        if 4 * d[k + 1] * d[k - 1] < 3 * d[k] * d[k] - 4 * lam[k][k - 1] ** 2:
            swap(k)
            k = max(1, k - 1)
        else:
            for l in range(k - 2, -1, -1):
                red(k, l)
            k += 1
    return b, d


def required_digits(n_values: int, max_height: int) -> int:
    return math.ceil(10 + n_values * math.log10(max(max_height, 2)))


def _scaled_lattice(values, scale_digits: int, mp):
    C = mp.mpf(10) ** scale_digits
    rows = []
    for i, x in enumerate(values):
        row = [0] * len(values)
        row[i] = 1
        row.append(int(mp.nint(C * x)))
        rows.append(row)
    return rows


def integer_relation(values: Sequence, ctx: PrecisionContext, max_height: int | None = None,
                     engine: str = "lll") -> tuple[tuple[int, ...] | None, float | None]:
    """Small integer vector ``a`` with ``sum a_i values_i ~ 0``.

    Returns ``(a, None)`` or ``(None, margin)``.  Only relations that involve
    ``values[0]`` are reported.
    """
    mp = ctx.mp
    n = len(values)
    digits = ctx.decimal_digits
    if max_height is None:
        max_height = 10 ** max(1, (digits - 10) // (n + 1))
    need = required_digits(n, max_height)
    if digits < need:
        raise InsufficientPrecisionError(
            f"{n} values with heights up to {max_height} need {need} digits, have {digits}"
        )
    values = [ctx.convert(v) for v in values]
    if any(abs(mp.im(v)) > 0 for v in values if hasattr(v, "imag")):
        raise DomainError("relation finding needs real values")
    values = [mp.re(v) for v in values]
    scale = max(abs(v) for v in values)
    if scale == 0:
        raise DomainError("all values vanish")
    values = [v / scale for v in values]
    tol = mp.mpf(10) ** (-(digits // 2))

    def accept(vec):
        if vec is None or vec[0] == 0:
            return False
        h = max(abs(a) for a in vec)
        if h > max_height:
            return False
        return abs(mp.fsum(a * v for a, v in zip(vec, values))) < tol

    if engine == "pslq":
        vec = mp.pslq(values, tol=tol, maxcoeff=max_height, maxsteps=10**5)
        if vec is not None and vec[0] < 0:
            vec = [-a for a in vec]
        if accept(vec):
            return tuple(vec), None
        return None, None
    if engine != "lll":
        raise DomainError(f"unknown engine {engine!r}")

    reduced, d = lll_reduce(_scaled_lattice(values, digits, mp))
    candidates = sorted((tuple(r[:n]) for r in reduced), key=lambda v: max(abs(a) for a in v))
    for vec in candidates:
        if vec[0] < 0:
            vec = tuple(-a for a in vec)
        if accept(vec):
            g = math.gcd(*vec)
            return tuple(a // g for a in vec), None
    # certificate: every lattice vector has length >= min |b_i*|
    min_star = min(math.sqrt(d[i + 1] / d[i]) for i in range(n))
    bound = math.sqrt(n + n * n) * max_height
    return None, min_star / bound


def find_relation(target, basis: PeriodBasis, ctx: PrecisionContext, *, target_name: str = "x",
                  max_height: int | None = None, engine: str = "lll", cross_check: bool = False,
                  confirm: Callable[[PrecisionContext], object] | None = None) -> Relation:
    """Express ``target`` as a rational combination of ``basis``.

    ``cross_check`` runs PSLQ as well and raises if the engines disagree on a
    found relation.  ``confirm`` (a callable ``ctx -> target value``) together
    with ``basis.factory`` re-evaluates the relation at doubled precision and
    records the digits of agreement.
    """
    values = [target, *basis.values]
    n = len(values)
    if max_height is None:
        max_height = 10 ** max(1, (ctx.decimal_digits - 10) // (n + 1))
    vec, margin = integer_relation(values, ctx, max_height, engine)
    if vec is not None and cross_check:
        other, _ = integer_relation(values, ctx, max_height, "pslq" if engine == "lll" else "lll")
        if other is not None and tuple(other) != tuple(vec):
            from .errors import InconsistencyError

            raise InconsistencyError(f"LLL and PSLQ disagree: {vec} vs {other}")
    mp = ctx.mp
    if vec is None:
        return Relation(target_name, basis.names, False, {}, (), float("nan"), 0, max_height,
                        ctx.decimal_digits, engine, margin)
    coeffs = {name: Fraction(-a, vec[0]) for name, a in zip(basis.names, vec[1:])}
    resid = abs(ctx.convert(target) - mp.fsum(ctx.mpf(c) * v for c, v in zip(coeffs.values(), basis.values)))
    confirmed = None
    if confirm is not None and basis.factory is not None:
        hi = ctx.doubled()
        t2 = ctx_value = confirm(hi)
        b2 = basis.factory(hi)
        r2 = abs(hi.convert(t2) - hi.mp.fsum(hi.mpf(c) * v for c, v in zip(coeffs.values(), b2)))
        scale = max(hi.mp.one, abs(ctx_value))
        confirmed = int(hi.working_digits if r2 == 0 else min(hi.working_digits, -hi.mp.log10(r2 / scale)))
    return Relation(target_name, basis.names, True, coeffs, tuple(vec), float(resid),
                    max(abs(a) for a in vec), max_height, ctx.decimal_digits, engine,
                    None, confirmed)


def identify_rational(x, ctx: PrecisionContext, max_height: int = 10**12) -> Fraction | None:
    """``x`` as a rational ``p/q`` with ``|p|, |q| <= max_height`` if it is one to working precision."""
    mp = ctx.mp
    x = mp.re(ctx.convert(x))
    if x == 0:
        return Fraction(0)
    frac = Fraction(int(mp.nint(x * mp.mpf(10) ** ctx.decimal_digits)), 10**ctx.decimal_digits)
    q = frac.limit_denominator(max_height)
    if abs(q.numerator) > max_height:
        return None
    if abs(ctx.mpf(q) - x) <= ctx.tolerance * max(mp.one, abs(x)) and ctx.decimal_digits >= required_digits(2, max_height):
        return q
    return None


@dataclass(frozen=True)
class IdentityCheck:
    name: str
    lhs: object
    rhs: object
    residual: object
    tolerance: object
    passed: bool

    @property
    def agreement_digits(self) -> float:
        if self.residual == 0:
            return float("inf")
        scale = max(1, abs(self.lhs), abs(self.rhs))
        return float(-math.log10(float(self.residual / scale)))

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}: residual {float(self.residual):.3e} (tolerance {float(self.tolerance):.0e})"


def verify_identity(name: str, lhs, rhs, tolerance, ctx: PrecisionContext, relative: bool = False) -> IdentityCheck:
    """``|lhs - rhs| <= tolerance * scale``.

    ``scale`` is ``max(1, |lhs|)`` by default and ``max(|lhs|, |rhs|)`` when
    ``relative`` is set (two exact zeros always agree).
    """
    mp = ctx.mp
    lhs_v, rhs_v = ctx.convert(lhs), ctx.convert(rhs)
    resid = abs(lhs_v - rhs_v)
    tol = ctx.mpf(tolerance)
    scale = max(abs(lhs_v), abs(rhs_v)) if relative else max(mp.one, abs(lhs_v))
    passed = resid == 0 or bool(resid <= tol * scale)
    return IdentityCheck(name, lhs_v, rhs_v, resid, tol, passed)

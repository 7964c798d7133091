"""Period polynomials, the two-variable generating function and its delta^k stack.

Coefficients may be exact (``int``/``Fraction``) or mpmath numbers.  All the
linear maps here (homogenize, apply ``d = d_X1 d_Y2 - d_Y1 d_X2``, restrict to
the diagonal) only ever multiply by integers, so they work unchanged on both.
The inverse of the stack map is computed once per bidegree over the rationals.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .errors import DomainError, InconsistencyError
from .lvalues import completed_l_value
from .mmv import mmv_table
from .modforms import DELTA, FormId
from .numerics import PrecisionContext
from .periods import EVEN_ELEMENTS, MODULAR_NAMES, ODD_ELEMENTS, period_basis
from .relfind import Relation, find_relation, required_digits

__all__ = [
    "UniPolynomial",
    "BiPolynomial",
    "DeltaStack",
    "P_DELTA_PLUS",
    "P_DELTA_MINUS",
    "period_polynomial",
    "manin_split",
    "generating_function",
    "delta_stack",
    "stack_normalizer",
    "solve_from_stack",
    "coboundary",
    "lifted_period_polynomial",
    "Decomposition",
    "decompose",
    "CancellationReport",
    "cancellation_check",
    "period_relation_residuals",
    "delta_layer",
]

_I_POWERS = (1, 1j, -1, -1j)


def _is_exact(x) -> bool:
    return isinstance(x, (int, Fraction))


def _coef_str(c) -> str:
    return str(c)


@dataclass(frozen=True)
class UniPolynomial:
    """``c_0 + c_1 y + ... + c_d y^d``."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(self.coeffs))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, j: int):
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else 0

    def __call__(self, y):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * y + c
        return acc

    def __add__(self, other: "UniPolynomial") -> "UniPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        return UniPolynomial(self[j] + other[j] for j in range(n))

    def __sub__(self, other: "UniPolynomial") -> "UniPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "UniPolynomial":
        return UniPolynomial(c * a for a in self.coeffs)

    def even_part(self) -> "UniPolynomial":
        return UniPolynomial(c if j % 2 == 0 else 0 for j, c in enumerate(self.coeffs))

    def odd_part(self) -> "UniPolynomial":
        return UniPolynomial(c if j % 2 else 0 for j, c in enumerate(self.coeffs))

    def is_zero(self, tol=0) -> bool:
        return all(abs(c) <= tol for c in self.coeffs)

    def to_json(self) -> str:
        return json.dumps({"degree": self.degree, "coeffs": [_coef_str(c) for c in self.coeffs]})

    @classmethod
    def from_json(cls, text: str, ctx: PrecisionContext | None = None) -> "UniPolynomial":
        d = json.loads(text)
        return cls(_parse_coef(c, ctx) for c in d["coeffs"])

    def __str__(self):
        terms = [f"({c})*y^{j}" for j, c in enumerate(self.coeffs) if c != 0]
        return " + ".join(terms) or "0"


def _parse_coef(text: str, ctx: PrecisionContext | None):
    try:
        return Fraction(text)
    except ValueError:
        if ctx is None:
            raise DomainError(f"non-rational coefficient {text!r} needs a precision context")
        return ctx.mp.mpmathify(text.strip().strip("()").replace(" ", ""))


@dataclass(frozen=True)
class BiPolynomial:
    """``sum_{i <= d1, j <= d2} c_{i,j} y1^i y2^j``; ``coeffs[i][j]``."""

    bidegree: tuple[int, int]
    coeffs: tuple[tuple, ...]

    def __post_init__(self):
        d1, d2 = self.bidegree
        rows = tuple(tuple(r) for r in self.coeffs)
        if len(rows) != d1 + 1 or any(len(r) != d2 + 1 for r in rows):
            raise DomainError(f"coefficient array does not match bidegree {self.bidegree}")
        object.__setattr__(self, "coeffs", rows)

    @classmethod
    def zero(cls, bidegree) -> "BiPolynomial":
        d1, d2 = bidegree
        return cls(bidegree, [[0] * (d2 + 1) for _ in range(d1 + 1)])

    @classmethod
    def from_terms(cls, bidegree, terms: dict) -> "BiPolynomial":
        """Build from ``{(i, j): c}``."""
        d1, d2 = bidegree
        rows = [[0] * (d2 + 1) for _ in range(d1 + 1)]
        for (i, j), c in terms.items():
            rows[i][j] += c
        return cls(bidegree, rows)

    def __getitem__(self, key):
        i, j = key
        return self.coeffs[i][j]

    def __call__(self, y1, y2):
        return sum(c * y1**i * y2**j for i, row in enumerate(self.coeffs) for j, c in enumerate(row))

    def __add__(self, other: "BiPolynomial") -> "BiPolynomial":
        if self.bidegree != other.bidegree:
            raise DomainError("bidegree mismatch")
        return BiPolynomial(self.bidegree, [[a + b for a, b in zip(r, s)] for r, s in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "BiPolynomial") -> "BiPolynomial":
        return self + other.scale(-1)

    def scale(self, c) -> "BiPolynomial":
        return BiPolynomial(self.bidegree, [[c * a for a in r] for r in self.coeffs])

    def swap(self) -> "BiPolynomial":
        """``Q(y1, y2) = P(y2, y1)``."""
        d1, d2 = self.bidegree
        return BiPolynomial((d2, d1), [[self.coeffs[i][j] for i in range(d1 + 1)] for j in range(d2 + 1)])

    def max_abs(self):
        return max(abs(c) for r in self.coeffs for c in r)

    def to_json(self) -> str:
        return json.dumps({"bidegree": list(self.bidegree),
                           "coeffs": [[_coef_str(c) for c in r] for r in self.coeffs]})

    @classmethod
    def from_json(cls, text: str, ctx: PrecisionContext | None = None) -> "BiPolynomial":
        d = json.loads(text)
        return cls(tuple(d["bidegree"]), [[_parse_coef(c, ctx) for c in r] for r in d["coeffs"]])


@dataclass(frozen=True)
class DeltaStack:
    """``delta^k P`` for ``k = 0 .. min(d1, d2)``; entry ``k`` has degree ``d1 + d2 - 2k``."""

    bidegree: tuple[int, int]
    layers: tuple[UniPolynomial, ...]

    def __post_init__(self):
        d1, d2 = self.bidegree
        layers = tuple(self.layers)
        if len(layers) != min(d1, d2) + 1:
            raise DomainError("wrong number of layers for bidegree")
        padded = []
        for k, p in enumerate(layers):
            size = d1 + d2 - 2 * k + 1
            if len(p.coeffs) > size and any(c != 0 for c in p.coeffs[size:]):
                raise DomainError(f"layer {k} exceeds degree {size - 1}")
            padded.append(UniPolynomial((tuple(p.coeffs) + (0,) * size)[:size]))
        object.__setattr__(self, "layers", tuple(padded))

    @classmethod
    def single(cls, bidegree, k: int, poly: UniPolynomial) -> "DeltaStack":
        """Stack with ``poly`` in layer ``k`` and zeros elsewhere."""
        d1, d2 = bidegree
        layers = [UniPolynomial((0,)) for _ in range(min(d1, d2) + 1)]
        layers[k] = poly
        return cls(bidegree, layers)

    def vector(self) -> list:
        return [c for p in self.layers for c in p.coeffs]

    def to_json(self) -> str:
        return json.dumps({"bidegree": list(self.bidegree),
                           "layers": [[_coef_str(c) for c in p.coeffs] for p in self.layers]})


# ---------------------------------------------------------------------------
# length one

P_DELTA_PLUS = UniPolynomial(
    [Fraction(-36, 691), 0, 1, 0, -3, 0, 3, 0, -1, 0, Fraction(36, 691)]
)
P_DELTA_MINUS = UniPolynomial([0, 4, 0, -25, 0, 42, 0, -25, 0, 4, 0])


def period_polynomial(f: FormId, ctx: PrecisionContext) -> UniPolynomial:
    """``P_f(y) = sum_{k=1}^{w-1} i^{w-k-1} C(w-2, k-1) Lambda(f; k) y^{k-1}``.

    Coefficients are mpc numbers (purely real or purely imaginary).
    """
    f = f if isinstance(f, FormId) else FormId.parse(f)
    if not (f.is_eisenstein or f == DELTA):
        raise DomainError(f"no period polynomial for {f}")
    w = f.weight
    mp = ctx.mp
    coeffs = []
    for k in range(1, w):
        lam = completed_l_value(f, k, ctx).value
        coeffs.append(mp.mpc(_I_POWERS[(w - k - 1) % 4]) * math.comb(w - 2, k - 1) * lam)
    return UniPolynomial(coeffs)


def manin_split(P: UniPolynomial, ctx: PrecisionContext, f: FormId = DELTA) -> tuple:
    """``(omega_plus, omega_minus)`` with ``even(P) = w+ P_+`` and ``odd(P) = i w- P_-``.

    Each coefficient ratio is formed separately; they must agree to the
    context tolerance, otherwise :class:`InconsistencyError` is raised.
    """
    if f != DELTA:
        raise DomainError("manin_split is implemented for Delta only")
    if P.degree != 10:
        raise DomainError("expected a degree 10 polynomial")
    mp = ctx.mp
    tol = ctx.tolerance

    def ratio(part, ref, unit):
        ratios = [ctx.convert(part[j]) / (unit * ctx.mpf(ref[j])) for j in range(11) if ref[j] != 0]
        base = ratios[0]
        for r in ratios[1:]:
            if abs(r - base) > tol * max(mp.one, abs(base)):
                raise InconsistencyError(
                    f"coefficient ratios not constant: {mp.nstr(base, 15)} vs {mp.nstr(r, 15)}"
                )
        return base

    plus = ratio(P.even_part(), P_DELTA_PLUS, mp.one)
    minus = ratio(P.odd_part(), P_DELTA_MINUS, mp.mpc(0, 1))
    for name, val in (("omega_plus", plus), ("omega_minus", minus)):
        if abs(mp.im(val)) > tol * max(mp.one, abs(val)):
            raise InconsistencyError(f"{name} is not real: {val}")
    return mp.re(plus), mp.re(minus)


# ---------------------------------------------------------------------------
# length two


def generating_function(f: FormId, g: FormId, ctx: PrecisionContext, qterms: int | None = None) -> BiPolynomial:
    """``P_{f,g}(y1, y2)`` built from the table of double values."""
    f = f if isinstance(f, FormId) else FormId.parse(f)
    g = g if isinstance(g, FormId) else FormId.parse(g)
    table = mmv_table(f, g, ctx, qterms=qterms)
    wf, wg = f.weight, g.weight
    mp = ctx.mp
    terms = {}
    for k in range(1, wf):
        for l in range(1, wg):
            unit = mp.mpc(_I_POWERS[(wf + wg - k - l - 2) % 4])
            lam = table.value(k, l)
            terms[(k - 1, l - 1)] = unit * math.comb(wf - 2, k - 1) * math.comb(wg - 2, l - 1) * lam
    return BiPolynomial.from_terms((wf - 2, wg - 2), terms)


def _apply_d(terms: dict, d1: int, d2: int) -> dict:
    """One application of ``d`` to the homogenization.

    ``(a, b)`` stands for ``X1^(d1-a) Y1^a X2^(d2-b) Y2^b``; the result is
    expressed in the same way for bidegree ``(d1-1, d2-1)``.
    """
    out: dict = {}
    for (a, b), c in terms.items():
        if c == 0:
            continue
        m = (d1 - a) * b  # d_X1 d_Y2
        if m:
            key = (a, b - 1)
            out[key] = out.get(key, 0) + m * c
        m = a * (d2 - b)  # d_Y1 d_X2
        if m:
            key = (a - 1, b)
            out[key] = out.get(key, 0) - m * c
    return out


def _diagonal(terms: dict, degree: int) -> UniPolynomial:
    coeffs = [0] * (degree + 1)
    for (a, b), c in terms.items():
        coeffs[a + b] += c
    return UniPolynomial(coeffs)


def stack_normalizer(bidegree, k: int) -> int:
    """``prod_{j=1}^k j (d1 + d2 - 2k + j + 1)``.

    Cayley's identity gives ``d^k (det^k Q) = this * Q`` on the diagonal for
    ``Q`` of total degree ``d1 + d2 - 2k``, so dividing by it makes
    ``(y1 - y2)^k Q`` have layer ``k`` equal to ``Q(y, y)``.
    """
    d1, d2 = bidegree
    p = d1 + d2 - 2 * k
    return math.prod(j * (p + j + 1) for j in range(1, k + 1))


def delta_stack(P: BiPolynomial, normalized: bool = True) -> DeltaStack:
    """``delta^k P = (d^k P~)(1, 1, y, y)`` for ``k = 0 .. min(d1, d2)``.

    With ``normalized`` (the default) layer ``k`` is divided by
    :func:`stack_normalizer`, which is the scaling under which
    ``delta^2 ((y1 - y2)^2 (y2^6 - 1)) = y^6 - 1``.
    """
    d1, d2 = P.bidegree
    terms = {(i, j): c for i, row in enumerate(P.coeffs) for j, c in enumerate(row)}
    layers = []
    for k in range(min(d1, d2) + 1):
        layer = _diagonal(terms, d1 + d2 - 2 * k)
        if normalized and k:
            layer = layer.scale(Fraction(1, stack_normalizer((d1, d2), k)))
        layers.append(layer)
        terms = _apply_d(terms, d1 - k, d2 - k)
    return DeltaStack((d1, d2), layers)


@lru_cache(maxsize=64)
def _stack_inverse(d1: int, d2: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact inverse of the stack map on the monomial basis ``(i, j)`` (row-major)."""
    n = (d1 + 1) * (d2 + 1)
    columns = []
    for i in range(d1 + 1):
        for j in range(d2 + 1):
            unit = BiPolynomial.from_terms((d1, d2), {(i, j): Fraction(1)})
            columns.append(delta_stack(unit).vector())
    assert all(len(c) == n for c in columns), "stack size differs from monomial count"
    # augmented [M | I] with M[r][c] = columns[c][r]
    aug = [[Fraction(columns[c][r]) for c in range(n)] + [Fraction(int(r == c)) for c in range(n)]
           for r in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        assert pivot is not None, "stack map is singular (cannot happen)"
        aug[col], aug[pivot] = aug[pivot], aug[col]
        p = aug[col][col]
        aug[col] = [x / p for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return tuple(tuple(row[n:]) for row in aug)


def solve_from_stack(target: DeltaStack, ctx: PrecisionContext | None = None) -> BiPolynomial:
    """The unique polynomial of ``target.bidegree`` whose stack is ``target``.

    Exact when every entry is rational; otherwise pass ``ctx`` and the
    rational inverse is applied in that context.
    """
    d1, d2 = target.bidegree
    inv = _stack_inverse(d1, d2)
    vec = target.vector()
    exact = all(_is_exact(c) for c in vec)
    if not exact:
        if ctx is None:
            raise DomainError("solve_from_stack needs a context for inexact targets")
        vec = [ctx.convert(c) for c in vec]
        conv = lambda q: ctx.mpf(q)  # noqa: E731
    else:
        conv = lambda q: q  # noqa: E731
    flat = []
    for row in inv:
        acc = 0
        for q, v in zip(row, vec):
            if q != 0 and v != 0:
                acc += conv(q) * v
        flat.append(acc)
    rows = [flat[i * (d2 + 1):(i + 1) * (d2 + 1)] for i in range(d1 + 1)]
    return BiPolynomial((d1, d2), rows)


def coboundary(bidegree, k: int) -> BiPolynomial:
    """``B^(k)``: stack equal to ``y^(d1+d2-2k) - 1`` in layer ``k``, zero elsewhere."""
    d1, d2 = bidegree
    if not 0 <= k <= min(d1, d2):
        raise DomainError(f"k must lie in [0, {min(d1, d2)}]")
    deg = d1 + d2 - 2 * k
    poly = UniPolynomial([-1] + [0] * (deg - 1) + [1]) if deg else UniPolynomial([0])
    return solve_from_stack(DeltaStack.single(bidegree, k, poly))


def lifted_period_polynomial(bidegree, sign: str, k: int = 0) -> BiPolynomial:
    """``P^(k)_{Delta,+-}``: stack equal to ``P_{Delta,+-}`` in layer ``k``."""
    d1, d2 = bidegree
    if d1 + d2 - 2 * k != 10:
        raise DomainError("layer k must have degree 10 to carry a Delta period polynomial")
    poly = {"+": P_DELTA_PLUS, "-": P_DELTA_MINUS}[sign]
    return solve_from_stack(DeltaStack.single(bidegree, k, poly))


# ---------------------------------------------------------------------------
# decomposition by integer relations

DEFAULT_EVEN = tuple(EVEN_ELEMENTS)
DEFAULT_ODD = tuple(ODD_ELEMENTS)
_NEW_ZETAS = ("zeta_{5,3}/pi^8", "zeta_{3,7}/pi^10", "zeta_{3,9}/pi^12", "zeta_{5,7}/pi^12")


def _search_context(ctx: PrecisionContext, n_basis: int, max_height: int) -> PrecisionContext:
    need = required_digits(n_basis + 1, max_height) + 10
    return ctx if ctx.decimal_digits >= need else PrecisionContext(need, ctx.guard_digits)


def _express(value, even: PeriodBasis, odd: PeriodBasis, ctx: PrecisionContext, name: str,
             max_height: int) -> Relation | None:
    """Relation for one polynomial coefficient, or None if it vanishes.

    Real coefficients carry even total weight, imaginary ones odd weight.
    """
    mp = ctx.mp
    v = ctx.convert(value)
    re, im = mp.re(v), mp.im(v)
    tiny = ctx.tolerance * 1000
    if abs(v) < tiny:
        return None
    if abs(im) <= tiny * abs(v):
        return find_relation(re, even, ctx, target_name=name, max_height=max_height)
    if abs(re) <= tiny * abs(v):
        return find_relation(im, odd, ctx, target_name=name + "/i", max_height=max_height)
    raise InconsistencyError(f"coefficient {name} is neither real nor imaginary")


@dataclass(frozen=True)
class Decomposition:
    """Coefficientwise relations for every layer of the stack of ``P_{f,g}``.

    ``components[(k, name)]`` is the multiple of the reference shape carried
    by the period ``name`` in layer ``k``: ``P_{Delta,+}`` for c(Delta;12),
    ``P_{Delta,-}`` for Lambda(Delta;12)/pi and ``y^d - 1`` for zeta_{a,b}
    (so ``name * value * B^(k)`` resp. ``P^(k)``).  It is ``None`` if the
    coefficients do not have that shape.  Entries are not canonical:
    c(Delta;12) is only defined modulo rationals.
    """

    f: FormId
    g: FormId
    bidegree: tuple[int, int]
    layers: tuple[tuple[Relation | None, ...], ...]
    components: dict
    unresolved: tuple[tuple[int, int], ...]

    def to_json(self) -> str:
        return json.dumps({
            "f": str(self.f), "g": str(self.g), "bidegree": list(self.bidegree),
            "layers": [[None if r is None else json.loads(r.to_json()) for r in layer] for layer in self.layers],
            "components": [{"layer": k, "period": n, "multiple": None if c is None else str(c)}
                           for (k, n), c in self.components.items()],
            "unresolved": [list(u) for u in self.unresolved],
        })


def _shape_multiple(coeffs: list[Fraction], shape: UniPolynomial) -> Fraction | None:
    ratio = None
    for j, c in enumerate(coeffs):
        s = Fraction(shape[j])
        if s == 0:
            if c != 0:
                return None
            continue
        r = c / s
        if ratio is None:
            ratio = r
        elif r != ratio:
            return None
    return ratio


def decompose(f: FormId, g: FormId, ctx: PrecisionContext, even_names=DEFAULT_EVEN,
              odd_names=DEFAULT_ODD, max_height: int = 10**12) -> Decomposition:
    """Express every coefficient of ``delta^k P_{f,g}`` in the declared bases.

    Runs at the precision the relation search needs (at least that of ``ctx``).
    """
    f = f if isinstance(f, FormId) else FormId.parse(f)
    g = g if isinstance(g, FormId) else FormId.parse(g)
    work = _search_context(ctx, max(len(even_names), len(odd_names)), max_height)
    even = period_basis(even_names, work)
    odd = period_basis(odd_names, work)
    stack = delta_stack(generating_function(f, g, work))
    layers, unresolved = [], []
    for k, layer in enumerate(stack.layers):
        rels = []
        for j, c in enumerate(layer.coeffs):
            rel = _express(c, even, odd, work, f"delta^{k}[y^{j}]", max_height)
            if rel is not None and not rel.found:
                unresolved.append((k, j))
            rels.append(rel)
        layers.append(tuple(rels))
    components = {}
    for k, rels in enumerate(layers):
        deg = len(rels) - 1
        if any(r is not None and not r.found for r in rels):
            continue
        for name in tuple(even_names) + tuple(odd_names):
            coeffs = [Fraction(0) if r is None else r.coefficients.get(name, Fraction(0)) for r in rels]
            if not any(coeffs):
                continue
            if name == "c(Delta;12)" and deg == 10:
                components[(k, name)] = _shape_multiple(coeffs, P_DELTA_PLUS)
            elif name == "Lambda(Delta;12)/pi" and deg == 10:
                components[(k, name)] = _shape_multiple(coeffs, P_DELTA_MINUS)
            elif name in _NEW_ZETAS and deg > 0:
                shape = UniPolynomial([-1] + [0] * (deg - 1) + [1])
                components[(k, name)] = _shape_multiple(coeffs, shape)
    return Decomposition(f, g, stack.bidegree, tuple(layers), components, tuple(unresolved))


@dataclass(frozen=True)
class CancellationReport:
    combined: tuple[Relation | None, ...]
    individual: tuple[Relation | None, ...]
    modular_free: bool
    individual_needs_modular: bool
    all_found: bool

    @property
    def passed(self) -> bool:
        return self.all_found and self.modular_free and self.individual_needs_modular

    def lines(self) -> list[str]:
        out = []
        for j, r in enumerate(self.combined):
            out.append(f"y^{j}: " + ("0" if r is None else r.expression()))
        return out


_CANCEL_EVEN = ("1", "z(3)z(9)/pi^12", "z(5)z(7)/pi^12", "zeta_{3,9}/pi^12", "zeta_{5,7}/pi^12", "c(Delta;12)")
_CANCEL_ODD = DEFAULT_ODD


def _uses_modular(rels) -> bool:
    return any(r is not None and r.found and any(r.coefficients.get(n, 0) != 0 for n in MODULAR_NAMES)
               for r in rels)


def cancellation_check(ctx: PrecisionContext, max_height: int = 10**8) -> CancellationReport:
    """``9 delta^0 P_{G4,G10} + 14 delta^0 P_{G6,G8}`` involves MZV periods only.

    Each coefficient is searched in a basis that also contains the two modular
    periods; the check passes when every relation is found, none uses a
    modular period, and the single term ``delta^0 P_{G4,G10}`` does use one.
    """
    from .modforms import G

    work = _search_context(ctx, len(_CANCEL_EVEN), max_height)
    even = period_basis(_CANCEL_EVEN, work)
    odd = period_basis(_CANCEL_ODD, work)
    first = delta_stack(generating_function(G(4), G(10), work)).layers[0]
    second = delta_stack(generating_function(G(6), G(8), work)).layers[0]
    comb = first.scale(9) + second.scale(14)
    combined = tuple(_express(c, even, odd, work, f"y^{j}", max_height) for j, c in enumerate(comb.coeffs))
    individual = tuple(_express(c, even, odd, work, f"y^{j}", max_height) for j, c in enumerate(first.coeffs))
    all_found = all(r is None or r.found for r in combined + individual)
    return CancellationReport(combined, individual, not _uses_modular(combined), _uses_modular(individual), all_found)


def _poly_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _poly_pow(a: list, e: int) -> list:
    out = [1]
    for _ in range(e):
        out = _poly_mul(out, a)
    return out


def period_relation_residuals(P: UniPolynomial) -> tuple[UniPolynomial, UniPolynomial]:
    """Coefficients of ``P|(1+S)`` and ``P|(1+U+U^2)`` for a polynomial of even degree ``d``.

    ``P(y) + y^d P(-1/y)`` and ``P(y) + (1-y)^d P(1/(1-y)) + y^d P((y-1)/y)``;
    both vanish for the period polynomial of a cusp form.
    """
    d = P.degree
    two = [0] * (d + 1)
    three = [0] * (d + 1)
    for j, c in enumerate(P.coeffs):
        two[j] += c
        two[d - j] += c * (-1) ** j
        three[j] += c
        for m, b in enumerate(_poly_pow([1, -1], d - j)):
            three[m] += c * b
        for m, b in enumerate(_poly_mul(_poly_pow([-1, 1], j), [0] * (d - j) + [1])):
            three[m] += c * b
    return UniPolynomial(two), UniPolynomial(three)


def delta_layer(P: BiPolynomial, k: int, normalized: bool = False) -> UniPolynomial:
    """``delta^k P`` for any ``k >= 0``.

    Past ``k = min(d1, d2)`` the operator is applied once more to a polynomial
    of bidegree ``(d1 - m, d2 - m)`` with ``m = min``, and the result (which is
    identically zero) is returned as computed.
    """
    d1, d2 = P.bidegree
    if k <= min(d1, d2):
        return delta_stack(P, normalized=normalized).layers[k]
    terms = {(i, j): c for i, row in enumerate(P.coeffs) for j, c in enumerate(row)}
    for step in range(min(d1, d2) + 1):
        terms = _apply_d(terms, d1 - step, d2 - step)
    return _diagonal(terms, max(d1 + d2 - 2 * (min(d1, d2) + 1), 0))

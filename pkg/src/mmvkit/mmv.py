"""Regularised iterated Eichler integrals along the imaginary axis.

For a word ``(f_1, n_1) ... (f_r, n_r)`` the value

    Lambda(f_1, ..., f_r; n_1, ..., n_r) = i^{-(n_1 + ... + n_r)} R int_0^{->1_oo} f_1(t) t^{n_1-1} dt ... f_r(t) t^{n_r-1} dt

is computed with ``f_1`` attached to the end at 0.  The path is split at
``tau = i``; the piece ``[i, i oo)`` is a regularised tail integral computed in
closed form term by term on ``q^m tau^p``, and the piece ``(0, i]`` is brought to
``[i, i oo)`` by ``S: tau -> -1/tau``.

Two kernels are provided.  ``"axis"`` works with real numbers in the variable
``y`` (``tau = iy``) and is the default; ``"tau"`` manipulates
:class:`QTauElement` objects with complex coefficients exactly as written above
and serves as a slower reference.
"""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, TruncationError, UnsupportedError
from .modforms import DELTA_PRIME, FormId, coefficient_bound, expansion, truncation_for_digits
from .numerics import PrecisionContext

__all__ = [
    "IterandWord",
    "QTauElement",
    "MMValue",
    "MMVTable",
    "s_pullback",
    "reflection",
    "reg_primitive",
    "tail_integral",
    "lambda_mmv",
    "mmv",
    "mmv_table",
    "default_qterms",
]

MAX_LENGTH = 3

Letter = tuple[FormId, int]


@dataclass(frozen=True)
class IterandWord:
    """Ordered letters ``(f, n)``, each standing for ``f(tau) tau^(n-1) dtau``."""

    letters: tuple[Letter, ...]

    def __post_init__(self):
        letters = tuple((f if isinstance(f, FormId) else FormId.parse(f), int(n)) for f, n in self.letters)
        object.__setattr__(self, "letters", letters)
        for f, n in letters:
            if not 0 < n < f.weight:
                raise DomainError(f"index n={n} outside 0 < n < {f.weight} for {f}")
            if f == DELTA_PRIME:
                raise UnsupportedError("Delta' is not totally holomorphic; no MMVs for it")

    @classmethod
    def of(cls, forms: Iterable, indices: Iterable[int]) -> "IterandWord":
        forms = [f if isinstance(f, FormId) else FormId.parse(f) for f in forms]
        indices = list(indices)
        if len(forms) != len(indices):
            raise DomainError("forms and indices must have the same length")
        return cls(tuple(zip(forms, indices)))

    def __len__(self):
        return len(self.letters)

    @property
    def forms(self) -> tuple[FormId, ...]:
        return tuple(f for f, _ in self.letters)

    @property
    def indices(self) -> tuple[int, ...]:
        return tuple(n for _, n in self.letters)

    @property
    def total_weight(self) -> int:
        return sum(f.weight for f, _ in self.letters)

    def __str__(self):
        forms = ",".join(map(str, self.forms))
        idx = ",".join(map(str, self.indices))
        return f"Lambda({forms};{idx})"


def s_pullback(letter: Letter) -> tuple[int, Letter]:
    """Pull ``f(tau) tau^(n-1) dtau`` back along ``tau -> -1/tau``.

    Returns ``(sign, (f, w - n))`` with ``sign = (-1)^(n-1)``.
    """
    f, n = letter
    return (-1) ** (n - 1), (f, f.weight - n)


def reflection(word: IterandWord) -> tuple[int, IterandWord]:
    """``Lambda(word) = sign * Lambda(reflected)`` from reversing the path and applying ``S``.

    The reflected word is ``(f_r, w_r - n_r), ..., (f_1, w_1 - n_1)`` and
    ``sign = (-1)^((w_1 + ... + w_r) / 2)``; for one letter this is the
    functional equation of the completed L-function.
    """
    letters = tuple((f, f.weight - n) for f, n in reversed(word.letters))
    return (-1) ** (word.total_weight // 2), IterandWord(letters)


def default_qterms(ctx: PrecisionContext, length: int) -> int:
    return truncation_for_digits(ctx.working_digits, extra=10 * max(length, 1))


# ---------------------------------------------------------------------------
# tau-form reference ring


class QTauElement:
    """Finite sum ``sum c[m, p] q^m tau^p`` with ``q = exp(2 pi i tau)``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: v for k, v in (terms or {}).items() if v != 0}

    @classmethod
    def one(cls, ctx: PrecisionContext) -> "QTauElement":
        return cls({(0, 0): ctx.mp.mpc(1)})

    @classmethod
    def from_letter(cls, letter: Letter, N: int, ctx: PrecisionContext) -> "QTauElement":
        f, n = letter
        exp = expansion(f, N)
        return cls({(m, n - 1): ctx.mp.mpc(ctx.mpf(a)) for m, a in exp.items() if a})

    def __add__(self, other: "QTauElement") -> "QTauElement":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return QTauElement(out)

    def mul(self, other: "QTauElement", N: int) -> "QTauElement":
        """Product, discarding ``q^m`` with ``m > N``."""
        out: dict = {}
        for (m1, p1), c1 in self.terms.items():
            for (m2, p2), c2 in other.terms.items():
                if m1 + m2 > N:
                    continue
                key = (m1 + m2, p1 + p2)
                out[key] = out.get(key, 0) + c1 * c2
        return QTauElement(out)

    def scale(self, c) -> "QTauElement":
        return QTauElement({k: c * v for k, v in self.terms.items()})

    def evaluate(self, tau, ctx: PrecisionContext):
        mp = ctx.mp
        tau = mp.mpc(tau)
        q = mp.exp(2j * mp.pi * tau)
        return mp.fsum(c * q**m * tau**p for (m, p), c in self.terms.items())

    def __repr__(self):
        return f"QTauElement({len(self.terms)} terms)"


def reg_primitive(g: QTauElement, ctx: PrecisionContext) -> QTauElement:
    """``G(tau) = R int_tau^{->1_oo} g``, termwise.

    For ``m >= 1`` the primitive of ``q^m tau^p`` vanishing at ``i oo``; for ``m = 0``
    the primitive ``tau^(p+1)/(p+1)`` with zero constant term (the tangential
    base point sets ``log q = 0``).
    """
    mp = ctx.mp
    out: dict = {}
    for (m, p), c in g.terms.items():
        if m == 0:
            key = (0, p + 1)
            out[key] = out.get(key, 0) - c / (p + 1)
            continue
        a = 2j * mp.pi * m
        fact_p = mp.factorial(p)
        for j in range(p + 1):
            coeff = -c * fact_p / mp.factorial(j) * (-1) ** (p - j) / a ** (p - j + 1)
            key = (m, j)
            out[key] = out.get(key, 0) + coeff
    return QTauElement(out)


def _tau_tail(letters: Sequence[Letter], ctx: PrecisionContext, N: int, y=1):
    g = QTauElement.one(ctx)
    for letter in reversed(letters):
        g = reg_primitive(QTauElement.from_letter(letter, N, ctx).mul(g, N), ctx)
    return g.evaluate(ctx.mp.mpc(0, y), ctx)


# ---------------------------------------------------------------------------
# real kernel on tau = iy


@lru_cache(maxsize=256)
def _letter_coeffs(form: FormId, N: int, ctx: PrecisionContext) -> tuple:
    exp = expansion(form, N)
    return tuple((m, ctx.mpf(a)) for m, a in exp.items() if a)


@lru_cache(maxsize=64)
def _axis_tables(N: int, pmax: int, ctx: PrecisionContext):
    mp = ctx.mp
    inv = [None] + [[(2 * mp.pi * m) ** (-k) for k in range(pmax + 2)] for m in range(1, N + 1)]
    fact = [mp.factorial(k) for k in range(pmax + 2)]
    return inv, fact


def _axis_series(letters: Sequence[Letter], ctx: PrecisionContext, N: int) -> dict:
    """Real coefficients c[m][p] of ``R int_y^oo`` for ``e^{-2 pi m y} y^p``."""
    pmax = sum(n for _, n in letters) + 1
    inv, fact = _axis_tables(N, pmax, ctx)
    mp = ctx.mp
    g = {0: {0: mp.one}}
    for form, n in reversed(letters):
        shift = n - 1
        prod: dict = {}
        for m1, a in _letter_coeffs(form, N, ctx):
            for m2, row in g.items():
                m = m1 + m2
                if m > N:
                    continue
                target = prod.setdefault(m, {})
                for p, c in row.items():
                    k = p + shift
                    target[k] = target.get(k, 0) + a * c
        g = {}
        for m, row in prod.items():
            out = g.setdefault(m, {})
            if m == 0:
                for p, c in row.items():
                    out[p + 1] = out.get(p + 1, 0) - c / (p + 1)
                continue
            invm = inv[m]
            for p, c in row.items():
                fp = fact[p]
                for j in range(p + 1):
                    out[j] = out.get(j, 0) + c * fp / fact[j] * invm[p - j + 1]
    return g


@lru_cache(maxsize=8192)
def _axis_tail(letters: tuple, ctx: PrecisionContext, N: int, y: int = 1):
    mp = ctx.mp
    if not letters:
        return mp.one
    g = _axis_series(letters, ctx, N)
    yv = ctx.mpf(y)
    q = mp.exp(-2 * mp.pi * yv)
    total = mp.zero
    for m, row in g.items():
        qm = q**m
        for p, c in row.items():
            total += c * qm * yv**p
    return total


def tail_integral(word: IterandWord, ctx: PrecisionContext, qterms: int | None = None,
                  y=1, kernel: str = "axis"):
    """``R int_{iy}^{->1_oo} omega_1 ... omega_r`` in the variable ``tau``.

    The empty word gives 1.
    """
    letters = word.letters
    N = qterms or default_qterms(ctx, len(letters))
    if kernel == "tau":
        return _tau_tail(letters, ctx, N, y)
    if kernel != "axis":
        raise DomainError(f"unknown kernel {kernel!r}")
    phase = ctx.mp.mpc(0, 1) ** sum(word.indices)
    return phase * _axis_tail(letters, ctx, N, y)


def _chen_axis(letters: tuple, ctx: PrecisionContext, N: int):
    # On tau = iy the pull-back y -> 1/y of f(iy) y^(n-1) dy is
    # -(-1)^(w/2) f(iy) y^(w-n-1) dy; together with path reversal each letter of the
    # (0, 1] piece contributes (-1)^(w/2).
    total = ctx.mp.zero
    for k in range(len(letters) + 1):
        head, rest = letters[:k], letters[k:]
        sign = 1
        for f, _ in head:
            sign *= -1 if (f.weight // 2) % 2 else 1
        mirrored = tuple((f, f.weight - n) for f, n in reversed(head))
        total += sign * _axis_tail(mirrored, ctx, N) * _axis_tail(rest, ctx, N)
    return total


def _chen_tau(letters: tuple, ctx: PrecisionContext, N: int):
    mp = ctx.mp
    total = mp.mpc(0)
    for k in range(len(letters) + 1):
        head, rest = letters[:k], letters[k:]
        sign = (-1) ** k
        pulled = []
        for letter in reversed(head):
            s, new = s_pullback(letter)
            sign *= s
            pulled.append(new)
        total += sign * _tau_tail(pulled, ctx, N) * _tau_tail(rest, ctx, N)
    return total


@dataclass(frozen=True)
class MMValue:
    word: IterandWord
    raw_integral: object  # R int_0^{->1_oo}, complex
    value: object  # normalised real value Lambda(...)
    normalization: object  # unit-modulus factor with value = normalization * raw_integral

    def __float__(self):
        return float(self.value)


def _check_truncation(word: IterandWord, ctx: PrecisionContext, N: int) -> None:
    # First neglected term q^(N+1) of any letter at y = 1.  Integrating against y^p
    # brings factors p!/j!/(2 pi m)^(p-j+1), which only grow once p exceeds 2 pi m.
    import math

    worst = max(math.log(coefficient_bound(f.kind, f.weight, N + 1)) for f in word.forms)
    p = sum(word.indices)
    x = 2 * math.pi * (N + 1)
    log_tail = worst + math.log(len(word) + 1) - x + max(0.0, p * math.log(p / x))
    if log_tail > -ctx.working_digits * math.log(10):
        raise TruncationError(
            f"qterms={N} is too small for {ctx.working_digits} working digits "
            f"(default would be {default_qterms(ctx, len(word))})"
        )


def lambda_mmv(word: IterandWord, ctx: PrecisionContext, qterms: int | None = None,
               kernel: str = "axis") -> MMValue:
    """Multiple modular value ``Lambda(f_1, ..., f_r; n_1, ..., n_r)`` for ``r <= 3``.

    An explicit ``qterms`` that cannot reach the working precision raises
    :class:`TruncationError`.
    """
    if len(word) > MAX_LENGTH:
        raise UnsupportedError(f"length {len(word)} > {MAX_LENGTH} not supported")
    mp = ctx.mp
    N = qterms or default_qterms(ctx, len(word))
    if len(word):
        _check_truncation(word, ctx, N)
    norm = mp.mpc(0, 1) ** (-sum(word.indices))
    if kernel == "axis":
        value = _chen_axis(word.letters, ctx, N)
        raw = value / norm
    elif kernel == "tau":
        raw = _chen_tau(word.letters, ctx, N)
        value = norm * raw
    else:
        raise DomainError(f"unknown kernel {kernel!r}")
    return MMValue(word, raw, value, norm)


def mmv(forms, indices, ctx: PrecisionContext, **kwargs):
    """Shorthand returning the real value, e.g. ``mmv("G4,G4", (2, 2), ctx)``."""
    if isinstance(forms, str):
        forms = forms.split(",")
    if isinstance(indices, int):
        indices = (indices,)
    return lambda_mmv(IterandWord.of(forms, indices), ctx, **kwargs).value.real


@dataclass(frozen=True)
class MMVTable:
    """All ``Lambda(f, g; n1, n2)`` with ``0 < n1 < w_f`` and ``0 < n2 < w_g``."""

    f: FormId
    g: FormId
    entries: dict

    def __getitem__(self, key: tuple[int, int]) -> MMValue:
        return self.entries[key]

    def value(self, n1: int, n2: int):
        return self.entries[(n1, n2)].value

    @property
    def shape(self) -> tuple[int, int]:
        return self.f.weight - 1, self.g.weight - 1

    def rows(self) -> list[list]:
        r, c = self.shape
        return [[self.value(i, j) for j in range(1, c + 1)] for i in range(1, r + 1)]


def mmv_table(f: FormId, g: FormId, ctx: PrecisionContext, qterms: int | None = None) -> MMVTable:
    f = f if isinstance(f, FormId) else FormId.parse(f)
    g = g if isinstance(g, FormId) else FormId.parse(g)
    entries = {}
    for n1 in range(1, f.weight):
        for n2 in range(1, g.weight):
            word = IterandWord(((f, n1), (g, n2)))
            entries[(n1, n2)] = lambda_mmv(word, ctx, qterms=qterms)
    return MMVTable(f, g, entries)

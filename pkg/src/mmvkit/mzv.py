"""Multiple zeta values, the weight-12 representatives zeta_{a,b}, and the f-alphabet.

Indices are given in the ascending convention

    zeta(n_1, ..., n_r) = sum_{1 <= k_1 < ... < k_r} k_1^-n_1 ... k_r^-n_r,   n_r >= 2.

Internally an index is first reversed into the descending convention
(largest summation variable first) and turned into the iterated-integral word
over ``[0, 1]`` with letters ``0 <-> dt/t`` and ``1 <-> dt/(1-t)``.  Values are
obtained by Hoelder convolution at ``t = 1/2``.  :func:`mzv_direct` is an
unrelated route (nested partial sums plus Richardson extrapolation) kept as an
oracle.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from .errors import DomainError
from .numerics import PrecisionContext

__all__ = [
    "mzv",
    "mzv_direct",
    "to_descending",
    "mzv_word",
    "ZetaRepresentative",
    "zeta_rep",
    "ZETA_REP_INDICES",
    "FWord",
    "shuffle_product",
    "shuffle_words",
    "dimension_series",
]


def _check_index(idx) -> tuple[int, ...]:
    idx = tuple(int(n) for n in idx)
    if not idx:
        raise DomainError("empty MZV index")
    if any(n < 1 for n in idx):
        raise DomainError(f"MZV index entries must be >= 1: {idx}")
    if idx[-1] < 2:
        raise DomainError(f"divergent MZV index {idx}: last entry must be >= 2")
    return idx


def to_descending(idx) -> tuple[int, ...]:
    """Ascending index -> descending index (just a reversal)."""
    return tuple(reversed(idx))


def mzv_word(desc: tuple[int, ...]) -> tuple[int, ...]:
    """Iterated-integral word of a descending index, read from 0 to 1.

    ``zeta(s_1, ..., s_k)`` (``s_1`` on the largest variable) is
    ``1 0^{s_k - 1} ... 1 0^{s_1 - 1}``.
    """
    word: list[int] = []
    for s in reversed(desc):
        word.append(1)
        word.extend([0] * (s - 1))
    return tuple(word)


def _blocks(word: tuple[int, ...]) -> list[int]:
    # word must start with 1: split into 1 0^(m-1) blocks
    blocks = []
    for letter in word:
        if letter == 1:
            blocks.append(1)
        else:
            blocks[-1] += 1
    return blocks


def _polylog_half(word: tuple[int, ...], ctx: PrecisionContext, n_terms: int):
    """``int_{0 < t_1 < ... < t_j < 1/2}`` of the word (first letter must be 1).

    Equals ``sum_{n_1 < ... < n_k} 2^{-n_k} / (n_1^{m_1} ... n_k^{m_k})``.
    """
    mp = ctx.mp
    if not word:
        return mp.one
    blocks = _blocks(word)
    inv = [mp.zero] + [mp.one / mp.mpf(n) for n in range(1, n_terms + 1)]
    level = [inv[n] ** blocks[0] for n in range(n_terms + 1)]
    level[0] = mp.zero
    for m in blocks[1:]:
        nxt = [mp.zero] * (n_terms + 1)
        running = mp.zero
        for n in range(1, n_terms + 1):
            nxt[n] = running * inv[n] ** m
            running += level[n]
        level = nxt
    half = mp.mpf(1) / 2
    total = mp.zero
    x = mp.one
    for n in range(1, n_terms + 1):
        x *= half
        total += level[n] * x
    return total


@lru_cache(maxsize=1024)
def _mzv_cached(idx: tuple[int, ...], ctx: PrecisionContext):
    word = mzv_word(to_descending(idx))
    n = len(word)
    n_terms = int((ctx.working_digits + 10) * math.log2(10)) + 4 * n + 20
    swapped = tuple(1 - a for a in reversed(word))
    mp = ctx.mp
    total = mp.zero
    for j in range(n + 1):
        left = _polylog_half(word[:j], ctx, n_terms)
        right = _polylog_half(swapped[: n - j], ctx, n_terms)
        total += left * right
    return total


def mzv(idx, ctx: PrecisionContext):
    """Multiple zeta value ``zeta(n_1, ..., n_r)`` (ascending convention).

    >>> ctx = PrecisionContext(20)
    >>> ctx.nstr(mzv((2,), ctx), 15)
    '1.644934066848226'
    """
    return _mzv_cached(_check_index(idx), ctx)


def mzv_direct(idx, digits: int = 12, levels: int = 11, start: int = 16) -> float:
    """Independent oracle: nested partial sums up to ``K`` with Richardson extrapolation in ``1/K``.

    Only for indices whose entries are all >= 2, where the truncation error has
    a pure power expansion in ``1/K``.  Returns an mpf at ``digits + 25`` digits;
    the extrapolation is trustworthy to roughly ``digits`` digits.
    """
    idx = _check_index(idx)
    if min(idx) < 2:
        raise DomainError("mzv_direct needs every index entry >= 2")
    ctx = PrecisionContext(digits + 5, 20)
    mp = ctx.mp
    K_max = start * 2 ** (levels - 1)
    inv = [mp.zero] + [mp.one / mp.mpf(n) for n in range(1, K_max + 1)]
    level = [inv[n] ** idx[0] for n in range(K_max + 1)]
    level[0] = mp.zero
    for m in idx[1:]:
        nxt = [mp.zero] * (K_max + 1)
        running = mp.zero
        for n in range(1, K_max + 1):
            nxt[n] = running * inv[n] ** m
            running += level[n]
        level = nxt
    partial = []
    acc = mp.zero
    checkpoints = {start * 2**j for j in range(levels)}
    for n in range(1, K_max + 1):
        acc += level[n]
        if n in checkpoints:
            partial.append(acc)
    table = [partial]
    for i in range(1, levels):
        prev = table[-1]
        f = mp.mpf(2) ** i
        table.append([(f * prev[j + 1] - prev[j]) / (f - 1) for j in range(len(prev) - 1)])
    return table[-1][0]


# ---------------------------------------------------------------------------
# zeta_{a,b} representatives

Term = tuple[Fraction, tuple[tuple[int, ...], ...]]


def _scaled(c, terms):
    return [(c * k, f) for k, f in terms]


_Z = Fraction

_ZETA_39: list[Term] = _scaled(
    _Z(1, 19 * 691),
    [
        (_Z(2**4 * 3**2), ((5, 3, 2, 2),)),
        (_Z(-(3**3) * 5 * 179, 2 * 7), ((5, 7),)),
        (_Z(-2 * 3**3 * 29), ((7, 5),)),
        (_Z(-3 * 7**2), ((3,), (9,))),
        (_Z(2**4 * 3), ((3,), (3,), (3,), (3,))),
        (_Z(2**5 * 3**3 * 11), ((3, 7), (2,))),
        (_Z(2**5 * 3**2 * 31), ((7, 3), (2,))),
        (_Z(-(2**4) * 3**4), ((3, 5), (4,))),
        (_Z(-(2**5) * 3**2), ((5, 3), (4,))),
        (_Z(-(2**3) * 3 * 5**2), ((3,), (3,), (6,))),
        (_Z(3 * 128583229, 2**4 * 7 * 691), ((12,),)),
    ],
)

# zeta_{5,7} + 3 zeta_{3,9} lies in the span of double zeta values
_ZETA_57_PLUS_3_ZETA_39: list[Term] = [
    (_Z(1, 9), ((3, 9),)),
    (_Z(3), ((3,), (9,))),
    (_Z(5, 3), ((5,), (7,))),
    (_Z(-31 * 139, 2 * 691), ((12,),)),
]

_REPRESENTATIVES: dict[tuple[int, ...], list[Term]] = {
    (3, 3): [(_Z(1), ((3, 3),))],
    (5, 3): [(_Z(-1, 5), ((3, 5),))],
    (3, 7): [
        (_Z(1), ((3,), (7,))),
        (_Z(1, 14), ((3, 7),)),
        (_Z(3, 14), ((5,), (5,))),
    ],
    (3, 9): _ZETA_39,
    (5, 7): _ZETA_57_PLUS_3_ZETA_39 + _scaled(_Z(-3), _ZETA_39),
}

ZETA_REP_INDICES = tuple(_REPRESENTATIVES)


@dataclass(frozen=True)
class ZetaRepresentative:
    """A chosen real representative of ``zeta_{2a_1+1, ..., 2a_r+1}``.

    ``expansion`` lists ``(coefficient, (index, index, ...))`` meaning the
    coefficient times the product of the MZVs.  Representatives are defined
    only modulo lower coradical filtration; these are specific choices.
    """

    index: tuple[int, ...]
    expansion: tuple[Term, ...]
    value: object

    @property
    def weight(self) -> int:
        return sum(self.index)


def _term_weight(factors) -> int:
    return sum(sum(i) for i in factors)


def zeta_rep(index, ctx: PrecisionContext) -> ZetaRepresentative:
    index = tuple(index)
    if index not in _REPRESENTATIVES:
        raise DomainError(f"no representative stored for zeta_{index}; have {ZETA_REP_INDICES}")
    terms = _REPRESENTATIVES[index]
    assert all(_term_weight(f) == sum(index) for _, f in terms)
    mp = ctx.mp
    value = mp.zero
    for c, factors in terms:
        prod = ctx.mpf(c)
        for idx in factors:
            prod *= mzv(idx, ctx)
        value += prod
    return ZetaRepresentative(index, tuple(terms), value)


# ---------------------------------------------------------------------------
# f-alphabet


@dataclass(frozen=True, order=True)
class FWord:
    """``f_{a_1} ... f_{a_r} f_2^k`` with odd ``a_i >= 3``."""

    odd_letters: tuple[int, ...] = ()
    f2_power: int = 0

    def __post_init__(self):
        object.__setattr__(self, "odd_letters", tuple(self.odd_letters))
        if any(a < 3 or a % 2 == 0 for a in self.odd_letters):
            raise DomainError(f"odd letters must be odd and >= 3: {self.odd_letters}")
        if self.f2_power < 0:
            raise DomainError("f2_power must be >= 0")

    @property
    def weight(self) -> int:
        return sum(self.odd_letters) + 2 * self.f2_power

    @property
    def coradical_degree(self) -> int:
        return len(self.odd_letters)

    def __str__(self):
        parts = [f"f{a}" for a in self.odd_letters]
        if self.f2_power:
            parts.append(f"f2^{self.f2_power}" if self.f2_power > 1 else "f2")
        return "".join(parts) or "1"


def shuffle_words(u: tuple, v: tuple) -> Counter:
    """All riffle shuffles of two letter sequences, with multiplicity."""
    n, m = len(u), len(v)
    out: Counter = Counter()
    for positions in combinations(range(n + m), n):
        word = []
        iu = iv = 0
        pos = set(positions)
        for k in range(n + m):
            if k in pos:
                word.append(u[iu])
                iu += 1
            else:
                word.append(v[iv])
                iv += 1
        out[tuple(word)] += 1
    return out


def shuffle_product(u: FWord, v: FWord) -> Counter:
    """``u ш v`` as a Counter ``{FWord: multiplicity}``; powers of ``f_2`` multiply."""
    power = u.f2_power + v.f2_power
    return Counter({FWord(w, power): c for w, c in shuffle_words(u.odd_letters, v.odd_letters).items()})


def dimension_series(max_weight: int) -> list[int]:
    """Graded dimensions of ``Q<f_3, f_5, ...> (x) Q[f_2]`` in weights ``0..max_weight``."""
    if not 0 <= max_weight <= 64:
        raise DomainError("max_weight must lie in [0, 64]")
    free = [0] * (max_weight + 1)
    free[0] = 1
    for n in range(1, max_weight + 1):
        free[n] = sum(free[n - a] for a in range(3, n + 1, 2))
    return [sum(free[n - 2 * k] for k in range(n // 2 + 1)) for n in range(max_weight + 1)]

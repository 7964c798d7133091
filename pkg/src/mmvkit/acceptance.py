"""The acceptance suite: fourteen numbered criteria, each reported as one PASS/FAIL line.

Tolerances are relative: a check ``a = b`` passes when
``|a - b| <= tol * max(|terms|)``, where ``terms`` are the quantities entering
the identity (so that a sum that is supposed to vanish is measured against the
size of its summands).  Two items (7 and the vanishing part of 14) test
statements that are false as literally stated; those sub-checks are kept,
reported as FAIL, and accompanied by the corrected statement, which is
checked as well.
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .lvalues import completed_l_value
from .mmv import IterandWord, lambda_mmv, mmv_table, reflection
from .modforms import DELTA, G, delta, delta_prime
from .mzv import dimension_series, mzv, mzv_direct, zeta_rep
from .numerics import PrecisionContext, bernoulli
from .perpoly import (
    BiPolynomial,
    P_DELTA_MINUS,
    P_DELTA_PLUS,
    cancellation_check,
    delta_layer,
    delta_stack,
    generating_function,
    period_polynomial,
    period_relation_residuals,
    solve_from_stack,
)
from .identities import verify as verify_identity_id
from .periods import omega_minus, omega_plus
from .relfind import PeriodBasis, find_relation

__all__ = ["CriterionResult", "CRITERIA", "run_criterion", "run_all"]


@dataclass
class CriterionResult:
    number: int
    title: str
    passed: bool
    summary: str
    details: list[str] = field(default_factory=list)
    seconds: float = 0.0

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.number:2d}. {self.title}: {self.summary}"


class _Tally:
    """Collects relative residuals and remembers the worst one."""

    def __init__(self, ctx: PrecisionContext, tol: str):
        self.ctx = ctx
        self.tol = ctx.mpf(tol)
        self.worst = ctx.mp.zero
        self.count = 0
        self.failures: list[str] = []

    def check(self, name: str, lhs, rhs, *terms) -> bool:
        mp = self.ctx.mp
        lhs, rhs = self.ctx.convert(lhs), self.ctx.convert(rhs)
        scale = max([abs(lhs), abs(rhs)] + [abs(self.ctx.convert(t)) for t in terms])
        diff = abs(lhs - rhs)
        rel = mp.zero if diff == 0 else diff / scale
        self.worst = max(self.worst, rel)
        self.count += 1
        ok = bool(rel <= self.tol)
        if not ok:
            self.failures.append(f"{name}: relative residual {mp.nstr(rel, 3)}")
        return ok

    def check_zero(self, name: str, value, scale) -> bool:
        """``|value| <= tol * scale`` for quantities that vanish identically."""
        return self.check(name, value, 0, scale)

    @property
    def passed(self) -> bool:
        return not self.failures

    def summary(self) -> str:
        return (f"{self.count} checks, worst relative residual {self.ctx.mp.nstr(self.worst, 3)}"
                f" (tolerance {self.ctx.mp.nstr(self.tol, 1)})")


def _q(ctx, num, den=1):
    return ctx.mpf(Fraction(num, den))


def _lam(form, s, ctx):
    return completed_l_value(form, s, ctx).value


# ---------------------------------------------------------------------------


def _c1(ctx):
    t = _Tally(ctx, "1e-40")
    for k2 in range(4, 13, 2):
        for n in range(1, k2):
            val = _lam(G(k2), n, ctx)
            if n % 2 == 0:
                i = n // 2
                closed = Fraction((-1) ** i, 2) * (bernoulli(2 * i) / (2 * i)) * (bernoulli(k2 - 2 * i) / (k2 - 2 * i))
                t.check(f"Lambda(G{k2};{n})", val, ctx.mpf(closed))
            elif 3 <= n <= k2 - 3:
                t.check_zero(f"Lambda(G{k2};{n})", val, ctx.mp.one)
    t.check("Lambda(G4;3)", _lam(G(4), 3, ctx), -mzv((3,), ctx) / (2 * ctx.mp.pi) ** 3)
    return t.passed, t.summary(), t.failures


def _g4g4_closed(ctx):
    pi, z = ctx.mp.pi, lambda n: mzv((n,), ctx)  # noqa: E731
    a = z(3) ** 2 / (2**7 * pi**6)
    b = z(3) / (2**5 * 3**2 * 5 * pi**3) - 5 * z(5) / (2**8 * 3 * pi**5)
    c = -z(3) / (2**8 * 3 * 5 * pi**3) + 5 * z(5) / (2**8 * 3 * pi**5)
    r = _q(ctx, 11 * 19, 2**10 * 3**4 * 5**3)
    return {
        (1, 1): a, (1, 2): b, (1, 3): z(3) ** 2 / (2**6 * pi**6) - r,
        (2, 1): c, (2, 2): _q(ctx, 1, 2**11 * 3**4), (2, 3): b,
        (3, 1): r, (3, 2): c, (3, 3): a,
    }


def _c2(ctx):
    t = _Tally(ctx, "1e-40")
    table = mmv_table(G(4), G(4), ctx)
    for key, closed in _g4g4_closed(ctx).items():
        t.check(f"Lambda(G4,G4;{key[0]},{key[1]})", table.value(*key).real, closed)
    return t.passed, t.summary(), t.failures


def _g6g4_closed(ctx):
    pi = ctx.mp.pi
    z3, z5, z7 = (mzv((n,), ctx) for n in (3, 5, 7))
    z35 = mzv((3, 5), ctx)
    Q = lambda n, d: _q(ctx, n, d)  # noqa: E731
    corner = 3 * z35 / (2**6 * 5 * pi**8) - Q(503, 2**11 * 3**4 * 5**3 * 7)
    return {
        (1, 1): corner,
        (5, 3): corner + 3 * z3 * z5 / (2**6 * pi**8),
        (1, 2): -z3 / (2**6 * 3**2 * 5 * 7 * pi**3) - z5 / (2**8 * 3 * pi**5) + 7 * z7 / (2**9 * pi**7),
        (1, 3): z3**2 / (2**6 * 7 * pi**6) + Q(19 * 23, 2**10 * 3**5 * 5**2 * 7**2) - 3 * z3 * z5 / (2**6 * pi**8),
        (2, 1): z3 / (2**8 * 3**2 * 5 * 7 * pi**3) - 7 * z7 / (2**10 * pi**7),
        (2, 2): -z3**2 / (2**8 * 7 * pi**6) - Q(107, 2**10 * 3**5 * 5**2 * 7**2),
        (2, 3): z3 / (2**9 * 3 * 5 * 7 * pi**3) - z5 / (2**7 * 3 * 5 * pi**5),
        (3, 1): z3**2 / (2**7 * 3 * 7 * pi**6) - Q(1187, 2**10 * 3**6 * 5**2 * 7**2),
        (3, 2): -z3 / (2**7 * 3**3 * 7 * pi**3) + z5 / (2**8 * 3 * 5 * pi**5),
        (3, 3): z3**2 / (2**7 * 3 * 7 * pi**6) - Q(1187, 2**10 * 3**6 * 5**2 * 7**2),
        (4, 1): z3 / (2**8 * 3**2 * 7 * pi**3) - z5 / (2**7 * 3 * 5 * pi**5),
        (4, 2): -z3**2 / (2**8 * 7 * pi**6) + Q(521, 2**11 * 3**5 * 5**2 * 7**2),
        (4, 3): z3 / (2**9 * 5 * 7 * pi**3) - 7 * z7 / (2**10 * pi**7),
        (5, 1): z3**2 / (2**6 * 7 * pi**6) + Q(19 * 23, 2**10 * 3**5 * 5**2 * 7**2),
        (5, 2): -z3 / (2**6 * 3**2 * 5 * 7 * pi**3) + 7 * z7 / (2**9 * pi**7),
    }


def _c3(ctx):
    t = _Tally(ctx, "1e-40")
    table = mmv_table(G(6), G(4), ctx)
    for key, closed in _g6g4_closed(ctx).items():
        t.check(f"Lambda(G6,G4;{key[0]},{key[1]})", table.value(*key).real, closed)
    return t.passed, t.summary(), t.failures


_PAIR_FORMS = (G(4), G(6), G(8), G(10), DELTA)


def _c4(ctx):
    t = _Tally(ctx, "1e-40")
    tables = {(f, g): mmv_table(f, g, ctx) for f in _PAIR_FORMS for g in _PAIR_FORMS}
    single = {(f, n): _lam(f, n, ctx) for f in _PAIR_FORMS for n in range(1, f.weight)}
    # Some entries vanish identically (both single values zero); they are
    # measured against the largest entry of their table instead of themselves.
    size = {key: max(abs(e.value) for e in tab.entries.values()) for key, tab in tables.items()}
    for (f, g), tab in tables.items():
        other = tables[(g, f)]
        for (n1, n2), entry in tab.entries.items():
            a = entry.value.real
            b = other.value(n2, n1).real
            prod = single[(f, n1)] * single[(g, n2)]
            t.check(f"shuffle {f},{g};{n1},{n2}", a + b, prod, a, b, size[(f, g)])
            sign, word = reflection(entry.word)
            (rf, rn1), (rg, rn2) = word.letters
            t.check(f"reflection {f},{g};{n1},{n2}", a, sign * tables[(rf, rg)].value(rn1, rn2).real,
                    size[(f, g)])
    return t.passed, t.summary() + f" over {len(tables)} ordered pairs", t.failures


def _c5(ctx):
    t = _Tally(ctx, "1e-40")
    z = lambda *i: mzv(i, ctx)  # noqa: E731
    terms = (28 * z(3, 9), 150 * z(5, 7), 168 * z(7, 5), _q(ctx, 5197, 691) * z(12))
    t.check("28 z(3,9) + 150 z(5,7) + 168 z(7,5) - 5197/691 z(12)", terms[0] + terms[1] + terms[2], terms[3], *terms)
    return t.passed, t.summary(), t.failures


def _c6(ctx):
    mp = ctx.mp
    t = _Tally(ctx, "1e-40")
    details = []
    wp, wm = omega_plus(ctx), omega_minus(ctx)
    for name, val, printed in (("omega+", wp, 114379022438848), ("omega-", wm, 9269276162370)):
        shown = int(mp.floor(val * 10**15))
        ok = shown == printed
        details.append(f"{name} = {mp.nstr(val, 20)} (printed 15 digits {'match' if ok else 'DIFFER'})")
        if not ok:
            t.failures.append(f"{name} printed digits differ")
    P = period_polynomial(DELTA, ctx)
    even, odd = P.even_part(), P.odd_part()
    for j in range(11):
        if P_DELTA_PLUS.coeffs[j] != 0:
            t.check(f"even ratio y^{j}", even.coeffs[j], wp * ctx.mpf(P_DELTA_PLUS.coeffs[j]))
        if P_DELTA_MINUS.coeffs[j] != 0:
            t.check(f"odd ratio y^{j}", odd.coeffs[j], mp.mpc(0, 1) * wm * ctx.mpf(P_DELTA_MINUS.coeffs[j]))
    scale = max(abs(c) for c in P.coeffs)
    for label, res in zip(("(1+S)", "(1+U+U^2)"), period_relation_residuals(P)):
        t.check_zero(f"P_Delta|{label}", max(abs(c) for c in res.coeffs), scale)
    return t.passed, t.summary() + "; " + "; ".join(details), t.failures


def _c7(ctx):
    mp = ctx.mp
    vals = [_lam(DELTA, s, ctx) for s in (3, 5, 7, 9)]
    tol = ctx.mpf("1e-40")
    # literal reading: i^k Lambda(Delta;k) proportional to (14, -9, -9, 14)
    ipow = [mp.mpc(0, 1) ** k for k in (3, 5, 7, 9)]
    reindexed = [p * v for p, v in zip(ipow, vals)]
    target = (14, -9, -9, 14)
    unit = reindexed[0] / 14
    literal = max(abs(r - c * unit) for r, c in zip(reindexed, target)) / abs(reindexed[0])
    got = ":".join(str(int(mp.nint(mp.re(r / unit)))) for r in reindexed)
    # corrected statement: the values themselves are proportional to (14, 9, 9, 14)
    unit2 = vals[0] / 14
    corrected = max(abs(v - c * unit2) for v, c in zip(vals, (14, 9, 9, 14))) / vals[0]
    literal_ok = bool(literal <= tol)
    corrected_ok = bool(corrected <= tol)
    summary = (f"literal (14:-9:-9:14) after i^k reindexing {'PASS' if literal_ok else 'FAIL'} "
               f"(got {got}, relative residual {mp.nstr(literal, 3)}); "
               f"Lambda(Delta;3,5,7,9) proportional to (14:9:9:14) {'PASS' if corrected_ok else 'FAIL'} "
               f"(relative residual {mp.nstr(corrected, 3)})")
    details = [
        "all four values are positive (Euler product and functional equation), so no choice of "
        "unit-modulus factors i^k can produce the mixed signs 14:-9:-9:14",
    ]
    return literal_ok and corrected_ok, summary, details


def _with_tolerance(ids, tol: str, expect: str | None = None):
    """Registry identities, re-checked against an explicit relative tolerance."""
    def run(ctx):
        t = _Tally(ctx, tol)
        labels = []
        for i in ids:
            rep = verify_identity_id(i, ctx)
            labels.append(f"{i} {rep.label}")
            for c in rep.checks:
                t.check(f"{i}: {c.name}", c.lhs, c.rhs)
            if expect is not None and rep.label != expect:
                t.failures.append(f"{i} reported {rep.label}")
        return t.passed, ", ".join(labels) + "; " + t.summary(), t.failures
    return run


def _c8(ctx):
    rep = verify_identity_id("legendre-delta", ctx)
    c = rep.checks[0]
    rel = abs(c.lhs - c.rhs) / abs(c.rhs)
    ok = bool(rel <= ctx.mpf("1e-10"))
    return ok, f"relative residual {ctx.mp.nstr(rel, 3)} (tolerance 1e-10, printed constants have 15 digits)", []


def _c12(ctx):
    ok1, s1, d1 = _with_tolerance(("ihara-takao-modular",), "1e-35", "CONJECTURAL-CONFIRMED")(ctx)
    rep = cancellation_check(ctx)
    details = list(d1) + rep.lines()
    s2 = ("cancellation_check: combination free of modular periods"
          if rep.modular_free and rep.all_found else "cancellation_check: modular period needed or relation missing")
    return ok1 and rep.passed, f"{s1}; {s2}", details


def _c13(ctx):
    mp = ctx.mp

    def values(c):
        return (lambda_mmv(IterandWord.of((G(4), G(4)), (1, 1)), c).value.real,
                mzv((3,), c) ** 2 / c.mp.pi ** 6)

    target, z = values(ctx)
    basis = PeriodBasis(("z(3)^2/pi^6",), (z,), factory=lambda c: (values(c)[1],))
    rel = find_relation(target, basis, ctx, target_name="Lambda(G4,G4;1,1)", max_height=10**3)
    vec = tuple(rel.integer_vector)
    vec_ok = rel.found and vec in ((128, -1), (-128, 1))
    hi = ctx.doubled()
    t_hi, z_hi = values(hi)
    r1 = abs(128 * target - z)
    r2 = abs(128 * t_hi - z_hi)
    shrink = r2 == 0 or (r1 != 0 and r2 < r1)
    ok = vec_ok and shrink
    summary = (f"vector {vec} at height <= 10^3; residual {mp.nstr(r1, 3)} at {ctx.decimal_digits} digits, "
               f"{hi.mp.nstr(r2, 3)} at {hi.decimal_digits} digits")
    return ok, summary, [rel.expression()]


def _hecke_ok(N: int = 200) -> tuple[bool, int]:
    tau = delta(N)
    checks = 0
    for m in range(1, N + 1):
        for n in range(1, N // m + 1):
            if math.gcd(m, n) == 1:
                checks += 1
                if tau[m * n] != tau[m] * tau[n]:
                    return False, checks
    for p in (2, 3, 5, 7, 11, 13):
        pk = p
        while pk * p <= N:
            checks += 1
            prev = tau[pk // p] if pk > p else 1
            if tau[pk * p] != tau[p] * tau[pk] - p**11 * prev:
                return False, checks
            pk *= p
    return True, checks


_F93_INDICES = ((5, 3, 2, 2), (5, 7), (7, 5), (3,), (9,), (3, 7), (7, 3), (2,), (3, 5), (5, 3), (4,), (6,), (12,))


def _c14(ctx):
    mp = ctx.mp
    parts = []
    ok_all = True

    ok, n = _hecke_ok()
    parts.append(f"Hecke multiplicativity ({n} relations) {'PASS' if ok else 'FAIL'}")
    ok_all &= ok

    dp = delta_prime(4)
    ok = dp[2] == 47709536 and dp[3] == 39862705122
    parts.append(f"Delta' a2={dp[2]}, a3={dp[3]} {'PASS' if ok else 'FAIL'}")
    ok_all &= ok

    worst = 0.0
    for idx in _F93_INDICES:
        a = mzv(idx, ctx)
        b = mzv_direct(idx, digits=12)
        worst = max(worst, float(abs(a - b) / abs(a)))
    ok = worst < 1e-12
    parts.append(f"Hoelder vs oracle on {len(_F93_INDICES)} indices, worst {worst:.1e} {'PASS' if ok else 'FAIL'}")
    ok_all &= ok

    d = dimension_series(30)
    ok = d[:3] == [1, 0, 1] and all(d[n] == d[n - 2] + d[n - 3] for n in range(3, 31))
    parts.append(f"dimension recursion to weight 30 {'PASS' if ok else 'FAIL'}")
    ok_all &= ok

    rng = random.Random(20240917)
    bad = 0
    for _ in range(100):
        d1, d2 = rng.randint(1, 8), rng.randint(1, 8)
        coeffs = [[Fraction(rng.randint(-50, 50), rng.randint(1, 30)) for _ in range(d2 + 1)] for _ in range(d1 + 1)]
        P = BiPolynomial((d1, d2), coeffs)
        if solve_from_stack(delta_stack(P)).coeffs != P.coeffs:
            bad += 1
    ok = bad == 0
    parts.append(f"delta_stack round trip 100/100 exact {'PASS' if ok else f'FAIL ({bad} mismatches)'}")
    ok_all &= ok

    # vanishing of delta^k P_{f,g}
    pairs = ((G(4), G(10)), (G(6), G(8)), (G(4), G(8)), (G(4), G(4)))
    literal_bad = []
    beyond_bad = []
    for f, g in pairs:
        P = generating_function(f, g, ctx)
        m = min(P.bidegree)
        scale = P.max_abs()
        at_min = max(abs(c) for c in delta_layer(P, m).coeffs)
        if at_min > ctx.mpf("1e-40") * scale:
            literal_bad.append(f"{f},{g}: |delta^{m}| = {mp.nstr(at_min, 3)}")
        for k in (m + 1, m + 2):
            above = max((abs(c) for c in delta_layer(P, k).coeffs), default=mp.zero)
            if above > ctx.mpf("1e-40") * scale:
                beyond_bad.append(f"{f},{g}: delta^{k}")
    parts.append(f"delta^k P = 0 for k >= min (literal) {'PASS' if not literal_bad else 'FAIL'}")
    parts.append(f"delta^k P = 0 for k > min {'PASS' if not beyond_bad else 'FAIL'}")
    ok_all &= not literal_bad and not beyond_bad
    details = [f"k = min is nonzero: {x}" for x in literal_bad] + beyond_bad
    if literal_bad:
        details.append("delta^min P_{f,g} is the top layer of the stack and carries new MZV periods "
                       "(for example zeta_{3,7} in delta^2 P_{G4,G10}); only k > min vanishes")
    return ok_all, "; ".join(parts), details


CRITERIA: tuple[tuple[int, str, Callable], ...] = (
    (1, "length-one Eisenstein L-values", _c1),
    (2, "Lambda(G4,G4) table", _c2),
    (3, "Lambda(G6,G4) table", _c3),
    (4, "shuffle and reflection, all pairs", _c4),
    (5, "GKZ relation", _c5),
    (6, "period polynomial of Delta", _c6),
    (7, "critical-ratio of Delta", _c7),
    (8, "Legendre relation", _c8),
    (9, "Rankin-Selberg", _with_tolerance(("rankin-selberg-12",), "1e-40")),
    (10, "conjectural weight 12 identities", _with_tolerance(
        ("f93period", "f75period", "f37period", "rational-shift"), "1e-40")),
    (11, "transference", _with_tolerance(("transfer-G4G8", "transfer-Delta"), "1e-35")),
    (12, "modular Ihara-Takao and cancellation", _c12),
    (13, "relation re-discovery", _c13),
    (14, "property suite", _c14),
)


def run_criterion(number: int, ctx: PrecisionContext | None = None) -> CriterionResult:
    ctx = ctx or PrecisionContext(50)
    for num, title, fn in CRITERIA:
        if num == number:
            start = time.perf_counter()
            passed, summary, details = fn(ctx)
            return CriterionResult(num, title, bool(passed), summary, list(details), time.perf_counter() - start)
    raise KeyError(number)


def run_all(ctx: PrecisionContext | None = None, numbers=None, on_result: Callable | None = None) -> list[CriterionResult]:
    ctx = ctx or PrecisionContext(50)
    out = []
    for num, _, _ in CRITERIA:
        if numbers is not None and num not in numbers:
            continue
        res = run_criterion(num, ctx)
        out.append(res)
        if on_result is not None:
            on_result(res)
    return out

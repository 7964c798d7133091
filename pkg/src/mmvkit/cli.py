"""Command-line front end: ``mmvkit <subcommand> [options]``.

Exit codes: 0 success, 1 domain error, 2 insufficient precision, 3 failed
verification, 64 usage error.  Every number is printed as a decimal string,
also inside JSON output.  ``MMVKIT_DIGITS`` sets the default precision.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .errors import DomainError, InconsistencyError, InsufficientPrecisionError, MMVError, TruncationError
from .numerics import PrecisionContext

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_PRECISION = 2
EXIT_VERIFY = 3
EXIT_USAGE = 64

MIN_DIGITS, MAX_DIGITS, DEFAULT_DIGITS = 15, 1000, 50


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _digits(text: str) -> int:
    try:
        d = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"digits must be an integer, got {text!r}") from None
    if not MIN_DIGITS <= d <= MAX_DIGITS:
        raise argparse.ArgumentTypeError(f"digits must lie in [{MIN_DIGITS}, {MAX_DIGITS}], got {d}")
    return d


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _height(text: str) -> int:
    # accepts 1000, 10^12 or 1e12
    t = text.replace(" ", "")
    try:
        if "^" in t:
            base, exp = t.split("^")
            return int(base) ** int(exp)
        if "e" in t.lower():
            mant, exp = t.lower().split("e")
            return int(mant) * 10 ** int(exp)
        return int(t)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot read height {text!r}") from None


def _default_digits() -> int:
    env = os.environ.get("MMVKIT_DIGITS")
    if env is None or env.strip() == "":
        return DEFAULT_DIGITS
    try:
        return _digits(env)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(f"MMVKIT_DIGITS: {exc}") from None


# ---------------------------------------------------------------------------
# formatting


class Output:
    def __init__(self, ctx: PrecisionContext, fmt: str):
        self.ctx = ctx
        self.fmt = fmt

    def num(self, x) -> str:
        """Decimal string of a real or complex number (complex as ``a+bj``)."""
        mp = self.ctx.mp
        if isinstance(x, Fraction):
            return str(x)
        if isinstance(x, int):
            return str(x)
        x = self.ctx.convert(x)
        if hasattr(x, "imag") and mp.im(x) != 0:
            re, im = mp.re(x), mp.im(x)
            sign = "-" if im < 0 else "+"
            return f"{self.ctx.nstr(re)}{sign}{self.ctx.nstr(abs(im))}j"
        return self.ctx.nstr(mp.re(x))

    def emit(self, payload: dict, text_lines: list[str]):
        if self.fmt == "json":
            print(json.dumps(payload, indent=2))
        else:
            print("\n".join(text_lines))


def _exact_flag(out: Output, value) -> tuple[str | None, list[str]]:
    from .relfind import identify_rational

    q = identify_rational(value, out.ctx)
    if q is None:
        return None, []
    return str(q), [f"EXACT-RATIONAL-MATCH {q}"]


# ---------------------------------------------------------------------------
# subcommands


def _form(text: str):
    from .modforms import FormId

    return FormId.parse(text.strip())


def cmd_lvalue(args, ctx, out):
    from .lvalues import completed_l_value

    f = _form(args.form)
    res = completed_l_value(f, args.s, ctx)
    exact, flag = _exact_flag(out, res.value)
    out.emit(
        {"form": str(f), "s": args.s, "value": out.num(res.value), "method": res.method,
         "digits": ctx.decimal_digits, "exact_rational": exact},
        [f"Lambda({f};{args.s}) = {out.num(res.value)}", *flag],
    )
    return EXIT_OK


def cmd_mmv(args, ctx, out):
    from .mmv import IterandWord, lambda_mmv

    forms = [_form(t) for t in args.forms.split(",")]
    if len(forms) != len(args.indices):
        raise DomainError("--forms and --indices must have the same length")
    word = IterandWord.of(forms, args.indices)
    res = lambda_mmv(word, ctx, qterms=args.qterms, kernel=args.kernel)
    exact, flag = _exact_flag(out, res.value)
    out.emit(
        {"word": str(word), "value": out.num(res.value), "raw_integral": out.num(res.raw_integral),
         "normalization": out.num(res.normalization), "digits": ctx.decimal_digits,
         "kernel": args.kernel, "exact_rational": exact},
        [f"{word} = {out.num(res.value)}", *flag],
    )
    return EXIT_OK


def cmd_table(args, ctx, out):
    from .mmv import mmv_table
    from .relfind import identify_rational

    f, g = (_form(t) for t in args.forms.split(","))
    table = mmv_table(f, g, ctx, qterms=args.qterms)
    rows, lines = [], [f"Lambda({f},{g};n1,n2), {ctx.decimal_digits} digits"]
    for (n1, n2), entry in sorted(table.entries.items()):
        q = identify_rational(entry.value, ctx)
        rows.append({"n1": n1, "n2": n2, "value": out.num(entry.value),
                     "exact_rational": None if q is None else str(q)})
        lines.append(f"{n1} {n2} {out.num(entry.value)}" + ("" if q is None else f"  EXACT-RATIONAL-MATCH {q}"))
    out.emit({"f": str(f), "g": str(g), "digits": ctx.decimal_digits, "entries": rows}, lines)
    return EXIT_OK


def cmd_mzv(args, ctx, out):
    from .mzv import mzv

    v = mzv(args.index, ctx)
    name = f"zeta({','.join(map(str, args.index))})"
    out.emit({"index": list(args.index), "value": out.num(v), "digits": ctx.decimal_digits},
             [f"{name} = {out.num(v)}"])
    return EXIT_OK


def cmd_zetarep(args, ctx, out):
    from .mzv import zeta_rep

    rep = zeta_rep(args.index, ctx)
    terms = []
    for c, factors in rep.expansion:
        terms.append({"coefficient": str(c), "factors": [list(f) for f in factors]})
    name = f"zeta_{{{','.join(map(str, args.index))}}}"
    lines = [f"{name} = {out.num(rep.value)}"]
    lines += [f"  {t['coefficient']} * " + " * ".join(f"zeta({','.join(map(str, f))})" for f in t["factors"])
              for t in terms]
    out.emit({"index": list(args.index), "value": out.num(rep.value), "expansion": terms,
              "digits": ctx.decimal_digits}, lines)
    return EXIT_OK


def cmd_periodpoly(args, ctx, out):
    from .modforms import DELTA
    from .perpoly import manin_split, period_polynomial, period_relation_residuals

    f = _form(args.form)
    P = period_polynomial(f, ctx)
    payload = {"form": str(f), "coeffs": [out.num(c) for c in P.coeffs], "digits": ctx.decimal_digits}
    lines = [f"P_{f}(y), coefficient of y^j:"] + [f"  y^{j}: {out.num(c)}" for j, c in enumerate(P.coeffs)]
    if f == DELTA:
        wp, wm = manin_split(P, ctx)
        two, three = period_relation_residuals(P)
        r2 = max(abs(c) for c in two.coeffs)
        r3 = max(abs(c) for c in three.coeffs)
        payload.update({"omega_plus": out.num(wp), "omega_minus": out.num(wm),
                        "residual_1_plus_S": ctx.mp.nstr(r2, 5), "residual_1_plus_U_plus_U2": ctx.mp.nstr(r3, 5)})
        lines += [f"omega+ = {out.num(wp)}", f"omega- = {out.num(wm)}",
                  f"|P|(1+S)| = {ctx.mp.nstr(r2, 3)}, |P|(1+U+U^2)| = {ctx.mp.nstr(r3, 3)}"]
    out.emit(payload, lines)
    return EXIT_OK


def cmd_deltastack(args, ctx, out):
    from .perpoly import delta_stack, generating_function

    f, g = (_form(t) for t in args.forms.split(","))
    stack = delta_stack(generating_function(f, g, ctx, qterms=args.qterms), normalized=not args.raw)
    layers = [[out.num(c) for c in p.coeffs] for p in stack.layers]
    lines = [f"delta^k P_{{{f},{g}}}, bidegree {stack.bidegree}"]
    for k, p in enumerate(layers):
        lines.append(f"k={k}:")
        lines += [f"  y^{j}: {c}" for j, c in enumerate(p)]
    out.emit({"f": str(f), "g": str(g), "bidegree": list(stack.bidegree), "normalized": not args.raw,
              "layers": layers, "digits": ctx.decimal_digits}, lines)
    return EXIT_OK


def cmd_decompose(args, ctx, out):
    from .perpoly import decompose

    f, g = (_form(t) for t in args.forms.split(","))
    dec = decompose(f, g, ctx, max_height=args.max_height)
    lines = [f"delta^k P_{{{f},{g}}}, bidegree {dec.bidegree}"]
    for k, layer in enumerate(dec.layers):
        lines.append(f"k={k}:")
        for j, rel in enumerate(layer):
            lines.append(f"  y^{j}: " + ("0" if rel is None else rel.expression().split(" = ", 1)[-1]))
    if dec.components:
        lines.append("period components (multiple of the reference shape):")
        for (k, name), c in dec.components.items():
            lines.append(f"  layer {k}: {name} x {c if c is not None else 'no single shape'}")
    if dec.unresolved:
        lines.append(f"unresolved coefficients (layer, power): {list(dec.unresolved)}")
    out.emit(json.loads(dec.to_json()), lines)
    return EXIT_OK if not dec.unresolved else EXIT_VERIFY


def _value_spec(spec: str, ctx: PrecisionContext):
    """Evaluate ``mmv:G4,G4:1,1``, ``lvalue:Delta:12``, ``mzv:3,9``, ``zetarep:3,9``,
    a named period such as ``zeta_{3,9}/pi^12``, or a decimal literal."""
    from .lvalues import completed_l_value
    from .mmv import mmv
    from .mzv import mzv, zeta_rep
    from .periods import EVEN_ELEMENTS, ODD_ELEMENTS

    named = {**EVEN_ELEMENTS, **ODD_ELEMENTS}
    if spec in named:
        return named[spec](ctx)
    kind, _, rest = spec.partition(":")
    try:
        if kind == "mmv":
            forms, _, idx = rest.partition(":")
            return mmv([_form(t) for t in forms.split(",")], _int_list(idx), ctx)
        if kind == "lvalue":
            form, _, s = rest.partition(":")
            return completed_l_value(_form(form), int(s), ctx).value
        if kind == "mzv":
            return mzv(_int_list(rest), ctx)
        if kind == "zetarep":
            return zeta_rep(_int_list(rest), ctx).value
        return ctx.mp.mpf(spec)
    except (ValueError, argparse.ArgumentTypeError) as exc:
        raise DomainError(f"cannot evaluate {spec!r}: {exc}") from None


def cmd_findrel(args, ctx, out):
    from .relfind import PeriodBasis, find_relation

    target_spec, basis_specs = args.target, args.basis
    basis = PeriodBasis.build({s: (lambda c, s=s: _value_spec(s, c)) for s in basis_specs}, ctx)
    target = _value_spec(target_spec, ctx)
    rel = find_relation(target, basis, ctx, target_name=target_spec, max_height=args.max_height,
                        engine=args.engine, cross_check=args.cross_check,
                        confirm=(lambda c: _value_spec(target_spec, c)) if args.confirm else None)
    payload = json.loads(rel.to_json())
    payload["residual"] = ctx.mp.nstr(rel.residual, 5) if rel.found else None
    payload["margin"] = None if rel.margin is None else ctx.mp.nstr(rel.margin, 5)
    lines = [rel.expression()]
    if rel.found:
        lines.append(f"integer vector {rel.integer_vector}, residual {rel.residual:.3e}, height {rel.height}")
        if rel.confirmed_digits is not None:
            lines.append(f"confirmed to {rel.confirmed_digits} digits at doubled precision")
    else:
        lines.append(f"certificate margin {rel.margin:.3e} ({'> 1: excluded' if rel.margin > 1 else '<= 1: inconclusive'})")
    out.emit(payload, lines)
    return EXIT_OK if rel.found else EXIT_VERIFY


def cmd_verify(args, ctx, out):
    from .identities import identity_ids, verify

    ids = identity_ids() if args.all else (args.id,)
    reports = [verify(i, ctx) for i in ids]
    if out.fmt == "json":
        payload = [r.to_dict() for r in reports]
        print(json.dumps(payload[0] if len(payload) == 1 else payload, indent=2))
    else:
        print("\n".join(r.text() for r in reports))
    return EXIT_OK if all(r.passed for r in reports) else EXIT_VERIFY


def cmd_selftest(args, ctx, out):
    from .acceptance import run_all

    def show(res):
        if out.fmt == "text":
            print(res.line(), flush=True)
            if args.verbose:
                for d in res.details:
                    print(f"     {d}")

    results = run_all(ctx, numbers=set(args.only) if args.only else None, on_result=show)
    passed = sum(r.passed for r in results)
    if out.fmt == "json":
        print(json.dumps({"digits": ctx.decimal_digits, "passed": passed, "total": len(results),
                          "criteria": [{"number": r.number, "title": r.title, "passed": r.passed,
                                        "summary": r.summary, "details": r.details,
                                        "seconds": f"{r.seconds:.2f}"} for r in results]}, indent=2))
    else:
        print(f"{passed}/{len(results)} criteria passed")
    return EXIT_OK if passed == len(results) else EXIT_VERIFY


# ---------------------------------------------------------------------------


def build_parser(default_digits: int = DEFAULT_DIGITS) -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--digits", type=_digits, default=default_digits,
                        help=f"decimal digits, {MIN_DIGITS}..{MAX_DIGITS} (default {default_digits}; env MMVKIT_DIGITS)")
    common.add_argument("--format", choices=("text", "json"), default="text")

    qterms = _Parser(add_help=False)
    qterms.add_argument("--qterms", type=_positive, default=None,
                        help="q-expansion truncation (default derived from --digits)")

    p = _Parser(prog="mmvkit", description="Multiple modular values at high precision.")
    p.add_argument("--version", action="version", version=f"mmvkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("lvalue", parents=[common], help="completed L-value Lambda(f;s)")
    s.add_argument("--form", required=True, help="G4, G6, ..., Delta")
    s.add_argument("--s", type=int, required=True)
    s.set_defaults(func=cmd_lvalue)

    s = sub.add_parser("mmv", parents=[common, qterms], help="multiple modular value")
    s.add_argument("--forms", required=True, help="comma-separated, e.g. G4,G10")
    s.add_argument("--indices", type=_int_list, required=True, help="comma-separated, e.g. 1,1")
    s.add_argument("--kernel", choices=("axis", "tau"), default="axis")
    s.set_defaults(func=cmd_mmv)

    s = sub.add_parser("table", parents=[common, qterms], help="all Lambda(f,g;n1,n2)")
    s.add_argument("--forms", required=True, help="two forms, e.g. G6,G4")
    s.set_defaults(func=cmd_table)

    s = sub.add_parser("mzv", parents=[common], help="multiple zeta value (ascending convention)")
    s.add_argument("--index", type=_int_list, required=True, help="e.g. 3,9")
    s.set_defaults(func=cmd_mzv)

    s = sub.add_parser("zetarep", parents=[common], help="stored representative zeta_{a,b}")
    s.add_argument("--index", type=_int_list, required=True, help="e.g. 3,9")
    s.set_defaults(func=cmd_zetarep)

    s = sub.add_parser("periodpoly", parents=[common], help="period polynomial of a form")
    s.add_argument("--form", default="Delta")
    s.set_defaults(func=cmd_periodpoly)

    s = sub.add_parser("deltastack", parents=[common, qterms], help="delta^k P_{f,g} for all k")
    s.add_argument("--forms", required=True)
    s.add_argument("--raw", action="store_true", help="omit the normalising constants")
    s.set_defaults(func=cmd_deltastack)

    s = sub.add_parser("decompose", parents=[common], help="express delta^k P_{f,g} in period bases")
    s.add_argument("--forms", required=True)
    s.add_argument("--max-height", type=_height, default=10**12)
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("findrel", parents=[common], help="integer relation search")
    s.add_argument("--target", required=True)
    s.add_argument("--basis", action="append", required=True, help="repeatable; a spec or period name")
    s.add_argument("--max-height", type=_height, default=None)
    s.add_argument("--engine", choices=("lll", "pslq"), default="lll")
    s.add_argument("--cross-check", action="store_true")
    s.add_argument("--confirm", action="store_true", help="re-evaluate at doubled precision")
    s.set_defaults(func=cmd_findrel)

    s = sub.add_parser("verify", parents=[common], help="check a registered identity")
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--id")
    g.add_argument("--all", action="store_true")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("selftest", parents=[common], help="run the acceptance criteria")
    s.add_argument("--only", type=_int_list, default=None, help="e.g. 1,2,5")
    s.add_argument("-v", "--verbose", action="store_true")
    s.set_defaults(func=cmd_selftest)
    return p


def run(argv=None) -> int:
    try:
        default = _default_digits()
    except UsageError as exc:
        print(f"mmvkit: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    parser = build_parser(default)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    ctx = PrecisionContext(args.digits)
    out = Output(ctx, args.format)
    try:
        return args.func(args, ctx, out)
    except (InsufficientPrecisionError, TruncationError) as exc:
        print(f"mmvkit: insufficient precision: {exc}", file=sys.stderr)
        return EXIT_PRECISION
    except InconsistencyError as exc:
        print(f"mmvkit: inconsistent data: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (DomainError, MMVError) as exc:
        print(f"mmvkit: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


def main() -> None:
    sys.exit(run())

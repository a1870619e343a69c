"""Command line front end.

Exit status: 0 equivalent (or plain success), 1 not equivalent,
2 inconclusive, 3 library error, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import __version__
from .artin_schreier import as_reduce, family_class
from .config import Config
from .counting import counting_report
from .errors import FrobrigError, UsageError
from .field import FieldElem
from .laurent import as_solvable_local, prop41_probe
from .parsing import format_elem, format_field, format_poly, parse_expr, parse_field, parse_poly, parse_series
from .perfection import perfection_of
from .rigidity import MapPair, decide_top, theorem_crosscheck

EXIT_USAGE = 64
EXIT_ERROR = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _common(p: argparse.ArgumentParser, field_default: str | None = "GF(2)"):
    p.add_argument("--field", default=field_default, help="GF(p), GF(p^e) or GF(p^e; m=[...])")
    p.add_argument("--budget", type=int, default=None, help="enumeration budget (env FROBRIG_BUDGET)")
    p.add_argument("--json", action="store_true", help="emit JSON")
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    top = _Parser(prog="frobrig", description="Frobenius rigidity checks for maps of the affine line.")
    top.add_argument("--version", action="version", version=f"frobrig {__version__}")
    sub = top.add_subparsers(dest="command", parser_class=_Parser)

    p = sub.add_parser("check", help="run every checker on a pair of maps")
    _common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--depth", type=int, default=4)
    p.add_argument("--nmax", type=int, default=50)
    p.add_argument("--base-degree", type=int, default=1)
    p.add_argument("--decide", action="store_true", help="also run the effective topological decision")

    p = sub.add_parser("decide", help="decide topological agreement")
    _common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--base-degree", type=int, default=1)

    p = sub.add_parser("as-class", help="Artin-Schreier class of a Laurent polynomial")
    _common(p)
    p.add_argument("poly")
    p.add_argument("over", nargs="?", help="optional 'over <field>'")
    p.add_argument("field_pos", nargs="?", metavar="FIELD")

    p = sub.add_parser("local", help="local analysis at t = 0")
    _common(p)
    p.add_argument("action", choices=["probe", "solve"])
    p.add_argument("--f")
    p.add_argument("--g")
    p.add_argument("--z")
    p.add_argument("--nmax", type=int, default=20)
    p.add_argument("--prec", type=int, default=64)

    p = sub.add_parser("count", help="point counts and the break depth")
    _common(p)
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--dmax", "--depth", dest="dmax", type=int, default=3)
    p.add_argument("--base-degree", type=int, default=None)

    p = sub.add_parser("perf", help="p-power tower of a rational function")
    _common(p)
    p.add_argument("--expr", required=True)
    p.add_argument("--nmax", type=int, default=None)

    p = sub.add_parser("family", help="classes of y^p - t*y for every non-zero t")
    _common(p)

    p = sub.add_parser("reduce", help="Frobenius normal form f = core^(p^a)")
    _common(p)
    p.add_argument("--f", required=True)
    return top


# -- subcommands ------------------------------------------------------------------

def _pair(args, ctx):
    return MapPair(parse_poly(args.f, ctx), parse_poly(args.g, ctx), args.base_degree)


def _cmd_check(args, ctx, cfg):
    rep = theorem_crosscheck(_pair(args, ctx), args.depth, args.nmax, args.decide, cfg.enum_budget, cfg.seed)
    data = {"field": format_field(ctx), "f": args.f, "g": args.g, **rep.to_json()}
    lines = [f"frobenius:   {_verdict_text(rep.frobenius)}",
             f"topological: {_verdict_text(rep.topological)}",
             f"h1:          {_verdict_text(rep.h1)}"]
    if rep.decided is not None:
        lines.append(f"decided:     {_verdict_text(rep.decided)}")
    lines.append(f"consistent:  {str(rep.consistent).lower()}")
    return data, lines, rep.frobenius.exit_code


def _cmd_decide(args, ctx, cfg):
    v = decide_top(_pair(args, ctx), cfg.enum_budget, cfg.seed)
    data = {"field": format_field(ctx), "f": args.f, "g": args.g, "verdict": v.to_json()}
    return data, [_verdict_text(v)], v.exit_code


def _verdict_text(v) -> str:
    if v.kind == "equivalent":
        return f"equivalent (a={v.a}, b={v.b})"
    if v.kind == "inconclusive":
        return f"inconclusive (depth {v.depth})"
    w = v.witness
    if w is None:
        return "not equivalent (distinct Frobenius cores)"
    if hasattr(w, "y"):
        return (f"not equivalent: y = {w.y} in {format_field(w.y.ctx)} (depth {w.depth}), "
                f"f(y) = {w.f_value}, g(y) = {w.g_value}")
    return f"not equivalent: torsor n = {w.n}, c = {w.c}, class {format_poly(w.cls.reduced)} residue {w.cls.residue}"


def _cmd_as_class(args, ctx, cfg):
    if args.over is not None:
        if args.over != "over" or args.field_pos is None:
            raise UsageError("expected: as-class <poly> over <field>")
        ctx = parse_field(args.field_pos)
    cls = as_reduce(parse_poly(args.poly, ctx))
    data = {"field": format_field(ctx), "input": args.poly, **cls.to_json()}
    state = "trivial" if cls.trivial else "nontrivial"
    return data, [f"reduced: {format_poly(cls.reduced)}", f"residue: {cls.residue}", state], 0


def _num(v):
    return "inf" if v == float("inf") else str(v)


def _cmd_local(args, ctx, cfg):
    if args.action == "solve":
        if args.z is None:
            raise UsageError("local solve needs --z")
        res = as_solvable_local(parse_series(args.z, ctx), args.prec)
        data = {
            "field": format_field(ctx),
            "z": args.z,
            "verdict": res.verdict,
            "reduced_principal": format_poly(res.reduced_principal),
            "residue": res.residue,
            "exact": res.exact,
            "certificate": str(res.certificate) if res.certificate is not None else None,
        }
        lines = [f"verdict: {res.verdict}", f"reduced principal part: {format_poly(res.reduced_principal)}",
                 f"residue: {res.residue}"]
        if res.certificate is not None:
            lines.append(f"h = {res.certificate}")
        return data, lines, 2 if res.verdict == "inconclusive" else 0
    if args.f is None or args.g is None:
        raise UsageError("local probe needs --f and --g")
    f = parse_series(args.f, ctx)
    g = parse_series(args.g, ctx)
    rep = prop41_probe(f, g, args.nmax, args.prec)
    data = {"field": format_field(ctx), "f": args.f, "g": args.g, **rep.to_json()}
    lines = [f"case {rep.case}, c = {rep.c}, v(f) = {rep.v_f}, v(eps) = {rep.v_eps}"]
    if rep.all_trivial:
        lines.append("f = g: every f^n - g^n vanishes")
    else:
        lines.append(f"{'n':>4} {'v(f^n-g^n)':>11} {'v(x_n)':>7} {'c*n':>6} {'bound':>6}  {'flag':<4} verdict")
        for r in rep.rows:
            lines.append(f"{r.n:>4} {_num(r.v_z):>11} {_num(r.v_x):>7} {str(r.cn):>6} {str(r.bound):>6}  "
                         f"{'*' if r.flagged else '':<4} {r.verdict}")
    inconclusive = any(r.verdict == "inconclusive" for r in rep.rows)
    return data, lines, 2 if inconclusive else 0


def _cmd_count(args, ctx, cfg):
    f, g = parse_poly(args.f, ctx), parse_poly(args.g, ctx)
    rep = counting_report(f, g, args.dmax, args.base_degree, cfg.enum_budget, cfg.seed)
    data = {"field": format_field(ctx), "f": args.f, "g": args.g, **rep.to_json()}
    lines = [f"Q = {rep.q}, B = {rep.slack_B}, break depth = {rep.break_depth}",
             f"{'d':>3} {'#S_d':>8} {'lower':>8} {'upper^2':>12}  contained"]
    for row in rep.rows:
        lines.append(f"{row.d:>3} {row.s_d:>8} {row.lower:>8} {row.upper_sq:>12}  {str(row.contained).lower()}")
    return data, lines, 0


def _cmd_perf(args, ctx, cfg):
    z = parse_expr(args.expr, ctx)
    res = perfection_of(z, args.nmax)
    data = {"field": format_field(ctx), "expr": args.expr, "kind": res.kind,
            "constant": str(res.constant) if res.constant is not None else None, "depth": res.depth}
    if res.kind == "constant":
        return data, [f"constant {res.constant}"], 0
    if res.kind == "not_perfect":
        return data, [f"not a p^{res.depth}-th power (depth {res.depth})"], 0
    return data, [f"undecided up to depth {res.depth}"], 2


def _cmd_family(args, ctx, cfg):
    classes = []
    for n in range(1, ctx.q):
        cls = family_class(FieldElem(ctx, n))
        classes.append({"t": format_elem(ctx, n), "class": format_poly(cls.reduced, "y"),
                        "residue": cls.residue, "trivial": cls.trivial})
    distinct = len({(c["class"], c["residue"]) for c in classes})
    data = {"field": format_field(ctx), "classes": classes, "distinct": distinct, "injective": distinct == len(classes)}
    lines = [f"t = {c['t']}: {c['class']}" for c in classes]
    lines.append(f"{distinct} distinct classes for {len(classes)} parameters")
    return data, lines, 0


def _cmd_reduce(args, ctx, cfg):
    form = parse_poly(args.f, ctx).frobenius_reduce()
    data = {"field": format_field(ctx), "f": args.f, "core": format_poly(form.core), "a": form.a}
    return data, [f"({format_poly(form.core)})^({ctx.p}^{form.a})"], 0


_COMMANDS = {
    "check": _cmd_check,
    "decide": _cmd_decide,
    "as-class": _cmd_as_class,
    "local": _cmd_local,
    "count": _cmd_count,
    "perf": _cmd_perf,
    "family": _cmd_family,
    "reduce": _cmd_reduce,
}


def _json_default(o):
    if isinstance(o, Fraction):
        return str(o)
    raise TypeError(f"cannot serialise {type(o).__name__}")


def run(command: str, args: argparse.Namespace, cfg: Config, out=None) -> int:
    out = out or sys.stdout
    if command not in _COMMANDS:
        raise UsageError(f"unknown subcommand {command!r}")
    ctx = parse_field(args.field)
    data, lines, code = _COMMANDS[command](args, ctx, cfg)
    if cfg.json:
        out.write(json.dumps(data, sort_keys=True, indent=2, default=_json_default) + "\n")
    else:
        out.write("\n".join(lines) + "\n")
    return code


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        extra = {} if args.budget is None else {"enum_budget": args.budget}
        cfg = Config(json=args.json, seed=args.seed, **extra)
        return run(args.command, args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FrobrigError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

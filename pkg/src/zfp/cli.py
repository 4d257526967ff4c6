"""Command line: ``zfp eval``, ``zfp check``, ``zfp demo accidental``, ``zfp build-w``."""
from __future__ import annotations

import argparse
import json
import sys
import time

from . import hf, whier
from .abbrev import ZF, ZFP, MacroError, expand
from .axioms import SchemaError, catalog_for, parse_axiom_id
from .checker import (
    GENERIC,
    WITNESS,
    CheckPlan,
    accidental_suite,
    check_all,
    check_axiom,
    unexpected_failures,
)
from .logic import free_vars
from .semantics import UNDEFINED, Evaluator, parse_structure, star, star_term
from .surface import ParseError, parse_term_with_names, parse_with_names
from .syntax import is_term


def _env(pairs, names):
    env = {}
    for item in pairs or ():
        name, eq, value = item.partition("=")
        if not eq:
            raise ValueError(f"bad --env {item!r}; expected name=value")
        if name not in names:
            raise ValueError(f"--env names {name!r}, which does not occur in the formula")
        env[names[name]] = hf.parse_hf(value)
    return env


def cmd_eval(args) -> int:
    s = parse_structure(args.structure)
    dialect = args.dialect or (ZF if args.structure.lower().startswith("v") else ZFP)
    if args.translate and dialect != ZFP:
        raise ValueError("--translate applies to the zfp dialect only")
    if args.term:
        node, names = parse_term_with_names(args.formula)
    else:
        node, names = parse_with_names(args.formula)
    core = expand(node, dialect)
    if args.translate:
        core = star_term(core) if is_term(core) else star(core)
    env = _env(args.env, names)
    missing = sorted(free_vars(core) - env.keys())
    if missing:
        back = {v: k for k, v in names.items()}
        raise ValueError("no value for free variable(s) " + ", ".join(back.get(x, repr(x)) for x in missing))
    for x, val in env.items():
        if val not in s.domain_set:
            raise ValueError(f"{hf.render(val)} is not in the domain of {s.name}")
    ev = Evaluator(s)
    if is_term(core):
        val = ev.value(core, env)
        print("undefined" if val is UNDEFINED else hf.render(val))
        return 0 if val is not UNDEFINED else 1
    truth = ev.evaluate(core, env)
    print("true" if truth else "false")
    return 0 if truth else 1


def _print_reports(reports, out=None):
    width = max((len(r.axiom) for r in reports), default=10)
    for r in reports:
        line = f"{r.axiom:<{width}}  {r.mode:<8} N={r.depth} m={r.margin}  {r.status:<19} {r.millis:>10.1f} ms"
        if r.counterexample:
            line += "  " + ", ".join(f"{k}={v}" for k, v in r.counterexample.items())
        if r.note:
            line += f"  ({r.note})"
        print(line, file=out)


def cmd_check(args) -> int:
    modes = [GENERIC, WITNESS] if args.mode == "both" else [args.mode]
    theory = args.theory.lower()
    reports = []
    for mode in modes:
        if args.axiom:
            aid = parse_axiom_id(args.axiom if "." in args.axiom else f"{theory}.{args.axiom}")
            phis = [None]
            if aid.is_schema:
                cat = catalog_for(aid)
                phis = [p for p in cat if args.phi in (None, p.name)]
                if not phis:
                    raise ValueError(f"unknown phi {args.phi!r}; known: {', '.join(p.name for p in cat)}")
            for phi in phis:
                reports.append(check_axiom(CheckPlan(aid, args.depth, mode, args.margin, phi)))
        else:
            reports += check_all(theory, args.depth, mode)
    _print_reports(reports)
    if args.json:
        text = json.dumps([r.to_dict() for r in reports], indent=2)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")
    bad = unexpected_failures(reports)
    if bad:
        print(f"{len(bad)} unexpected failure(s)", file=sys.stderr)
    return 1 if bad else 0


def cmd_demo(args) -> int:
    items = accidental_suite()
    for it in items:
        mark = "yes" if it.holds else "NO"
        extra = f"  [{it.detail}]" if it.detail else ""
        print(f"{mark:>3}  {it.name}  ({it.cases} cases){extra}")
    return 0 if all(it.holds for it in items) else 1


def cmd_build_w(args) -> int:
    t = time.perf_counter()
    u = whier.build_w(args.depth)
    secs = time.perf_counter() - t
    if args.stats:
        stats = u.stats()
        stats["seconds"] = round(secs, 3)
        print(json.dumps(stats, indent=2))
    else:
        print(" ".join(str(n) for n in u.tier_sizes()))
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="zfp", description="Finite-stage model checking for ZF with primitive pairs.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate a formula (or term) in a finite structure")
    e.add_argument("--structure", required=True, help="w:N, v:N or ambient:N")
    e.add_argument("--formula", required=True, help="surface syntax")
    e.add_argument("--dialect", choices=[ZF, ZFP], help="default: zf for v:N, zfp otherwise")
    e.add_argument("--translate", action="store_true", help="apply the (.)* translation first")
    e.add_argument("--term", action="store_true", help="the text is a term; print its value")
    e.add_argument("--env", action="append", metavar="NAME=SET", help="value of a free variable, e.g. x={{}}")
    e.set_defaults(fn=cmd_eval)

    c = sub.add_parser("check", help="check axioms at a finite stage")
    c.add_argument("--theory", choices=[ZF, ZFP], default=ZFP)
    c.add_argument("--depth", type=int, default=3)
    c.add_argument("--mode", choices=[GENERIC, WITNESS, "both"], default=GENERIC)
    c.add_argument("--axiom", help="a single axiom, e.g. S3 or zf.Union")
    c.add_argument("--phi", help="restrict a schema to one catalogued phi")
    c.add_argument("--margin", type=int, help="override the default margin (with --axiom)")
    c.add_argument("--json", metavar="PATH", help="write reports as JSON ('-' for stdout)")
    c.set_defaults(fn=cmd_check)

    d = sub.add_parser("demo", help="narrative demonstrations")
    d.add_argument("which", choices=["accidental"])
    d.set_defaults(fn=cmd_demo)

    b = sub.add_parser("build-w", help="build W_N and report tier sizes")
    b.add_argument("--depth", type=int, required=True)
    b.add_argument("--stats", action="store_true")
    b.set_defaults(fn=cmd_build_w)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, MacroError, SchemaError, ValueError, hf.DepthError, whier.NotInUniverse) as err:
        print(f"zfp: error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

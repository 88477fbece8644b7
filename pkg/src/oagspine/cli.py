"""Command line front end: ``oag check|describe|spine|sval|tval|eval|distal|verify``.

Exit codes: 0 ok, 1 law failure, 2 usage or validation error, 3 I/O error.
The pseudo-path ``@roster`` names the bundled default roster.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
import time
import warnings
from importlib.resources import files
from typing import Dict, List, Optional

from .distal import acgz_check, distal_verdict
from .errors import DomainError, SpecSyntaxError
from .exactnum import is_prime, size_str
from .lexgroup import GroupSchema
from .specfile import parse_element, parse_spec
from .spine import dim_step, dim_total, quotient_size_mod, s_val, spine_set, t_plus, t_val

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3
ROSTER = "@roster"


class CliError(Exception):
    def __init__(self, message: str, code: int = EXIT_USAGE):
        super().__init__(message)
        self.code = code


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise CliError(f"{self.prog}: {message}")


def _color(text: str, code: str) -> str:
    if os.environ.get("OAG_COLOR", "1") == "0" or not sys.stdout.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _read(path: str) -> str:
    if path == ROSTER:
        return files("oagspine.data").joinpath("roster.oag").read_text(encoding="utf-8")
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc.strerror or exc}", EXIT_IO) from None


def _load(path: str) -> Dict[str, GroupSchema]:
    text = _read(path)
    try:
        return parse_spec(text)
    except SpecSyntaxError as exc:
        raise CliError(f"{path}:{exc.render()}") from None


def _group(path: str, name: str) -> GroupSchema:
    groups = _load(path)
    if name not in groups:
        raise CliError(f"unknown group {name!r} (known: {', '.join(groups)})")
    return groups[name]


def _element(schema: GroupSchema, text: str):
    try:
        return parse_element(schema, text)
    except SpecSyntaxError as exc:
        raise CliError(f"bad element literal:{exc.render()}") from None


class _Out:
    def __init__(self, fmt: str):
        self.fmt = fmt

    def emit(self, record: dict, human: str) -> None:
        if self.fmt == "jsonl":
            print(json.dumps(record, ensure_ascii=False))
        else:
            print(human)


# ---------------------------------------------------------------- commands


def cmd_check(args, out: _Out) -> int:
    groups = _load(args.file)
    out.emit(
        {"file": args.file, "valid": True, "groups": list(groups)},
        f"{args.file}: ok, {len(groups)} group(s): {', '.join(groups)}",
    )
    return EXIT_OK


def cmd_describe(args, out: _Out) -> int:
    g = _group(args.file, args.group)
    sizes = {p: size_str(quotient_size_mod(g, p)) for p in (2, 3, 5)}
    verdict = distal_verdict(g)
    dims = {
        str(p): [
            {"cut": str(e.cut), "dim_total": size_str(dim_total(g, p, 1, e.cut)), "dim_step": size_str(dim_step(g, p, 1, e.cut))}
            for e in spine_set(g, p).singles()
        ]
        for p in (2, 3, 5)
    }
    record = {
        "group": g.name,
        "segments": [{"id": s.id, "kind": s.kind, "block": str(s.block) if s.block else None} for s in g.segments],
        "quotient_sizes": {str(p): v for p, v in sizes.items()},
        "dims": dims,
        "distal": verdict.distal,
    }
    lines = [f"group {g.name}"]
    lines += [f"  segment {s.id} : {s.spec()}" for s in g.segments]
    lines.append("  |G/pG|: " + ", ".join(f"p={p}: {v}" for p, v in sizes.items()))
    for p, rows in dims.items():
        if rows:
            lines.append(f"  dim over F_{p}: " + ", ".join(f"{r['cut']}: {r['dim_total']}" for r in rows))
    lines.append(f"  distal: {verdict.distal}")
    out.emit(record, "\n".join(lines))
    return EXIT_OK


def cmd_spine(args, out: _Out) -> int:
    if not is_prime(args.prime):
        raise CliError(f"--prime: {args.prime} is not prime")
    if args.pow < 1:
        raise CliError("--pow must be >= 1")
    g = _group(args.file, args.group)
    n = args.prime ** args.pow
    desc = spine_set(g, n)
    record = {"group": g.name, "prime": args.prime, "pow": args.pow, "modulus": n}
    record.update({k: v for k, v in desc.to_json().items() if k != "prime"})
    lines = [f"S_{n} of {g.name}: {desc.order_type()}"]
    if not desc.entries:
        lines.append("  (empty spine: only the bottom element)")
    for e in desc.entries:
        d = e.to_json()
        if "cut" in d:
            lines.append(f"  {d['cut']:<16} rib size {d['size']}")
        else:
            lines.append(f"  family {d['segment']:<9} rib size {d['law']}")
    out.emit(record, "\n".join(lines))
    return EXIT_OK


def cmd_sval(args, out: _Out) -> int:
    if args.n < 2:
        raise CliError("--n must be >= 2")
    g = _group(args.file, args.group)
    a = _element(g, args.elem)
    v = s_val(args.n, a)
    out.emit(
        {"group": g.name, "n": args.n, "element": str(a), "value": str(v)},
        f"s_{args.n}({a}) = {v}",
    )
    return EXIT_OK


def cmd_tval(args, out: _Out) -> int:
    if not is_prime(args.prime):
        raise CliError(f"--prime: {args.prime} is not prime")
    g = _group(args.file, args.group)
    a = _element(g, args.elem)
    t, tp = t_val(args.prime, a), t_plus(args.prime, a)
    out.emit(
        {"group": g.name, "prime": args.prime, "element": str(a), "t": str(t), "tplus": str(tp)},
        f"t_{args.prime}({a}) = {t}\nt_{args.prime}+({a}) = {tp}",
    )
    return EXIT_OK


def cmd_eval(args, out: _Out) -> int:
    from .syn import FormulaError, eval_formula, parse_formula, print_formula, spine_audit

    g = _group(args.file, args.group)
    env = {}
    for binding in args.let:
        name, sep, lit = binding.partition("=")
        name = name.strip()
        if not sep or not name:
            raise CliError(f"--let expects var=element, got {binding!r}")
        env[name] = _element(g, lit)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            f = parse_formula(args.formula, variables=env.keys())
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
    except FormulaError as exc:
        raise CliError(f"formula error: {exc.render()}") from None
    try:
        value = eval_formula(f, env, g)
        audit = spine_audit(f, env, g)
    except DomainError as exc:
        raise CliError(str(exc)) from None
    record = {
        "group": g.name,
        "formula": print_formula(f),
        "value": value,
        "spine_terms": [{"term": t, "value": v} for t, v in audit],
    }
    lines = [f"{print_formula(f)}  =>  {_color(str(value).lower(), '32' if value else '31')}"]
    lines += [f"  {t} = {v}" for t, v in audit]
    out.emit(record, "\n".join(lines))
    return EXIT_OK


def cmd_distal(args, out: _Out) -> int:
    g = _group(args.file, args.group)
    v = distal_verdict(g)
    record = {"group": g.name}
    record.update(v.to_json())
    human = f"{g.name}: " + (_color("distal", "32") if v.distal else _color("not distal", "31"))
    if v.witness:
        human += f" (witness {v.witness.kind} at {v.witness.at}, p={v.witness.prime})"
    if args.acgz:
        rep = acgz_check(g)
        record["acgz"] = rep.to_json()
        human += f"\n  finite-spines check: {'n/a (' + rep.reason + ')' if not rep.applicable else rep.consistent}"
    out.emit(record, human)
    return EXIT_OK


def cmd_verify(args, out: _Out) -> int:
    from .laws import LAWS, load_roster, run_suite

    text = _read(args.file or ROSTER)
    try:
        roster = load_roster(text)
    except SpecSyntaxError as exc:
        raise CliError(exc.render()) from None
    if args.group:
        names = {e.name for e in roster}
        for gname in args.group:
            if gname not in names:
                raise CliError(f"unknown group {gname!r}")
        roster = [e for e in roster if e.name in args.group]
    lemmas = args.lemma or None
    for name in lemmas or ():
        if name not in LAWS:
            raise CliError(f"unknown lemma {name!r} (known: {', '.join(LAWS)})")
    if args.iters < 1:
        raise CliError("--iters must be >= 1")
    start = time.perf_counter()
    reports = run_suite(roster, args.seed, args.iters, lemmas, jobs=args.jobs)
    failed = 0
    for r in reports:
        tag = {"pass": _color("PASS", "32"), "fail": _color("FAIL", "31"), "skip": _color("SKIP", "33")}[r.status]
        human = f"{tag} {r.law:<16} {r.group:<14} iters={r.iters}"
        if r.reason:
            human += f"  {r.reason}"
        if r.counterexample is not None:
            human += f"\n     counterexample: {json.dumps(r.counterexample)}"
        out.emit(r.to_json(), human)
        failed += r.status == "fail"
    if out.fmt == "human":
        counts = {s: sum(r.status == s for r in reports) for s in ("pass", "fail", "skip")}
        print(
            f"{len(reports)} reports: {counts['pass']} pass, {counts['fail']} fail, "
            f"{counts['skip']} skip ({time.perf_counter() - start:.1f}s)"
        )
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------- wiring


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="oag", description=__doc__.splitlines()[0])
    ap.add_argument("--format", choices=("human", "jsonl"), default="human")
    sub = ap.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def add(name, fn, help_, group=True):
        p = sub.add_parser(name, help=help_)
        p.add_argument("--format", choices=("human", "jsonl"), default=argparse.SUPPRESS)
        p.add_argument("file", help=f"group spec file, or {ROSTER}")
        if group:
            p.add_argument("group")
        p.set_defaults(func=fn)
        return p

    add("check", cmd_check, "validate a spec file", group=False)
    add("describe", cmd_describe, "segments, |G/pG| and verdict of a group")
    p = add("spine", cmd_spine, "spine descriptor and rib sizes")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--pow", type=int, default=1)
    p = add("sval", cmd_sval, "s_n of an element")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--elem", required=True)
    p = add("tval", cmd_tval, "t_p and t_p+ of an element")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--elem", required=True)
    p = add("eval", cmd_eval, "evaluate a quantifier-free formula")
    p.add_argument("--formula", required=True)
    p.add_argument("--let", action="append", default=[], metavar="VAR=ELEM")
    p = add("distal", cmd_distal, "distality verdict")
    p.add_argument("--acgz", action="store_true", help="also compare with the finite-spines criterion")

    p = sub.add_parser("verify", help="run the law suite")
    p.add_argument("--format", choices=("human", "jsonl"), default=argparse.SUPPRESS)
    p.add_argument("file", nargs="?", default=None, help=f"roster spec file (default {ROSTER})")
    p.add_argument("--group", action="append")
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--iters", type=int, default=500)
    p.add_argument("--lemma", action="append")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_verify)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args, _Out(args.format))
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())

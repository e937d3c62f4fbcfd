"""Command-line front end.

Commands resolve their inputs, call into :mod:`qhochschild.checks` or the
library, and print a report.  Exit codes: 0 pass, 1 verification failure,
2 input error.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import dataclass, field
from importlib import resources

from . import checks, serialize
from .algebra import FinDimAlgebra
from .errors import QHochschildError
from .hochschild import bar_nresolution, hochschild_ncomplex
from .qcalc import QContext, context_for_prime, find_context, make_context, qbinom, qfact, qint

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2

BUILTINS = {
    "dual7": "dual_numbers_f7.json",
    "dual3": "dual_numbers_f3.json",
    "cubic7": "truncated_x3_f7.json",
}

IDENTITIES = ("lemma55", "eq56", "delta-nilpotent", "hexagon", "snake", "kapranov",
              "cor33", "cor46", "tor-symmetry")


class InputError(QHochschildError):
    pass


@dataclass
class RunReport:
    command: list[str]
    context: dict | None = None
    records: list[checks.CheckRecord] = field(default_factory=list)
    seed: int | None = None
    wall_clock: float | None = None
    notes: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.records)

    def as_dict(self) -> dict:
        out = {"command": self.command, "context": self.context,
               "checks": [r.as_dict() for r in self.records], "pass": self.ok}
        if self.seed is not None:
            out["seed"] = self.seed
        if self.notes:
            out["notes"] = self.notes
        if self.wall_clock is not None:
            out["wall_clock"] = self.wall_clock
        return out

    def to_json(self) -> str:
        return json.dumps(self.as_dict(), sort_keys=True, indent=2)

    def to_table(self) -> str:
        lines = ["command: " + " ".join(self.command)]
        if self.context:
            lines.append("context: " + ", ".join(f"{k}={v}" for k, v in self.context.items()))
        if self.seed is not None:
            lines.append(f"seed: {self.seed}")
        for k, v in sorted(self.notes.items()):
            lines.append(f"{k}: {v}")
        for r in self.records:
            dims = " ".join(f"{k}={v}" for k, v in r.dims.items())
            lines.append(f"{'PASS' if r.ok else 'FAIL'}  {r.name:<16} {r.instance:<28} {dims}".rstrip())
        passed = sum(r.ok for r in self.records)
        lines.append(f"overall: {'PASS' if self.ok else 'FAIL'} ({passed}/{len(self.records)})")
        if self.wall_clock is not None:
            lines.append(f"wall clock: {self.wall_clock:.3f} s")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# input resolution

def load_builtin(name: str) -> FinDimAlgebra:
    if name not in BUILTINS:
        raise InputError(f"unknown builtin {name!r}; choose from {sorted(BUILTINS)}")
    text = resources.files("qhochschild").joinpath("data").joinpath(BUILTINS[name]).read_text()
    return serialize.loads(text)


def load_algebra(args) -> FinDimAlgebra:
    if args.builtin:
        return load_builtin(args.builtin)
    if not args.algebra:
        raise InputError("give an algebra file or --builtin NAME")
    try:
        obj = serialize.load(args.algebra)
    except OSError as exc:
        raise InputError(f"cannot read {args.algebra}: {exc}") from exc
    if not isinstance(obj, FinDimAlgebra):
        raise InputError(f"{args.algebra} does not hold an algebra")
    return obj


def resolve_context(args, field_p: int | None = None, default_N: int = 3) -> QContext:
    N = args.N if args.N is not None else default_N
    if args.auto_field or (args.p is None and args.q is None):
        if field_p is not None:
            return context_for_prime(N, field_p)
        return find_context(N)
    if args.p is None or args.q is None:
        raise InputError("--p and --q go together (or use --auto-field)")
    ctx = make_context(N, args.p, args.q)
    if field_p is not None and ctx.p != field_p:
        raise InputError(f"context is over F_{ctx.p} but the algebra is over F_{field_p}")
    return ctx


def _context_dict(ctx: QContext) -> dict:
    return ctx.as_dict() | {"hypothesis": ctx.hypothesis_level.value}


# ---------------------------------------------------------------------------
# commands

def cmd_theorem1(args) -> RunReport:
    a = load_algebra(args)
    ctx = resolve_context(args, a.p)
    n_max = args.nmax if args.nmax is not None else 8
    rep = RunReport(sys_argv(args), _context_dict(ctx), checks.check_theorem1(a, ctx, n_max))
    rep.notes["algebra"] = a.name or f"dim {a.dim}"
    if args.dump:
        serialize.dump(hochschild_ncomplex(a, ctx, n_max), args.dump)
        rep.notes["dumped"] = args.dump
    return rep


def cmd_verify(args) -> RunReport:
    ident = args.identity
    seed = args.seed
    count = args.count
    if ident in ("hexagon", "snake", "kapranov"):
        N = args.N if args.N is not None else 3
        p = args.p if args.p is not None else 5
        fn = {"hexagon": checks.check_hexagon, "snake": checks.check_snake,
              "kapranov": checks.check_kapranov}[ident]
        rep = RunReport(sys_argv(args), {"N": N, "p": p}, fn(N, p, seed, count), seed=seed)
        if ident == "snake":
            rep.notes["connecting_degrees"] = {f"p={pi}": [-pi, -(N - pi)] for pi in range(1, N)}
        return rep
    ctx = resolve_context(args)
    if ident == "lemma55":
        recs = checks.check_lemma55(ctx)
    elif ident == "eq56":
        recs = checks.check_eq56(ctx)
    elif ident == "delta-nilpotent":
        ells = [args.ell] if args.ell is not None else [-1, 0, 1, 2, ctx.N + 1]
        recs = checks.check_delta_nilpotent(ctx, ells, seed, count)
        recs += checks.check_lemma53(ctx, seed, count)
        return RunReport(sys_argv(args), _context_dict(ctx), recs, seed=seed)
    else:
        n_max = args.nmax if args.nmax is not None else 6
        a = load_algebra(args) if (args.algebra or args.builtin) else None
        fn = {"cor33": checks.check_cor33, "cor46": checks.check_cor46,
              "tor-symmetry": checks.check_tor_symmetry}[ident]
        recs = fn(ctx, n_max, a)
    return RunReport(sys_argv(args), _context_dict(ctx), recs)


def cmd_homology(args) -> RunReport:
    try:
        c = serialize.load(args.complex)
    except OSError as exc:
        raise InputError(f"cannot read {args.complex}: {exc}") from exc
    if not hasattr(c, "homology_dim"):
        raise InputError(f"{args.complex} does not hold an N-complex")
    if args.p_index in (None, "all"):
        flavours = list(range(1, c.N))
    else:
        try:
            flavours = [int(args.p_index)]
        except ValueError:
            raise InputError(f"--p-index must be an integer or 'all', got {args.p_index!r}") from None
        if not 1 <= flavours[0] <= c.N - 1:
            raise InputError(f"--p-index must lie in 1..{c.N - 1}")
    recs = [checks.CheckRecord("homology", f"p={pi} n={n}", True, {"dim": c.homology_dim(pi, n)})
            for pi in flavours for n in c.safe_degrees(pi)]
    ctx = {"N": c.N, "p": c.p} | ({"q": c.context.q} if c.context else {})
    return RunReport(sys_argv(args), ctx, recs)


def cmd_qcalc(args) -> RunReport:
    ctx = resolve_context(args)
    top = args.nmax if args.nmax is not None else ctx.N
    recs = [checks.CheckRecord("qint", f"[{n}]", True, {"value": qint(ctx, n)}) for n in range(top + 1)]
    recs += [checks.CheckRecord("qfact", f"[{n}]!", True, {"value": qfact(ctx, n)}) for n in range(top + 1)]
    if ctx.is_h1:
        recs += [checks.CheckRecord("qbinom", f"({r},{s})", True, {"value": qbinom(ctx, r, s)})
                 for r in range(ctx.N) for s in range(ctx.N)]
    return RunReport(sys_argv(args), _context_dict(ctx), recs)


def cmd_dump(args) -> RunReport:
    if args.kind == "algebra":
        obj = load_algebra(args)
        ctx_d = None
    else:
        a = load_algebra(args)
        ctx = resolve_context(args, a.p)
        ctx_d = _context_dict(ctx)
        n_max = args.nmax if args.nmax is not None else 4
        if args.kind == "hochschild":
            obj = hochschild_ncomplex(a, ctx, n_max)
        else:
            obj = bar_nresolution(a, ctx, n_max, actions=False).augmented()
    text = serialize.dumps(obj)
    rep = RunReport(sys_argv(args), ctx_d, [checks.CheckRecord("dump", args.kind, True)])
    if args.dump:
        serialize.dump(obj, args.dump)
        rep.notes["dumped"] = args.dump
    else:
        rep.notes["document"] = text
    return rep


# ---------------------------------------------------------------------------
# parser

def sys_argv(args) -> list[str]:
    return list(getattr(args, "argv", []))


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--N", type=int, help="nilpotency order N")
    p.add_argument("--p", type=int, help="prime p of the ground field")
    p.add_argument("--q", type=int, help="root of unity q in F_p")
    p.add_argument("--auto-field", action="store_true", help="choose (p, q) automatically")
    p.add_argument("--nmax", type=int, help="top degree")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--timing", action="store_true", help="include wall-clock time")


def _algebra_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("algebra", nargs="?", help="algebra JSON file")
    p.add_argument("--builtin", choices=sorted(BUILTINS), help="use a packaged algebra")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="qhochschild",
                                     description="Exact homology of N-complexes and q-Hochschild checks.")
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("theorem1", help="compare _pHH_n with reindexed classical HH")
    _algebra_args(p)
    _common(p)
    p.add_argument("--dump", metavar="PATH", help="write the Hochschild N-complex as JSON")
    p.set_defaults(func=cmd_theorem1)

    p = sub.add_parser("verify", help="run one identity check")
    p.add_argument("identity", choices=IDENTITIES)
    _common(p)
    p.add_argument("--seed", type=int, default=checks.DEFAULT_SEED)
    p.add_argument("--count", type=int, default=20, help="number of random instances")
    p.add_argument("--ell", type=int, help="weight for the weighted differential")
    p.add_argument("--algebra", dest="algebra", help="algebra JSON file for cor33/cor46/tor-symmetry")
    p.add_argument("--builtin", choices=sorted(BUILTINS))
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("homology", help="homology table of a serialized N-complex")
    p.add_argument("complex", help="N-complex JSON file")
    p.add_argument("--p-index", default="all", help="flavour p or 'all'")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_homology)

    p = sub.add_parser("qcalc", help="q-integers, q-factorials and q-binomials")
    _common(p)
    p.set_defaults(func=cmd_qcalc)

    p = sub.add_parser("dump", help="export a constructed object as JSON")
    p.add_argument("kind", choices=("algebra", "hochschild", "bar"))
    _algebra_args(p)
    _common(p)
    p.add_argument("--dump", metavar="PATH", help="output path (default: stdout)")
    p.set_defaults(func=cmd_dump)
    return parser


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    args.argv = argv
    start = time.perf_counter()
    try:
        rep = args.func(args)
    except QHochschildError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    if args.timing:
        rep.wall_clock = round(time.perf_counter() - start, 3)
    if args.cmd == "dump" and "document" in rep.notes and args.format == "table":
        print(rep.notes["document"])
        return EXIT_PASS
    print(rep.to_json() if args.format == "json" else rep.to_table())
    return EXIT_PASS if rep.ok else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())

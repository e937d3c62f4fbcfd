"""Verification workflows: seeded instance generation plus per-check records.

Each ``check_*`` function returns a list of :class:`CheckRecord`; the CLI
and the acceptance suite only assemble and print them.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import derived, dqalg, ncomplex, randgen, simplicial
from .algebra import FinDimAlgebra, character_module, dual_numbers, radical_sequence_dual
from .hochschild import theorem1_check
from .qcalc import QContext

DEFAULT_SEED = 20240601


@dataclass
class CheckRecord:
    name: str
    instance: str
    ok: bool
    dims: dict = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {"name": self.name, "instance": self.instance, "pass": self.ok, "dims": self.dims}


def _rng(seed: int):
    return np.random.default_rng(seed)


# ---------------------------------------------------------------------------
# operator identities

def check_lemma55(ctx: QContext) -> list[CheckRecord]:
    first, second = dqalg.verify_lemma55(ctx)
    bridge = dqalg.verify_alpha_bridge(ctx)
    recs = [CheckRecord("lemma55-first", f"N={ctx.N}", first),
            CheckRecord("lemma55-second", f"N={ctx.N}", second)]
    recs += [CheckRecord(f"alpha-{k}", f"N={ctx.N}", v) for k, v in sorted(bridge.items())]
    return recs


def check_eq56(ctx: QContext) -> list[CheckRecord]:
    return [CheckRecord("eq56", f"N={ctx.N} r={r}", dqalg.verify_eq56(ctx, r),
                        {"a": dqalg.a_coefficient(ctx, r)})
            for r in range(ctx.N)]


# ---------------------------------------------------------------------------
# face differentials on random simplicial modules

def delta_nilpotent_instances(ctx: QContext, ells, seed: int, count: int, n_max: int = 5):
    """Yield (label, N-complex) for every module and differential kind; validation is left to the caller."""
    rng = _rng(seed)
    specs = [simplicial.DifferentialSpec.full(), simplicial.DifferentialSpec.truncated()]
    specs += [simplicial.DifferentialSpec.weighted(ell) for ell in ells]
    for i in range(count):
        sm = simplicial.random_simplicial(ctx.p, rng, n_max=n_max)
        for spec in specs:
            label = f"module {i} {spec.kind}" + (f"({spec.ell})" if spec.kind == "weighted" else "")
            yield label, simplicial.q_differential(sm, ctx, spec, validate=False)


def _nilpotent(c: ncomplex.NComplex) -> bool:
    return all(c.power(n, c.N).is_zero() for n in range(c.lo + c.N, c.hi + 1))


def check_delta_nilpotent(ctx: QContext, ells, seed: int = DEFAULT_SEED, count: int = 50,
                          kapranov: bool = False) -> list[CheckRecord]:
    recs = []
    for label, c in delta_nilpotent_instances(ctx, ells, seed, count):
        recs.append(CheckRecord("delta-nilpotent", label, _nilpotent(c), {"dims": c.dims}))
        if kapranov and recs[-1].ok:
            recs.append(CheckRecord("kapranov", label, ncomplex.kapranov_check(c)))
    return recs


def check_lemma53(ctx: QContext, seed: int = DEFAULT_SEED, count: int = 50,
                  n_max: int = 5) -> list[CheckRecord]:
    """Closed form of delta^N for the general differential against composed matrices."""
    rng = _rng(seed)
    recs = []
    for i in range(count):
        sm = simplicial.random_simplicial(ctx.p, rng, n_max=n_max)
        a = [int(x) for x in rng.integers(0, ctx.p, size=n_max)]
        c = simplicial.q_differential(sm, ctx, simplicial.DifferentialSpec.general(a), validate=False)
        ok = all(simplicial.lemma53_rhs(sm, ctx, a, n) == c.power(n, ctx.N)
                 for n in range(ctx.N, sm.n_max + 1))
        recs.append(CheckRecord("lemma53", f"module {i} a={a}", ok))
    return recs


# ---------------------------------------------------------------------------
# random N-complexes: hexagon, snake, Kapranov

def admissible_pairs(N: int) -> list[tuple[int, int]]:
    return [(p, r) for p in range(1, N) for r in range(1, N - p)]


def check_hexagon(N: int, p: int, seed: int = DEFAULT_SEED, count: int = 50,
                  kapranov: bool = False) -> list[CheckRecord]:
    rng = _rng(seed)
    recs = []
    for i in range(count):
        c = randgen.random_ncomplex(N, p, rng)
        for pi, r in admissible_pairs(N):
            rep = ncomplex.hexagon_check(c, pi, r)
            recs.append(CheckRecord("hexagon", f"instance {i} p={pi} r={r}", rep.ok,
                                    {"checked": rep.checked}))
        if kapranov:
            recs.append(CheckRecord("kapranov", f"instance {i}", ncomplex.kapranov_check(c)))
    return recs


def check_snake(N: int, p: int, seed: int = DEFAULT_SEED, count: int = 50,
                kapranov: bool = False) -> list[CheckRecord]:
    rng = _rng(seed)
    recs = []
    for i in range(count):
        s = randgen.random_ses(N, p, rng)
        for pi in range(1, N):
            rep = ncomplex.les_check(s, pi)
            recs.append(CheckRecord("snake", f"instance {i} p={pi}", rep.ok,
                                    {"checked": rep.checked,
                                     "connecting_degrees": list(rep.notes["connecting_degrees"])}))
        if kapranov:
            for part, c in (("left", s.u.source), ("mid", s.u.target), ("right", s.v.target)):
                recs.append(CheckRecord("kapranov", f"instance {i} {part}", ncomplex.kapranov_check(c)))
    return recs


def check_kapranov(N: int, p: int, seed: int = DEFAULT_SEED, count: int = 50) -> list[CheckRecord]:
    rng = _rng(seed)
    recs = []
    for i in range(count):
        c = randgen.random_ncomplex(N, p, rng)
        acyc = [ncomplex.is_acyclic(c, pi) for pi in range(1, N)]
        recs.append(CheckRecord("kapranov", f"instance {i}", ncomplex.kapranov_check(c),
                                {"acyclic": acyc}))
    return recs


# ---------------------------------------------------------------------------
# Hochschild and derived functors

def check_theorem1(a: FinDimAlgebra, ctx: QContext, n_max: int):
    rep = theorem1_check(a, ctx, n_max)
    recs = [CheckRecord("theorem1", f"p={c.p} n={c.n}", c.ok,
                        {"phh": c.lhs, "branch": c.branch, "index": c.index, "classical": c.rhs})
            for c in sorted(rep.cells, key=lambda c: (c.p, c.n))]
    return recs


def _trivial_pair(a: FinDimAlgebra):
    chi = [1] + [0] * (a.dim - 1)
    return character_module(a, chi, "right"), character_module(a, chi, "left")


def _cell_records(name: str, rep) -> list[CheckRecord]:
    recs = [CheckRecord(name, f"p={c.p} n={c.n}", c.ok,
                        {"lhs": c.lhs, "branch": c.branch, "index": c.index, "classical": c.rhs})
            for c in sorted(rep.cells, key=lambda c: (c.p, c.n))]
    recs += [CheckRecord(name, k, v) for k, v in sorted(rep.extra.items()) if isinstance(v, bool)]
    return recs


def check_cor33(ctx: QContext, n_max: int, a: FinDimAlgebra | None = None) -> list[CheckRecord]:
    """Tor reindexing for the trivial module k (first basis vector acting as 1, the rest as 0)."""
    a = a or dual_numbers(ctx.p)
    m, n = _trivial_pair(a)
    return _cell_records("cor33", derived.cor33_check(m, n, ctx, n_max))


def check_cor46(ctx: QContext, n_max: int, a: FinDimAlgebra | None = None) -> list[CheckRecord]:
    a = a or dual_numbers(ctx.p)
    _, n = _trivial_pair(a)
    return _cell_records("cor46", derived.cor46_check(n, n, ctx, n_max))


def check_tor_symmetry(ctx: QContext, n_max: int, a: FinDimAlgebra | None = None) -> list[CheckRecord]:
    a = a or dual_numbers(ctx.p)
    m, n = _trivial_pair(a)
    recs = [CheckRecord("tor-symmetry", "k, k", derived.tor_symmetry_check(m, n, ctx, n_max))]
    # the long exact sequence uses 0 -> (x) -> A -> A/(x) -> 0 over the dual numbers
    dual = dual_numbers(ctx.p)
    (sub, reg, quo), (inc, proj) = radical_sequence_dual(dual, "left")
    ses = derived.ModuleSES(sub, reg, quo, inc, proj)
    for pi in range(1, ctx.N):
        rep = derived.tor_les_check(ses, _trivial_pair(dual)[0], ctx, pi, n_max)
        recs.append(CheckRecord("tor-les", f"radical sequence p={pi}", rep.ok,
                                {"connecting_degrees": list(rep.notes["connecting_degrees"])}))
    return recs

"""Relative _pTor and _pExt through bar N-resolutions of modules.

Right module M:  P_n = M (x) A^{(x)n} (x) A, faces d_0 = action on M and
adjacent products; certified acyclic by the top-degeneracy homotopy.
Left module N:   Q_n = A (x) A^{(x)n} (x) N, faces adjacent products with
the last one acting on N; certified by the extra degeneracy 1 (x) -.
Tensor and Hom over A are quotients / kernels of explicit matrices.
"""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import (FDModule, FinDimAlgebra, balanced_quotient, equalizer,
                      hom_over, is_module_map, kron_all, tensor_over)
from .errors import InvalidModule, InvalidResolution, NotExact, ResourceBound
from .exactla import FMatrix, block_diag, image, kernel
from .hochschild import DEFAULT_CAP, Cell, CellReport, reindex_branch
from .ncomplex import (NComplex, NComplexMorphism, NResolution, SequenceReport,
                       ShortExactSequence, contract, les_check)
from .qcalc import QContext, classical_context
from .simplicial import (ExtraDegeneracy, SimplicialModule,
                         contracting_homotopy_extra, contracting_homotopy_sigma)


def _ident(n, p):
    return FMatrix.identity(n, p)


def _action_map(mod: FDModule, module_first: bool) -> FMatrix:
    """M (x) A -> M (m (x) a -> m.a) or A (x) N -> N (a (x) n -> a.n)."""
    a = mod.algebra
    d, m, p = a.dim, mod.dim, mod.p
    if module_first:
        # column index i * d + j for basis m_i (x) e_j
        out = FMatrix.zeros(m, m * d, p).a.copy()
        for j in range(d):
            out[:, j::d] = mod.actions[j].a
        return FMatrix(out, p)
    out = FMatrix.zeros(m, d * m, p).a.copy()
    for j in range(d):
        out[:, j * m:(j + 1) * m] = mod.actions[j].a
    return FMatrix(out, p)


def _check_cap(size: int, cap: int) -> None:
    if size > cap:
        raise ResourceBound(f"level of dimension {size} exceeds cap {cap}")


def right_bar_simplicial(mod: FDModule, levels: int, cap: int = DEFAULT_CAP,
                         validate: bool = False) -> SimplicialModule:
    """C_k = M (x) A^{(x)k}; no last face; degeneracies insert the unit after slot i.

    The simplicial identities follow from associativity and the module axioms,
    both checked on construction, so re-validating is opt-in.
    """
    if mod.side != "right":
        raise InvalidModule("right bar needs a right module")
    a = mod.algebra
    d, m, p = a.dim, mod.dim, mod.p
    _check_cap(m * d ** levels, cap)
    act, mu, u = _action_map(mod, True), a.mult(), a.unit_col()
    dims = [m * d ** k for k in range(levels + 1)]
    faces = {}
    for k in range(1, levels + 1):
        fs = [act.kron(_ident(d ** (k - 1), p))]
        for i in range(1, k):
            fs.append(kron_all([_ident(m * d ** (i - 1), p), mu, _ident(d ** (k - 1 - i), p)], p))
        faces[k] = fs
    degs = {k: [kron_all([_ident(m * d ** i, p), u, _ident(d ** (k - i), p)], p)
                for i in range(k + 1)] for k in range(levels)}
    return SimplicialModule(p, dims, faces, degs, last_face=False, validate=validate)


def left_bar_simplicial(mod: FDModule, levels: int, cap: int = DEFAULT_CAP, validate: bool = False):
    """C_k = A^{(x)k} (x) N with faces d_i (products, last one acting on N); plus s = 1 (x) -."""
    if mod.side != "left":
        raise InvalidModule("left bar needs a left module")
    a = mod.algebra
    d, m, p = a.dim, mod.dim, mod.p
    _check_cap(m * d ** levels, cap)
    act, mu, u = _action_map(mod, False), a.mult(), a.unit_col()
    dims = [d ** k * m for k in range(levels + 1)]
    faces = {}
    for k in range(1, levels + 1):
        fs = [kron_all([_ident(d ** i, p), mu, _ident(d ** (k - 2 - i) * m, p)], p)
              for i in range(k - 1)]
        fs.append(_ident(d ** (k - 1), p).kron(act))
        faces[k] = fs
    sm = SimplicialModule(p, dims, faces, None, last_face=False, validate=validate)
    extra = ExtraDegeneracy({k: u.kron(_ident(dims[k], p)) for k in range(levels)})
    return sm, extra


def _positive_part(aug: NComplex) -> NComplex:
    return NComplex(aug.N, aug.p, 0, aug.hi, aug.dims[1:],
                    {n: m for n, m in aug.diff.items() if n >= 1},
                    bounded_below=True, bounded_above=aug.bounded_above,
                    context=aug.context, validate=False)


def relative_bar_nresolution(mod: FDModule, ctx: QContext, n_max: int,
                             cap: int = DEFAULT_CAP, certify: bool = True) -> NResolution:
    """k-split bar N-resolution of a right module (or of a left one, see left_bar_nresolution)."""
    if mod.side == "left":
        return left_bar_nresolution(mod, ctx, n_max, cap, certify)
    ctx.require_h1("the module bar resolution")
    a = mod.algebra
    d, p = a.dim, a.p
    extra = ctx.N - 2 if certify else 0
    sm = right_bar_simplicial(mod, n_max + 1 + extra, cap)
    con = contracting_homotopy_sigma(sm, ctx, shift=-1)
    if certify and not con.certifies_acyclic(n_max):
        raise InvalidResolution("bar resolution is not certified acyclic")
    aug = con.complex.truncated(n_max)
    acts = {n: [_ident(mod.dim * d ** n, p).kron(a.right(j)) for j in range(d)]
            for n in range(n_max + 1)}
    return NResolution(_positive_part(aug), aug.d(0), acts, mod.actions, side="right")


def left_bar_nresolution(mod: FDModule, ctx: QContext, n_max: int,
                         cap: int = DEFAULT_CAP, certify: bool = True) -> NResolution:
    ctx.require_h1("the module bar resolution")
    a = mod.algebra
    d, p = a.dim, a.p
    extra = ctx.N - 2 if certify else 0
    sm, s = left_bar_simplicial(mod, n_max + 1 + extra, cap)
    con = contracting_homotopy_extra(sm, ctx, s, ell=1, shift=-1)
    if certify and not con.certifies_acyclic(n_max):
        raise InvalidResolution("bar resolution is not certified acyclic")
    aug = con.complex.truncated(n_max)
    acts = {n: [a.left(i).kron(_ident(d ** n * mod.dim, p)) for i in range(d)]
            for n in range(n_max + 1)}
    return NResolution(_positive_part(aug), aug.d(0), acts, mod.actions, side="left")


# ---------------------------------------------------------------------------
# functors applied to resolutions
#
# Every level of a bar resolution (and of its contractions) is free:
# P_n = X (x) A with the right action on the last factor, or A (x) X with
# the left action on the first.  Then P_n (x)_A N = X (x) N and
# Hom_A(A (x) X, N) = Hom_k(X, N), which avoids large coequalizers.  Levels
# of any other shape fall back to the generic quotient / equalizer.

def _free_rank(res: NResolution, a: FinDimAlgebra, n: int) -> int | None:
    d, p = a.dim, a.p
    size = res.complex.dim(n)
    if size % d:
        return None
    x = size // d
    if res.side == "right":
        want = [_ident(x, p).kron(a.right(j)) for j in range(d)]
    else:
        want = [a.left(i).kron(_ident(x, p)) for i in range(d)]
    return x if all(u == v for u, v in zip(res.actions[n], want)) else None


@dataclass
class _Level:
    """Coordinates on a tensor level: proj kills the balancing relations, sect splits it."""

    dim: int
    proj: FMatrix
    sect: FMatrix


def _tensor_level(res: NResolution, mod: FDModule, n: int, shortcut: bool) -> _Level:
    a, p = mod.algebra, mod.p
    x = _free_rank(res, a, n) if shortcut else None
    if x is not None:
        act, u = _action_map(mod, res.side == "left"), a.unit_col()
        if res.side == "right":
            proj = _ident(x, p).kron(act)
            sect = kron_all([_ident(x, p), u, _ident(mod.dim, p)], p)
        else:
            proj = act.kron(_ident(x, p))
            sect = kron_all([_ident(mod.dim, p), u, _ident(x, p)], p)
        return _Level(proj.rows, proj, sect)
    size = res.complex.dim(n)
    if res.side == "right":
        q = balanced_quotient(res.actions[n], mod.actions, size, mod.dim, p)
    else:
        q = balanced_quotient(mod.actions, res.actions[n], mod.dim, size, p)
    return _Level(q.dim, q.coords(_ident(size * mod.dim, p)), q.reps)


@dataclass
class TensorComplex:
    complex: NComplex
    levels: dict[int, _Level]


def _lift(res: NResolution, mod: FDModule, f: FMatrix) -> FMatrix:
    i = _ident(mod.dim, f.p)
    return f.kron(i) if res.side == "right" else i.kron(f)


def tensor_complex(res: NResolution, mod: FDModule, shortcut: bool = True) -> TensorComplex:
    """P (x)_A N for a right resolution P and left module N (or M (x)_A Q when res is left)."""
    want = "left" if res.side == "right" else "right"
    if mod.side != want:
        raise InvalidModule(f"a {res.side} resolution pairs with a {want} module")
    c = res.complex
    levels = {n: _tensor_level(res, mod, n, shortcut) for n in range(c.lo, c.hi + 1)}
    diff = {n: levels[n - 1].proj @ _lift(res, mod, c.d(n)) @ levels[n].sect
            for n in range(c.lo + 1, c.hi + 1)}
    out = NComplex(c.N, c.p, c.lo, c.hi, [levels[n].dim for n in range(c.lo, c.hi + 1)], diff,
                   bounded_below=True, bounded_above=c.bounded_above, context=c.context)
    return TensorComplex(out, levels)


def tensor_map(res: NResolution, src: TensorComplex, tgt: TensorComplex, f: FMatrix) -> NComplexMorphism:
    """P (x)_A f between two tensor complexes over the same resolution."""
    c = res.complex
    maps = {}
    for n in range(c.lo, c.hi + 1):
        ip = _ident(c.dim(n), c.p)
        big = ip.kron(f) if res.side == "right" else f.kron(ip)
        maps[n] = tgt.levels[n].proj @ big @ src.levels[n].sect
    return NComplexMorphism(src.complex, tgt.complex, maps)


def hom_complex(res: NResolution, mod: FDModule, shortcut: bool = True) -> NComplex:
    """Hom_A(P, N) graded negatively: degree -n holds Hom_A(P_n, N), differential g -> g d.

    Elements are matrices vectorized row-major.  On a free level A (x) X a
    homomorphism is determined by f = g(1 (x) -) and g d corresponds to
    sum_a lambda(e_a) f D_a, where D_a are the blocks of d(1 (x) -).
    """
    if res.side != "left" or mod.side != "left":
        raise InvalidModule("hom_complex needs a left resolution and a left module")
    c = res.complex
    a, p = mod.algebra, mod.p
    d, dn = a.dim, mod.dim
    free = {n: _free_rank(res, a, n) for n in range(c.lo, c.hi + 1)}
    diff = {}
    if shortcut and all(x is not None for x in free.values()):
        dims = [dn * free[n] for n in range(c.hi, c.lo - 1, -1)]
        u = a.unit_col()
        for n in range(c.lo + 1, c.hi + 1):
            big = c.d(n) @ u.kron(_ident(free[n], p))
            xm = free[n - 1]
            out = FMatrix.zeros(dn * free[n], dn * xm, p)
            for k in range(d):
                block = FMatrix(big.a[k * xm:(k + 1) * xm], p)
                out = out + mod.actions[k].kron(block.T)
            diff[-(n - 1)] = out
    else:
        eqs = {n: equalizer(res.actions[n], mod.actions, c.dim(n), dn, p)
               for n in range(c.lo, c.hi + 1)}
        for n in range(c.lo + 1, c.hi + 1):
            pre = _ident(dn, p).kron(c.d(n).T)
            diff[-(n - 1)] = eqs[n].coords(pre @ eqs[n - 1].basis)
        dims = [eqs[n].dim for n in range(c.hi, c.lo - 1, -1)]
    return NComplex(c.N, p, -c.hi, -c.lo, dims, diff,
                    bounded_below=c.bounded_above, bounded_above=True, context=c.context)


# ---------------------------------------------------------------------------
# _pTor and _pExt

def tor_complex(m: FDModule, n: FDModule, ctx: QContext, n_max: int, resolve: str = "M") -> NComplex:
    if resolve == "M":
        return tensor_complex(relative_bar_nresolution(m, ctx, n_max), n).complex
    return tensor_complex(left_bar_nresolution(n, ctx, n_max), m).complex


def ptor(m: FDModule, n: FDModule, ctx: QContext, p_index: int, deg: int,
         n_max: int | None = None, resolve: str = "M") -> int:
    n_max = deg + ctx.N - p_index if n_max is None else n_max
    return tor_complex(m, n, ctx, n_max, resolve).homology_dim(p_index, deg)


def ext_complex(m: FDModule, n: FDModule, ctx: QContext, n_max: int) -> NComplex:
    return hom_complex(left_bar_nresolution(m, ctx, n_max), n)


def pext(m: FDModule, n: FDModule, ctx: QContext, p_index: int, deg: int,
         n_max: int | None = None) -> int:
    n_max = deg + p_index if n_max is None else n_max
    return ext_complex(m, n, ctx, n_max).homology_dim(p_index, -deg)


def classical_tor(m: FDModule, n: FDModule, ctx: QContext, n_max: int) -> dict[int, int]:
    """Tor_k from the contraction Delta_1 of the bar N-resolution of M."""
    res = relative_bar_nresolution(m, ctx, n_max)
    c = tensor_complex(contract(res, 1), n).complex
    return {k: c.homology_dim(1, k) for k in c.safe_degrees(1)}


def classical_ext(m: FDModule, n: FDModule, ctx: QContext, n_max: int) -> dict[int, int]:
    """Ext^k from Hom_A(Delta_1 Q, N) for the bar N-resolution Q of M."""
    res = left_bar_nresolution(m, ctx, n_max)
    c = hom_complex(contract(res, 1), n)
    return {-k: c.homology_dim(1, k) for k in c.safe_degrees(1)}


def classical_bar_tor(m: FDModule, n: FDModule, n_max: int) -> dict[int, int]:
    """Tor_k from the ordinary (N = 2, q = -1) bar resolution: an independent cross-check."""
    ctx2 = classical_context(m.p)
    c = tensor_complex(relative_bar_nresolution(m, ctx2, n_max), n).complex
    return {k: c.homology_dim(1, k) for k in c.safe_degrees(1)}


def classical_bar_ext(m: FDModule, n: FDModule, n_max: int) -> dict[int, int]:
    ctx2 = classical_context(m.p)
    c = ext_complex(m, n, ctx2, n_max)
    return {-k: c.homology_dim(1, k) for k in c.safe_degrees(1)}


def _classical_depth(N: int, n_max: int) -> int:
    """N-resolution length whose contraction Delta_1 has safe homology up to 2 (n_max + 1) / N."""
    m = 2 * (n_max + 1) // N + 1
    return (m // 2) * N + (0 if m % 2 == 0 else N - 1)


def ext_branch(N: int, p_index: int, n: int) -> tuple[str, int | None]:
    if (n + 1 - (N - p_index)) % N == 0:
        return "N-p", 2 * (n + 1 - (N - p_index)) // N
    if (n + 1) % N == 0:
        return "0", (2 * n + 2 - N) // N
    return "zero", None


def cor33_check(m: FDModule, n: FDModule, ctx: QContext, n_max: int,
                resolve: str = "M") -> CellReport:
    """_pTor_n against the reindexed classical Tor, plus the _pTor_{p-1} = M (x)_A N anchors."""
    ctx.require_h1("the Tor reindexing check")
    c = tor_complex(m, n, ctx, n_max, resolve)
    classical = classical_tor(m, n, ctx, _classical_depth(ctx.N, n_max))
    rep = CellReport("Tor reindexing", ctx)
    for p_index in range(1, ctx.N):
        for deg in c.safe_degrees(p_index):
            branch, k = reindex_branch(ctx.N, p_index, deg)
            rhs = 0 if k is None else classical[k]
            rep.cells.append(Cell(p_index, deg, c.homology_dim(p_index, deg), branch, k, rhs))
    tens = tensor_over(m, n).dim
    for p_index in range(1, ctx.N):
        if p_index - 1 in c.safe_degrees(p_index):
            rep.extra[f"anchor_p{p_index}"] = c.homology_dim(p_index, p_index - 1) == tens
    rep.extra["tensor_dim"] = tens
    return rep


def cor46_check(m: FDModule, n: FDModule, ctx: QContext, n_max: int) -> CellReport:
    """_pExt^n against the reindexed classical Ext, plus the _pExt^{N-p-1} = Hom_A anchors."""
    ctx.require_h1("the Ext reindexing check")
    N = ctx.N
    c = ext_complex(m, n, ctx, n_max)
    classical = classical_ext(m, n, ctx, _classical_depth(N, n_max))
    rep = CellReport("Ext reindexing", ctx)
    for p_index in range(1, N):
        for t in c.safe_degrees(p_index):
            deg = -t
            branch, k = ext_branch(N, p_index, deg)
            rhs = 0 if k is None else classical[k]
            rep.cells.append(Cell(p_index, deg, c.homology_dim(p_index, t), branch, k, rhs))
    hom = hom_over(m, n).dim
    for p_index in range(1, N):
        t = -(N - p_index - 1)
        if t in c.safe_degrees(p_index):
            rep.extra[f"anchor_p{p_index}"] = c.homology_dim(p_index, t) == hom
    rep.extra["hom_dim"] = hom
    return rep


def tor_symmetry_check(m: FDModule, n: FDModule, ctx: QContext, n_max: int) -> bool:
    """Resolving M or resolving N gives the same _pTor dimensions on common safe cells."""
    a = tor_complex(m, n, ctx, n_max, "M")
    b = tor_complex(m, n, ctx, n_max, "N")
    cells = 0
    for p_index in range(1, ctx.N):
        common = set(a.safe_degrees(p_index)) & set(b.safe_degrees(p_index))
        for deg in common:
            cells += 1
            if a.homology_dim(p_index, deg) != b.homology_dim(p_index, deg):
                return False
    return cells > 0


# ---------------------------------------------------------------------------
# long exact sequences in the second variable

@dataclass
class ModuleSES:
    left: FDModule
    mid: FDModule
    right: FDModule
    u: FMatrix
    v: FMatrix

    def __post_init__(self):
        if not (is_module_map(self.u, self.left, self.mid) and is_module_map(self.v, self.mid, self.right)):
            raise NotExact("maps are not module maps")
        if self.u.rank() != self.u.cols or self.v.rank() != self.v.rows:
            raise NotExact("u must be injective and v surjective")
        if image(self.u) != kernel(self.v):
            raise NotExact("im u != ker v")


def split_module_ses(a_mod: FDModule, b_mod: FDModule) -> ModuleSES:
    p = a_mod.p
    mid = FDModule(a_mod.algebra, [block_diag([x, y], p) for x, y in zip(a_mod.actions, b_mod.actions)],
                   a_mod.side, name="sum")
    u = _ident(a_mod.dim, p).vstack(FMatrix.zeros(b_mod.dim, a_mod.dim, p))
    v = FMatrix.zeros(b_mod.dim, a_mod.dim, p).hstack(_ident(b_mod.dim, p))
    return ModuleSES(a_mod, mid, b_mod, u, v)


def tor_les_check(ses: ModuleSES, m: FDModule, ctx: QContext, p_index: int, n_max: int) -> SequenceReport:
    """Apply P (x)_A - to a short exact sequence of left modules and check the hexagon."""
    res = relative_bar_nresolution(m, ctx, n_max)
    t_left = tensor_complex(res, ses.left)
    t_mid = tensor_complex(res, ses.mid)
    t_right = tensor_complex(res, ses.right)
    u = tensor_map(res, t_left, t_mid, ses.u)
    v = tensor_map(res, t_mid, t_right, ses.v)
    return les_check(ShortExactSequence(u, v), p_index)

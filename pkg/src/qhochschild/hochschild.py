"""Hochschild simplicial module, its q-deformed N-complex, and the bar N-resolution.

C_n(A) = A^{(x)(n+1)} in lexicographic tensor bases.  Faces are built from
structure constants with Kronecker products; the classical oracle
:func:`classical_hh` assembles the alternating-sign complex by explicit
multi-index loops and shares nothing with the q-machinery beyond rank
computations.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
import numpy as np

from .algebra import (FDModule, FinDimAlgebra, balanced_quotient, envelope,
                      kron_all)
from .errors import ContextMismatch, InvalidResolution, ResourceBound, UnsafeDegree
from .exactla import FMatrix, Quotient, rank, solve
from .ncomplex import NComplex, NResolution
from .qcalc import QContext
from .simplicial import (Contraction, DifferentialSpec, SimplicialModule,
                         contracting_homotopy_sigma, q_differential)

DEFAULT_CAP = 4096  # largest dense level dimension; 4096^2 int64 is 128 MB


def _check_cap(d: int, top: int, cap: int) -> None:
    if d ** top > cap:
        raise ResourceBound(f"A^(x){top} has dimension {d ** top} > cap {cap}")


def _ident(n: int, p: int) -> FMatrix:
    return FMatrix.identity(n, p)


def cyclic_permutation(d: int, n: int, p: int) -> FMatrix:
    """a_0 (x) ... (x) a_n -> a_n (x) a_0 (x) ... (x) a_{n-1}."""
    size = d ** (n + 1)
    old = np.arange(size)
    rest, last = old // d, old % d
    new = last * d ** n + rest
    m = np.zeros((size, size), dtype=np.int64)
    m[new, old] = 1
    return FMatrix(m, p)


def tensor_faces(a: FinDimAlgebra, n: int, cyclic: bool = True) -> list[FMatrix]:
    """Faces on A^{(x)(n+1)}: adjacent products, then the cyclic face a_n a_0 if requested."""
    d, p = a.dim, a.p
    mu = a.mult()
    faces = [kron_all([_ident(d ** i, p), mu, _ident(d ** (n - 1 - i), p)], p) for i in range(n)]
    if cyclic:
        faces.append(mu.kron(_ident(d ** (n - 1), p)) @ cyclic_permutation(d, n, p))
    return faces


def tensor_degeneracies(a: FinDimAlgebra, n: int) -> list[FMatrix]:
    """s_i inserts the unit after position i on A^{(x)(n+1)}."""
    d, p = a.dim, a.p
    u = a.unit_col()
    return [kron_all([_ident(d ** (i + 1), p), u, _ident(d ** (n - i), p)], p) for i in range(n + 1)]


def hochschild_simplicial(a: FinDimAlgebra, n_max: int, cap: int = DEFAULT_CAP,
                          validate: bool = True) -> SimplicialModule:
    _check_cap(a.dim, n_max + 1, cap)
    dims = [a.dim ** (n + 1) for n in range(n_max + 1)]
    faces = {n: tensor_faces(a, n) for n in range(1, n_max + 1)}
    degs = {n: tensor_degeneracies(a, n) for n in range(n_max)}
    return SimplicialModule(a.p, dims, faces, degs, validate=validate)


def _same_field(a: FinDimAlgebra, ctx: QContext) -> None:
    if a.p != ctx.p:
        raise ContextMismatch(f"algebra over F_{a.p}, context over F_{ctx.p}")


def hochschild_ncomplex(a: FinDimAlgebra, ctx: QContext, n_max: int,
                        cap: int = DEFAULT_CAP) -> NComplex:
    """(C(A), b) with b = sum_{i=0}^n q^i d_i, cyclic face included."""
    _same_field(a, ctx)
    sm = hochschild_simplicial(a, n_max, cap, validate=False)
    return q_differential(sm, ctx, DifferentialSpec.full())


def phh(a: FinDimAlgebra, ctx: QContext, p_index: int, n: int, n_max: int | None = None) -> int:
    n_max = n + ctx.N - p_index if n_max is None else n_max
    return hochschild_ncomplex(a, ctx, n_max).homology_dim(p_index, n)


# ---------------------------------------------------------------------------
# classical oracle

def _classical_boundary(a: FinDimAlgebra, n: int) -> FMatrix:
    """b_n = sum_i (-1)^i d_i on A^{(x)(n+1)}, assembled entry by entry."""
    d, p, c = a.dim, a.p, a.c
    rows, cols = d ** n, d ** (n + 1)
    m = np.zeros((rows, cols), dtype=np.int64)
    if n == 0:
        return FMatrix(m, p)
    weights = [d ** (n - 1 - k) for k in range(n)]
    for col, idx in enumerate(itertools.product(range(d), repeat=n + 1)):
        for i in range(n + 1):
            sign = 1 if i % 2 == 0 else p - 1
            if i < n:
                x, y = idx[i], idx[i + 1]
                rest = idx[:i] + idx[i + 2:]
                pos = i
            else:
                x, y = idx[n], idx[0]
                rest = idx[1:n]
                pos = 0
            for k in np.nonzero(c[x, y])[0]:
                word = rest[:pos] + (int(k),) + rest[pos:]
                row = sum(w * t for w, t in zip(weights, word))
                m[row, col] = (m[row, col] + sign * c[x, y, k]) % p
    return FMatrix(m, p)


_HH_CACHE: dict = {}


def classical_hh(a: FinDimAlgebra, n: int, n_max: int | None = None) -> int:
    """dim HH_n(A) from the standard complex with alternating signs."""
    if n < 0:
        return 0
    if n_max is not None and n > n_max - 1:
        raise UnsafeDegree(f"HH_{n} needs C_{n + 1}, beyond n_max = {n_max}")
    key = (a.p, a.c.tobytes(), a.unit.tobytes(), n)
    if key not in _HH_CACHE:
        bn = _classical_boundary(a, n)
        bn1 = _classical_boundary(a, n + 1)
        _HH_CACHE[key] = (bn.cols - rank(bn)) - rank(bn1)
    return _HH_CACHE[key]


# ---------------------------------------------------------------------------
# the reindexing statement

def reindex_branch(N: int, p_index: int, n: int) -> tuple[str, int | None]:
    """Branch of the homology reindexing for cell (p, n): ('p', k), ('0', k) or ('zero', None)."""
    if (n + 1 - p_index) % N == 0:
        return "p", 2 * (n - p_index + 1) // N
    if (n + 1) % N == 0:
        return "0", (2 * n + 2 - N) // N
    return "zero", None


@dataclass
class Cell:
    p: int
    n: int
    lhs: int
    branch: str
    index: int | None
    rhs: int

    @property
    def ok(self) -> bool:
        return self.lhs == self.rhs

    def as_dict(self) -> dict:
        return {"p": self.p, "n": self.n, "lhs": self.lhs, "branch": self.branch,
                "index": self.index, "rhs": self.rhs, "pass": self.ok}


@dataclass
class CellReport:
    title: str
    context: QContext
    cells: list[Cell] = field(default_factory=list)
    extra: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return bool(self.cells) and all(c.ok for c in self.cells) and all(
            v for v in self.extra.values() if isinstance(v, bool))

    def __bool__(self):
        return self.ok

    def as_dict(self) -> dict:
        return {"title": self.title, "context": self.context.as_dict()
                | {"hypothesis": self.context.hypothesis_level.value},
                "cells": [c.as_dict() for c in sorted(self.cells, key=lambda c: (c.p, c.n))],
                "extra": self.extra, "pass": self.ok}


def theorem1_check(a: FinDimAlgebra, ctx: QContext, n_max: int,
                   cap: int = DEFAULT_CAP) -> CellReport:
    """_pHH_n against the reindexed classical HH, on every safe cell."""
    ctx.require_h1("the Hochschild reindexing check")
    _same_field(a, ctx)
    c = hochschild_ncomplex(a, ctx, n_max, cap)
    rep = CellReport(f"reindexing for {a.name or 'algebra'}", ctx)
    for p_index in range(1, ctx.N):
        for n in c.safe_degrees(p_index):
            branch, k = reindex_branch(ctx.N, p_index, n)
            rhs = 0 if k is None else classical_hh(a, k)
            rep.cells.append(Cell(p_index, n, c.homology_dim(p_index, n), branch, k, rhs))
    return rep


# ---------------------------------------------------------------------------
# bar N-resolution over the enveloping algebra

def bimodule_actions(a: FinDimAlgebra, n_factors: int) -> list[FMatrix]:
    """(e_i (x) e_j) acting on A^{(x)m} by x a_0 (x) ... (x) a_{m-1} y, indexed i * d + j."""
    d, p = a.dim, a.p
    mid = _ident(d ** (n_factors - 2), p)
    return [kron_all([a.left(i), mid, a.right(j)], p) for i in range(d) for j in range(d)]


def bar_nresolution(a: FinDimAlgebra, ctx: QContext, n_max: int, cap: int = DEFAULT_CAP,
                    certify: bool = True, actions: bool = True) -> NResolution:
    """P_n = A^{(x)(n+2)} with d' = sum_{i<=n} q^i (adjacent products), eps = product.

    This is the truncated differential on the Hochschild simplicial module
    shifted down by one.  With ``certify`` the sigma homotopy is built on
    N-2 extra levels and must certify acyclicity on the whole window.
    """
    _same_field(a, ctx)
    extra = ctx.N - 2 if certify else 0
    sm = hochschild_simplicial(a, n_max + 1 + extra, cap, validate=False)
    if certify:
        con = contracting_homotopy_sigma(sm, ctx, shift=-1)
        if not con.certifies_acyclic(n_max):
            raise InvalidResolution("sigma homotopy does not certify acyclicity")
        aug = con.complex.truncated(n_max)
    else:
        aug = q_differential(sm, ctx, DifferentialSpec.truncated(), shift=-1)
    return _resolution_from_augmented(aug, a, actions)


def bar_contraction(a: FinDimAlgebra, ctx: QContext, n_max: int, cap: int = DEFAULT_CAP) -> Contraction:
    """The sigma contraction of the augmented bar complex (levels up to n_max + 1)."""
    _same_field(a, ctx)
    return contracting_homotopy_sigma(hochschild_simplicial(a, n_max + 1, cap, validate=False),
                                      ctx, shift=-1)


def _resolution_from_augmented(aug: NComplex, a: FinDimAlgebra, with_actions: bool) -> NResolution:
    pos = NComplex(aug.N, aug.p, 0, aug.hi, aug.dims[1:],
                   {n: m for n, m in aug.diff.items() if n >= 1},
                   bounded_below=True, bounded_above=aug.bounded_above,
                   context=aug.context, validate=False)
    acts = None
    target_acts = None
    if with_actions:
        acts = {n: bimodule_actions(a, n + 2) for n in range(aug.hi + 1)}
        target_acts = [a.left(i) @ a.right(j) for i in range(a.dim) for j in range(a.dim)]
    return NResolution(pos, aug.d(0), acts, target_acts, side="left")


@dataclass
class IdentificationReport:
    degrees: list[int]
    dims_match: dict[int, bool]
    iso: dict[int, bool]
    differential_match: dict[int, bool]

    @property
    def ok(self) -> bool:
        return all(self.dims_match.values()) and all(self.iso.values()) and all(
            self.differential_match.values())

    def __bool__(self):
        return self.ok


def _right_envelope_actions(a: FinDimAlgebra) -> list[FMatrix]:
    """A as a right B-module: m . (x (x) y) = y m x, indexed like the envelope basis."""
    return [a.left(j) @ a.right(i) for i in range(a.dim) for j in range(a.dim)]


def identify_phh_tor(a: FinDimAlgebra, ctx: QContext, n_max: int, cap: int = DEFAULT_CAP,
                     report: bool = False):
    """A (x)_B P_n against C_n(A): phi(c_0 (x) ... (x) c_n) = c_0 (x) (1 (x) c_1 ... c_n (x) 1).

    Checks that phi is an isomorphism in each degree and that the induced
    differential id (x) d' equals the Hochschild b (cyclic term included).
    """
    _same_field(a, ctx)
    d, p = a.dim, a.p
    res = bar_nresolution(a, ctx, n_max, cap, certify=False, actions=True)
    hoch = hochschild_ncomplex(a, ctx, n_max, cap)
    ra = _right_envelope_actions(a)
    u = a.unit_col()
    quos: dict[int, Quotient] = {}
    phis: dict[int, FMatrix] = {}
    dims_match, iso, diff_match = {}, {}, {}
    for n in range(0, n_max + 1):
        size = d ** (n + 2)
        quos[n] = balanced_quotient(ra, res.actions[n], d, size, p)
        # c_0 (x) c_1..c_n  ->  c_0 (x) 1 (x) c_1..c_n (x) 1
        phi = kron_all([_ident(d, p), u, _ident(d ** n, p), u], p)
        phis[n] = quos[n].coords(phi)
        dims_match[n] = quos[n].dim == d ** (n + 1)
        iso[n] = dims_match[n] and phis[n].rank() == d ** (n + 1)
    for n in range(1, n_max + 1):
        big = _ident(d, p).kron(res.complex.d(n))
        lifted = quos[n - 1].coords(big @ kron_all([_ident(d, p), u, _ident(d ** n, p), u], p))
        induced = solve(phis[n - 1], lifted)
        diff_match[n] = induced == hoch.d(n)
    out = IdentificationReport(list(range(n_max + 1)), dims_match, iso, diff_match)
    return out if report else out.ok


def algebra_module_over_envelope(a: FinDimAlgebra) -> FDModule:
    """A as a left B-module: (x (x) y) . m = x m y."""
    b = envelope(a)
    return FDModule(b, [a.left(i) @ a.right(j) for i in range(a.dim) for j in range(a.dim)],
                    "left", name="A_B")

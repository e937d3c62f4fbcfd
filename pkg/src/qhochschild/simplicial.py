"""Simplicial modules over F_p and their q-weighted face differentials.

A module stores levels 0..n_max with face matrices d_i and (optionally)
degeneracies s_i.  Bar-type modules of one-sided modules have no last
face; they set ``last_face=False`` and then carry d_0..d_{n-1} on C_n,
which is all the truncated differentials need.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .errors import OutOfRange, RelationFailure, ShapeMismatch, SimplicialIdentityError
from .exactla import FMatrix, block_diag, solve
from .ncomplex import Homotopy, NComplex, NComplexMorphism, check_homotopy
from .qcalc import QContext, qfact, qint


class SimplicialModule:
    def __init__(self, p: int, dims, faces, degeneracies=None, *, last_face: bool = True,
                 validate: bool = True, strict: bool = True):
        self.p = p
        self.dims = list(dims)
        self.n_max = len(self.dims) - 1
        self.last_face = last_face
        self.faces: dict[int, list[FMatrix]] = {}
        self.degeneracies: dict[int, list[FMatrix]] = {}
        for n in range(1, self.n_max + 1):
            fs = list(faces.get(n, []))
            want = self.face_count(n)
            if len(fs) != want:
                raise ShapeMismatch(f"level {n} needs {want} faces, got {len(fs)}")
            for i, f in enumerate(fs):
                if f.shape != (self.dims[n - 1], self.dims[n]):
                    raise ShapeMismatch(f"d_{i} on C_{n} has shape {f.shape}")
            self.faces[n] = fs
        for n, ss in (degeneracies or {}).items():
            if n >= self.n_max:
                continue
            ss = list(ss)
            if len(ss) != n + 1:
                raise ShapeMismatch(f"level {n} needs {n + 1} degeneracies, got {len(ss)}")
            for i, s in enumerate(ss):
                if s.shape != (self.dims[n + 1], self.dims[n]):
                    raise ShapeMismatch(f"s_{i} on C_{n} has shape {s.shape}")
            self.degeneracies[n] = ss
        if validate:
            self.validate(strict=strict)

    def __repr__(self):
        return f"SimplicialModule(F_{self.p}, dims={self.dims})"

    def face_count(self, n: int) -> int:
        return n + 1 if self.last_face else n

    def face(self, n: int, i: int) -> FMatrix:
        return self.faces[n][i]

    def has_full_degeneracies(self) -> bool:
        return all(n in self.degeneracies for n in range(self.n_max))

    def validate(self, strict: bool = True) -> None:
        for n in range(2, self.n_max + 1):
            top = self.face_count(n)
            for j in range(top):
                for i in range(j):
                    if self.face(n - 1, i) @ self.face(n, j) != self.face(n - 1, j - 1) @ self.face(n, i):
                        raise SimplicialIdentityError(f"d_{i} d_{j} != d_{j - 1} d_{i} on C_{n}")
        for n, ss in self.degeneracies.items():
            ident = FMatrix.identity(self.dims[n], self.p)
            for j, s in enumerate(ss):
                for i in range(self.face_count(n + 1)):
                    lhs = self.face(n + 1, i) @ s
                    if i < j:
                        rhs = self.degeneracies[n - 1][j - 1] @ self.face(n, i) if n >= 1 else None
                    elif i in (j, j + 1):
                        rhs = ident
                    else:
                        rhs = self.degeneracies[n - 1][j] @ self.face(n, i - 1) if n >= 1 else None
                    if rhs is not None and lhs != rhs:
                        raise SimplicialIdentityError(f"d_{i} s_{j} identity fails on C_{n}")
            if strict and n + 1 in self.degeneracies:
                up = self.degeneracies[n + 1]
                for j in range(n + 1):
                    for i in range(j + 1):
                        if up[i] @ ss[j] != up[j + 1] @ ss[i]:
                            raise SimplicialIdentityError(f"s_{i} s_{j} identity fails on C_{n}")

    def conjugated(self, g: dict[int, FMatrix]) -> SimplicialModule:
        """Same module in new bases: x_new = g_n x_old."""
        ginv = {n: solve(m, FMatrix.identity(m.rows, self.p)) for n, m in g.items()}
        faces = {n: [g[n - 1] @ f @ ginv[n] for f in fs] for n, fs in self.faces.items()}
        degs = {n: [g[n + 1] @ s @ ginv[n] for s in ss] for n, ss in self.degeneracies.items()}
        return SimplicialModule(self.p, self.dims, faces, degs, last_face=self.last_face,
                                validate=False)


def direct_sum(parts: list[SimplicialModule]) -> SimplicialModule:
    p = parts[0].p
    n_max = min(m.n_max for m in parts)
    last = all(m.last_face for m in parts)
    dims = [sum(m.dims[n] for m in parts) for n in range(n_max + 1)]
    faces = {n: [block_diag([m.face(n, i) for m in parts], p)
                 for i in range(n + 1 if last else n)] for n in range(1, n_max + 1)}
    degs = {}
    if all(m.has_full_degeneracies() for m in parts):
        degs = {n: [block_diag([m.degeneracies[n][i] for m in parts], p) for i in range(n + 1)]
                for n in range(n_max)}
    return SimplicialModule(p, dims, faces, degs, last_face=last, validate=False)


# ---------------------------------------------------------------------------
# differentials

@dataclass(frozen=True)
class DifferentialSpec:
    """Which weighted face sum to use: full, truncated, weighted(ell) or general(a_0, a_1, ...)."""

    kind: str
    ell: int = 1
    coeffs: tuple[int, ...] = ()

    @classmethod
    def full(cls):
        return cls("full")

    @classmethod
    def truncated(cls):
        return cls("truncated")

    @classmethod
    def weighted(cls, ell: int):
        return cls("weighted", ell=ell)

    @classmethod
    def general(cls, coeffs):
        return cls("general", coeffs=tuple(int(a) for a in coeffs))

    def face_coefficients(self, ctx: QContext, n: int) -> list[int]:
        """Coefficient of d_i in the differential on C_n, for i = 0..n."""
        p = ctx.p
        qp = [ctx.qpow(i) for i in range(n + 1)]
        if self.kind == "full":
            return qp
        if self.kind == "truncated":
            return qp[:n] + [0]
        if self.kind == "weighted":
            ell = self.ell % ctx.N
            out = qp[:n] + [0]
            if n >= 1:
                out[n - 1] = qint(ctx, ell) * qp[n - 1] % p
            return out
        if self.kind == "general":
            if len(self.coeffs) < n:
                raise OutOfRange(f"general spec needs a_0..a_{n - 1}, has {len(self.coeffs)}")
            return [self.coeffs[n - 1 - i] * qp[i] % p for i in range(n)] + [0]
        raise OutOfRange(f"unknown differential kind {self.kind!r}")


def differential_matrix(sm: SimplicialModule, ctx: QContext, spec: DifferentialSpec,
                        n: int) -> FMatrix:
    coeffs = spec.face_coefficients(ctx, n)
    out = FMatrix.zeros(sm.dims[n - 1], sm.dims[n], sm.p)
    for i, c in enumerate(coeffs):
        if c % sm.p == 0:
            continue
        if i >= sm.face_count(n):
            raise ShapeMismatch(f"differential uses d_{i} on C_{n}, which this module lacks")
        out = out + sm.face(n, i).scale(c)
    return out


def q_differential(sm: SimplicialModule, ctx: QContext, spec: DifferentialSpec,
                   validate: bool = True, shift: int = 0) -> NComplex:
    """The N-complex (C, weighted face sum); C_n sits in degree n + shift."""
    if ctx.p != sm.p:
        raise ShapeMismatch(f"context is over F_{ctx.p}, module over F_{sm.p}")
    diff = {n + shift: differential_matrix(sm, ctx, spec, n) for n in range(1, sm.n_max + 1)}
    return NComplex(ctx.N, ctx.p, shift, sm.n_max + shift, sm.dims, diff,
                    bounded_below=True, bounded_above=False, context=ctx, validate=validate)


def ternary(ctx: QContext, a, n: int, j: int, k: int) -> int:
    """(N, j, k) = sum_{s=0}^{N-k} q^s a_{n-k-j-s}; distinct from the binary q-binomial."""
    N = ctx.N
    return sum(ctx.qpow(s) * a[n - k - j - s] for s in range(N - k + 1)) % ctx.p


def lemma53_rhs(sm: SimplicialModule, ctx: QContext, coeffs, n: int) -> FMatrix:
    """Closed-form expansion of delta^N on C_n as a sum over index multisets."""
    N = ctx.N
    if n < N:
        raise OutOfRange(f"needs n >= N (n={n}, N={N})")
    a = [int(x) % ctx.p for x in coeffs]
    out = FMatrix.zeros(sm.dims[n - N], sm.dims[n], sm.p)
    for idx in itertools.combinations_with_replacement(range(n - N + 1), N):
        c = ctx.qpow(sum(idx))
        for k, i_k in enumerate(idx, start=1):
            c = c * ternary(ctx, a, n, i_k, k) % ctx.p
            if c == 0:
                break
        if c == 0:
            continue
        m = FMatrix.identity(sm.dims[n], sm.p)
        for k, i_k in enumerate(idx):
            m = sm.face(n - k, i_k) @ m
        out = out + m.scale(c)
    return out


# ---------------------------------------------------------------------------
# contracting homotopies

@dataclass
class Contraction:
    """A degree +1 map with a commutation relation, and the homotopy id ~ 0 it yields."""

    complex: NComplex
    raising: dict[int, FMatrix]
    homotopy: Homotopy
    relation: dict[int, bool] = field(default_factory=dict)

    def certified_degrees(self) -> list[int]:
        """Degrees where id - 0 = sum d^{N-1-i} h d^i holds; homology vanishes there."""
        h = self.homotopy
        return [n for n in h.checkable_degrees() if check_homotopy(h, [n])]

    def certified_window(self) -> int:
        """Largest hi such that every safe cell of the complex truncated at hi is certified.

        h_n reaches C_{n+N-1}, so a module known up to level m certifies up
        to hi = m - N + 2 (the top safe degree is hi - 1).
        """
        return self.complex.hi - self.complex.N + 2

    def certifies_acyclic(self, hi: int | None = None) -> bool:
        hi = self.certified_window() if hi is None else hi
        target = self.complex.truncated(hi)
        good = set(self.certified_degrees())
        return all(n in good for p in range(1, target.N) for n in target.safe_degrees(p))


def _power_homotopy(c: NComplex, raising: dict[int, FMatrix], scale: int) -> Homotopy:
    """h_n = scale * r^{N-1} : C_n -> C_{n+N-1} wherever defined."""
    N = c.N
    maps = {}
    for n in range(c.lo, c.hi - N + 2):
        m = FMatrix.identity(c.dim(n), c.p)
        for k in range(N - 1):
            m = raising[n + k] @ m
        maps[n] = m.scale(scale)
    ident = NComplexMorphism.identity(c)
    return Homotopy(ident, NComplexMorphism.zero(c, c), maps)


def _relation(c: NComplex, raising: dict[int, FMatrix], lam: int) -> dict[int, bool]:
    """Per degree n: d r - lam r d = id on C_n."""
    out = {}
    for n in range(c.lo, c.hi):
        lhs = c.d(n + 1) @ raising[n]
        if n - 1 >= c.lo:
            lhs = lhs - (raising[n - 1] @ c.d(n)).scale(lam)
        out[n] = lhs == FMatrix.identity(c.dim(n), c.p)
    return out


def sigma_maps(sm: SimplicialModule, ctx: QContext) -> dict[int, FMatrix]:
    """sigma_n = q^{-n} s_n (top degeneracy)."""
    if not all(n in sm.degeneracies for n in range(sm.n_max)):
        raise ShapeMismatch("the sigma homotopy needs the top degeneracy on every level")
    return {n: sm.degeneracies[n][n].scale(ctx.inv(ctx.qpow(n))) for n in range(sm.n_max)}


def contracting_homotopy_sigma(sm: SimplicialModule, ctx: QContext, shift: int = 0) -> Contraction:
    """Homotopy id ~ 0 on (C, truncated differential) from delta sigma - q^{-1} sigma delta = id."""
    ctx.require_h1("the sigma contraction")
    N = ctx.N
    c = q_differential(sm, ctx, DifferentialSpec.truncated(), shift=shift)
    sig = {n + shift: m for n, m in sigma_maps(sm, ctx).items()}
    rel = _relation(c, sig, ctx.inv(ctx.q))
    bad = [n for n, ok in rel.items() if not ok]
    if bad:
        raise RelationFailure(f"delta sigma - q^-1 sigma delta != id in degrees {bad}")
    # first [N-1]! identity with X = delta, Y = -q^{-1} sigma
    norm = pow(-ctx.inv(ctx.q), N - 1, ctx.p) * ctx.inv(qfact(ctx, N - 1)) % ctx.p
    return Contraction(c, sig, _power_homotopy(c, sig, norm), rel)


@dataclass
class ExtraDegeneracy:
    maps: dict[int, FMatrix]

    def validate(self, sm: SimplicialModule) -> None:
        for n, s in self.maps.items():
            if n + 1 > sm.n_max:
                continue
            if sm.face(n + 1, 0) @ s != FMatrix.identity(sm.dims[n], sm.p):
                raise RelationFailure(f"d_0 s != id on C_{n}")
            for i in range(1, sm.face_count(n + 1) if n else 1):
                if sm.face(n + 1, i) @ s != self.maps[n - 1] @ sm.face(n, i - 1):
                    raise RelationFailure(f"d_{i} s != s d_{i - 1} on C_{n}")


def extra_normalizer(ctx: QContext) -> int:
    """(-1)^{N-1} q^{-N(N-1)/2} [N-1]!, the value of the second [N-1]! identity."""
    N, p = ctx.N, ctx.p
    return pow(-1, N - 1, p) * ctx.inv(ctx.qpow(N * (N - 1) // 2)) * qfact(ctx, N - 1) % p


def contracting_homotopy_extra(sm: SimplicialModule, ctx: QContext, s: ExtraDegeneracy,
                               ell: int = 1, shift: int = 0) -> Contraction:
    """Homotopy id ~ 0 on (C, weighted(ell)) from delta s - q s delta = id.

    The relation holds on C_n for n >= 1 whenever s is an extra degeneracy;
    on the bottom level it reads [ell] = 1, so for ell != 1 mod N the bottom
    degrees are not certified (``relation[shift]`` records this).
    """
    ctx.require_h1("the extra-degeneracy contraction")
    s.validate(sm)
    c = q_differential(sm, ctx, DifferentialSpec.weighted(ell), shift=shift)
    raising = {n + shift: m for n, m in s.maps.items() if n < sm.n_max}
    rel = _relation(c, raising, ctx.q)
    bad = [n for n, ok in rel.items() if not ok and n > shift]
    if bad:
        raise RelationFailure(f"delta s - q s delta != id in degrees {bad}")
    # second [N-1]! identity with X = s, Y = delta
    norm = ctx.inv(extra_normalizer(ctx))
    return Contraction(c, raising, _power_homotopy(c, raising, norm), rel)


# ---------------------------------------------------------------------------
# constructions

def from_simplicial_set(p: int, simplices, face, degen, *, last_face: bool = True) -> SimplicialModule:
    """Linearize a simplicial set given per-level simplex lists and face/degeneracy functions.

    ``face(n, i, x)`` and ``degen(n, i, x)`` return simplices at levels n-1 / n+1.
    """
    index = [{x: k for k, x in enumerate(level)} for level in simplices]
    dims = [len(level) for level in simplices]
    n_max = len(dims) - 1

    def matrix(rows, src, fn):
        a = np.zeros((rows, len(src)), dtype=np.int64)
        for col, x in enumerate(src):
            a[fn(x), col] = 1
        return FMatrix(a, p)

    faces = {n: [matrix(dims[n - 1], simplices[n], lambda x, n=n, i=i: index[n - 1][face(n, i, x)])
                 for i in range(n + 1 if last_face else n)] for n in range(1, n_max + 1)}
    degs = {n: [matrix(dims[n + 1], simplices[n], lambda x, n=n, i=i: index[n + 1][degen(n, i, x)])
                for i in range(n + 1)] for n in range(n_max)}
    return SimplicialModule(p, dims, faces, degs, last_face=last_face)


def constant_module(p: int, n_max: int, dim: int = 1) -> SimplicialModule:
    one = FMatrix.identity(dim, p)
    return SimplicialModule(p, [dim] * (n_max + 1),
                            {n: [one] * (n + 1) for n in range(1, n_max + 1)},
                            {n: [one] * (n + 1) for n in range(n_max)})


def standard_simplex(p: int, m: int, n_max: int) -> SimplicialModule:
    """k[Delta[m]]: n-simplices are nondecreasing sequences in {0..m} of length n+1."""
    simplices = [list(itertools.combinations_with_replacement(range(m + 1), n + 1))
                 for n in range(n_max + 1)]
    return from_simplicial_set(p, simplices,
                               lambda n, i, x: x[:i] + x[i + 1:],
                               lambda n, i, x: x[:i + 1] + x[i:])


def circle(p: int, n_max: int) -> SimplicialModule:
    """k[Delta[1] / boundary]: the two constant sequences are identified."""
    def norm(x):
        return ("*",) if len(set(x)) == 1 else x

    simplices = []
    for n in range(n_max + 1):
        level = [("*",)] + [tuple([0] * z + [1] * (n + 1 - z)) for z in range(1, n + 1)]
        simplices.append(level)

    def face(n, i, x):
        if x == ("*",):
            return x
        return norm(x[:i] + x[i + 1:])

    def degen(n, i, x):
        if x == ("*",):
            return x
        return x[:i + 1] + x[i:]

    return from_simplicial_set(p, simplices, face, degen)


def cyclic_group_nerve(p: int, order: int, n_max: int) -> SimplicialModule:
    """k[B(Z/order)]: n-simplices are tuples (g_1..g_n)."""
    simplices = [list(itertools.product(range(order), repeat=n)) for n in range(n_max + 1)]

    def face(n, i, x):
        if i == 0:
            return x[1:]
        if i == n:
            return x[:-1]
        return x[:i - 1] + ((x[i - 1] + x[i]) % order,) + x[i + 1:]

    def degen(n, i, x):
        return x[:i] + (0,) + x[i:]

    return from_simplicial_set(p, simplices, face, degen)


def random_simplicial(p: int, rng, n_max: int = 5, max_summands: int = 4) -> SimplicialModule:
    """Direct sum of small standard pieces in random bases."""
    makers = [
        lambda: constant_module(p, n_max),
        lambda: standard_simplex(p, 1, n_max),
        lambda: circle(p, n_max),
        lambda: cyclic_group_nerve(p, 2, n_max),
    ]
    k = int(rng.integers(1, max_summands + 1))
    parts = [makers[int(rng.integers(0, len(makers)))]() for _ in range(k)]
    sm = direct_sum(parts)
    g = {n: FMatrix.random_invertible(sm.dims[n], p, rng) for n in range(sm.n_max + 1)}
    return sm.conjugated(g)

"""Seeded random instances for property tests and the CLI.

Random N-complexes are never rejection-sampled: they are direct sums of
segments (k -> k -> ... -> k joined by identities, length <= N) and of
expansions of classical complexes, conjugated degreewise by random
invertible matrices, so d^N = 0 holds by construction.
"""
from __future__ import annotations

from .exactla import FMatrix, Quotient, Subspace, block_diag, image, solve
from .ncomplex import (NComplex, NComplexMorphism, ShortExactSequence,
                       expand_complex)


def segment(N: int, p: int, bottom: int, length: int, lo: int, hi: int) -> NComplex:
    """k in degrees bottom..bottom+length-1 joined by identities, on window [lo, hi]."""
    if not 1 <= length <= N:
        raise ValueError(f"segment length must lie in 1..{N}")
    dims = [1 if bottom <= n < bottom + length else 0 for n in range(lo, hi + 1)]
    diff = {n: FMatrix.identity(1, p) for n in range(bottom + 1, bottom + length)
            if lo < n <= hi}
    return NComplex(N, p, lo, hi, dims, diff)


def segment_homology(N: int, bottom: int, length: int, p_index: int, n: int) -> int:
    """Closed form for _pH_n of a segment: the indecomposables' homology."""
    top = bottom + length - 1
    if not bottom <= n <= top:
        return 0
    return int(n - bottom < p_index and n + N - p_index > top)


def direct_sum(parts: list[NComplex]) -> NComplex:
    c0 = parts[0]
    lo, hi = min(c.lo for c in parts), max(c.hi for c in parts)
    dims = [sum(c.dim(n) for c in parts) for n in range(lo, hi + 1)]
    diff = {n: block_diag([c.d(n) for c in parts], c0.p) for n in range(lo + 1, hi + 1)}
    return NComplex(c0.N, c0.p, lo, hi, dims, diff,
                    bounded_below=all(c.bounded_below for c in parts),
                    bounded_above=all(c.bounded_above for c in parts),
                    context=c0.context)


def conjugate(c: NComplex, rng) -> tuple[NComplex, dict[int, FMatrix]]:
    """Change basis by random g_n; returns the new complex and the g_n (old -> new)."""
    g = {n: FMatrix.random_invertible(c.dim(n), c.p, rng) for n in range(c.lo, c.hi + 1)}
    ginv = {n: solve(m, FMatrix.identity(m.rows, c.p)) for n, m in g.items()}
    diff = {n: g[n - 1] @ c.d(n) @ ginv[n] for n in range(c.lo + 1, c.hi + 1)}
    out = NComplex(c.N, c.p, c.lo, c.hi, c.dims, diff, bounded_below=c.bounded_below,
                   bounded_above=c.bounded_above, context=c.context)
    return out, g


def random_classical(p: int, hi: int, rng, max_dim: int = 3) -> NComplex:
    """Random bounded chain complex on [0, hi] (sum of length-1/2 segments, conjugated)."""
    parts = []
    for _ in range(int(rng.integers(1, max_dim + 1))):
        b = int(rng.integers(0, hi + 1))
        length = int(rng.integers(1, 3)) if b < hi else 1
        parts.append(segment(2, p, b, length, 0, hi))
    return conjugate(direct_sum(parts), rng)[0]


def random_ncomplex(N: int, p: int, rng, hi: int = 6, n_segments: int = 3,
                    classical: bool = True) -> NComplex:
    """Expansion of a random classical complex plus random segments, conjugated."""
    parts = []
    if classical:
        top = max(0, (2 * hi) // N - 1)
        parts.append(expand_complex(random_classical(p, top, rng, max_dim=2), N))
        hi = max(hi, parts[0].hi)
    for _ in range(n_segments):
        b = int(rng.integers(0, hi + 1))
        length = int(rng.integers(1, min(N, hi - b + 1) + 1))
        parts.append(segment(N, p, b, length, 0, hi))
    return conjugate(direct_sum(parts), rng)[0]


def closed_subcomplex(c: NComplex, rng, density: float = 0.5) -> dict[int, Subspace]:
    """Random subspaces S_n with d(S_n) inside S_{n-1}: span of random vectors and their d-images."""
    gens = {n: [] for n in range(c.lo, c.hi + 1)}
    for n in range(c.lo, c.hi + 1):
        k = int(rng.binomial(c.dim(n), density)) if c.dim(n) else 0
        if k:
            gens[n].append(FMatrix.random(c.dim(n), k, c.p, rng))
    subs = {}
    for n in range(c.hi, c.lo - 1, -1):
        cols = [g for g in gens[n]]
        if n + 1 in subs and subs[n + 1].dim:
            cols.append(c.d(n + 1) @ subs[n + 1].basis)
        if cols:
            m = cols[0]
            for extra in cols[1:]:
                m = m.hstack(extra)
            subs[n] = image(m)
        else:
            subs[n] = Subspace.zero(c.dim(n), c.p)
    return subs


def ses_from_subcomplex(c: NComplex, subs: dict[int, Subspace]) -> ShortExactSequence:
    """0 -> S -> C -> C/S -> 0 with S given degreewise."""
    p = c.p
    lo, hi = c.lo, c.hi
    basis = {n: subs[n].basis for n in range(lo, hi + 1)}
    quo = {n: Quotient(subs[n], Subspace.full(c.dim(n), p)) for n in range(lo, hi + 1)}
    sub_diff = {n: solve(basis[n - 1], c.d(n) @ basis[n]) for n in range(lo + 1, hi + 1)}
    quo_diff = {n: quo[n - 1].coords(c.d(n) @ quo[n].reps) for n in range(lo + 1, hi + 1)}
    flags = dict(bounded_below=c.bounded_below, bounded_above=c.bounded_above, context=c.context)
    left = NComplex(c.N, p, lo, hi, [subs[n].dim for n in range(lo, hi + 1)], sub_diff, **flags)
    right = NComplex(c.N, p, lo, hi, [quo[n].dim for n in range(lo, hi + 1)], quo_diff, **flags)
    u = NComplexMorphism(left, c, basis)
    v = NComplexMorphism(c, right, {n: quo[n].coords(FMatrix.identity(c.dim(n), p))
                                    for n in range(lo, hi + 1)})
    return ShortExactSequence(u, v)


def random_ses(N: int, p: int, rng, hi: int = 6) -> ShortExactSequence:
    c = random_ncomplex(N, p, rng, hi=hi)
    return ses_from_subcomplex(c, closed_subcomplex(c, rng))


def split_ses(a: NComplex, b: NComplex) -> ShortExactSequence:
    """a -> a (+) b -> b."""
    mid = direct_sum([a, b])
    p = a.p
    lo, hi = mid.lo, mid.hi
    u = {n: FMatrix.identity(a.dim(n), p).vstack(FMatrix.zeros(b.dim(n), a.dim(n), p))
         for n in range(lo, hi + 1)}
    v = {n: FMatrix.zeros(b.dim(n), a.dim(n), p).hstack(FMatrix.identity(b.dim(n), p))
         for n in range(lo, hi + 1)}
    return ShortExactSequence(NComplexMorphism(a, mid, u), NComplexMorphism(mid, b, v))


def random_homotopy_maps(c: NComplex, target: NComplex, rng) -> dict[int, FMatrix]:
    N = c.N
    return {n: FMatrix.random(target.dim(n + N - 1), c.dim(n), c.p, rng)
            for n in range(c.lo, c.hi + 1)}

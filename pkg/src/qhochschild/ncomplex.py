"""N-complexes over F_p and their homology.

An :class:`NComplex` is stored on a finite degree window ``[lo, hi]``.
Outside the window modules are zero.  The two flags ``bounded_below`` and
``bounded_above`` say whether that zero padding is genuine (the complex
really vanishes there) or a truncation; homology is only reported at
degrees whose defining span ``[n - p, n + N - p]`` avoids truncated ends.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .errors import (InvalidResolution, NilpotencyFailure, NoLift, NoSolution,
                     NotAComplex, NotContained, NotExact, OutOfRange,
                     ShapeMismatch, UnsafeDegree)
from .exactla import FMatrix, Quotient, Subspace, image, kernel, solve
from .qcalc import QContext, classical_context


@dataclass(frozen=True)
class HomologySpace:
    """ker(d^p) / im(d^{N-p}) in one degree, with canonical representatives."""

    p_index: int
    degree: int
    ker: Subspace
    im: Subspace
    quotient: Quotient

    @property
    def dim(self) -> int:
        return self.quotient.dim

    @property
    def reps(self) -> FMatrix:
        return self.quotient.reps

    def coords(self, vectors: FMatrix) -> FMatrix:
        return self.quotient.coords(vectors)


class NComplex:
    def __init__(self, N: int, p: int, lo: int, hi: int, dims, diff=None, *,
                 bounded_below: bool = True, bounded_above: bool = True,
                 context: QContext | None = None, validate: bool = True):
        if N < 2:
            raise OutOfRange(f"N must be >= 2, got {N}")
        if hi < lo - 1:
            raise OutOfRange(f"empty window [{lo}, {hi}]")
        dims = list(dims)
        if len(dims) != hi - lo + 1:
            raise ShapeMismatch(f"{len(dims)} dimensions for window [{lo}, {hi}]")
        self.N = N
        self.p = p
        self.lo = lo
        self.hi = hi
        self.dims = dims
        self.bounded_below = bounded_below
        self.bounded_above = bounded_above
        self.context = context
        self.diff: dict[int, FMatrix] = {}
        for n, m in (diff or {}).items():
            n = int(n)
            if not lo < n <= hi:
                if m.rows == 0 or m.is_zero():
                    continue
                raise ShapeMismatch(f"differential at degree {n} outside the window")
            if m.shape != (self.dim(n - 1), self.dim(n)):
                raise ShapeMismatch(
                    f"d_{n} has shape {m.shape}, expected {(self.dim(n - 1), self.dim(n))}")
            if m.p != p:
                raise ShapeMismatch(f"d_{n} is over F_{m.p}, complex over F_{p}")
            self.diff[n] = m
        self._pow: dict[tuple[int, int], FMatrix] = {}
        self._hom: dict[tuple[int, int], HomologySpace] = {}
        if validate:
            self.validate()

    @classmethod
    def from_context(cls, ctx: QContext, lo, hi, dims, diff=None, **kw):
        return cls(ctx.N, ctx.p, lo, hi, dims, diff, context=ctx, **kw)

    def __repr__(self):
        ends = ("" if self.bounded_below else "~") + f"[{self.lo},{self.hi}]" + ("" if self.bounded_above else "~")
        return f"NComplex(N={self.N}, F_{self.p}, {ends}, dims={self.dims})"

    def dim(self, n: int) -> int:
        if self.lo <= n <= self.hi:
            return self.dims[n - self.lo]
        return 0

    def d(self, n: int) -> FMatrix:
        """d_n : C_n -> C_{n-1}."""
        m = self.diff.get(n)
        if m is None:
            m = FMatrix.zeros(self.dim(n - 1), self.dim(n), self.p)
        return m

    def power(self, n: int, k: int) -> FMatrix:
        """d^k : C_n -> C_{n-k}."""
        if k < 0:
            raise OutOfRange(f"negative power {k}")
        key = (n, k)
        if key not in self._pow:
            if k == 0:
                self._pow[key] = FMatrix.identity(self.dim(n), self.p)
            else:
                self._pow[key] = self.d(n - k + 1) @ self.power(n, k - 1)
        return self._pow[key]

    def validate(self) -> None:
        for n in range(self.lo + self.N, self.hi + 1):
            if not self.power(n, self.N).is_zero():
                raise NilpotencyFailure(
                    f"d^{self.N} != 0 on C_{n} -> C_{n - self.N}", degree=n)

    # safety of homology degrees
    def is_safe(self, p_index: int, n: int) -> bool:
        if not 1 <= p_index <= self.N - 1:
            return False
        below = n - p_index >= self.lo or self.bounded_below
        above = n + self.N - p_index <= self.hi or self.bounded_above
        return below and above

    def safe_degrees(self, p_index: int) -> list[int]:
        return [n for n in range(self.lo, self.hi + 1) if self.is_safe(p_index, n)]

    def homology(self, p_index: int, n: int) -> HomologySpace:
        if not 1 <= p_index <= self.N - 1:
            raise OutOfRange(f"p must lie in 1..{self.N - 1}, got {p_index}")
        if not self.is_safe(p_index, n):
            raise UnsafeDegree(f"_{p_index}H_{n} depends on truncated degrees of {self!r}")
        key = (p_index, n)
        if key not in self._hom:
            ker = kernel(self.power(n, p_index))
            im = image(self.power(n + self.N - p_index, self.N - p_index))
            try:
                quo = Quotient(im, ker)
            except NotContained as exc:
                raise NotAComplex(
                    f"im d^{self.N - p_index} not inside ker d^{p_index} at degree {n}",
                    degree=n) from exc
            self._hom[key] = HomologySpace(p_index, n, ker, im, quo)
        return self._hom[key]

    def homology_dim(self, p_index: int, n: int) -> int:
        return self.homology(p_index, n).dim

    def homology_table(self, p_indices=None) -> dict[tuple[int, int], int]:
        ps = p_indices or range(1, self.N)
        return {(p, n): self.homology_dim(p, n) for p in ps for n in self.safe_degrees(p)}

    def truncated(self, hi: int) -> NComplex:
        """Keep degrees <= hi; the cut is a truncation unless nothing lies above."""
        hi = min(hi, self.hi)
        above = self.bounded_above and all(d == 0 for d in self.dims[hi - self.lo + 1:])
        return NComplex(self.N, self.p, self.lo, hi, self.dims[: hi - self.lo + 1],
                        {n: m for n, m in self.diff.items() if n <= hi},
                        bounded_below=self.bounded_below, bounded_above=above,
                        context=self.context, validate=False)

    def shifted(self, s: int) -> NComplex:
        """Same complex with C'_n = C_{n-s}."""
        return NComplex(self.N, self.p, self.lo + s, self.hi + s, self.dims,
                        {n + s: m for n, m in self.diff.items()},
                        bounded_below=self.bounded_below, bounded_above=self.bounded_above,
                        context=self.context, validate=False)


def diff_power(c: NComplex, n: int, k: int) -> FMatrix:
    return c.power(n, k)


def homology_dim(c: NComplex, p_index: int, n: int) -> int:
    return c.homology_dim(p_index, n)


def is_acyclic(c: NComplex, p_index: int) -> bool:
    degrees = c.safe_degrees(p_index)
    if not degrees:
        raise UnsafeDegree(f"no safe degree for p={p_index} on {c!r}")
    return all(c.homology_dim(p_index, n) == 0 for n in degrees)


def kapranov_check(c: NComplex) -> bool:
    """(some p acyclic) <=> (every p acyclic) on this instance."""
    flags = [is_acyclic(c, p) for p in range(1, c.N)]
    return any(flags) == all(flags)


def homology_map(c: NComplex, n: int, p_src: int, k: int, p_tgt: int) -> FMatrix:
    """Map _{p_src}H_n -> _{p_tgt}H_{n-k} induced by d^k (needs p_tgt + k >= p_src)."""
    if p_tgt + k < p_src:
        raise OutOfRange(f"d^{k} does not map _{p_src}H into _{p_tgt}H")
    src = c.homology(p_src, n)
    tgt = c.homology(p_tgt, n - k)
    return tgt.coords(c.power(n, k) @ src.reps)


def istar_map(c: NComplex, p_index: int, n: int) -> FMatrix:
    if c.N < 3 or not 1 <= p_index <= c.N - 2:
        raise OutOfRange(f"i_* needs N >= 3 and 1 <= p <= N-2 (p={p_index}, N={c.N})")
    return homology_map(c, n, p_index, 0, p_index + 1)


def dstar_map(c: NComplex, p_index: int, n: int) -> FMatrix:
    if c.N < 3 or not 2 <= p_index <= c.N - 1:
        raise OutOfRange(f"d_* needs N >= 3 and 2 <= p <= N-1 (p={p_index}, N={c.N})")
    return homology_map(c, n, p_index, 1, p_index - 1)


# ---------------------------------------------------------------------------
# morphisms and homotopies

class NComplexMorphism:
    def __init__(self, source: NComplex, target: NComplex, maps: dict[int, FMatrix],
                 validate: bool = True):
        if source.N != target.N or source.p != target.p:
            raise ShapeMismatch("morphism between complexes of different (N, p)")
        self.source = source
        self.target = target
        self.maps = {}
        for n, m in maps.items():
            if m.shape != (target.dim(n), source.dim(n)):
                raise ShapeMismatch(f"f_{n} has shape {m.shape}, expected "
                                    f"{(target.dim(n), source.dim(n))}")
            self.maps[n] = m
        if validate:
            self.validate()

    @classmethod
    def identity(cls, c: NComplex) -> NComplexMorphism:
        return cls(c, c, {n: FMatrix.identity(c.dim(n), c.p) for n in range(c.lo, c.hi + 1)},
                   validate=False)

    @classmethod
    def zero(cls, s: NComplex, t: NComplex) -> NComplexMorphism:
        lo, hi = min(s.lo, t.lo), max(s.hi, t.hi)
        return cls(s, t, {n: FMatrix.zeros(t.dim(n), s.dim(n), s.p) for n in range(lo, hi + 1)},
                   validate=False)

    def at(self, n: int) -> FMatrix:
        m = self.maps.get(n)
        if m is None:
            m = FMatrix.zeros(self.target.dim(n), self.source.dim(n), self.source.p)
        return m

    def __add__(self, other):
        keys = set(self.maps) | set(other.maps)
        return NComplexMorphism(self.source, self.target,
                                {n: self.at(n) + other.at(n) for n in keys}, validate=False)

    def __sub__(self, other):
        keys = set(self.maps) | set(other.maps)
        return NComplexMorphism(self.source, self.target,
                                {n: self.at(n) - other.at(n) for n in keys}, validate=False)

    def commutes_at(self, n: int) -> bool:
        return self.target.d(n) @ self.at(n) == self.at(n - 1) @ self.source.d(n)

    def validate(self) -> None:
        for n in sorted(self.maps):
            if n - 1 in self.maps or self.source.dim(n - 1) == 0 or self.target.dim(n - 1) == 0:
                if not self.commutes_at(n):
                    raise ShapeMismatch(f"d' f != f d at degree {n}")

    def induced(self, p_index: int, n: int) -> FMatrix:
        src = self.source.homology(p_index, n)
        tgt = self.target.homology(p_index, n)
        return tgt.coords(self.at(n) @ src.reps)


@dataclass
class Homotopy:
    """h_n : C_n -> C'_{n+N-1} witnessing f ~ g."""

    f: NComplexMorphism
    g: NComplexMorphism
    maps: dict[int, FMatrix] = field(default_factory=dict)

    def at(self, n: int) -> FMatrix:
        m = self.maps.get(n)
        if m is None:
            N = self.f.source.N
            m = FMatrix.zeros(self.f.target.dim(n + N - 1), self.f.source.dim(n), self.f.source.p)
        return m

    def rhs(self, n: int) -> FMatrix:
        """sum_i d'^{N-1-i} h d^i evaluated on C_n."""
        src, tgt = self.f.source, self.f.target
        N = src.N
        total = FMatrix.zeros(tgt.dim(n), src.dim(n), src.p)
        for i in range(N):
            m = n - i
            total = total + tgt.power(m + N - 1, N - 1 - i) @ self.at(m) @ src.power(n, i)
        return total

    def checkable_degrees(self) -> list[int]:
        src = self.f.source
        N = src.N
        out = []
        for n in range(src.lo, src.hi + 1):
            if all(n - i in self.maps or src.dim(n - i) == 0 for i in range(N)):
                out.append(n)
        return out


def check_homotopy(h: Homotopy, degrees=None) -> bool:
    """Whether f - g = sum_i d'^{N-1-i} h d^i at every checkable degree."""
    if h.f.source is not h.g.source or h.f.target is not h.g.target:
        raise ShapeMismatch("homotopy between morphisms with different ends")
    degrees = h.checkable_degrees() if degrees is None else degrees
    return all(h.f.at(n) - h.g.at(n) == h.rhs(n) for n in degrees)


def induced_equal(f: NComplexMorphism, g: NComplexMorphism, p_index: int, n: int) -> bool:
    return f.induced(p_index, n) == g.induced(p_index, n)


def perturb_by_homotopy(f: NComplexMorphism, hmaps: dict[int, FMatrix]) -> NComplexMorphism:
    """f + sum_i d'^{N-1-i} h d^i, which is homotopic to f by construction."""
    h = Homotopy(f, NComplexMorphism.zero(f.source, f.target), hmaps)
    src = f.source
    return NComplexMorphism(src, f.target,
                            {n: f.at(n) + h.rhs(n) for n in range(src.lo, src.hi + 1)})


# ---------------------------------------------------------------------------
# long exact sequences

@dataclass
class SequenceReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    def __bool__(self):
        return self.ok


def _periodic_exactness(maps, degrees, N) -> SequenceReport:
    """Exactness of a six-term sequence of period N in degree.

    ``maps`` lists six callables ``n -> (src_node, tgt_node, builder)``;
    ``builder()`` returns the matrix or raises UnsafeDegree.  Node exactness
    is checked at the target of each map (joined with the next map, the
    sixth map joining the first one at degree n - N).
    """
    checked = 0
    failures = []
    for n in degrees:
        chain = [m(n) for m in maps] + [maps[0](n - N)]
        for j in range(6):
            _, node, f_build = chain[j]
            node2, _, g_build = chain[j + 1]
            assert node == node2, (node, node2)
            try:
                f = f_build()
                g = g_build()
            except UnsafeDegree:
                continue
            checked += 1
            if not (g @ f).is_zero() or image(f) != kernel(g):
                failures.append((n, j, node))
    return SequenceReport(not failures, checked, failures)


def hexagon_check(c: NComplex, p_index: int, r: int) -> SequenceReport:
    N = c.N
    p = p_index
    if not (r > 0 and p > 0 and p + r < N):
        raise OutOfRange(f"hexagon needs p, r > 0 and p + r < N (p={p}, r={r}, N={N})")

    def hm(ps, k, pt):
        def spec(n):
            return ((ps, n), (pt, n - k), lambda: homology_map(c, n, ps, k, pt))
        return spec

    def shifted(spec, s):
        return lambda n: spec(n - s)

    maps = [
        hm(p, 0, p + r),
        hm(p + r, p, r),
        shifted(hm(r, 0, N - p), p),
        shifted(hm(N - p, r, N - p - r), p),
        shifted(hm(N - p - r, 0, N - r), p + r),
        shifted(hm(N - r, N - p - r, p), p + r),
    ]
    rep = _periodic_exactness(maps, range(c.lo - N, c.hi + 2 * N), N)
    if rep.checked == 0:
        raise UnsafeDegree(f"window of {c!r} too small for the hexagon")
    return rep


@dataclass
class ShortExactSequence:
    u: NComplexMorphism
    v: NComplexMorphism

    def __post_init__(self):
        if self.u.target is not self.v.source:
            raise NotExact("u and v are not composable")
        mid = self.u.target
        for n in range(mid.lo, mid.hi + 1):
            un, vn = self.u.at(n), self.v.at(n)
            if un.rank() != un.cols:
                raise NotExact(f"u is not injective in degree {n}")
            if vn.rank() != vn.rows:
                raise NotExact(f"v is not surjective in degree {n}")
            if image(un) != kernel(vn):
                raise NotExact(f"im u != ker v in degree {n}")


def connecting_map(s: ShortExactSequence, k: int, n: int) -> FMatrix:
    """_kH_n(C'') -> _{N-k}H_{n-k}(C'): lift along v, apply d^k, pull back along u."""
    left, mid, right = s.u.source, s.u.target, s.v.target
    N = mid.N
    src = right.homology(k, n)
    tgt = left.homology(N - k, n - k)
    lifted = solve(s.v.at(n), src.reps)
    pushed = mid.power(n, k) @ lifted
    try:
        pulled = solve(s.u.at(n - k), pushed)
    except NoSolution as exc:
        raise NotExact(f"d^{k} of a lift leaves im(u) in degree {n - k}") from exc
    return tgt.coords(pulled)


def les_check(s: ShortExactSequence, p_index: int) -> SequenceReport:
    left, mid, right = s.u.source, s.u.target, s.v.target
    N = mid.N
    p = p_index
    if not 1 <= p <= N - 1:
        raise OutOfRange(f"p must lie in 1..{N - 1}")

    def along(mor, c_src, c_tgt, pk, shift):
        def spec(n):
            m = n - shift
            return ((id(c_src), pk, m), (id(c_tgt), pk, m), lambda: mor.induced(pk, m))
        return spec

    def delta(k, shift):
        def spec(n):
            m = n - shift
            return ((id(right), k, m), (id(left), N - k, m - k), lambda: connecting_map(s, k, m))
        return spec

    maps = [
        along(s.u, left, mid, p, 0),
        along(s.v, mid, right, p, 0),
        delta(p, 0),
        along(s.u, left, mid, N - p, p),
        along(s.v, mid, right, N - p, p),
        delta(N - p, p),
    ]
    lo = min(c.lo for c in (left, mid, right))
    hi = max(c.hi for c in (left, mid, right))
    rep = _periodic_exactness(maps, range(lo - N, hi + 2 * N), N)
    if rep.checked == 0:
        raise UnsafeDegree("window too small for the long exact sequence")
    rep.notes["connecting_degrees"] = (-p, -(N - p))
    return rep


# ---------------------------------------------------------------------------
# resolutions, expansion and contraction

@dataclass
class NResolution:
    """Positive N-complex P with augmentation eps : P_0 -> M.

    ``actions`` optionally records a module structure: for each level n a
    list of matrices, one per algebra basis element.
    """

    complex: NComplex
    augmentation: FMatrix
    actions: dict[int, list[FMatrix]] | None = None
    target_actions: list[FMatrix] | None = None
    side: str = "left"

    def __post_init__(self):
        if self.complex.lo != 0:
            raise InvalidResolution("resolutions are positive complexes starting in degree 0")
        if self.augmentation.cols != self.complex.dim(0):
            raise InvalidResolution("augmentation does not start at P_0")
        self._aug = None

    @property
    def N(self):
        return self.complex.N

    @property
    def target_dim(self) -> int:
        return self.augmentation.rows

    def augmented(self) -> NComplex:
        if self._aug is None:
            c = self.complex
            diff = dict(c.diff)
            diff[0] = self.augmentation
            self._aug = NComplex(c.N, c.p, -1, c.hi, [self.target_dim] + c.dims, diff,
                                 bounded_below=True, bounded_above=c.bounded_above,
                                 context=c.context)
        return self._aug

    def is_exact(self) -> bool:
        aug = self.augmented()
        return all(is_acyclic(aug, p) for p in range(1, self.N))

    def validate(self) -> None:
        if not self.is_exact():
            raise InvalidResolution("augmented complex is not acyclic")


def _expanded_layout(top: int, N: int) -> list[tuple[int, int]]:
    """(classical degree, copy index) for N-degrees 0, 1, ... covering Q_0..Q_top."""
    layout = []
    for m in range(top + 1):
        copies = N - 1 if m % 2 == 0 else 1
        layout.extend((m, j) for j in range(copies))
    return layout


def expand_complex(q: NComplex, N: int, context: QContext | None = None) -> NComplex:
    """Insert N-2 identities after every even-degree module of a chain complex."""
    if q.N != 2 or q.lo != 0:
        raise InvalidResolution("expansion takes a chain complex (N=2) starting in degree 0")
    layout = _expanded_layout(q.hi, N)
    dims = [q.dim(m) for m, _ in layout]
    diff = {}
    for t in range(1, len(layout)):
        m, j = layout[t]
        if m % 2 == 0 and j > 0:
            diff[t] = FMatrix.identity(q.dim(m), q.p)
        else:
            diff[t] = q.d(m)
    return NComplex(N, q.p, 0, len(layout) - 1, dims, diff,
                    bounded_below=True, bounded_above=q.bounded_above, context=context)


def expand(r: NResolution, N: int, context: QContext | None = None) -> NResolution:
    c = expand_complex(r.complex, N, context)
    actions = None
    if r.actions is not None:
        layout = _expanded_layout(r.complex.hi, N)
        actions = {t: r.actions[m] for t, (m, _) in enumerate(layout)}
    return NResolution(c, r.augmentation, actions, r.target_actions, r.side)


def _contracted_degrees(N: int, p_index: int, hi: int) -> list[int]:
    out = []
    m = 0
    while True:
        deg = (m // 2) * N + (p_index - 1 if m % 2 == 0 else N - 1)
        if deg > hi:
            return out
        out.append(deg)
        m += 1


def contract_complex(c: NComplex, p_index: int) -> NComplex:
    """Delta_p of a positive N-complex: alternating runs d^{N-p}, d^p."""
    if not 1 <= p_index <= c.N - 1:
        raise OutOfRange(f"p must lie in 1..{c.N - 1}")
    if c.lo != 0:
        raise InvalidResolution("contraction takes a positive complex starting in degree 0")
    degs = _contracted_degrees(c.N, p_index, c.hi)
    diff = {m: c.power(degs[m], degs[m] - degs[m - 1]) for m in range(1, len(degs))}
    ctx = classical_context(c.p)
    return NComplex(2, c.p, 0, len(degs) - 1, [c.dim(t) for t in degs], diff,
                    bounded_above=c.bounded_above, context=ctx)


def contract(r: NResolution, p_index: int) -> NResolution:
    c = contract_complex(r.complex, p_index)
    eps = r.augmentation @ r.complex.power(p_index - 1, p_index - 1)
    actions = None
    if r.actions is not None:
        degs = _contracted_degrees(r.N, p_index, r.complex.hi)
        actions = {m: r.actions[t] for m, t in enumerate(degs)}
    return NResolution(c, eps, actions, r.target_actions, r.side)


def contraction_morphism(r: NResolution, p_index: int) -> NComplexMorphism:
    """The morphism Delta_{p+1} P -> Delta_p P (d on even degrees, id on odd ones)."""
    N = r.N
    if not 1 <= p_index <= N - 2:
        raise OutOfRange(f"needs 1 <= p <= N-2 (p={p_index}, N={N})")
    src = contract(r, p_index + 1).augmented()
    tgt = contract(r, p_index).augmented()
    maps = {-1: FMatrix.identity(r.target_dim, r.complex.p)}
    for m in range(0, src.hi + 1):
        if m > tgt.hi:
            break
        if m % 2 == 0:
            deg = (m // 2) * N + p_index
            maps[m] = r.complex.d(deg)
        else:
            maps[m] = FMatrix.identity(src.dim(m), r.complex.p)
    return NComplexMorphism(src, tgt, maps)


def comparison_lift(u: FMatrix, r: NResolution, r2: NResolution, rng=None) -> NComplexMorphism:
    """Chain map f : P -> Q over u : M -> M' (as a morphism of augmented complexes).

    Each f_{n} solves d' f_n = f_{n-1} d with f_{-1} = u; with ``rng`` a
    random element of ker d' is added so that independent lifts differ.
    """
    src, tgt = r.augmented(), r2.augmented()
    if u.shape != (r2.target_dim, r.target_dim):
        raise ShapeMismatch("u must map the resolved module of r to that of r2")
    maps = {-1: u}
    for n in range(0, min(src.hi, tgt.hi) + 1):
        rhs = maps[n - 1] @ src.d(n)
        try:
            x = solve(tgt.d(n), rhs)
        except NoSolution as exc:
            raise NoLift(f"cannot lift in degree {n}: target is not an N-resolution") from exc
        if rng is not None:
            kb = kernel(tgt.d(n)).basis
            if kb.cols:
                x = x + kb @ FMatrix.random(kb.cols, x.cols, x.p, rng)
        maps[n] = x
    return NComplexMorphism(src, tgt, maps)


def unique_up_to_homotopy(f: NComplexMorphism, g: NComplexMorphism) -> Homotopy:
    """Solve for h with f - g = sum_i d'^{N-1-i} h d^i on the unaugmented degrees."""
    src, tgt = f.source, f.target
    N = src.N
    if src.lo != -1:
        raise InvalidResolution("expects morphisms of augmented resolutions")
    hmaps: dict[int, FMatrix] = {}
    h = Homotopy(f, g, hmaps)
    for n in range(0, src.hi + 1):
        if n + N - 1 > tgt.hi:
            break
        partial = FMatrix.zeros(tgt.dim(n), src.dim(n), src.p)
        for i in range(1, N):
            m = n - i
            if m < 0:
                continue
            partial = partial + tgt.power(m + N - 1, N - 1 - i) @ h.at(m) @ src.power(n, i)
        F = f.at(n) - g.at(n) - partial
        try:
            hmaps[n] = solve(tgt.power(n + N - 1, N - 1), F)
        except NoSolution as exc:
            raise NoLift(f"no homotopy component in degree {n}") from exc
    return h

"""Dense exact linear algebra over F_p.

Matrices are int64 numpy arrays with entries in [0, p).  Row reduction is
the usual Gauss-Jordan sweep; every subspace is stored by the reduced row
echelon form of a spanning set, which is canonical, so subspace equality is
array equality.  Moduli must stay below 2**31 so that products of two
residues fit in int64.
"""
from __future__ import annotations

import numpy as np

from .errors import ModulusMismatch, NoSolution, NotContained, ShapeMismatch

_INT = np.int64
_MAX_P = 2**31
_EXACT_FLOAT = 2**53


def mulmod(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """(a @ b) mod p.  Float64 BLAS is exact while k (p-1)^2 < 2^53; larger k is chunked."""
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    k = a.shape[1]
    if k == 0:
        return np.zeros((a.shape[0], b.shape[1]), dtype=_INT)
    if (p - 1) ** 2 >= _EXACT_FLOAT:
        return _mulmod_int(a, b, p)
    chunk = _EXACT_FLOAT // ((p - 1) ** 2 or 1)
    af, bf = a.astype(np.float64), b.astype(np.float64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=_INT)
    for s in range(0, k, chunk):
        part = af[:, s:s + chunk] @ bf[s:s + chunk]
        out = (out + np.rint(part).astype(_INT) % p) % p
    return out


def _mulmod_int(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros((a.shape[0], b.shape[1]), dtype=_INT)
    for s in range(a.shape[1]):
        out = (out + np.outer(a[:, s], b[s]) % p) % p
    return out


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``a`` (copied) and its pivot columns."""
    m = np.array(a, dtype=_INT, copy=True) % p
    rows, cols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            m[[r, piv]] = m[[piv, r]]
        inv = pow(int(m[r, c]), -1, p)
        if inv != 1:
            m[r] = (m[r] * inv) % p
        col = m[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            m[hit] = (m[hit] - np.outer(col[hit], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots


class FMatrix:
    """Immutable matrix over F_p."""

    __slots__ = ("a", "p")

    def __init__(self, a, p: int):
        if not 2 <= p < _MAX_P:
            raise ModulusMismatch(f"modulus {p} out of supported range")
        arr = np.asarray(a)
        if arr.dtype == object or arr.dtype.kind not in "iu":
            arr = np.array([int(x) % p for x in arr.ravel()], dtype=_INT).reshape(arr.shape)
        arr = np.asarray(arr, dtype=_INT) % p
        if arr.ndim != 2:
            raise ShapeMismatch(f"FMatrix needs a 2-d array, got shape {arr.shape}")
        arr.setflags(write=False)
        self.a = arr
        self.p = p

    # construction
    @classmethod
    def zeros(cls, rows, cols, p):
        return cls(np.zeros((rows, cols), dtype=_INT), p)

    @classmethod
    def identity(cls, n, p):
        return cls(np.eye(n, dtype=_INT), p)

    @classmethod
    def from_entries(cls, rows, cols, entries, p):
        if len(entries) != rows * cols:
            raise ShapeMismatch(f"{len(entries)} entries for a {rows}x{cols} matrix")
        return cls(np.array([int(x) for x in entries], dtype=_INT).reshape(rows, cols), p)

    @classmethod
    def random(cls, rows, cols, p, rng):
        return cls(rng.integers(0, p, size=(rows, cols), dtype=_INT), p)

    @classmethod
    def random_invertible(cls, n, p, rng):
        while True:
            m = cls.random(n, n, p, rng)
            if m.rank() == n:
                return m

    # shape
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self):
        return self.a.shape

    @property
    def entries(self) -> list[int]:
        return [int(x) for x in self.a.ravel()]

    @property
    def T(self) -> FMatrix:
        return FMatrix(self.a.T, self.p)

    def _check(self, other):
        if not isinstance(other, FMatrix):
            return NotImplemented
        if other.p != self.p:
            raise ModulusMismatch(f"moduli {self.p} and {other.p} differ")
        return None

    # arithmetic
    def __matmul__(self, other):
        self._check(other)
        return FMatrix(mulmod(self.a, other.a, self.p), self.p)

    def __add__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot add {self.shape} and {other.shape}")
        return FMatrix(self.a + other.a, self.p)

    def __sub__(self, other):
        self._check(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"cannot subtract {other.shape} from {self.shape}")
        return FMatrix(self.a - other.a, self.p)

    def __neg__(self):
        return FMatrix(-self.a, self.p)

    def scale(self, c: int) -> FMatrix:
        return FMatrix(self.a * (int(c) % self.p), self.p)

    def __rmul__(self, c):
        return self.scale(c)

    def __eq__(self, other):
        if not isinstance(other, FMatrix):
            return NotImplemented
        return self.p == other.p and self.shape == other.shape and np.array_equal(self.a, other.a)

    def __hash__(self):
        return hash((self.p, self.shape, self.a.tobytes()))

    def __repr__(self):
        return f"FMatrix({self.rows}x{self.cols} mod {self.p})"

    def is_zero(self) -> bool:
        return not self.a.any()

    def rank(self) -> int:
        return len(rref(self.a, self.p)[1])

    def hstack(self, other) -> FMatrix:
        return FMatrix(np.hstack([self.a, other.a]), self.p)

    def vstack(self, other) -> FMatrix:
        return FMatrix(np.vstack([self.a, other.a]), self.p)

    def kron(self, other) -> FMatrix:
        return FMatrix(np.kron(self.a, other.a), self.p)

    def col(self, j) -> np.ndarray:
        return self.a[:, j]


def block_diag(mats: list[FMatrix], p: int) -> FMatrix:
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = np.zeros((rows, cols), dtype=_INT)
    r = c = 0
    for m in mats:
        out[r:r + m.rows, c:c + m.cols] = m.a
        r += m.rows
        c += m.cols
    return FMatrix(out, p)


class Subspace:
    """Subspace of F_p^ambient_dim, stored as an RREF row basis."""

    __slots__ = ("ambient_dim", "p", "rows", "pivots")

    def __init__(self, ambient_dim: int, p: int, spanning_rows: np.ndarray | None = None):
        self.ambient_dim = ambient_dim
        self.p = p
        if spanning_rows is None or spanning_rows.size == 0:
            self.rows = np.zeros((0, ambient_dim), dtype=_INT)
            self.pivots = []
        else:
            self.rows, self.pivots = rref(spanning_rows, p)
        self.rows.setflags(write=False)

    @classmethod
    def full(cls, n, p):
        return cls(n, p, np.eye(n, dtype=_INT))

    @classmethod
    def zero(cls, n, p):
        return cls(n, p)

    @classmethod
    def span(cls, vectors: FMatrix) -> Subspace:
        """Span of the columns of ``vectors``."""
        return cls(vectors.rows, vectors.p, vectors.a.T)

    @property
    def dim(self) -> int:
        return self.rows.shape[0]

    @property
    def basis(self) -> FMatrix:
        """Canonical basis as columns (reduced column echelon form)."""
        return FMatrix(self.rows.T, self.p)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return (self.ambient_dim == other.ambient_dim and self.p == other.p
                and np.array_equal(self.rows, other.rows))

    def __repr__(self):
        return f"Subspace(dim={self.dim} in F_{self.p}^{self.ambient_dim})"

    def reduce(self, vectors: np.ndarray) -> np.ndarray:
        """Reduce row vectors modulo this subspace (zero at its pivots)."""
        if self.dim == 0:
            return np.asarray(vectors, dtype=_INT) % self.p
        v = np.asarray(vectors, dtype=_INT) % self.p
        return (v - mulmod(v[:, self.pivots], self.rows, self.p)) % self.p

    def contains(self, vectors: FMatrix) -> bool:
        """True when every column of ``vectors`` lies in the subspace."""
        if vectors.cols == 0:
            return True
        return not self.reduce(vectors.a.T).any()

    def contains_subspace(self, other: Subspace) -> bool:
        if other.dim == 0:
            return True
        return not self.reduce(other.rows).any()

    def coords(self, vectors: FMatrix) -> FMatrix:
        """Coordinates of member columns in the canonical basis."""
        if not self.contains(vectors):
            raise NotContained("vectors do not lie in the subspace")
        return FMatrix(vectors.a[self.pivots, :], self.p)


class Quotient:
    """outer / inner with a canonical complement basis.

    The complement is the RREF of the outer basis reduced modulo inner, so
    its pivots avoid inner's pivots; a member w of outer then has quotient
    coordinates ``reduce_inner(w)[complement pivots]``.
    """

    def __init__(self, inner: Subspace, outer: Subspace):
        if inner.ambient_dim != outer.ambient_dim:
            raise ShapeMismatch("quotient of subspaces in different ambient spaces")
        if not outer.contains_subspace(inner):
            raise NotContained(f"{inner} is not contained in {outer}")
        self.inner = inner
        self.outer = outer
        self.p = outer.p
        self.complement = Subspace(outer.ambient_dim, outer.p, inner.reduce(outer.rows))

    @property
    def dim(self) -> int:
        return self.complement.dim

    @property
    def reps(self) -> FMatrix:
        """Canonical representatives of a quotient basis (as columns)."""
        return self.complement.basis

    def coords(self, vectors: FMatrix, check: bool = True) -> FMatrix:
        if check and not self.outer.contains(vectors):
            raise NotContained("vectors are not in the numerator subspace")
        red = self.inner.reduce(vectors.a.T)
        return FMatrix(red[:, self.complement.pivots].T, self.p)


def matmul(a: FMatrix, b: FMatrix) -> FMatrix:
    return a @ b


def kernel(m: FMatrix) -> Subspace:
    r, piv = rref(m.a, m.p)
    n = m.cols
    pivset = set(piv)
    free = [c for c in range(n) if c not in pivset]
    vecs = np.zeros((len(free), n), dtype=_INT)
    for k, f in enumerate(free):
        vecs[k, f] = 1
        for j, c in enumerate(piv):
            vecs[k, c] = (-r[j, f]) % m.p
    return Subspace(n, m.p, vecs)


def image(m: FMatrix) -> Subspace:
    return Subspace(m.rows, m.p, m.a.T)


def quotient_dim(inner: Subspace, outer: Subspace) -> int:
    if inner.ambient_dim != outer.ambient_dim:
        raise ShapeMismatch("subspaces live in different ambient spaces")
    if not outer.contains_subspace(inner):
        raise NotContained(f"{inner} is not contained in {outer}")
    return outer.dim - inner.dim


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    return a == b


def rank(m: FMatrix) -> int:
    return m.rank()


def solve(a: FMatrix, b: FMatrix) -> FMatrix:
    """Canonical X with a @ X == b (free variables set to zero)."""
    if a.rows != b.rows:
        raise ShapeMismatch(f"solve: {a.shape} against right side {b.shape}")
    if a.p != b.p:
        raise ModulusMismatch("solve across different moduli")
    n = a.cols
    r, piv = rref(np.hstack([a.a, b.a]), a.p)
    x = np.zeros((n, b.cols), dtype=_INT)
    for j, c in enumerate(piv):
        if c >= n:
            raise NoSolution("right-hand side is not in the column space")
        x[c] = r[j, n:]
    return FMatrix(x, a.p)


def is_exact_at(f: FMatrix, g: FMatrix) -> bool:
    """im(f) == ker(g) for composable f: U -> V, g: V -> W."""
    return image(f) == kernel(g)

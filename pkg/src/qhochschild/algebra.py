"""Finite-dimensional algebras by structure constants, and their modules.

An algebra of dimension d over F_p is a d x d x d array c with
e_i e_j = sum_k c[i, j, k] e_k.  Tensor powers use lexicographic
row-major multi-indices, so x (x) y has flat index i * dim(y) + j.
Module actions are matrices acting on column vectors; a right module
stores rho(e_i) with m . e_i = rho(e_i) m.
"""
from __future__ import annotations

import numpy as np

from .errors import InvalidAlgebra, InvalidModule, NoSolution, ShapeMismatch
from .exactla import FMatrix, Quotient, Subspace, image, kernel, solve


class FinDimAlgebra:
    def __init__(self, p: int, structure, unit, *, name: str = "", validate: bool = True):
        c = np.asarray(structure, dtype=np.int64) % p
        if c.ndim != 3 or c.shape[0] != c.shape[1] or c.shape[1] != c.shape[2]:
            raise InvalidAlgebra(f"structure constants must be d x d x d, got {c.shape}")
        u = np.asarray(unit, dtype=np.int64) % p
        if u.shape != (c.shape[0],):
            raise InvalidAlgebra(f"unit has length {u.shape}, algebra dimension {c.shape[0]}")
        c.setflags(write=False)
        u.setflags(write=False)
        self.p = p
        self.c = c
        self.unit = u
        self.name = name
        if validate:
            self.validate()

    @property
    def dim(self) -> int:
        return self.c.shape[0]

    def __repr__(self):
        return f"FinDimAlgebra({self.name or 'dim ' + str(self.dim)} over F_{self.p})"

    def validate(self) -> None:
        p, c, d = self.p, self.c, self.dim
        left = np.einsum("ijm,mkn->ijkn", c, c) % p    # (e_i e_j) e_k
        right = np.einsum("jkm,imn->ijkn", c, c) % p   # e_i (e_j e_k)
        bad = np.argwhere((left != right).any(axis=3))
        if bad.size:
            i, j, k = (int(x) for x in bad[0])
            raise InvalidAlgebra(f"associativity fails on basis triple ({i}, {j}, {k})",
                                 triple=(i, j, k))
        eye = np.eye(d, dtype=np.int64)
        if not np.array_equal(np.einsum("i,ijk->jk", self.unit, c) % p, eye):
            raise InvalidAlgebra("unit is not a left unit")
        if not np.array_equal(np.einsum("j,ijk->ik", self.unit, c) % p, eye):
            raise InvalidAlgebra("unit is not a right unit")

    def mult(self) -> FMatrix:
        """mu : A (x) A -> A, mu[k, i*d + j] = c[i, j, k]."""
        d = self.dim
        return FMatrix(self.c.reshape(d * d, d).T, self.p)

    def left(self, i: int) -> FMatrix:
        """Matrix of x -> e_i x."""
        return FMatrix(self.c[i].T, self.p)

    def right(self, j: int) -> FMatrix:
        """Matrix of x -> x e_j."""
        return FMatrix(self.c[:, j, :].T, self.p)

    def unit_col(self) -> FMatrix:
        return FMatrix(self.unit.reshape(-1, 1), self.p)

    def product(self, x, y) -> np.ndarray:
        return np.einsum("i,j,ijk->k", np.asarray(x), np.asarray(y), self.c) % self.p

    def opposite(self) -> FinDimAlgebra:
        return FinDimAlgebra(self.p, self.c.transpose(1, 0, 2), self.unit,
                             name=f"{self.name}^op", validate=False)

    @classmethod
    def from_table(cls, p: int, table, unit, name: str = "") -> FinDimAlgebra:
        """table[i][j] is the coordinate vector of e_i e_j."""
        return cls(p, np.asarray(table, dtype=np.int64), unit, name=name)

    def as_dict(self) -> dict:
        return {"schema": "qhochschild.algebra/1", "p": self.p, "dim": self.dim,
                "unit": [int(x) for x in self.unit],
                "mult": [[[int(x) for x in self.c[i, j]] for j in range(self.dim)]
                         for i in range(self.dim)],
                "name": self.name}


def ground_field(p: int) -> FinDimAlgebra:
    return FinDimAlgebra(p, [[[1]]], [1], name=f"F_{p}")


def truncated_polynomial(p: int, m: int) -> FinDimAlgebra:
    """F_p[x]/(x^m) in the basis 1, x, ..., x^{m-1}."""
    c = np.zeros((m, m, m), dtype=np.int64)
    for i in range(m):
        for j in range(m - i):
            c[i, j, i + j] = 1
    unit = [1] + [0] * (m - 1)
    return FinDimAlgebra(p, c, unit, name=f"F_{p}[x]/(x^{m})")


def dual_numbers(p: int) -> FinDimAlgebra:
    return truncated_polynomial(p, 2)


def cyclic_group_algebra(p: int, order: int) -> FinDimAlgebra:
    c = np.zeros((order, order, order), dtype=np.int64)
    for i in range(order):
        for j in range(order):
            c[i, j, (i + j) % order] = 1
    return FinDimAlgebra(p, c, [1] + [0] * (order - 1), name=f"F_{p}[Z/{order}]")


def upper_triangular(p: int) -> FinDimAlgebra:
    """2x2 upper triangular matrices, basis E11, E12, E22 (noncommutative)."""
    c = np.zeros((3, 3, 3), dtype=np.int64)
    c[0, 0, 0] = 1   # E11 E11
    c[0, 1, 1] = 1   # E11 E12
    c[1, 2, 1] = 1   # E12 E22
    c[2, 2, 2] = 1   # E22 E22
    return FinDimAlgebra(p, c, [1, 0, 1], name=f"T_2(F_{p})")


def envelope(a: FinDimAlgebra) -> FinDimAlgebra:
    """A (x) A^op: (x (x) x')(y (x) y') = xy (x) y'x'."""
    d = a.dim
    cb = np.einsum("ijk,bal->iajbkl", a.c, a.c).reshape(d * d, d * d, d * d) % a.p
    unit = np.kron(a.unit, a.unit) % a.p
    return FinDimAlgebra(a.p, cb, unit, name=f"{a.name} (x) {a.name}^op")


def kron_all(mats: list[FMatrix], p: int) -> FMatrix:
    out = FMatrix.identity(1, p)
    for m in mats:
        out = out.kron(m)
    return out


# ---------------------------------------------------------------------------
# modules

class FDModule:
    def __init__(self, algebra: FinDimAlgebra, actions: list[FMatrix], side: str = "left",
                 *, name: str = "", validate: bool = True):
        if side not in ("left", "right"):
            raise InvalidModule(f"side must be 'left' or 'right', got {side!r}")
        if len(actions) != algebra.dim:
            raise InvalidModule(f"{len(actions)} action matrices for an algebra of dim {algebra.dim}")
        self.algebra = algebra
        self.actions = list(actions)
        self.side = side
        self.name = name
        self.dim = actions[0].rows if actions else 0
        for m in self.actions:
            if m.shape != (self.dim, self.dim) or m.p != algebra.p:
                raise InvalidModule("action matrices must be square of the module dimension")
        if validate:
            self.validate()

    @property
    def p(self) -> int:
        return self.algebra.p

    def __repr__(self):
        return f"FDModule({self.name or 'dim ' + str(self.dim)}, {self.side})"

    def act(self, x) -> FMatrix:
        """Action matrix of an algebra element given by coordinates."""
        out = FMatrix.zeros(self.dim, self.dim, self.p)
        for i, c in enumerate(np.asarray(x) % self.p):
            if c:
                out = out + self.actions[i].scale(int(c))
        return out

    def validate(self) -> None:
        a = self.algebra
        if self.act(a.unit) != FMatrix.identity(self.dim, self.p):
            raise InvalidModule("the unit does not act as the identity")
        for i in range(a.dim):
            for j in range(a.dim):
                prod = self.act(a.c[i, j])
                if self.side == "left":
                    ok = self.actions[i] @ self.actions[j] == prod
                else:
                    ok = self.actions[j] @ self.actions[i] == prod
                if not ok:
                    raise InvalidModule(f"action fails on basis pair ({i}, {j})")

    def as_dict(self) -> dict:
        return {"schema": "qhochschild.module/1", "dim": self.dim, "side": self.side,
                "actions": [m.entries for m in self.actions], "name": self.name}


def regular_module(a: FinDimAlgebra, side: str = "left") -> FDModule:
    if side == "left":
        acts = [a.left(i) for i in range(a.dim)]
    else:
        acts = [a.right(i) for i in range(a.dim)]
    return FDModule(a, acts, side, name=f"A_{side}")


def character_module(a: FinDimAlgebra, chi, side: str = "left") -> FDModule:
    """One-dimensional module where e_i acts by chi[i] (chi must be an algebra map)."""
    acts = [FMatrix([[int(x)]], a.p) for x in chi]
    return FDModule(a, acts, side, name="k_chi")


def is_module_map(f: FMatrix, src: FDModule, tgt: FDModule) -> bool:
    return all(f @ s == t @ f for s, t in zip(src.actions, tgt.actions))


def submodule(m: FDModule, sub: Subspace) -> tuple[FDModule, FMatrix]:
    """Restriction to an invariant subspace, and the inclusion."""
    b = sub.basis
    try:
        acts = [solve(b, act @ b) for act in m.actions]
    except NoSolution as exc:
        raise InvalidModule("subspace is not invariant under the action") from exc
    return FDModule(m.algebra, acts, m.side, name=f"sub({m.name})"), b


def quotient_module(m: FDModule, sub: Subspace) -> tuple[FDModule, FMatrix]:
    """m / sub with the projection onto canonical coordinates."""
    q = Quotient(sub, Subspace.full(m.dim, m.p))
    acts = [q.coords(act @ q.reps) for act in m.actions]
    proj = q.coords(FMatrix.identity(m.dim, m.p))
    return FDModule(m.algebra, acts, m.side, name=f"{m.name}/sub"), proj


def radical_sequence_dual(a: FinDimAlgebra, side: str = "left"):
    """0 -> x A -> A -> A / x A -> 0 for A = F_p[x]/(x^m), as (modules, maps)."""
    reg = regular_module(a, side)
    rad = image(a.left(1) if side == "left" else a.right(1))
    sub, inc = submodule(reg, rad)
    quo, proj = quotient_module(reg, rad)
    return (sub, reg, quo), (inc, proj)


def tensor_over(m: FDModule, n: FDModule) -> Quotient:
    """M (x)_A N as a quotient of M (x) N by m.a (x) n - m (x) a.n."""
    if m.side != "right" or n.side != "left":
        raise InvalidModule("tensor_over needs a right module and a left module")
    return balanced_quotient(m.actions, n.actions, m.dim, n.dim, m.p)


def balanced_quotient(right_acts, left_acts, dm: int, dn: int, p: int) -> Quotient:
    im, iN = FMatrix.identity(dm, p), FMatrix.identity(dn, p)
    rel = None
    for r, l in zip(right_acts, left_acts):
        block = r.kron(iN) - im.kron(l)
        rel = block if rel is None else rel.hstack(block)
    inner = image(rel) if rel is not None else Subspace.zero(dm * dn, p)
    return Quotient(inner, Subspace.full(dm * dn, p))


def hom_over(m: FDModule, n: FDModule) -> Subspace:
    """Hom_A(M, N) inside Hom_k(M, N), matrices vectorized row-major (index i * dim M + j)."""
    if m.side != n.side:
        raise InvalidModule("hom_over needs modules on the same side")
    return equalizer(m.actions, n.actions, m.dim, n.dim, m.p)


def equalizer(src_acts, tgt_acts, dm: int, dn: int, p: int) -> Subspace:
    """{f : f a_M = a_N f for all a}, f an dn x dm matrix vectorized row-major."""
    idm, idn = FMatrix.identity(dm, p), FMatrix.identity(dn, p)
    rows = None
    for s, t in zip(src_acts, tgt_acts):
        block = idn.kron(s.T) - t.kron(idm)
        rows = block if rows is None else rows.vstack(block)
    if rows is None:
        return Subspace.full(dm * dn, p)
    return kernel(rows)


def vec_precompose(g_cols: int, d: FMatrix, dn: int) -> FMatrix:
    """Matrix of g -> g d on row-major vectorized g (dn x g_cols)."""
    if d.rows != g_cols:
        raise ShapeMismatch("cannot precompose")
    return FMatrix.identity(dn, d.p).kron(d.T)

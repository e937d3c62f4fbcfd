"""q-integers, q-factorials and q-binomials over prime fields F_p.

A :class:`QContext` fixes the triple (N, p, q).  Construction enforces
``[N] = 0`` in F_p (level H0); the context is promoted to H1 when every
``[i]`` with ``0 < i < N`` is invertible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from functools import cached_property

from sympy.ntheory import isprime, primitive_root

from .errors import H0Violated, H1Required, NotPrime, OutOfRange


class Hypothesis(str, Enum):
    H0 = "H0"
    H1 = "H1"


def _qint_raw(N: int, p: int, q: int, n: int) -> int:
    if q % p == 1:
        return n % p
    num = (pow(q, n, p) - 1) % p
    return num * pow(q - 1, -1, p) % p


@dataclass(frozen=True)
class QContext:
    N: int
    p: int
    q: int
    hypothesis_level: Hypothesis = field(compare=False)

    @property
    def is_h1(self) -> bool:
        return self.hypothesis_level is Hypothesis.H1

    @property
    def case(self) -> str:
        """'a' for a primitive root q != 1, 'b' for q = 1 in characteristic N."""
        return "b" if self.q == 1 else "a"

    def require_h1(self, what: str = "this operation") -> None:
        if not self.is_h1:
            raise H1Required(f"{what} needs hypothesis H1; context {self} is only H0")

    def inv(self, x: int) -> int:
        return pow(x % self.p, -1, self.p)

    def qpow(self, n: int) -> int:
        return pow(self.q, n, self.p)

    @cached_property
    def table(self) -> QScalarTable:
        return QScalarTable.build(self)

    def inverse_context(self) -> QContext:
        """The same (N, p) with q replaced by q^{-1}."""
        return make_context(self.N, self.p, self.inv(self.q))

    def as_dict(self) -> dict:
        return {"N": self.N, "p": self.p, "q": self.q}

    def __str__(self):
        return f"(N={self.N}, p={self.p}, q={self.q}, {self.hypothesis_level.value})"


@dataclass(frozen=True)
class QScalarTable:
    context: QContext
    qints: tuple[int, ...]
    qfacts: tuple[int, ...]

    @classmethod
    def build(cls, ctx: QContext) -> QScalarTable:
        top = 2 * ctx.N - 2
        qints = tuple(_qint_raw(ctx.N, ctx.p, ctx.q, n) for n in range(top + 1))
        facts = [1]
        for r in range(1, top + 1):
            facts.append(facts[-1] * qints[r] % ctx.p)
        return cls(ctx, qints, tuple(facts))


def make_context(N: int, p: int, q: int) -> QContext:
    if N < 2:
        raise OutOfRange(f"N must be >= 2, got {N}")
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if not 0 <= q < p:
        raise OutOfRange(f"q must lie in [0, {p}), got {q}")
    if _qint_raw(N, p, q, N) != 0:
        raise H0Violated(f"[{N}] != 0 in F_{p} for q={q}")
    h1 = all(_qint_raw(N, p, q, i) != 0 for i in range(1, N))
    return QContext(N, p, q, Hypothesis.H1 if h1 else Hypothesis.H0)


def classical_context(p: int) -> QContext:
    """N = 2, q = -1: the setting of ordinary chain complexes over F_p."""
    return make_context(2, p, (p - 1) % p)


def find_context(N: int) -> QContext:
    """Smallest prime p = 1 mod N, q = g^((p-1)/N) for the least primitive root g."""
    if N < 2:
        raise OutOfRange(f"N must be >= 2, got {N}")
    p = N + 1
    while not isprime(p):
        p += N
    g = primitive_root(p)
    return make_context(N, p, pow(g, (p - 1) // N, p))


def context_for_prime(N: int, p: int) -> QContext:
    """An H1 context over a fixed F_p: q = g^((p-1)/N) when N | p - 1, q = 1 when p = N."""
    if not isprime(p):
        raise NotPrime(f"{p} is not prime")
    if N < 2:
        raise OutOfRange(f"N must be >= 2, got {N}")
    if (p - 1) % N == 0:
        return make_context(N, p, pow(primitive_root(p), (p - 1) // N, p))
    if p == N:
        return make_context(N, p, 1)
    raise H0Violated(f"F_{p} has no primitive {N}-th root of unity and {p} != {N}")


def qint(ctx: QContext, n: int) -> int:
    """[n] in F_p; negative n uses the inverse power of q."""
    return _qint_raw(ctx.N, ctx.p, ctx.q, n)


def qfact(ctx: QContext, r: int) -> int:
    if r < 0:
        raise OutOfRange(f"[r]! needs r >= 0, got {r}")
    out = 1
    for i in range(1, r + 1):
        out = out * qint(ctx, i) % ctx.p
    return out


def qbinom(ctx: QContext, r: int, s: int) -> int:
    """(r, s) = [r+s]! / ([r]! [s]!) for 0 <= r, s <= N-1."""
    if not (0 <= r <= ctx.N - 1 and 0 <= s <= ctx.N - 1):
        raise OutOfRange(f"q-binomial ({r},{s}) outside 0..{ctx.N - 1}")
    ctx.require_h1("qbinom")
    num = qfact(ctx, r + s)
    den = qfact(ctx, r) * qfact(ctx, s) % ctx.p
    return num * pow(den, -1, ctx.p) % ctx.p


def qbinom_pascal(ctx: QContext, r: int, s: int) -> int:
    """(r, s) from (r, s) = (r-1, s) + q^r (r, s-1) with (0, s) = (r, 0) = 1.

    Factorial-free, so it serves as a cross-check of :func:`qbinom`.
    """
    p = ctx.p
    memo: dict[tuple[int, int], int] = {}

    def rec(a, b):
        if a == 0 or b == 0:
            return 1
        if (a, b) not in memo:
            memo[a, b] = (rec(a - 1, b) + pow(ctx.q, a, p) * rec(a, b - 1)) % p
        return memo[a, b]

    return rec(r, s)


def falling_qfact(ctx: QContext, k: int, r: int) -> int:
    """[k][k-1]...[k-r+1] (empty product = 1)."""
    out = 1
    for j in range(r):
        out = out * qint(ctx, k - j) % ctx.p
    return out

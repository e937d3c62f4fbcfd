"""The algebra k<X, Y>/(YX - qXY - 1) in the X^a Y^b basis, and q-difference calculus on k[X].

Normal ordering iterates YX^c = q^c X^c Y + [c] X^{c-1}; the closed
reordering formula with q-binomials is kept separately as a cross-check.
"""
from __future__ import annotations

from functools import lru_cache

from .errors import ContextMismatch, DivisionFailure, OutOfRange
from .qcalc import QContext, falling_qfact, qbinom, qfact, qint


@lru_cache(maxsize=None)
def _reorder(ctx: QContext, b: int, c: int) -> tuple[tuple[tuple[int, int], int], ...]:
    """Normal form of Y^b X^c as ((a, b'), coeff) pairs."""
    if b == 0 or c == 0:
        return (((c, b), 1),)
    p = ctx.p
    out: dict[tuple[int, int], int] = {}
    # Y^b X^c = q^c (Y^{b-1} X^c) Y + [c] Y^{b-1} X^{c-1}
    qc = ctx.qpow(c)
    for (i, j), v in _reorder(ctx, b - 1, c):
        out[i, j + 1] = (out.get((i, j + 1), 0) + qc * v) % p
    cc = qint(ctx, c)
    if cc:
        for (i, j), v in _reorder(ctx, b - 1, c - 1):
            out[i, j] = (out.get((i, j), 0) + cc * v) % p
    return tuple((k, v) for k, v in sorted(out.items()) if v)


class DqElement:
    __slots__ = ("ctx", "terms")

    def __init__(self, ctx: QContext, terms=None):
        self.ctx = ctx
        p = ctx.p
        self.terms = {k: v % p for k, v in (terms or {}).items() if v % p}

    @classmethod
    def scalar(cls, ctx, c):
        return cls(ctx, {(0, 0): c})

    @classmethod
    def X(cls, ctx, power: int = 1):
        return cls(ctx, {(power, 0): 1})

    @classmethod
    def Y(cls, ctx, power: int = 1):
        return cls(ctx, {(0, power): 1})

    def _same(self, other):
        if self.ctx != other.ctx:
            raise ContextMismatch(f"{self.ctx} vs {other.ctx}")

    def __add__(self, other):
        if isinstance(other, int):
            other = DqElement.scalar(self.ctx, other)
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return DqElement(self.ctx, out)

    __radd__ = __add__

    def __neg__(self):
        return DqElement(self.ctx, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> DqElement:
        return DqElement(self.ctx, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return dq_mul(self, other)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, n: int):
        out = DqElement.scalar(self.ctx, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = DqElement.scalar(self.ctx, other)
        if not isinstance(other, DqElement):
            return NotImplemented
        return self.ctx == other.ctx and self.terms == other.terms

    def __hash__(self):
        return hash((self.ctx, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in sorted(self.terms.items()):
            mono = "".join(s for s in (f"X^{a}" if a else "", f"Y^{b}" if b else ""))
            parts.append(f"{v}{'*' + mono if mono else ''}")
        return " + ".join(parts)


def dq_mul(x: DqElement, y: DqElement) -> DqElement:
    x._same(y)
    ctx = x.ctx
    p = ctx.p
    out: dict[tuple[int, int], int] = {}
    for (a, b), u in x.terms.items():
        for (c, d), v in y.terms.items():
            uv = u * v % p
            for (i, j), w in _reorder(ctx, b, c):
                key = (a + i, j + d)
                out[key] = (out.get(key, 0) + uv * w) % p
    return DqElement(ctx, out)


def reorder_closed(ctx: QContext, ell: int, k: int) -> DqElement:
    """Y^ell X^k by the closed q-binomial formula (needs ell <= N-1 and H1)."""
    if not 0 <= ell <= ctx.N - 1 or k < 0:
        raise OutOfRange(f"closed reordering needs 0 <= ell <= N-1 (ell={ell})")
    p = ctx.p
    out = {}
    for r in range(min(ell, k) + 1):
        c = pow(ctx.q, (ell - r) * (k - r), p) * qbinom(ctx, ell - r, r) * falling_qfact(ctx, k, r)
        out[k - r, ell - r] = (out.get((k - r, ell - r), 0) + c) % p
    return DqElement(ctx, out)


def reorder_iterated(ctx: QContext, ell: int, k: int) -> DqElement:
    return DqElement(ctx, dict(_reorder(ctx, ell, k)))


def lemma55_sides(ctx: QContext) -> tuple[DqElement, DqElement]:
    N = ctx.N
    X, Y = DqElement.X(ctx), DqElement.Y(ctx)
    first = DqElement(ctx)
    second = DqElement(ctx)
    for k in range(N):
        first = first + (X ** (N - k - 1)) * (Y ** (N - 1)) * (X ** k)
        second = second + (Y ** (N - k - 1)) * (X ** (N - 1)) * (Y ** k)
    return first, second


def lemma55_targets(ctx: QContext) -> tuple[int, int]:
    N, p = ctx.N, ctx.p
    f = qfact(ctx, N - 1)
    return f, pow(-1, N - 1, p) * ctx.inv(ctx.qpow(N * (N - 1) // 2)) * f % p


def verify_lemma55(ctx: QContext) -> tuple[bool, bool]:
    ctx.require_h1("the [N-1]! identities")
    first, second = lemma55_sides(ctx)
    t1, t2 = lemma55_targets(ctx)
    return first == t1, second == t2


def alpha(x: DqElement, target: QContext) -> DqElement:
    """Algebra map from the q^{-1}-algebra: X~ -> -qY, Y~ -> X."""
    if x.ctx.q != target.inv(target.q) or x.ctx.p != target.p:
        raise ContextMismatch("alpha goes from the q^{-1} algebra to the q algebra")
    ax = DqElement.Y(target).scale(-target.q)
    ay = DqElement.X(target)
    out = DqElement(target)
    for (a, b), v in x.terms.items():
        out = out + ((ax ** a) * (ay ** b)).scale(v)
    return out


def verify_alpha_bridge(ctx: QContext) -> dict:
    """First identity in the q^{-1} algebra, pushed through alpha, against the second one."""
    ctx.require_h1("the alpha bridge")
    N, p = ctx.N, ctx.p
    inv = ctx.inverse_context()
    first_inv, _ = lemma55_sides(inv)
    _, second = lemma55_sides(ctx)
    inv_const = ctx.inv(ctx.qpow((N - 1) * (N - 2) // 2)) * qfact(ctx, N - 1) % p
    pushed = alpha(first_inv, ctx)
    return {
        "first_in_inverse": first_inv == qfact(inv, N - 1),
        "inverse_constant": first_inv == inv_const,
        "alpha_matches": pushed == second.scale(pow(-ctx.q, N - 1, p)),
    }


# ---------------------------------------------------------------------------
# q-difference calculus on k[X]

class QPolynomial:
    __slots__ = ("ctx", "coeffs")

    def __init__(self, ctx: QContext, coeffs):
        p = ctx.p
        cs = [int(c) % p for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.ctx = ctx
        self.coeffs = tuple(cs)

    @classmethod
    def monomial(cls, ctx, k: int, c: int = 1):
        return cls(ctx, [0] * k + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return isinstance(other, QPolynomial) and self.ctx == other.ctx and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.ctx, self.coeffs))

    def __repr__(self):
        return f"QPolynomial({list(self.coeffs)})"

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return QPolynomial(self.ctx, a)

    def __neg__(self):
        return QPolynomial(self.ctx, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int) -> QPolynomial:
        return QPolynomial(self.ctx, [c * x for x in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if not self.coeffs or not other.coeffs:
            return QPolynomial(self.ctx, [])
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return QPolynomial(self.ctx, out)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.ctx.p
        return acc

    def divmod(self, other: QPolynomial) -> tuple[QPolynomial, QPolynomial]:
        if not other.coeffs:
            raise DivisionFailure("division by the zero polynomial")
        p = self.ctx.p
        rem = list(self.coeffs)
        lead_inv = pow(other.coeffs[-1], -1, p)
        dq = len(rem) - len(other.coeffs)
        quo = [0] * max(dq + 1, 0)
        for shift in range(dq, -1, -1):
            c = rem[shift + len(other.coeffs) - 1] * lead_inv % p
            quo[shift] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[shift + j] = (rem[shift + j] - c * b) % p
        return QPolynomial(self.ctx, quo), QPolynomial(self.ctx, rem)

    def exact_div(self, other: QPolynomial) -> QPolynomial:
        q, r = self.divmod(other)
        if r.coeffs:
            raise DivisionFailure(f"{other} does not divide {self}")
        return q


def del_q(f: QPolynomial) -> QPolynomial:
    """X^k -> [k] X^{k-1}."""
    ctx = f.ctx
    return QPolynomial(ctx, [qint(ctx, k) * c for k, c in enumerate(f.coeffs)][1:])


def tau_q(f: QPolynomial) -> QPolynomial:
    """X -> qX."""
    ctx = f.ctx
    return QPolynomial(ctx, [ctx.qpow(k) * c for k, c in enumerate(f.coeffs)])


def leibniz_holds(f: QPolynomial, g: QPolynomial) -> bool:
    return del_q(f * g) == tau_q(f) * del_q(g) + del_q(f) * g


def a_coefficient(ctx: QContext, r: int) -> int:
    """a(r) = sum_{k=r}^{N-1} q^{(N-1-r)(k-r)} [k][k-1]...[k-r+1]."""
    N, p = ctx.N, ctx.p
    return sum(pow(ctx.q, (N - 1 - r) * (k - r), p) * falling_qfact(ctx, k, r)
               for k in range(r, N)) % p


def eq56_sides(ctx: QContext, r: int) -> tuple[QPolynomial, QPolynomial]:
    """del_q^r of 1 + X + ... + X^{N-1}, and the closed quotient form."""
    N, p = ctx.N, ctx.p
    lhs = QPolynomial(ctx, [1] * N)
    for _ in range(r):
        lhs = del_q(lhs)
    num = QPolynomial(ctx, [-1] + [0] * (N - 1) + [1]).scale(pow(-1, r, p) * qfact(ctx, r))
    den = QPolynomial(ctx, [1])
    for j in range(r + 1):
        den = den * QPolynomial(ctx, [-1, ctx.qpow(j)])
    return lhs, num.exact_div(den)


def verify_eq56(ctx: QContext, r: int) -> bool:
    """Closed form of del_q^r, plus the evaluation a(r) at X = q^{N-1-r} (zero for r < N-1)."""
    ctx.require_h1("the q-difference closed form")
    N = ctx.N
    if not 0 <= r <= N - 1:
        raise OutOfRange(f"r must lie in 0..{N - 1}")
    lhs, rhs = eq56_sides(ctx, r)
    if lhs != rhs:
        return False
    a = a_coefficient(ctx, r)
    if a != lhs(ctx.qpow(N - 1 - r)):
        return False
    if r < N - 1:
        return a == 0
    return a == qfact(ctx, N - 1)

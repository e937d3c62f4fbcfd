import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF
from sympy.polys.matrices import DomainMatrix

from qhochschild.errors import ModulusMismatch, NoSolution, NotContained, ShapeMismatch
from qhochschild.exactla import (FMatrix, Quotient, Subspace, block_diag, image, is_exact_at,
                                 kernel, mulmod, quotient_dim, rank, rref, solve, subspace_equal)

PRIMES = [2, 3, 5, 7, 11, 2**31 - 1]


def sympy_rank(m: FMatrix) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    field = GF(m.p)
    dm = DomainMatrix([[field(int(x)) for x in row] for row in m.a], m.shape, field)
    return dm.rank()


@st.composite
def matrices(draw, max_rows=6, max_cols=6, primes=PRIMES):
    p = draw(st.sampled_from(primes))
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    entries = draw(st.lists(st.integers(0, p - 1), min_size=r * c, max_size=r * c))
    return FMatrix(np.array(entries, dtype=np.int64).reshape(r, c), p)


@settings(max_examples=150, deadline=None)
@given(matrices())
def test_rank_matches_sympy(m):
    assert m.rank() == sympy_rank(m)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rank_nullity(m):
    k = kernel(m)
    assert k.dim + m.rank() == m.cols
    assert (m @ k.basis).is_zero()
    assert image(m).dim == m.rank()


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_rref_is_idempotent_and_canonical(m):
    r, piv = rref(m.a, m.p)
    r2, piv2 = rref(r, m.p)
    assert np.array_equal(r, r2) and piv == piv2
    assert len(piv) == m.rank()


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([3, 7, 2**31 - 1]), st.integers(1, 5), st.integers(0, 2**32))
def test_solve_recovers_a_solution(p, n, seed):
    rng = np.random.default_rng(seed)
    a = FMatrix.random(n + 1, n, p, rng)
    x = FMatrix.random(n, 2, p, rng)
    b = a @ x
    y = solve(a, b)
    assert a @ y == b


def test_solve_raises_when_inconsistent():
    a = FMatrix([[1, 0], [0, 0]], 5)
    with pytest.raises(NoSolution):
        solve(a, FMatrix([[0], [1]], 5))


def test_mulmod_large_prime_is_exact():
    p = 2**31 - 1
    rng = np.random.default_rng(1)
    a = rng.integers(0, p, (12, 30))
    b = rng.integers(0, p, (30, 9))
    expect = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(30)) % p for j in range(9)]
              for i in range(12)]
    assert mulmod(a, b, p).tolist() == expect


@pytest.mark.parametrize("p", [2, 7, 101])
def test_mulmod_many_terms_is_exact(p):
    rng = np.random.default_rng(p)
    a = rng.integers(0, p, (3, 5000))
    b = rng.integers(0, p, (5000, 2))
    expect = [[sum(int(a[i, k]) * int(b[k, j]) for k in range(5000)) % p for j in range(2)]
              for i in range(3)]
    assert mulmod(a, b, p).tolist() == expect


def test_matrix_arithmetic_and_kron():
    a = FMatrix([[1, 2], [3, 4]], 5)
    b = FMatrix.identity(2, 5)
    assert a + b == FMatrix([[2, 2], [3, 0]], 5)
    assert a - a == FMatrix.zeros(2, 2, 5)
    assert a.scale(3) == FMatrix([[3, 1], [4, 2]], 5)
    assert a.kron(b).shape == (4, 4)
    assert a.T.entries == [1, 3, 2, 4]
    assert block_diag([a, b], 5).rank() == 4


def test_shape_and_modulus_errors():
    with pytest.raises(ShapeMismatch):
        FMatrix.identity(2, 5) @ FMatrix.identity(3, 5)
    with pytest.raises(ModulusMismatch):
        FMatrix.identity(2, 5) + FMatrix.identity(2, 7)
    with pytest.raises(ModulusMismatch):
        FMatrix([[1]], 1)


def test_matrices_are_immutable():
    m = FMatrix([[1, 2]], 3)
    with pytest.raises(ValueError):
        m.a[0, 0] = 2


def test_subspace_equality_is_basis_independent():
    p = 7
    rng = np.random.default_rng(3)
    v = FMatrix.random(6, 3, p, rng)
    g = FMatrix.random_invertible(3, p, rng)
    assert Subspace.span(v) == Subspace.span(v @ g)
    assert subspace_equal(Subspace.span(v), Subspace.span(v @ g))


def test_quotient_coordinates():
    p = 5
    outer = Subspace.full(3, p)
    inner = Subspace.span(FMatrix([[1], [p - 1], [0]], p))
    q = Quotient(inner, outer)
    assert q.dim == 2 == quotient_dim(inner, outer)
    # e_0 and e_1 agree modulo inner
    e = FMatrix.identity(3, p)
    c = q.coords(e)
    assert c.a[:, 0].tolist() == c.a[:, 1].tolist()
    assert q.coords(q.reps) == FMatrix.identity(2, p)


def test_quotient_requires_containment():
    p = 3
    a = Subspace.span(FMatrix([[1], [0]], p))
    b = Subspace.span(FMatrix([[0], [1]], p))
    with pytest.raises(NotContained):
        Quotient(a, b)
    with pytest.raises(NotContained):
        a.coords(FMatrix([[0], [1]], p))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5]), st.integers(0, 2**32))
def test_exactness_of_kernel_image_pair(p, seed):
    rng = np.random.default_rng(seed)
    f = FMatrix.random(4, 3, p, rng)
    g = FMatrix(kernel(f.T).basis.T.a, p) if kernel(f.T).dim else FMatrix.zeros(0, 4, p)
    # im f = ker g by construction
    assert is_exact_at(f, g)
    assert rank(g @ f) == 0

import pytest
from hypothesis import given, settings, strategies as st

from qhochschild.errors import H0Violated, H1Required, NotPrime, OutOfRange
from qhochschild.qcalc import (Hypothesis, classical_context, context_for_prime, falling_qfact,
                               find_context, make_context, qbinom, qbinom_pascal, qfact, qint)

# smallest prime p = 1 mod N and q = g^((p-1)/N) for the least primitive root g (sympy)
FIND_CONTEXT = {2: (3, 2), 3: (7, 2), 4: (5, 2), 5: (11, 4), 6: (7, 3), 7: (29, 16)}

# Gaussian binomials [r+s choose r] evaluated at q with sympy, reduced mod p
GAUSS = {
    (3, 7, 2): [[1, 1, 1], [1, 3, 0], [1, 0, 0]],
    (4, 5, 2): [[1, 1, 1, 1], [1, 3, 2, 0], [1, 2, 0, 0], [1, 0, 0, 0]],
    (5, 11, 4): [[1, 1, 1, 1, 1], [1, 5, 10, 8, 0], [1, 10, 5, 0, 0], [1, 8, 0, 0, 0],
                 [1, 0, 0, 0, 0]],
}

H1_CONTEXTS = [(3, 7, 2), (4, 5, 2), (5, 11, 4), (6, 7, 3), (2, 3, 2), (3, 3, 1), (5, 5, 1)]


@pytest.mark.parametrize("N", sorted(FIND_CONTEXT))
def test_find_context_matches_frozen_table(N):
    ctx = find_context(N)
    assert (ctx.p, ctx.q) == FIND_CONTEXT[N]
    assert ctx.is_h1


@pytest.mark.parametrize("key", sorted(GAUSS))
def test_qbinom_matches_gaussian_binomials(key):
    ctx = make_context(*key)
    N = key[0]
    got = [[qbinom(ctx, r, s) for s in range(N)] for r in range(N)]
    assert got == GAUSS[key]


@pytest.mark.parametrize("key", H1_CONTEXTS)
def test_qbinom_agrees_with_pascal_recursion(key):
    ctx = make_context(*key)
    for r in range(ctx.N):
        for s in range(ctx.N):
            assert qbinom(ctx, r, s) == qbinom_pascal(ctx, r, s)


@pytest.mark.parametrize("key", H1_CONTEXTS)
def test_qint_vanishes_exactly_at_N(key):
    ctx = make_context(*key)
    assert qint(ctx, ctx.N) == 0
    assert all(qint(ctx, i) != 0 for i in range(1, ctx.N))
    assert qfact(ctx, ctx.N) == 0 and qfact(ctx, ctx.N - 1) != 0


def test_small_values_by_hand():
    ctx = make_context(3, 7, 2)
    assert [qint(ctx, n) for n in range(5)] == [0, 1, 3, 0, 1]
    assert qfact(ctx, 2) == 3
    assert falling_qfact(ctx, 2, 2) == 3
    assert falling_qfact(ctx, 5, 0) == 1


def test_q_equal_one_is_case_b():
    ctx = make_context(3, 3, 1)
    assert ctx.case == "b" and ctx.is_h1
    assert [qint(ctx, n) for n in range(4)] == [0, 1, 2, 0]
    assert make_context(3, 7, 2).case == "a"


def test_h0_only_context():
    # q = 1 in characteristic 2 with N = 4: [4] = 0 but [2] = 0 too
    ctx = make_context(4, 2, 1)
    assert ctx.hypothesis_level is Hypothesis.H0
    with pytest.raises(H1Required):
        ctx.require_h1()
    with pytest.raises(H1Required):
        qbinom(ctx, 1, 1)


@pytest.mark.parametrize("args, exc", [
    ((3, 8, 2), NotPrime),
    ((3, 7, 3), H0Violated),
    ((3, 7, 9), OutOfRange),
    ((1, 7, 1), OutOfRange),
])
def test_make_context_errors(args, exc):
    with pytest.raises(exc):
        make_context(*args)


def test_classical_context():
    ctx = classical_context(7)
    assert (ctx.N, ctx.q) == (2, 6) and ctx.is_h1


@pytest.mark.parametrize("N, p, q", [(3, 7, 2), (3, 13, 3), (4, 13, 8), (3, 3, 1), (2, 2, 1)])
def test_context_for_prime(N, p, q):
    ctx = context_for_prime(N, p)
    assert (ctx.N, ctx.p, ctx.q) == (N, p, q)


def test_context_for_prime_rejects_missing_roots():
    with pytest.raises(H0Violated):
        context_for_prime(3, 5)
    with pytest.raises(NotPrime):
        context_for_prime(3, 9)


def test_inverse_context():
    ctx = make_context(3, 7, 2)
    inv = ctx.inverse_context()
    assert inv.q == 4 and inv.q * ctx.q % 7 == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(H1_CONTEXTS), st.integers(0, 40), st.integers(0, 40))
def test_qint_addition_rule(key, m, n):
    # [m + n] = [m] + q^m [n]
    ctx = make_context(*key)
    assert qint(ctx, m + n) == (qint(ctx, m) + ctx.qpow(m) * qint(ctx, n)) % ctx.p


@settings(max_examples=60, deadline=None)
@given(st.sampled_from(H1_CONTEXTS), st.integers(1, 30))
def test_qint_is_periodic(key, n):
    ctx = make_context(*key)
    if ctx.q != 1:
        assert qint(ctx, n + ctx.N) == qint(ctx, n)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(H1_CONTEXTS), st.data())
def test_qbinom_symmetry(key, data):
    ctx = make_context(*key)
    r = data.draw(st.integers(0, ctx.N - 1))
    s = data.draw(st.integers(0, ctx.N - 1))
    assert qbinom(ctx, r, s) == qbinom(ctx, s, r)


def test_scalar_table():
    ctx = make_context(4, 5, 2)
    t = ctx.table
    assert t.qints[:5] == tuple(qint(ctx, n) for n in range(5))
    assert t.qfacts[3] == qfact(ctx, 3)

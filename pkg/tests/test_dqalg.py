import pytest
from hypothesis import given, settings, strategies as st

from qhochschild.dqalg import (DqElement, QPolynomial, a_coefficient, alpha, del_q, lemma55_targets,
                               leibniz_holds, reorder_closed, reorder_iterated, tau_q, verify_alpha_bridge,
                               verify_eq56, verify_lemma55)
from qhochschild.errors import ContextMismatch, DivisionFailure, OutOfRange
from qhochschild.qcalc import find_context, make_context, qfact

CTX = make_context(3, 7, 2)
CONTEXTS = [find_context(N) for N in range(2, 7)] + [make_context(3, 3, 1), make_context(4, 13, 8)]


def elements(ctx, max_deg=3, max_terms=4):
    mono = st.tuples(st.integers(0, max_deg), st.integers(0, max_deg))
    return st.dictionaries(mono, st.integers(0, ctx.p - 1), max_size=max_terms).map(
        lambda t: DqElement(ctx, t))


def test_defining_relation_by_hand():
    X, Y = DqElement.X(CTX), DqElement.Y(CTX)
    assert Y * X == X * Y * 2 + 1
    assert (Y * X).terms == {(0, 0): 1, (1, 1): 2}


def test_classical_case_is_anticommutator():
    ctx = make_context(2, 5, 4)
    X, Y = DqElement.X(ctx), DqElement.Y(ctx)
    assert X * Y + Y * X == 1


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_closed_reordering_matches_iteration(ctx):
    for ell in range(ctx.N):
        for k in range(2 * ctx.N + 2):
            assert reorder_closed(ctx, ell, k) == reorder_iterated(ctx, ell, k)


def test_closed_reordering_range():
    with pytest.raises(OutOfRange):
        reorder_closed(CTX, 3, 1)


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_multiplication_is_associative(data):
    ctx = data.draw(st.sampled_from(CONTEXTS))
    x, y, z = (data.draw(elements(ctx)) for _ in range(3))
    assert (x * y) * z == x * (y * z)


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_x_to_the_n_is_central(ctx):
    XN, Y = DqElement.X(ctx, ctx.N), DqElement.Y(ctx)
    assert XN * Y == Y * XN


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_factorial_identities(ctx):
    assert verify_lemma55(ctx) == (True, True)
    assert all(verify_alpha_bridge(ctx).values())


def test_factorial_targets_by_hand():
    # [2]! = 1 + q = 3 and q^{-3} = 1 in F_7 for q = 2
    assert lemma55_targets(CTX) == (3, 3)
    assert lemma55_targets(make_context(2, 5, 4)) == (1, 1)


def test_alpha_respects_the_relation():
    inv = CTX.inverse_context()
    X, Y = DqElement.X(inv), DqElement.Y(inv)
    relation = Y * X - X * Y * inv.q - 1
    assert relation == 0
    assert alpha(Y * X, CTX) == alpha(X * Y * inv.q + 1, CTX)
    with pytest.raises(ContextMismatch):
        alpha(X, make_context(3, 13, 3))


def test_mixed_contexts_are_rejected():
    with pytest.raises(ContextMismatch):
        DqElement.X(CTX) * DqElement.X(make_context(3, 13, 3))


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_q_leibniz_rule(data):
    ctx = data.draw(st.sampled_from(CONTEXTS))
    coeffs = st.lists(st.integers(0, ctx.p - 1), max_size=8)
    f = QPolynomial(ctx, data.draw(coeffs))
    g = QPolynomial(ctx, data.draw(coeffs))
    assert leibniz_holds(f, g)


def test_q_derivative_by_hand():
    f = QPolynomial(CTX, [5, 1, 1, 1])
    # [1] = 1, [2] = 3, [3] = 0
    assert del_q(f) == QPolynomial(CTX, [1, 3, 0])
    assert tau_q(f) == QPolynomial(CTX, [5, 2, 4, 1])
    assert del_q(QPolynomial.monomial(CTX, 3)) == QPolynomial(CTX, [])


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_closed_form_of_iterated_q_derivative(ctx):
    assert all(verify_eq56(ctx, r) for r in range(ctx.N))


@pytest.mark.parametrize("ctx", CONTEXTS)
def test_a_coefficient_vanishes_below_top(ctx):
    N = ctx.N
    assert [a_coefficient(ctx, r) for r in range(N - 1)] == [0] * (N - 1)
    assert a_coefficient(ctx, N - 1) == qfact(ctx, N - 1)


def test_polynomial_division():
    f = QPolynomial(CTX, [6, 0, 0, 1])   # X^3 - 1
    g = QPolynomial(CTX, [6, 1])         # X - 1
    q, r = f.divmod(g)
    assert q == QPolynomial(CTX, [1, 1, 1]) and r.coeffs == ()
    assert q * g == f
    with pytest.raises(DivisionFailure):
        f.exact_div(QPolynomial(CTX, [1, 1, 1, 1, 1]))
    with pytest.raises(DivisionFailure):
        f.divmod(QPolynomial(CTX, []))

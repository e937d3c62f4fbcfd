import pytest
from hypothesis import given, settings, strategies as st

from qhochschild.algebra import (cyclic_group_algebra, dual_numbers, ground_field,
                                 truncated_polynomial, upper_triangular)
from qhochschild.errors import ContextMismatch, ResourceBound
from qhochschild.hochschild import (bar_contraction, bar_nresolution, classical_hh, hochschild_ncomplex,
                                    hochschild_simplicial, identify_phh_tor, phh, reindex_branch,
                                    theorem1_check)
from qhochschild.qcalc import classical_context, make_context

# k[x]/(x^m): HH_0 = m, HH_n = m - 1 for n > 0 when p does not divide m, and m when it does
HH_TRUNCATED = {
    (7, 2): [2, 1, 1, 1, 1],
    (7, 3): [3, 2, 2, 2],
    (3, 3): [3, 3, 3, 3],
    (2, 2): [2, 2, 2, 2, 2],
}


@pytest.mark.parametrize("key", sorted(HH_TRUNCATED))
def test_classical_hh_of_truncated_polynomials(key):
    p, m = key
    a = truncated_polynomial(p, m)
    assert [classical_hh(a, n) for n in range(len(HH_TRUNCATED[key]))] == HH_TRUNCATED[key]


def test_classical_hh_of_semisimple_and_hereditary():
    # A / [A, A] in degree 0, nothing above
    assert [classical_hh(upper_triangular(7), n) for n in range(3)] == [2, 0, 0]
    assert [classical_hh(cyclic_group_algebra(7, 3), n) for n in range(3)] == [3, 0, 0]
    assert [classical_hh(ground_field(5), n) for n in range(3)] == [1, 0, 0]


@pytest.mark.parametrize("a", [dual_numbers(5), upper_triangular(3)])
def test_hochschild_simplicial_identities(a):
    hochschild_simplicial(a, 3).validate()


@pytest.mark.parametrize("p, a_builder", [(5, dual_numbers), (7, upper_triangular),
                                          (3, lambda p: truncated_polynomial(p, 3))])
def test_classical_context_recovers_classical_hh(p, a_builder):
    a = a_builder(p)
    ctx = classical_context(p)
    assert [phh(a, ctx, 1, n) for n in range(4)] == [classical_hh(a, n) for n in range(4)]


@pytest.mark.parametrize("N, p, q", [(3, 7, 2), (4, 5, 2), (5, 11, 4), (3, 3, 1)])
def test_q_hochschild_differential_is_nilpotent(N, p, q):
    ctx = make_context(N, p, q)
    c = hochschild_ncomplex(dual_numbers(p), ctx, N + 2)
    c.validate()
    # d^{N-1} is not zero, so N is the exact order of nilpotency
    assert any(not c.power(n, N - 1).is_zero() for n in range(N - 1, c.hi + 1))


def test_reindex_branch_by_hand():
    # N = 3: n = 0 is the p = 1 branch with index 0, n = 2 the '0' branch with index 1
    assert reindex_branch(3, 1, 0) == ("p", 0)
    assert reindex_branch(3, 1, 2) == ("0", 1)
    assert reindex_branch(3, 1, 1) == ("zero", None)
    assert reindex_branch(3, 2, 1) == ("p", 0)
    assert reindex_branch(3, 2, 4) == ("p", 2)
    assert reindex_branch(4, 2, 3) == ("0", 1)


@settings(max_examples=40, deadline=None)
@given(st.integers(2, 7), st.data())
def test_reindex_branches_cover_each_residue_once(N, data):
    p_index = data.draw(st.integers(1, N - 1))
    n = data.draw(st.integers(0, 50))
    branch, k = reindex_branch(N, p_index, n)
    hits = [(n + 1 - p_index) % N == 0, (n + 1) % N == 0]
    assert sum(hits) <= 1
    assert (branch == "zero") == (not any(hits))
    if k is not None:
        assert k >= 0


@pytest.mark.parametrize("a, ctx, n_max", [
    (upper_triangular(7), make_context(3, 7, 2), 5),
    (cyclic_group_algebra(7, 3), make_context(3, 7, 2), 5),
    (dual_numbers(5), make_context(4, 5, 2), 7),
    (dual_numbers(3), make_context(3, 3, 1), 6),
])
def test_reindexing_on_further_algebras(a, ctx, n_max):
    rep = theorem1_check(a, ctx, n_max)
    assert rep.ok and rep.cells


def test_bar_resolution_is_exact_and_sigma_relation_holds():
    ctx = make_context(3, 7, 2)
    a = dual_numbers(7)
    res = bar_nresolution(a, ctx, 4)
    assert res.is_exact()
    con = bar_contraction(a, ctx, 4)
    assert all(con.relation.values())


@pytest.mark.parametrize("a, ctx, n_max", [
    (dual_numbers(7), make_context(3, 7, 2), 4),
    (upper_triangular(5), make_context(4, 5, 2), 3),
])
def test_hochschild_complex_is_tensor_with_bar(a, ctx, n_max):
    rep = identify_phh_tor(a, ctx, n_max, report=True)
    assert rep.ok
    assert set(rep.differential_match) == set(range(1, n_max + 1))


def test_errors():
    with pytest.raises(ContextMismatch):
        hochschild_ncomplex(dual_numbers(5), make_context(3, 7, 2), 3)
    with pytest.raises(ResourceBound):
        hochschild_ncomplex(dual_numbers(7), make_context(3, 7, 2), 20)

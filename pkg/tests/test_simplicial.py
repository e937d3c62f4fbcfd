import itertools

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qhochschild import simplicial as S
from qhochschild.errors import RelationFailure, SimplicialIdentityError
from qhochschild.exactla import FMatrix
from qhochschild.qcalc import classical_context, find_context, make_context

seeds = st.integers(0, 2**32 - 1)
CONTEXTS = [make_context(2, 5, 4), make_context(3, 7, 2), make_context(4, 5, 2),
            make_context(5, 11, 4), make_context(3, 3, 1)]


def _nilpotent(c):
    return all(c.power(n, c.N).is_zero() for n in range(c.lo + c.N, c.hi + 1))


@pytest.mark.parametrize("build", [
    lambda: S.constant_module(5, 5, 2),
    lambda: S.standard_simplex(5, 2, 4),
    lambda: S.circle(5, 5),
    lambda: S.cyclic_group_nerve(5, 3, 4),
])
def test_builders_satisfy_simplicial_identities(build):
    build().validate()


def test_broken_face_is_rejected():
    sm = S.standard_simplex(5, 1, 3)
    faces = {n: list(fs) for n, fs in sm.faces.items()}
    faces[2][0], faces[2][1] = faces[2][1], faces[2][0]
    with pytest.raises(SimplicialIdentityError):
        S.SimplicialModule(5, sm.dims, faces, sm.degeneracies)


@pytest.mark.parametrize("p", [3, 7])
def test_classical_homology_of_standard_pieces(p):
    ctx = classical_context(p)
    full = S.DifferentialSpec.full()
    circle = S.q_differential(S.circle(p, 5), ctx, full)
    assert [circle.homology_dim(1, n) for n in range(4)] == [1, 1, 0, 0]
    simplex = S.q_differential(S.standard_simplex(p, 2, 5), ctx, full)
    assert [simplex.homology_dim(1, n) for n in range(4)] == [1, 0, 0, 0]


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(CONTEXTS), seeds, st.sampled_from(["full", "truncated", -1, 0, 2, 7]))
def test_weighted_face_sums_are_n_differentials(ctx, seed, kind):
    sm = S.random_simplicial(ctx.p, np.random.default_rng(seed))
    if kind == "full":
        spec = S.DifferentialSpec.full()
    elif kind == "truncated":
        spec = S.DifferentialSpec.truncated()
    else:
        spec = S.DifferentialSpec.weighted(kind)
    assert _nilpotent(S.q_differential(sm, ctx, spec, validate=False))


@settings(max_examples=30, deadline=None)
@given(st.sampled_from(CONTEXTS[:4]), seeds)
def test_closed_form_of_nth_power(ctx, seed):
    rng = np.random.default_rng(seed)
    sm = S.random_simplicial(ctx.p, rng, n_max=5)
    a = [int(x) for x in rng.integers(0, ctx.p, size=5)]
    c = S.q_differential(sm, ctx, S.DifferentialSpec.general(a), validate=False)
    for n in range(ctx.N, sm.n_max + 1):
        assert S.lemma53_rhs(sm, ctx, a, n) == c.power(n, ctx.N)


def test_general_spec_with_unit_coefficients_is_truncated():
    ctx = make_context(3, 7, 2)
    sm = S.circle(7, 4)
    gen = S.q_differential(sm, ctx, S.DifferentialSpec.general([1] * 4))
    tr = S.q_differential(sm, ctx, S.DifferentialSpec.truncated())
    assert all(gen.d(n) == tr.d(n) for n in range(1, 5))


def test_ternary_symbol_by_hand():
    ctx = make_context(3, 7, 2)
    a = [1, 2, 3, 4, 5]
    # (3, 0, 1) at n = 4: a_3 + q a_2 + q^2 a_1 = 4 + 6 + 8
    assert S.ternary(ctx, a, 4, 0, 1) == 18 % 7


def _simplex_extra(p, m, n_max):
    """Prepending the vertex 0 is an extra degeneracy of k[Delta[m]]."""
    levels = [list(itertools.combinations_with_replacement(range(m + 1), n + 1))
              for n in range(n_max + 1)]
    index = [{x: k for k, x in enumerate(lv)} for lv in levels]
    maps = {}
    for n in range(n_max):
        a = np.zeros((len(levels[n + 1]), len(levels[n])), dtype=np.int64)
        for col, x in enumerate(levels[n]):
            a[index[n + 1][(0,) + x], col] = 1
        maps[n] = FMatrix(a, p)
    return S.ExtraDegeneracy(maps)


@pytest.mark.parametrize("N", [2, 3, 4, 5])
def test_extra_degeneracy_contracts_for_unit_weight(N):
    ctx = find_context(N)
    sm = S.standard_simplex(ctx.p, 1, 6)
    con = S.contracting_homotopy_extra(sm, ctx, _simplex_extra(ctx.p, 1, 6), ell=1)
    assert all(con.relation.values())
    assert con.certifies_acyclic()


@pytest.mark.parametrize("ell", [-1, 0, 2])
def test_other_weights_leave_bottom_homology(ell):
    ctx = make_context(3, 7, 2)
    sm = S.standard_simplex(7, 1, 6)
    con = S.contracting_homotopy_extra(sm, ctx, _simplex_extra(7, 1, 6), ell=ell)
    assert not con.relation[0] and all(v for n, v in con.relation.items() if n > 0)
    assert con.complex.homology_dim(1, 0) == 2


def test_invalid_extra_degeneracy_is_rejected():
    ctx = make_context(3, 7, 2)
    sm = S.standard_simplex(7, 1, 4)
    bad = S.ExtraDegeneracy({n: FMatrix.zeros(sm.dims[n + 1], sm.dims[n], 7) for n in range(4)})
    with pytest.raises(RelationFailure):
        S.contracting_homotopy_extra(sm, ctx, bad)


@settings(max_examples=20, deadline=None)
@given(seeds)
def test_conjugation_preserves_homology(seed):
    rng = np.random.default_rng(seed)
    ctx = make_context(3, 7, 2)
    sm = S.cyclic_group_nerve(7, 2, 5)
    g = {n: FMatrix.random_invertible(sm.dims[n], 7, rng) for n in range(sm.n_max + 1)}
    spec = S.DifferentialSpec.full()
    a = S.q_differential(sm, ctx, spec)
    b = S.q_differential(sm.conjugated(g), ctx, spec)
    assert a.homology_table() == b.homology_table()

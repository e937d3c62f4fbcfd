import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from qhochschild import derived, randgen
from qhochschild.algebra import character_module, dual_numbers
from qhochschild.errors import NilpotencyFailure, NotExact, OutOfRange, UnsafeDegree
from qhochschild.exactla import FMatrix
from qhochschild.ncomplex import (Homotopy, NComplex, NComplexMorphism, ShortExactSequence,
                                  check_homotopy, contract_complex, contraction_morphism,
                                  comparison_lift, dstar_map, expand_complex, hexagon_check,
                                  induced_equal, is_acyclic, istar_map, kapranov_check, les_check,
                                  perturb_by_homotopy, unique_up_to_homotopy)
from qhochschild.qcalc import make_context

seeds = st.integers(0, 2**32 - 1)


def random_segments(N, p, rng, hi=6, count=4):
    return [(int(b), int(rng.integers(1, N + 1))) for b in rng.integers(0, hi - N + 2, size=count)]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), st.sampled_from([2, 5, 7]), seeds)
def test_homology_of_segment_sums_matches_closed_form(N, p, seed):
    rng = np.random.default_rng(seed)
    segs = random_segments(N, p, rng)
    c = randgen.direct_sum([randgen.segment(N, p, b, L, 0, 8) for b, L in segs])
    c, _ = randgen.conjugate(c, rng)
    for pi in range(1, N):
        for n in c.safe_degrees(pi):
            expect = sum(randgen.segment_homology(N, b, L, pi, n) for b, L in segs)
            assert c.homology_dim(pi, n) == expect


def test_full_segment_is_acyclic_and_short_one_is_not():
    full = randgen.segment(3, 7, 0, 3, 0, 4)
    assert all(is_acyclic(full, pi) for pi in (1, 2))
    short = randgen.segment(3, 7, 1, 2, 0, 4)
    # k -> k in degrees 1, 2: _1H_1 = k (kernel of d), _2H_2 = k (kernel of d^2)
    assert short.homology_dim(1, 1) == 1 and short.homology_dim(2, 2) == 1
    assert short.homology_dim(1, 2) == 0 and short.homology_dim(2, 1) == 0


def test_nilpotency_is_enforced():
    one = FMatrix.identity(1, 5)
    with pytest.raises(NilpotencyFailure):
        NComplex(2, 5, 0, 2, [1, 1, 1], {1: one, 2: one})
    NComplex(3, 5, 0, 2, [1, 1, 1], {1: one, 2: one})


def test_safe_window_on_truncated_complex():
    c = randgen.segment(3, 5, 0, 3, 0, 6)
    t = NComplex(3, 5, 0, 4, c.dims[:5], {n: c.d(n) for n in range(1, 5)}, bounded_above=False)
    # _1H_n needs degree n + 2 and _2H_n needs n + 1
    assert t.safe_degrees(1) == [0, 1, 2]
    assert t.safe_degrees(2) == [0, 1, 2, 3]
    with pytest.raises(UnsafeDegree):
        t.homology_dim(1, 3)
    with pytest.raises(OutOfRange):
        t.homology_dim(3, 0)


def test_classical_case_is_ordinary_homology():
    rng = np.random.default_rng(5)
    c = randgen.random_classical(7, 5, rng)
    for n in range(6):
        ker = c.d(n).cols - c.d(n).rank()
        im = c.d(n + 1).rank()
        assert c.homology_dim(1, n) == ker - im


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([3, 4, 5]), st.sampled_from([5, 11]), seeds)
def test_hexagon_is_exact(N, p, seed):
    c = randgen.random_ncomplex(N, p, np.random.default_rng(seed))
    for pi in range(1, N):
        for r in range(1, N - pi):
            rep = hexagon_check(c, pi, r)
            assert rep.ok and rep.checked > 0


@settings(max_examples=25, deadline=None)
@given(st.sampled_from([2, 3, 4]), st.sampled_from([5, 7]), seeds)
def test_long_exact_sequence(N, p, seed):
    s = randgen.random_ses(N, p, np.random.default_rng(seed))
    for pi in range(1, N):
        rep = les_check(s, pi)
        assert rep.ok and rep.checked > 0
        assert rep.notes["connecting_degrees"] == (-pi, -(N - pi))


def test_split_sequence_and_rejection_of_non_exact():
    rng = np.random.default_rng(2)
    a = randgen.random_ncomplex(3, 5, rng)
    b = randgen.random_ncomplex(3, 5, rng, hi=a.hi)
    s = randgen.split_ses(a, b)
    assert les_check(s, 1).ok
    with pytest.raises(NotExact):
        ShortExactSequence(s.u, NComplexMorphism.zero(s.u.target, b))


def test_hexagon_needs_admissible_pair():
    c = randgen.random_ncomplex(3, 5, np.random.default_rng(0))
    with pytest.raises(OutOfRange):
        hexagon_check(c, 2, 1)


@settings(max_examples=30, deadline=None)
@given(st.sampled_from([2, 3, 4, 5]), seeds)
def test_kapranov(N, seed):
    c = randgen.random_ncomplex(N, 7, np.random.default_rng(seed))
    assert kapranov_check(c)


def test_istar_dstar_ranges():
    c = randgen.random_ncomplex(4, 5, np.random.default_rng(4))
    assert istar_map(c, 1, 3).shape == (c.homology_dim(2, 3), c.homology_dim(1, 3))
    assert dstar_map(c, 2, 3).shape == (c.homology_dim(1, 2), c.homology_dim(2, 3))
    with pytest.raises(OutOfRange):
        istar_map(c, 3, 3)
    with pytest.raises(OutOfRange):
        dstar_map(c, 1, 3)


@pytest.mark.parametrize("N", [3, 4, 5])
def test_contraction_of_expansion_recovers_homology(N):
    rng = np.random.default_rng(N)
    q = randgen.random_classical(5, 5, rng)
    e = expand_complex(q, N)
    for pi in range(1, N):
        back = contract_complex(e, pi)
        assert back.dims == q.dims
        for n in range(q.hi + 1):
            assert back.homology_dim(1, n) == q.homology_dim(1, n)


def test_expansion_dimensions():
    q = randgen.segment(2, 3, 0, 2, 0, 1)
    e = expand_complex(q, 4)
    # even degrees are repeated N - 1 times
    assert e.dims == [1, 1, 1, 1]
    assert e.lo == 0 and e.hi == 3


def _dual_resolution(ctx, n_max):
    a = dual_numbers(ctx.p)
    return derived.relative_bar_nresolution(character_module(a, [1, 0], "right"), ctx, n_max)


def test_comparison_lift_is_unique_up_to_homotopy():
    ctx = make_context(3, 7, 2)
    r = _dual_resolution(ctx, 5)
    u = FMatrix.identity(r.target_dim, ctx.p)
    rng = np.random.default_rng(0)
    f = comparison_lift(u, r, r, rng)
    g = comparison_lift(u, r, r, rng)
    assert f.at(2) != g.at(2)
    h = unique_up_to_homotopy(f, g)
    assert check_homotopy(h)
    for pi in (1, 2):
        for n in f.source.safe_degrees(pi):
            if n >= 0:
                assert induced_equal(f, g, pi, n)


def test_perturbation_by_homotopy_has_same_homology_maps():
    rng = np.random.default_rng(8)
    c = randgen.random_ncomplex(3, 5, rng)
    f = NComplexMorphism.identity(c)
    hmaps = randgen.random_homotopy_maps(c, c, rng)
    g = perturb_by_homotopy(f, hmaps)
    assert check_homotopy(Homotopy(g, f, hmaps))
    for pi in (1, 2):
        for n in c.safe_degrees(pi):
            assert induced_equal(f, g, pi, n)


def test_contraction_morphism_commutes():
    ctx = make_context(4, 5, 2)
    r = _dual_resolution(ctx, 7)
    for pi in (1, 2):
        mor = contraction_morphism(r, pi)
        for n in mor.maps:
            if n - 1 in mor.maps:
                assert mor.commutes_at(n)


def test_resolution_is_exact():
    r = _dual_resolution(make_context(3, 7, 2), 5)
    assert r.is_exact()

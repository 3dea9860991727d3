from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadlab.exactlin import (BasedSpace, Echelon, LinMap, Subspace, cohomology_dims, compose, cycle,
                                doubling, identity, inverse, nullspace, rank, rref, sign, two_term, vadd,
                                veq, vscale)
from operadlab.exactlin.complexes import ComplexRep, NotAComplex

perm = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))
entries = st.integers(-3, 3)
small_rows = st.lists(st.dictionaries(st.integers(0, 5), entries, max_size=6), max_size=7)


def _dense_rank(rows, ncols):
    # plain Gaussian elimination over Fractions, the reference for the sparse code
    M = [[Fraction(r.get(c, 0)) for c in range(ncols)] for r in rows]
    rk, col = 0, 0
    while rk < len(M) and col < ncols:
        piv = next((i for i in range(rk, len(M)) if M[i][col]), None)
        if piv is None:
            col += 1
            continue
        M[rk], M[piv] = M[piv], M[rk]
        for i in range(len(M)):
            if i != rk and M[i][col]:
                f = M[i][col] / M[rk][col]
                M[i] = [a - f * b for a, b in zip(M[i], M[rk])]
        rk += 1
        col += 1
    return rk


@given(small_rows)
def test_rank_matches_dense_elimination(rows):
    assert rank(rows) == _dense_rank(rows, 6)


@given(small_rows)
def test_nullspace_is_annihilated_and_complementary(rows):
    cols = list(range(6))
    ns = nullspace(rows, cols)
    for v in ns:
        for r in rows:
            assert sum(c * v.get(k, 0) for k, c in r.items()) == 0
    assert len(ns) + rank(rows) == 6


@given(small_rows)
def test_rref_pivots_are_unit_columns(rows):
    piv, red = rref(rows, list(range(6)))
    for c in piv:
        assert red[c][c] == 1
        for d in piv:
            if d != c:
                assert red[d].get(c, 0) == 0


def test_rref_survives_cancelled_pivot_entries():
    # the second subtraction used to hit a key removed by the first
    rows = [{0: 1, 1: 1, 2: 1}, {1: 1, 2: -1}, {2: 1}, {0: 1, 1: 2}]
    piv, red = rref(rows, [0, 1, 2])
    assert sorted(piv) == [0, 1, 2]


@given(small_rows, st.dictionaries(st.integers(0, 5), entries, max_size=6))
def test_subspace_membership_via_coordinates(rows, extra):
    S = Subspace(rows)
    if S.contains(extra):
        coords = S.coordinates(extra)
        comb = {}
        for c, b in zip(coords, S.basis):
            vadd(comb, b, c)
        assert veq(comb, extra)
    assert S.dim == rank(rows)


def test_echelon_reports_dependence():
    E = Echelon()
    assert E.add({"a": 1, "b": 2})
    assert E.add({"b": 1})
    assert not E.add({"a": 3})


@given(perm, perm.flatmap(lambda p: st.just(p)))
def test_inverse_and_identity(p, _):
    n = len(p)
    assert compose(p, inverse(p)) == identity(n)
    assert compose(identity(n), p) == p


@given(st.integers(1, 5).flatmap(lambda n: st.tuples(*[st.permutations(list(range(1, n + 1))).map(tuple)] * 3)))
def test_group_laws(triple):
    a, b, c = triple
    assert compose(compose(a, b), c) == compose(a, compose(b, c))
    assert sign(compose(a, b)) == sign(a) * sign(b)


def test_cycle_and_doubling_examples():
    assert cycle(3, 3) == (2, 3, 1, 4)
    assert doubling((1,), 1) == (1, 2)
    assert doubling((2, 1), 1) == (2, 3, 1)
    assert doubling((2, 1), 0) == (1, 3, 2)
    assert doubling((2, 1), 3) == (2, 1, 3)
    with pytest.raises(ValueError):
        doubling((1, 2), 4)


def test_doubling_cosimplicial_identity():
    # d_j d_i = d_i d_{j-1} for i < j
    for m in range(1, 5):
        for s in permutations(range(1, m + 1)):
            for j in range(m + 3):
                for i in range(j):
                    assert doubling(doubling(s, i), j) == doubling(doubling(s, j - 1), i)


def test_two_term_cohomology():
    assert cohomology_dims(two_term(3)).h == [0, 0]
    assert cohomology_dims(two_term(3, identity=False)).h == [3, 3]


def test_square_zero_is_checked():
    a, b, c = (BasedSpace(((x, 0),)) for x in "abc")
    d0 = LinMap(a, b, [{("b", 0): 1}])
    d1 = LinMap(b, c, [{("c", 0): 1}])
    with pytest.raises(NotAComplex):
        cohomology_dims(ComplexRep([a, b, c], [d0, d1], truncated=False))


def test_truncated_top_degree_is_flagged():
    c = two_term(2)
    assert cohomology_dims(c).reliable == [True, True]
    c.truncated = True
    tab = cohomology_dims(c)
    assert tab.reliable == [True, False]
    assert [r["reliable"] for r in tab.rows()] == [True, False]


@settings(max_examples=30)
@given(st.lists(st.lists(entries, min_size=3, max_size=3), min_size=3, max_size=3))
def test_linmap_rank_and_kernel(cols):
    V = BasedSpace((0, 1, 2))
    f = LinMap(V, V, [{i: x for i, x in enumerate(c) if x} for c in cols])
    ker = f.kernel()
    assert len(ker) + f.rank() == 3
    assert all(not f.apply(v) for v in ker)
    assert veq(f.apply(vscale({0: 1}, 2)), vscale(f.apply({0: 1}), 2))

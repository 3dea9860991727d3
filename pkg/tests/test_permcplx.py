from math import comb, factorial

import pytest
from hypothesis import given
from hypothesis import strategies as st

from operadlab.exactlin.complexes import cohomology_dims
from operadlab.exactlin.perms import all_perms, doubling, identity
from operadlab.permcplx import (alternating_identity_complex, alternating_identity_inclusion, block_acyclicity,
                                block_decompose, expected_block_size, grade, is_primitive, oracle_mismatches,
                                perm_complex, perm_differential, primitive_contraction, primitives)

perm = st.integers(1, 6).flatmap(lambda n: st.permutations(list(range(1, n + 1))).map(tuple))


def test_differential_of_identity():
    # three equal doublings with signs +, -, +
    assert perm_differential({(1,): 1}, 1) == {(1, 2): 1}


def test_differential_squares_to_zero():
    for m in range(1, 6):
        for s in all_perms(m):
            assert perm_differential(perm_differential({s: 1}, m), m + 1) == {}


def test_full_complex_is_acyclic():
    tab = cohomology_dims(perm_complex(6))
    assert tab.reliable_h() == [0] * 5


@given(perm)
def test_doubling_raises_grade_by_one(s):
    g = grade(s)
    for i in range(len(s) + 2):
        d = grade(doubling(s, i))
        assert d.g == g.g + 1
        assert d.primitive == g.primitive


@given(perm)
def test_primitive_contraction_is_primitive(s):
    k = primitive_contraction(s)
    assert is_primitive(k)
    assert grade(s).g == len(s) - len(k) or k == (1,)


def test_identity_grade():
    g = grade(identity(4))
    assert (g.a, g.b, g.c, g.primitive) == (0, 3, 0, (1,))


def test_block_sizes():
    for m in range(1, 7):
        blocks = block_decompose(m)
        assert sum(len(v) for v in blocks.values()) == len(list(all_perms(m)))
        for kappa, members in blocks.items():
            assert len(members) == expected_block_size(kappa, m)


def test_expected_block_size_formula():
    assert expected_block_size((2, 1), 2) == 1
    assert expected_block_size((2, 1), 4) == comb(2 + 3, 3)
    assert expected_block_size((1,), 5) == 1
    assert expected_block_size((2, 1), 1) == 0


def test_primitive_counts_fill_the_symmetric_group():
    # m! = 1 + Σ_{k>=2} p_k C(m+1, k+1) with p_k the number of primitives in Σ_k
    p = {k: len(primitives(k)) for k in range(2, 7)}
    assert [p[k] for k in range(2, 6)] == [1, 1, 8, 36]
    for m in range(2, 7):
        assert factorial(m) == 1 + sum(p[k] * comb(m + 1, k + 1) for k in range(2, m + 1))


@pytest.mark.parametrize("kappa", [(1,), (2, 1), (2, 4, 1, 3), (3, 1, 4, 2)])
def test_blocks_acyclic(kappa):
    assert block_acyclicity(kappa, 6).reliable_h() == [0] * 5


def test_block_acyclicity_rejects_non_primitive():
    with pytest.raises(ValueError):
        block_acyclicity((1, 2), 4)


def test_alternating_identity_complex():
    c = alternating_identity_complex(5)
    assert c.dims == [1] * 5
    assert cohomology_dims(c).reliable_h() == [0] * 4
    assert alternating_identity_inclusion(3) == (1, 2, 3)


def test_unit_block_is_alternating_identity():
    # the block of κ = (1) is spanned by the identities and matches k → k → ...
    blk = cohomology_dims(perm_complex(5, (1,)))
    ref = cohomology_dims(alternating_identity_complex(5))
    assert blk.dims == ref.dims and blk.ranks == ref.ranks


def test_oracle_agrees_with_algebraic_side():
    assert oracle_mismatches(5) == []

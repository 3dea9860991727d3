import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadlab.exactlin.linalg import veq
from operadlab.exactlin.perms import check_right_action
from operadlab.operads import (CATALOG_NAMES, MAX_CAP, InconsistentPresentation, Presentation, ResourceBound,
                               ass_presentation, catalog, check_operad_axioms, com_presentation,
                               d_presentation, lie_presentation, mag_presentation, prelie_presentation,
                               presented_operad, quadratic_dual, sigma_character, suspension,
                               sym_presentation, tensor)
from operadlab.operads.catalog import Ass, Lie
from operadlab.operads.invariants import TwistedInvariants, average, is_invariant
from operadlab.operads.morphisms import BinaryGeneratedMap, NotAMorphism

DIMS = {
    "Ass": [1, 2, 6, 24], "uAss": [1, 1, 1, 1], "Com": [1, 1, 1, 1], "Lie": [1, 1, 2, 6],
    "Sym": [1, 1, 3, 15], "Mag": [1, 2, 12, 120], "uMag": [1, 1, 2, 5], "preLie": [1, 2, 9, 64],
    "D": [1, 4, 36, 528],
}


@pytest.mark.parametrize("name", CATALOG_NAMES)
def test_catalog_dims_and_axioms(name):
    e = catalog(name, 4)
    assert [len(e.P.basis(m)) for m in range(1, 5)] == DIMS[name]
    assert check_operad_axioms(e.P, 4) == []
    if e.dual is not None:
        assert check_operad_axioms(e.dual, 4) == []


@pytest.mark.parametrize("name", ["Ass", "Lie", "Mag", "D"])
def test_right_action(name):
    P = catalog(name, 4).P
    for n in (2, 3, 4):
        assert check_right_action(lambda v, s: P.act(v, n, s), P.basis(n), n)


@pytest.mark.parametrize("pres, name", [
    (ass_presentation, "Ass"), (com_presentation, "Com"), (lie_presentation, "Lie"),
    (prelie_presentation, "preLie"), (d_presentation, "D"), (sym_presentation, "Sym"),
    (mag_presentation, "Mag"),
])
def test_presentations_match_catalog(pres, name):
    P = presented_operad(pres(), 4)
    assert [len(P.basis(m)) for m in range(1, 5)] == DIMS[name]


@pytest.mark.parametrize("pres, dual_dims", [
    (ass_presentation, [1, 2, 6, 24]), (com_presentation, [1, 1, 2, 6]), (lie_presentation, [1, 1, 1, 1]),
    (prelie_presentation, [1, 2, 3, 4]), (d_presentation, [1, 4, 12, 48]), (sym_presentation, [1, 1, 0, 0]),
    (mag_presentation, [1, 2, 0, 0]),
])
def test_quadratic_dual_dims(pres, dual_dims):
    D = presented_operad(quadratic_dual(pres()), 4)
    assert [len(D.basis(m)) for m in range(1, 5)] == dual_dims


def test_dual_of_dual_is_back():
    p = lie_presentation()
    pp = quadratic_dual(quadratic_dual(p))
    P, PP = presented_operad(p, 4), presented_operad(pp, 4)
    assert [len(P.basis(m)) for m in range(1, 5)] == [len(PP.basis(m)) for m in range(1, 5)]


def test_monomial_detection():
    assert presented_operad(ass_presentation(), 4).monomial
    # Jacobi normal forms are not permuted by Σ_3 up to sign
    assert not presented_operad(lie_presentation(), 4).monomial


def test_presentation_json_roundtrip():
    p = d_presentation()
    q = Presentation.from_json(p.to_json())
    assert q.to_json() == p.to_json()


def test_inconsistent_presentation_rejected():
    bad = {"generators": [{"name": "mu", "arity": 2, "action": "bogus"}], "relations": []}
    with pytest.raises((ValueError, InconsistentPresentation)):
        Presentation.from_json(bad)


def test_cap_is_bounded():
    with pytest.raises(ResourceBound):
        Ass(MAX_CAP + 1)


def test_lie_arity3_character():
    # Lie(3) is the 2-dim standard representation: character 2, 0, -1
    ch = sigma_character(Lie(4), 3)
    assert ch[(1, 2, 3)] == 2
    assert ch[(2, 1, 3)] == 0
    assert ch[(2, 3, 1)] == -1


def test_tensor_and_suspension_axioms():
    T = tensor(Ass(4), Lie(4))
    assert check_operad_axioms(T, 4) == []
    assert check_operad_axioms(suspension(T), 4) == []


@pytest.mark.parametrize("name, dims", [("Ass", [1, 2, 6, 24]), ("Com", [1, 1, 0, 0]), ("Mag", [1, 2, 0, 0])])
def test_twisted_invariant_dims(name, dims):
    e = catalog(name, 4)
    T = tensor(e.P, e.dual)
    assert [TwistedInvariants(T, m).dim for m in range(1, 5)] == dims


@settings(max_examples=25, deadline=None)
@given(st.dictionaries(st.sampled_from(Ass(3).basis(3)), st.integers(-3, 3), min_size=1))
def test_average_is_idempotent_projection(v):
    e = catalog("Ass", 3)
    T = tensor(e.P, e.dual)
    z = {(k, (1, 2, 3)): c for k, c in v.items()}
    a = average(T, z, 3)
    assert is_invariant(T, a, 3)
    assert veq(average(T, a, 3), a)


def test_binary_generated_map_detects_non_morphism():
    # sending the Ass product to the Lie bracket does not respect associativity
    ass, lie = Ass(3), Lie(3)
    F = BinaryGeneratedMap(ass, lie, {(1, 2): {(1, 2): 1}})
    assert F.inconsistencies(3)
    with pytest.raises(NotAMorphism):
        F.images(3)


def test_binary_generated_map_lie_to_ass_commutator():
    ass, lie = Ass(4), Lie(4)
    F = BinaryGeneratedMap(lie, ass, {(1, 2): {(1, 2): 1, (2, 1): -1}})
    for n in (2, 3, 4):
        assert F.inconsistencies(n) == []
    # the map is injective: Lie(n) embeds in Ass(n)
    from operadlab.exactlin.linalg import rank
    assert rank(list(F.images(4).values())) == 6


import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from operadlab.liecplx import (LieElement, NotAssociative, bracket, bracket_sigma, catalog_chi, check_associative,
                               chi_symmetric, circ, delta_omega, delta_sigma, invariant_element,
                               nonsigma_soul_cohomology, presentation_chi, soul_cohomology, soul_complex)
from operadlab.exactlin.complexes import cohomology_dims
from operadlab.operads import catalog, ass_presentation, com_presentation, d_presentation, lie_presentation
from operadlab.operads.catalog import Ass

CAP = 5
A5 = Ass(CAP)


def element(draw_arity, coeffs):
    keys = A5.basis(draw_arity)
    return LieElement(A5, {draw_arity: {k: c for k, c in zip(keys, coeffs) if c}})


arity_elem = st.integers(1, 2).flatmap(
    lambda m: st.lists(st.integers(-2, 2), min_size=len(A5.basis(m)), max_size=len(A5.basis(m)))
    .map(lambda cs: element(m, cs)))


def _deg(x):
    return x.degree() or 0


@settings(max_examples=40, deadline=None)
@given(arity_elem, arity_elem, arity_elem)
def test_graded_prelie_identity(f, g, h):
    # (f∘g)∘h - f∘(g∘h) is graded symmetric in g, h
    lhs = circ(circ(f, g), h) - circ(f, circ(g, h))
    rhs = circ(circ(f, h), g) - circ(f, circ(h, g))
    if f.is_zero() or g.is_zero() or h.is_zero():
        return
    assert lhs == rhs.scale((-1) ** (_deg(g) * _deg(h)))


@settings(max_examples=40, deadline=None)
@given(arity_elem, arity_elem, arity_elem)
def test_graded_jacobi(f, g, h):
    if f.is_zero() or g.is_zero() or h.is_zero():
        return
    a, b, c = _deg(f), _deg(g), _deg(h)
    total = (bracket(f, bracket(g, h)).scale((-1) ** (a * c))
             + bracket(g, bracket(h, f)).scale((-1) ** (b * a))
             + bracket(h, bracket(f, g)).scale((-1) ** (c * b)))
    assert total.is_zero()


@settings(max_examples=30, deadline=None)
@given(arity_elem, arity_elem)
def test_bracket_graded_antisymmetry(f, g):
    if f.is_zero() or g.is_zero():
        return
    assert bracket(f, g) == bracket(g, f).scale(-((-1) ** (_deg(f) * _deg(g))))


@pytest.mark.parametrize("name", ["Ass", "Com", "Lie", "Sym", "Mag", "D"])
def test_chi_symmetric_and_self_bracket_zero(name):
    T, chi = catalog_chi(name, 4)
    assert chi_symmetric(chi)
    assert bracket_sigma(chi, chi).is_zero()


def test_plain_self_bracket_is_not_zero_but_averages_away():
    T, chi = catalog_chi("Ass", 4)
    assert not bracket(chi, chi).is_zero()
    assert bracket_sigma(chi, chi).is_zero()


def test_nonsigma_chi_is_associative():
    for name in ("uAss", "uMag"):
        T, chi = catalog_chi(name, 4)
        assert check_associative(chi) == {}


def test_delta_omega_rejects_non_associative():
    T, chi = catalog_chi("uAss", 4)
    bad = chi + LieElement(T, {3: {T.basis(3)[0]: 1}})
    with pytest.raises(ValueError):
        delta_omega(chi, bad)
    w = LieElement(T, {2: {T.basis(2)[0]: 2}})
    # 2χ̲ is still associative (homogeneous quadratic condition)
    assert check_associative(w) == {}


def test_delta_sigma_squares_to_zero():
    T, chi = catalog_chi("Ass", 5)
    from operadlab.operads.invariants import TwistedInvariants

    inv = TwistedInvariants(T, 2)
    for lab in inv.labels:
        t = invariant_element(T, 2, inv.vector(lab))
        assert delta_sigma(chi, delta_sigma(chi, t)).is_zero()


def test_invariant_element_rejects_non_invariant():
    T, chi = catalog_chi("Ass", 3)
    with pytest.raises(ValueError):
        invariant_element(T, 2, {T.basis(2)[0]: 1})


def test_ass_soul_is_acyclic():
    tab = soul_cohomology("Ass", 6)
    assert tab.dims == [1, 2, 6, 24, 120, 720]
    assert tab.reliable_h() == [0] * 5
    assert tab.reliable == [True] * 5 + [False]


def test_com_lie_soul_dims():
    # the sign representation occurs in Lie(m) only for m <= 2
    for name in ("Com", "Lie"):
        tab = soul_cohomology(name, 6)
        assert tab.dims == [1, 1, 0, 0, 0, 0]
        assert tab.reliable_h() == [0] * 5


def test_d_soul_low_degrees():
    tab = soul_cohomology("D", 4)
    assert tab.dims[:3] == [1, 8, 72]
    assert tab.h[:3] == [0, 1, 0]


def test_nonsigma_souls_acyclic():
    for name in ("uAss", "uMag"):
        assert nonsigma_soul_cohomology(name, 5).reliable_h() == [0] * 4
    with pytest.raises(ValueError):
        nonsigma_soul_cohomology("Ass", 3)


@pytest.mark.parametrize("pres, name", [(ass_presentation, "Ass"), (com_presentation, "Com"),
                                        (lie_presentation, "Lie"), (d_presentation, "D")])
def test_presentation_path_matches_catalog(pres, name):
    T, chi = presentation_chi(pres(), 4)
    tab = cohomology_dims(soul_complex(T, chi, 4))
    ref = soul_cohomology(name, 4)
    assert tab.dims == ref.dims and tab.h == ref.h


def test_catalog_without_dual_raises():
    assert catalog("preLie", 3).dual is None
    with pytest.raises(ValueError):
        catalog_chi("preLie", 3)

from itertools import product
from math import factorial

import pytest

from operadlab.cochain import (PAlgebra, _library, basis_cochains, chi_vector, cup_act, diagonal_element,
                               dual_numbers, hochschild_embedding, intrinsic_bracket, prelie_circle)
from operadlab.cupnat import (A_map, Black, InvalidSpec, L_map, Leaf, NaturalOpSpec, White, bracket_op,
                              compose_ops_spec, constant_op, cup_tree_op, delta_on_op, enumerate_tree_ops,
                              enumerate_trees, eval_natural_op, identity_op, image_exactness_evidence,
                              insert_spec, is_cup_closed, lin_sigma_dim, module_endo_space,
                              nonsigma_cup_check, nonsigma_setup, nonsigma_to_symmetric, op_degree, op_matrix,
                              prelie_op, projection_op, sym_b1_fixture, triangle_check,
                              zp_closed_under_composition, zp_solve)
from operadlab.exactlin.linalg import nullspace, rank, vadd, veq, vscale
from operadlab.exactlin.perms import all_perms
from operadlab.liecplx import catalog_chi, invariant_element, soul_realize
from operadlab.operads import catalog
from operadlab.operads.constructions import Tensor
from operadlab.operads.invariants import TwistedInvariants


@pytest.fixture(scope="module")
def alg():
    # a 2-dim noncommutative algebra with a left unit
    return PAlgebra("Ass", 2, _library("Ass", 2)[2], 4)


# -- cup-product spaces ---------------------------------------------------------

@pytest.mark.parametrize("name, n, dim", [("Ass", n, factorial(n)) for n in (1, 2, 3)]
                         + [("Lie", n, factorial(n - 1)) for n in (1, 2, 3)]
                         + [("Com", 3, 2), ("D", 2, 4)])
def test_zp_dims(name, n, dim):
    assert len(zp_solve(name, n)) == dim


def test_zp_contains_canonical_element():
    T, chi = catalog_chi("Ass", 3)
    assert is_cup_closed("Ass", chi.comps[2], 2)


def test_zp_needs_room():
    with pytest.raises(ValueError):
        zp_solve("Ass", 3, cap=3)


def test_zp_closed_under_composition():
    r = zp_closed_under_composition("Ass", 4)
    assert r["failures"] == [] and r["checked"] > 0


def test_nonsigma_every_element_solves():
    # each arity of uAss ⊗ uAss is spanned by the diagonal generator
    for n in range(1, 5):
        ok, _ = nonsigma_cup_check({(n, n): 3}, n)
        assert ok
        assert is_cup_closed("Ass", nonsigma_to_symmetric({(n, n): 1}, n), n)


def test_nonsigma_check_detects_failure():
    # in uMag ⊗ uMag the product is not associative, so χ itself fails
    P = catalog("uMag", 4).P
    mu = P.basis(2)[0]
    T = Tensor(P, P)
    c = {(mu, mu): 1}
    ok, witness = nonsigma_cup_check(c, 2, T, c)
    assert not ok and witness is not None


def test_nonsigma_setup_shape():
    T, chi = nonsigma_setup(4)
    assert T.basis(3) == [(3, 3)] and chi == {(2, 2): 1}


# -- maps from Lie and Ass ------------------------------------------------------

@pytest.mark.parametrize("name, cap", [("Ass", 4), ("Mag", 3)])
def test_triangle_commutes(name, cap):
    assert triangle_check(name, cap) == []


def test_l_map_lands_in_zp():
    Lm = L_map("Ass", 4)
    for n in (2, 3):
        for k in catalog("Lie", 4).P.basis(n):
            assert is_cup_closed("Ass", Lm.apply({k: 1}, n), n, cap=4)


def test_a_map_is_a_morphism():
    Am = A_map("Ass", 4)
    assert all(Am.inconsistencies(n) == [] for n in (2, 3, 4))


def test_image_exactness_on_dual_numbers():
    A = dual_numbers("Ass", 4)
    rL = image_exactness_evidence(A, "L", (2,), 2)
    assert rL["rows"] and rL["all_exact"]
    rA = image_exactness_evidence(A, "A", (2,), 2)
    # the associative image carries the nontrivial cup product
    assert not rA["all_exact"]


# -- unary operations -------------------------------------------------------------

def _brute_force_module_endos(name, cap):
    """Every matrix entry of every α_m unknown; the slow reference."""
    Q = catalog(name, cap).dual
    unknowns = [(m, a, b) for m in range(1, cap + 1) for a in Q.basis(m) for b in Q.basis(m)]

    def apply(m, x):
        out = {}
        for b, c in x.items():
            for a in Q.basis(m):
                vadd(out.setdefault(a, {}), {(m, a, b): c})
        return out

    rows = []
    for m in range(1, cap + 1):
        for s in all_perms(m):
            for b in Q.basis(m):
                lhs = {}
                for a, u in apply(m, {b: 1}).items():
                    for a2, c in Q.act_key(a, m, s).items():
                        vadd(lhs.setdefault(a2, {}), u, c)
                for a2, u in apply(m, Q.act_key(b, m, s)).items():
                    vadd(lhs.setdefault(a2, {}), u, -1)
                rows += [v for v in lhs.values() if v]
    for m in range(1, cap + 1):
        for n in range(1, cap - m + 2):
            for p, q, i in product(Q.basis(m), Q.basis(n), range(1, m + 1)):
                lhs = apply(m + n - 1, Q.compose_keys(i, p, m, q, n))
                for a, u in apply(n, {q: 1}).items():
                    for k, c in Q.compose_keys(i, p, m, a, n).items():
                        vadd(lhs.setdefault(k, {}), vscale(u, -c))
                rows += [v for v in lhs.values() if v]
    return len(nullspace(rows, unknowns))


@pytest.mark.parametrize("name", ["Ass", "Com", "Lie", "Sym", "D"])
def test_module_endos_match_brute_force(name):
    assert len(module_endo_space(name, 3)) == _brute_force_module_endos(name, 3) == 1


def test_module_endo_is_identity():
    (alpha,) = module_endo_space("Ass", 3)
    scale = alpha[1][((1,), (1,))]
    for m, mat in alpha.items():
        assert all((a == b and c == scale) or (a != b and c == 0) for (a, b), c in mat.items())


def test_lin_sigma_dims():
    assert lin_sigma_dim("Sym", 5) == 2
    # Ass!(m) is the regular representation: Σ m!
    assert lin_sigma_dim("Ass", 4) == sum(factorial(m) for m in range(1, 5))


def test_sym_fixture():
    fx = sym_b1_fixture()
    assert fx["h"] == [1, 1]
    assert fx["axiom_errors"] == [] and fx["d_squared_nonzero"] == []


# -- natural operations -----------------------------------------------------------

def test_spec_validation():
    with pytest.raises(InvalidSpec):
        NaturalOpSpec(White(2, [Leaf(1)]), (1,), {})
    with pytest.raises(InvalidSpec):
        NaturalOpSpec(White(1, [Leaf(1), Leaf(3)]), (2,), {})
    with pytest.raises(InvalidSpec):
        NaturalOpSpec(Black({}, [Leaf(1)]), (), {})
    with pytest.raises(InvalidSpec):
        NaturalOpSpec(White(1, [Leaf(2), Leaf(1)]), (2,), {}, planar=True)


def test_tree_counts():
    assert len(enumerate_trees((), 2, 1)) == 1
    assert len(enumerate_trees((2,), 2, 0)) == 2
    assert len(enumerate_trees((1, 1), 2, 1)) == 12
    assert all(op_degree(NaturalOpSpec(t, (1, 1), {})) == 1 for t in enumerate_trees((1, 1), 2, 1))


def test_identity_prelie_bracket_cup(alg):
    A = alg
    B1, B2 = basis_cochains(A, 1), basis_cochains(A, 2)
    assert all(veq(identity_op()(A, [(f, 2)]), f) for f in B2)
    pre, br = prelie_op(A.P_dual), bracket_op(A.P_dual)
    cup = cup_tree_op(chi_vector(A), 2, A.P_dual)
    diag = cup_tree_op(diagonal_element(A), 2, A.P_dual)
    for f in B2[:4]:
        for g in B2[:4]:
            args = [(f, 2), (g, 2)]
            assert veq(pre(A, args), prelie_circle(A, f, 2, g, 2))
            assert veq(br(A, args), intrinsic_bracket(A, f, 2, g, 2))
            assert veq(diag(A, args), cup_act(A, diagonal_element(A), 2, args))
        for g in B1:
            assert veq(cup(A, [(g, 1), (f, 2)]), cup_act(A, chi_vector(A), 2, [(g, 1), (f, 2)]))


def test_constant_operation_is_soul_realization(alg):
    A = alg
    T, _ = catalog_chi("Ass", 4)
    p, q = (1, 3, 2), (2, 1, 3)
    inv = TwistedInvariants(T, 3)
    z = inv.to_vector(inv.coords({(p, q): 1}))
    realized = soul_realize(invariant_element(T, 3, z), A)
    assert veq(realized.vec, constant_op({p: 1}, {q: 1}, 3)(A, []))


def test_delta_on_operations(alg):
    A = alg
    B = {m: basis_cochains(A, m) for m in (1, 2)}
    dpre = delta_on_op(prelie_op(A.P_dual), A)
    dbr = delta_on_op(bracket_op(A.P_dual), A)
    did = delta_on_op(identity_op(), A)
    cup = cup_tree_op(chi_vector(A), 2, A.P_dual)
    for m1, m2 in ((1, 1), (1, 2), (2, 1)):
        for f in B[m1][:3]:
            for g in B[m2][:3]:
                args = [(f, m1), (g, m2)]
                assert veq(dpre(args), vscale(cup(A, args), -2))
                assert dbr(args) == {}
    assert all(did([(f, m)]) == {} for m in (1, 2) for f in B[m])
    # projections are not closed
    dp = delta_on_op(projection_op(1), A)
    assert any(dp([(f, m)]) for m in (1, 2) for f in B[m])


def test_insertion_is_averaged(alg):
    A = alg
    B2 = basis_cochains(A, 2)
    # outer operation with a non-equivariant Φ
    u = NaturalOpSpec(White(1, [Leaf(2), Leaf(1)]), (2,), {((1, 2),): {(1, 2): 1}})
    v = NaturalOpSpec(White(1, [Leaf(1), Leaf(2)]), (2,), {((2, 1),): {(2, 1): 1}, ((1, 2),): {(2, 1): 3}})
    naive_fails = False
    for f in B2:
        lhs = eval_natural_op(u, A, [eval_natural_op(v, A, [f])])
        rhs = {}
        for s in compose_ops_spec(u, 1, v, A.P_dual):
            vadd(rhs, eval_natural_op(s, A, [f]))
        assert veq(lhs, rhs)
        naive_fails |= not veq(lhs, eval_natural_op(insert_spec(u, 1, v), A, [f]))
    assert naive_fails


def test_enumerated_operations_span_gerstenhaber_operations(alg):
    # C^1 ⊗ C^1 → C^2 for Ass: tree operations and (f∘_i g)σ, (g∘_i f)σ span the same space
    A = alg
    specs = enumerate_tree_ops((2, 2), 3, 0, A.P, A.P_dual)
    E = A.End
    e2 = E.basis(2)
    pairs = [(i, j) for i in range(len(e2)) for j in range(len(e2))]
    inputs = [((i, j), [hochschild_embedding(A, {e2[i]: 1}, 2), hochschild_embedding(A, {e2[j]: 1}, 2)])
              for i, j in pairs]
    M = op_matrix(specs, A, (2, 2), inputs)
    H = []
    for swap in (False, True):
        for i in (1, 2):
            for s in all_perms(3):
                row = {}
                for (a, b) in pairs:
                    x, y = {e2[a]: 1}, {e2[b]: 1}
                    if swap:
                        x, y = y, x
                    v = E.act(E.compose(i, x, 2, y, 2), 3, s)
                    for k, c in hochschild_embedding(A, v, 3).items():
                        row[((a, b), k)] = c
                H.append(row)
    assert rank(M) == rank(H) == rank(M + H) == 20

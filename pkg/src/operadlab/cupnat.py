"""Cup-product operations: the closed part Z_P of P⊗P!, the maps from Lie and
Ass into it, unary module endomorphisms of P!, a small dg-algebra fixture,
and natural operations described by decorated trees.

Elements t ∈ P⊗P!(n) are stored unsuspended, as vectors of the plain
``Tensor(P, P!)``; ``cochain.cup_act`` supplies the suspension signs when
they act on cochains.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .exactlin.linalg import Vec, nullspace, rank, vadd, veq, vscale, vsub
from .exactlin.perms import all_perms, cycle, inverse, sign
from .liecplx import catalog_chi
from .operads.base import Operad, sigma_character
from .operads.catalog import NonSigmaOneDim, catalog
from .operads.constructions import Tensor
from .operads.morphisms import BinaryGeneratedMap

# ---------------------------------------------------------------------------
# Z_P: elements of P⊗P! acting by chain maps


def _setup(name: str, cap: int):
    T, chi = catalog_chi(name, cap)
    return T, chi.comps.get(2, {})


def zp_residual(T: Operad, chi: Vec, t: Vec, n: int) -> Vec:
    """χ∘_2 t − t∘_1 χ − Σ_{i≥2} (t∘_i χ)·(i…1) in T(n+1).

    Zero exactly when the cup action of t commutes with d_P (up to the
    Koszul signs of a degree n-1 operation).
    """
    out: Vec = {}
    vadd(out, T.compose(2, chi, 2, t, n))
    vadd(out, T.compose(1, t, n, chi, 2), -1)
    for i in range(2, n + 1):
        vadd(out, T.act(T.compose(i, t, n, chi, 2), n + 1, inverse(cycle(i, n))), -1)
    return out


def _kernel(T: Operad, chi: Vec, n: int) -> List[Vec]:
    B = T.basis(n)
    rows: Dict = {}
    for b in B:
        for k, c in zp_residual(T, chi, {b: 1}, n).items():
            rows.setdefault(k, {})[b] = c
    return nullspace(list(rows.values()), B)


def zp_solve(name: str, n: int, cap: Optional[int] = None) -> List[Vec]:
    """Basis of Z_P(n) for a catalog operad (deterministic order)."""
    cap = n + 1 if cap is None else cap
    if n + 1 > cap:
        raise ValueError(f"Z_P({n}) needs arity {n + 1} data; cap {cap} is too small")
    T, chi = _setup(name, cap)
    return _kernel(T, chi, n)


def is_cup_closed(name: str, t: Vec, n: int, cap: Optional[int] = None) -> bool:
    T, chi = _setup(name, max(n + 1, cap or 0))
    return not zp_residual(T, chi, t, n)


def zp_closed_under_composition(name: str, bound: int = 4) -> dict:
    """∘_i of Z_P basis elements (output arity <= bound) solve the equation again."""
    T, chi = _setup(name, bound + 1)
    Z = {n: _kernel(T, chi, n) for n in range(1, bound + 1)}
    checked, failures = 0, []
    for m in range(2, bound + 1):
        for n in range(1, bound - m + 2):
            for a, x in enumerate(Z[m]):
                for b, y in enumerate(Z[n]):
                    for i in range(1, m + 1):
                        z = T.compose(i, x, m, y, n)
                        checked += 1
                        if zp_residual(T, chi, z, m + n - 1):
                            failures.append(f"Z({m})[{a}] ∘_{i} Z({n})[{b}]")
    return {"operad": name, "bound": bound, "dims": {n: len(v) for n, v in Z.items()},
            "checked": checked, "failures": failures}


# ---------------------------------------------------------------------------
# non-Σ version


def nonsigma_setup(cap: int = 5) -> Tuple[Tensor, Vec]:
    """Plain uAss⊗uAss! (one key per arity) and its canonical element."""
    T = Tensor(NonSigmaOneDim(cap), NonSigmaOneDim(cap))
    return T, {(2, 2): 1}


def nonsigma_cup_check(t: Vec, n: int, T: Optional[Tensor] = None,
                       chi: Optional[Vec] = None) -> Tuple[bool, Optional[tuple]]:
    """χ̲∘_2t = t∘_1χ̲ = … = t∘_nχ̲ = χ̲∘_1t; returns (ok, first unequal pair)."""
    if T is None:
        T, chi = nonsigma_setup(max(5, n + 1))
    exprs = [("χ∘_2t", T.compose(2, chi, 2, t, n))]
    exprs += [(f"t∘_{i}χ", T.compose(i, t, n, chi, 2)) for i in range(1, n + 1)]
    exprs.append(("χ∘_1t", T.compose(1, chi, 2, t, n)))
    for name, v in exprs[1:]:
        if not veq(v, exprs[0][1]):
            return False, (exprs[0], (name, v))
    return True, None


def nonsigma_to_symmetric(t: Vec, n: int) -> Vec:
    """uAss⊗uAss!(n) → Ass⊗Ass!(n): the generator goes to id_n ⊗ id_n."""
    ident = tuple(range(1, n + 1))
    return {(ident, ident): c for _, c in t.items()}


# ---------------------------------------------------------------------------
# maps ↑Lie → Z_P and ↑Ass → Z_P
#
# In the unsuspended picture ↑Lie sits in P⊗P! as the image of the operad map
# Com ⊗-twisted by sgn, i.e. the map Lie → P⊗P! sending λ to the identity
# operator; suspension only changes signs, which cup_act supplies.


def _source(kind: str, cap: int) -> Operad:
    return catalog("Lie" if kind == "Lie" else "Ass", cap).P


def L_map(name: str, cap: int = 4) -> BinaryGeneratedMap:
    """Lie → P⊗P! with λ ↦ χ."""
    T, chi = _setup(name, cap)
    return BinaryGeneratedMap(_source("Lie", cap), T, {(1, 2): chi})


def nonsigma_chi(name: str, cap: int) -> Vec:
    """χ̲: the part of χ supported on the identity-order generators."""
    if name == "Ass":
        return {((1, 2), (1, 2)): 1}
    if name == "Mag":
        return {(("mu", 0, (1, 2)), (1, 2)): 1}
    raise ValueError(f"{name} is not the symmetrization of a non-Σ operad in the catalog")


def A_map(name: str, cap: int = 4) -> BinaryGeneratedMap:
    """Ass → P⊗P! with μ ↦ χ̲."""
    T, _ = _setup(name, cap)
    return BinaryGeneratedMap(_source("Ass", cap), T, {(1, 2): nonsigma_chi(name, cap)})


def anticommutator(x: Vec, n: int, cap: int = 4) -> Vec:
    """↑Lie → ↑Ass, ↑λ ↦ ↑μ + ↑μ·(12), applied to a Lie element of arity n.

    Unsuspended this is the commutator λ ↦ μ − μ·(12): the sign twist of the
    suspension turns one into the other.
    """
    F = BinaryGeneratedMap(_source("Lie", cap), _source("Ass", cap), {(1, 2): {(1, 2): 1, (2, 1): -1}})
    return F.apply(x, n)


def triangle_check(name: str, cap: int = 4) -> List[str]:
    """L = A ∘ anticommutator on every Lie basis element of arity <= cap."""
    Lm, Am = L_map(name, cap), A_map(name, cap)
    src = _source("Lie", cap)
    errs = []
    for n in range(1, cap + 1):
        for k in src.basis(n):
            lhs = Lm.apply({k: 1}, n)
            rhs = Am.apply(anticommutator({k: 1}, n, cap), n)
            if not veq(lhs, rhs):
                errs.append(f"arity {n} {k}: L={lhs} A∘ac={rhs}")
    return errs


def image_exactness_evidence(A, kind: str = "L", arities=(2,), max_degree: int = 2) -> dict:
    """Does the cup action of Im(L) (or Im(A)) send cocycles to coboundaries?

    For each image basis element t of arity n and every tuple of cocycle
    representatives with total degree <= max_degree, t(f_1..f_n) is tested for
    membership in the coboundaries of the concrete complex of A.
    """
    from itertools import product

    from .cochain import CohomologyModel, build_complex, cup_act

    top = max_degree + 1
    ac = build_complex(A, min(A.cap, top + 1))
    H = CohomologyModel(ac)
    F = L_map(A.operad, A.cap) if kind == "L" else A_map(A.operad, A.cap)
    src = _source("Lie" if kind == "L" else "Ass", A.cap)
    rows = []
    for n in arities:
        imgs = []
        for k in src.basis(n):
            v = F.apply({k: 1}, n)
            if v and rank([v] + imgs) > len(imgs):
                imgs.append(v)
        for t in imgs:
            for degs in product(range(0, max_degree + 1), repeat=n):
                out_deg = sum(degs) + n - 1
                if out_deg > max_degree or any(H.dim(d) == 0 for d in degs):
                    continue
                for idx in product(*[range(H.dim(d)) for d in degs]):
                    args = [(H.rep_vector(d, i), d + 1) for d, i in zip(degs, idx)]
                    z = cup_act(A, t, n, args)
                    rows.append({"arity": n, "degrees": degs, "classes": idx,
                                 "exact": H.is_coboundary(out_deg, z)})
    return {"algebra": A.operad, "kind": kind, "rows": rows,
            "all_exact": all(r["exact"] for r in rows)}


# ---------------------------------------------------------------------------
# unary operations: module endomorphisms of P!


def module_endo_space(name: str, cap: int = 5) -> List[Dict[int, Dict]]:
    """Collections α_m: P!(m) → P!(m), equivariant and with α(p∘_i q) = p∘_i α(q).

    Since p = p∘_1 1, such an α is pinned down by v = α_1(1) through
    α_m(p) = p∘_1 v.  The unknowns are the coordinates of v in P!(1); every
    equivariance and composition condition is then imposed on the induced
    collection.  The returned basis elements map arity ->
    {(out key, in key): coefficient}.
    """
    Q = catalog(name, cap).dual
    units = Q.basis(1)
    # candidate collections, one per basis vector of P!(1)
    cands = [{m: {b: Q.compose_keys(1, b, m, e, 1) for b in Q.basis(m)} for m in range(1, cap + 1)}
             for e in units]

    def alpha(j, m, x):
        out: Vec = {}
        for b, c in x.items():
            vadd(out, cands[j][m][b], c)
        return out

    rows: Dict = {}

    def impose(tag, j, vec):
        for k, c in vec.items():
            vadd(rows.setdefault((tag, k), {}), {j: c})

    for j in range(len(units)):
        for m in range(1, cap + 1):
            for s in all_perms(m):
                for b in Q.basis(m):
                    r = Q.act(alpha(j, m, {b: 1}), m, s)
                    vadd(r, alpha(j, m, Q.act_key(b, m, s)), -1)
                    impose(("sym", m, s, b), j, r)
        for m in range(1, cap + 1):
            for n in range(1, cap - m + 2):
                for p in Q.basis(m):
                    for q in Q.basis(n):
                        for i in range(1, m + 1):
                            r = alpha(j, m + n - 1, Q.compose_keys(i, p, m, q, n))
                            vadd(r, Q.compose(i, {p: 1}, m, alpha(j, n, {q: 1}), n), -1)
                            impose(("comp", i, p, q), j, r)
    basis = nullspace([r for r in rows.values() if r], list(range(len(units))))
    out = []
    for v in basis:
        coll: Dict[int, Dict] = {}
        for m in range(1, cap + 1):
            for b in Q.basis(m):
                img: Vec = {}
                for j, c in v.items():
                    vadd(img, cands[j][m][b], c)
                for a, x in img.items():
                    coll.setdefault(m, {})[(a, b)] = x
        out.append(coll)
    return out


def lin_sigma_dim(name: str, cap: int = 5) -> int:
    """Σ_m dim Hom_Σ_m(P!(m), P!(m)) over m <= cap (character inner products)."""
    Q = catalog(name, cap).dual
    total = Fraction(0)
    for m in range(1, cap + 1):
        if not Q.basis(m):
            continue
        ch = sigma_character(Q, m)
        # characters of permutation-type modules are real, so <χ,χ> = Σχ(g)^2/|G|
        total += Fraction(sum(c * c for c in ch.values()), len(ch))
    return int(total)


# ---------------------------------------------------------------------------
# the 4-dimensional dg algebra of unary operations for Sym


SYM_FIXTURE_BASIS = ("alpha", "beta", "u", "v")
SYM_FIXTURE_DEGREES = {"alpha": 0, "beta": 0, "u": 1, "v": 1}


def sym_fixture_product(x: str, y: str) -> Vec:
    if x == y and x in ("alpha", "beta"):
        return {x: 1}
    if x in ("u", "v") and y in ("alpha", "beta"):
        # bα = b, bβ = 0
        return {x: 1} if y == "alpha" else {}
    if x in ("alpha", "beta") and y in ("u", "v"):
        # αb = 0, βb = b
        return {y: 1} if x == "beta" else {}
    return {}


def sym_fixture_differential(x: str) -> Vec:
    return {"alpha": {"u": 1, "v": -1}, "beta": {"u": -1, "v": 1}}.get(x, {})


def sym_b1_fixture() -> dict:
    """Cohomology of the fixture and checks of its dg-algebra axioms."""
    from .exactlin.complexes import ComplexRep, cohomology_dims
    from .exactlin.linalg import BasedSpace, LinMap

    V0, V1 = BasedSpace(("alpha", "beta")), BasedSpace(("u", "v"))
    d = LinMap(V0, V1, [sym_fixture_differential(x) for x in V0.labels])
    tab = cohomology_dims(ComplexRep([V0, V1], [d], truncated=False, name="B(Sym,1)"))
    errs = []
    for x in SYM_FIXTURE_BASIS:
        for y in SYM_FIXTURE_BASIS:
            for z in SYM_FIXTURE_BASIS:
                l = {}
                for k, c in sym_fixture_product(x, y).items():
                    vadd(l, sym_fixture_product(k, z), c)
                r = {}
                for k, c in sym_fixture_product(y, z).items():
                    vadd(r, sym_fixture_product(x, k), c)
                if not veq(l, r):
                    errs.append(f"({x}{y}){z} != {x}({y}{z})")
            # Leibniz: d(xy) = dx·y + (-1)^|x| x·dy
            lhs = {}
            for k, c in sym_fixture_product(x, y).items():
                vadd(lhs, sym_fixture_differential(k), c)
            rhs = {}
            for k, c in sym_fixture_differential(x).items():
                vadd(rhs, sym_fixture_product(k, y), c)
            for k, c in sym_fixture_differential(y).items():
                vadd(rhs, sym_fixture_product(x, k), c * (-1) ** SYM_FIXTURE_DEGREES[x])
            if not veq(lhs, rhs):
                errs.append(f"Leibniz fails on {x},{y}")
    d2 = [x for x in SYM_FIXTURE_BASIS
          if any(sym_fixture_differential(k) for k in sym_fixture_differential(x))]
    return {"h": tab.h[:2], "axiom_errors": errs, "d_squared_nonzero": d2,
            "h0_rep": {"alpha": 1, "beta": 1}, "h1_rep": {"u": 1},
            "b0_dim_from_dual": lin_sigma_dim("Sym", 3), "kernel0": d.kernel()}


# ---------------------------------------------------------------------------
# natural operations given by decorated trees


@dataclass
class Leaf:
    label: int


@dataclass
class White:
    """White vertex w_index; ``children`` lists its input edges in their linear order."""
    index: int
    children: list


@dataclass
class Black:
    """Black vertex decorated by ``decoration`` ∈ P(len(children))."""
    decoration: Vec
    children: list


def _leaves(node) -> List[int]:
    if isinstance(node, Leaf):
        return [node.label]
    return [x for c in node.children for x in _leaves(c)]


def _vertices(node):
    if isinstance(node, Leaf):
        return
    yield node
    for c in node.children:
        yield from _vertices(c)


class InvalidSpec(ValueError):
    pass


@dataclass
class NaturalOpSpec:
    """U_(T,Φ): a tree with white vertices 1..n and black P-decorated ones, plus Φ.

    ``phi`` maps a tuple (q_1..q_n) of P! basis keys to a vector of ↑P!(a);
    it is a dict (missing tuples map to 0) or a callable.  With no white
    vertices the only tuple is ().
    """
    root: object
    arities: Tuple[int, ...]
    phi: object
    planar: bool = False

    def __post_init__(self):
        self.arities = tuple(self.arities)
        whites = sorted(v.index for v in _vertices(self.root) if isinstance(v, White))
        if whites != list(range(1, len(self.arities) + 1)):
            raise InvalidSpec(f"white vertices {whites} must be 1..{len(self.arities)} once each")
        for v in _vertices(self.root):
            if isinstance(v, White) and len(v.children) != self.arities[v.index - 1]:
                raise InvalidSpec(f"white vertex {v.index} has {len(v.children)} inputs, "
                                  f"expected {self.arities[v.index - 1]}")
            if isinstance(v, Black) and len(v.children) < 2:
                raise InvalidSpec("black vertices must be at least binary")
        labels = _leaves(self.root)
        if sorted(labels) != list(range(1, len(labels) + 1)):
            raise InvalidSpec(f"leaf labels {labels} are not 1..{len(labels)}")
        if self.planar and labels != sorted(labels):
            raise InvalidSpec("a planar tree must have its legs in order")

    @property
    def n(self) -> int:
        return len(self.arities)

    @property
    def out_arity(self) -> int:
        return len(_leaves(self.root))

    def phi_value(self, qs: tuple) -> Vec:
        if callable(self.phi):
            return self.phi(qs)
        return self.phi.get(qs, {})

    def canonical(self) -> str:
        if "_canon" not in self.__dict__:
            self.__dict__["_canon"] = tree_string(self.root)
        return self.__dict__["_canon"]


def tree_string(node) -> str:
    if isinstance(node, Leaf):
        return str(node.label)
    inner = ",".join(tree_string(c) for c in node.children)
    if isinstance(node, White):
        return f"w{node.index}[{inner}]"
    dec = "+".join(f"{c}*{k!r}" for k, c in sorted(node.decoration.items(), key=repr))
    return f"b<{dec}>[{inner}]"


def op_degree(spec: NaturalOpSpec) -> int:
    """Σ over black vertices of (arity − 1)."""
    return sum(len(v.children) - 1 for v in _vertices(spec.root) if isinstance(v, Black))


def _tree_composite(A, node, decor: Dict[int, object]) -> Tuple[Vec, List[int]]:
    """End_A element obtained by composing along ``node``; leaf labels in slot order."""
    E = A.End
    if isinstance(node, Leaf):
        return E.unit_element(), [node.label]
    if isinstance(node, White):
        top, k = {decor[node.index]: 1}, len(node.children)
    else:
        k = len(node.children)
        top = A.alpha_vec(node.decoration, k)
    args, labels = [], []
    for c in node.children:
        v, lab = _tree_composite(A, c, decor)
        if not v:
            return {}, []
        args.append((v, len(lab)))
        labels += lab
    return E.gamma(top, k, args), labels


def _relabel(A, v: Vec, labels: List[int]) -> Vec:
    # slot s receives the leaf labelled labels[s]; input j must land in slot σ(j)
    if labels == sorted(labels):
        return v
    return A.End.act(v, len(labels), inverse(tuple(labels)))


def eval_tilde(spec: NaturalOpSpec, A, fs: List[Vec]) -> Vec:
    """Ũ(f_1..f_n) ∈ End_A(a) ⊗ ↑P!(a), before averaging (inputs need not be invariant)."""
    from itertools import product

    if len(fs) != spec.n:
        raise ValueError(f"operation takes {spec.n} inputs, got {len(fs)}")
    out: Vec = {}
    # composites along a tree only depend on the white decorations; shared per algebra
    cache = A.__dict__.setdefault("_tree_cache", {}).setdefault(spec.canonical(), {})
    for terms in product(*[list(f.items()) for f in fs]):
        qs = tuple(k[1] for k, _ in terms)
        phi = spec.phi_value(qs)
        if not phi:
            continue
        es = tuple(k[0] for k, _ in terms)
        if es not in cache:
            v, lab = _tree_composite(A, spec.root, {i + 1: e for i, e in enumerate(es)})
            cache[es] = _relabel(A, v, lab) if v else {}
        comp = cache[es]
        if not comp:
            continue
        c = 1
        for _, x in terms:
            c *= x
        for e, x in comp.items():
            for q, y in phi.items():
                vadd(out, {(e, q): x * y * c})
    return out


def eval_natural_op(spec: NaturalOpSpec, A, fs: List[Vec]) -> Vec:
    """U(f_1..f_n) = Aver(Ũ(f_1..f_n)); inputs are cochain vectors of arity spec.arities."""
    from .cochain import _aver

    a = spec.out_arity
    if a > A.cap:
        raise ValueError(f"output arity {a} exceeds cap {A.cap}")
    return _aver(A, eval_tilde(spec, A, fs), a)


# -- operations as families over input arities


class NaturalOp:
    """A natural operation: for each tuple of input arities, a sum of specs."""

    def __init__(self, n: int, degree: int, family, name: str = ""):
        self.n, self.degree, self.family, self.name = n, degree, family, name

    def specs(self, arities) -> List[NaturalOpSpec]:
        return list(self.family(tuple(arities)))

    def __call__(self, A, args: List[Tuple[Vec, int]]) -> Vec:
        """Evaluate on (cochain vector, arity) pairs."""
        arities = tuple(m for _, m in args)
        out: Vec = {}
        for s in self.specs(arities):
            vadd(out, eval_natural_op(s, A, [f for f, _ in args]))
        return out

    def output_arity(self, arities) -> int:
        return sum(arities) - self.n + 1 + self.degree


def _corolla(index, labels):
    return White(index, [Leaf(j) for j in labels])


def identity_op() -> NaturalOp:
    return NaturalOp(1, 0, lambda ar: [NaturalOpSpec(_corolla(1, range(1, ar[0] + 1)), ar,
                                                     lambda qs: {qs[0]: 1})], "id")


def unary_op(psi) -> NaturalOp:
    """Degree-0 unary operation from equivariant maps ψ_a: P!(a) → P!(a).

    ``psi(a)`` returns {in key: out vector} or None for the zero map.
    """
    def fam(ar):
        table = psi(ar[0])
        if not table:
            return []
        return [NaturalOpSpec(_corolla(1, range(1, ar[0] + 1)), ar, lambda qs: table.get(qs[0], {}))]
    return NaturalOp(1, 0, fam, "unary")


def projection_op(m: int) -> NaturalOp:
    """p_m: the identity on C^m, zero on the other degrees."""
    return unary_op(lambda a: _IdTable() if a == m + 1 else None)


class _IdTable(dict):
    def get(self, k, default=None):
        return {k: 1}

    def __bool__(self):
        return True


def _insertion_tree(outer: int, outer_ar: int, inner: int, inner_ar: int, slot: int):
    labels = iter(range(1, outer_ar + inner_ar))
    children = []
    for s in range(1, outer_ar + 1):
        if s == slot:
            children.append(_corolla(inner, [next(labels) for _ in range(inner_ar)]))
        else:
            children.append(Leaf(next(labels)))
    return White(outer, children)


def prelie_op(Pdual: Operad) -> NaturalOp:
    """f∘g = Σ_i f ∘_i g in ↑(End_A ⊗ P!)."""
    from .operads.constructions import Suspension

    S = Suspension(Pdual)

    def fam(ar):
        a1, a2 = ar
        out = []
        for i in range(1, a1 + 1):
            out.append(NaturalOpSpec(_insertion_tree(1, a1, 2, a2, i), ar,
                                     lambda qs, i=i: S.compose_keys(i, qs[0], a1, qs[1], a2)))
        return out
    return NaturalOp(2, 0, fam, "pre-Lie")


def bracket_op(Pdual: Operad) -> NaturalOp:
    """[f, g] = f∘g − (−1)^{|f||g|} g∘f."""
    from .operads.constructions import Suspension

    S = Suspension(Pdual)
    pre = prelie_op(Pdual)

    def fam(ar):
        a1, a2 = ar
        out = pre.specs(ar)
        s = -(-1) ** ((a1 - 1) * (a2 - 1))
        for i in range(1, a2 + 1):
            out.append(NaturalOpSpec(_insertion_tree(2, a2, 1, a1, i), ar,
                                     lambda qs, i=i: vscale(S.compose_keys(i, qs[1], a2, qs[0], a1), s)))
        return out
    return NaturalOp(2, 0, fam, "bracket")


def cup_tree_op(t: Vec, n: int, Pdual: Operad) -> NaturalOp:
    """The operation of t = Σ p ⊗ q ∈ P⊗P!(n): a black root p over n white corollas,
    with Φ(q_1..q_n) = ↑q(↑q_1..↑q_n)."""
    from .operads.constructions import Suspension

    S = Suspension(Pdual)

    def fam(ar):
        out = []
        for (p, q), c in t.items():
            labels = iter(range(1, sum(ar) + 1))
            kids = [_corolla(i + 1, [next(labels) for _ in range(ar[i])]) for i in range(n)]

            def phi(qs, q=q, c=c):
                return vscale(S.gamma({q: 1}, n, [({x: 1}, k) for x, k in zip(qs, ar)]), c)
            out.append(NaturalOpSpec(Black({p: 1}, kids), ar, phi))
        return out
    return NaturalOp(n, n - 1, fam, "cup")


def constant_op(p: Vec, q: Vec, a: int) -> NaturalOp:
    """No white vertices: the corolla decorated by p ∈ P(a), Φ() = q ∈ P!(a)."""
    spec = NaturalOpSpec(Black(p, [Leaf(j) for j in range(1, a + 1)]), (), {(): q})
    return NaturalOp(0, a - 1, lambda ar: [spec] if ar == () else [], "constant")


# -- the differential on operations


def delta_on_op(op: NaturalOp, A):
    """Evaluator for δ_P(U)(f) = d U(f) − (−1)^{|U|} Σ (−1)^{|f_1|+…} U(…, d f_i, …)."""
    from .cochain import d_P

    def ev(args: List[Tuple[Vec, int]]) -> Vec:
        val = op(A, args)
        out_ar = op.output_arity([m for _, m in args])
        res = d_P(A, val, out_ar) if val else {}
        acc = 0
        for i, (f, m) in enumerate(args):
            new = list(args)
            new[i] = (d_P(A, f, m), m + 1)
            vadd(res, op(A, new), -((-1) ** (op.degree + acc)))
            acc += m - 1
        return res
    return ev


# -- vertex insertion


def _shift_whites(node, i: int, width: int, inner=None, inner_tree=None):
    if isinstance(node, Leaf):
        return Leaf(node.label)
    kids = [_shift_whites(c, i, width, inner, inner_tree) for c in node.children]
    if isinstance(node, Black):
        return Black(dict(node.decoration), kids)
    if node.index == i:
        return inner_tree(kids)
    return White(node.index + (width - 1 if node.index > i else 0), kids)


def _graft(node, kids, offset):
    """Copy of ``node`` (a tree of V) with V's leaf j replaced by kids[j-1], whites shifted."""
    if isinstance(node, Leaf):
        return kids[node.label - 1]
    new = [_graft(c, kids, offset) for c in node.children]
    if isinstance(node, Black):
        return Black(dict(node.decoration), new)
    return White(node.index + offset, new)


def insert_spec(U: NaturalOpSpec, i: int, V: NaturalOpSpec) -> NaturalOpSpec:
    """Plug V into the white vertex w_i of U (V's leaf j goes to w_i's j-th input edge)."""
    if U.arities[i - 1] != V.out_arity:
        raise ValueError("output arity of V must match the arity of w_i")
    w = V.n
    root = _shift_whites(U.root, i, w, inner_tree=lambda kids: _graft(V.root, kids, i - 1))
    ar = U.arities[:i - 1] + V.arities + U.arities[i:]

    def phi(qs):
        mid = V.phi_value(qs[i - 1:i - 1 + w])
        out: Vec = {}
        for r, c in mid.items():
            vadd(out, U.phi_value(qs[:i - 1] + (r,) + qs[i - 1 + w:]), c)
        return out
    return NaturalOpSpec(root, ar, phi, U.planar and V.planar)


def _permuted_root(U: NaturalOpSpec, i: int, sigma):
    """Tree of U with the j-th input edge of w_i moved to position σ(j)."""
    def walk(node):
        if isinstance(node, Leaf):
            return Leaf(node.label)
        kids = [walk(c) for c in node.children]
        if isinstance(node, White) and node.index == i:
            new = [None] * len(kids)
            for j, c in enumerate(kids):
                new[sigma[j] - 1] = c
            return White(i, new)
        if isinstance(node, White):
            return White(node.index, kids)
        return Black(dict(node.decoration), kids)
    return walk(U.root)


def permute_white_inputs(U: NaturalOpSpec, i: int, sigma, Pdual: Operad) -> NaturalOpSpec:
    """U^σ with U^σ(…, x, …) = U(…, x·σ, …) in slot i (x·σ the ↑ action)."""
    from .operads.constructions import Suspension

    S = Suspension(Pdual)
    a = U.arities[i - 1]

    def phi(qs):
        res: Vec = {}
        for k, c in S.act_key(qs[i - 1], a, sigma).items():
            vadd(res, U.phi_value(qs[:i - 1] + (k,) + qs[i:]), c)
        return res
    return NaturalOpSpec(_permuted_root(U, i, sigma), U.arities, phi, U.planar)


def compose_ops_spec(U: NaturalOpSpec, i: int, V: NaturalOpSpec, Pdual: Operad) -> List[NaturalOpSpec]:
    """Specs whose sum evaluates to U(…, V(…), …).

    Because V(f) is averaged before it reaches w_i, the plain insertion is
    averaged over relabellings of the inputs of w_i.
    """
    from .operads.constructions import Suspension

    perms = list(all_perms(V.out_arity))
    weight = Fraction(1, len(perms))
    out = []
    for sigma in perms:
        Us = permute_white_inputs(U, i, sigma, Pdual)
        scaled = NaturalOpSpec(Us.root, Us.arities, lambda qs, Us=Us: vscale(Us.phi_value(qs), weight), U.planar)
        out.append(insert_spec(scaled, i, V))
    return out


# -- enumeration


def _partitions(d: int, smallest: int = 1):
    """Multisets of black arities r >= 2 with Σ (r − 1) = d (non-increasing)."""
    if d == 0:
        yield ()
        return
    for part in range(d, smallest - 1, -1):
        for rest in _partitions(d - part, 1):
            if not rest or rest[0] <= part:
                yield (part + 1,) + rest


def _shapes(white_ar: Tuple[int, ...], black_ar: Tuple[int, ...]):
    """Rooted trees on the given vertices: (root, {vertex: [child vertex or None per slot]})."""
    from itertools import permutations

    verts = [("w", i + 1, a) for i, a in enumerate(white_ar)] + \
            [("b", j, r) for j, r in enumerate(black_ar)]
    slots = [(v, s) for v in verts for s in range(v[2])]
    N = len(verts)
    for root in verts:
        others = [v for v in verts if v != root]
        for choice in permutations(range(len(slots)), len(others)):
            parent = {o: slots[c] for o, c in zip(others, choice)}
            # every vertex must reach the root
            ok = True
            for o in others:
                seen, cur = set(), o
                while cur != root and ok:
                    if cur in seen:
                        ok = False
                    seen.add(cur)
                    cur = parent[cur][0]
                if not ok:
                    break
            if not ok or any(parent[o][0] == o for o in others):
                continue
            kids = {v: [None] * v[2] for v in verts}
            for o, (p, s) in parent.items():
                kids[p][s] = o
            yield root, kids
    if N == 0:
        return


def _build(v, kids, labels):
    ch = []
    for c in kids[v]:
        ch.append(Leaf(next(labels)) if c is None else _build(c, kids, labels))
    if v[0] == "w":
        return White(v[1], ch)
    return Black({("slot", v[2]): 1}, ch)


def _min_leaf(node) -> int:
    return min(_leaves(node))


def _sort_blacks(node):
    if isinstance(node, Leaf):
        return node
    kids = [_sort_blacks(c) for c in node.children]
    if isinstance(node, Black):
        kids.sort(key=_min_leaf)
        return Black(node.decoration, kids)
    return White(node.index, kids)


def _decorate(node, keys: list):
    if isinstance(node, Leaf):
        return Leaf(node.label)
    kids = [_decorate(c, keys) for c in node.children]
    if isinstance(node, Black):
        return Black({keys.pop(0): 1}, kids)
    return White(node.index, kids)


def enumerate_trees(white_ar: Tuple[int, ...], a: int, degree: int, planar: bool = False) -> list:
    """Labelled trees (black vertices undecorated) up to isomorphism, canonical order."""
    from itertools import permutations

    found = {}
    for blacks in _partitions(degree):
        if sum(white_ar) + sum(blacks) - (len(white_ar) + len(blacks) - 1) != a:
            continue
        if not white_ar and not blacks:
            continue
        for root, kids in _shapes(tuple(white_ar), blacks):
            nleaves = sum(x is None for v in kids for x in kids[v])
            orders = [tuple(range(1, nleaves + 1))] if planar else permutations(range(1, nleaves + 1))
            for lab in orders:
                t = _build(root, kids, iter(lab))
                if not planar:
                    t = _sort_blacks(t)
                found.setdefault(tree_string(t), t)
    return [found[k] for k in sorted(found)]


def enumerate_tree_ops(white_ar: Tuple[int, ...], a: int, degree: int, P: Operad, Pdual: Operad,
                       planar: bool = False, limit: int = 20000) -> List[NaturalOpSpec]:
    """All (tree, decoration, Φ) with decorations from a basis of P and Φ from the
    elementary maps (q_1..q_n) ↦ r between basis keys of ↑P!."""
    from itertools import product

    from .operads.base import ResourceBound

    trees = enumerate_trees(tuple(white_ar), a, degree, planar)
    in_keys = list(product(*[Pdual.basis(k) for k in white_ar]))
    out_keys = Pdual.basis(a)
    specs = []
    for t in trees:
        blacks = [v for v in _vertices(t) if isinstance(v, Black)]
        dec_choices = product(*[P.basis(len(b.children)) for b in blacks])
        for decs in dec_choices:
            tree = _decorate(t, list(decs))
            for qs in in_keys:
                for r in out_keys:
                    specs.append(NaturalOpSpec(tree, tuple(white_ar), {qs: {r: 1}}, planar))
                    if len(specs) > limit:
                        raise ResourceBound(f"more than {limit} specs")
    return specs


def op_matrix(specs, A, arities: Tuple[int, ...], inputs=None) -> List[Vec]:
    """Each spec as a vector {(input index tuple, output key): coefficient}.

    ``inputs`` defaults to all tuples of basis cochains of the given arities.
    """
    from itertools import product

    from .cochain import basis_cochains

    if inputs is None:
        bases = [basis_cochains(A, m) for m in arities]
        inputs = [(idx, [bases[j][i] for j, i in enumerate(idx)])
                  for idx in product(*[range(len(b)) for b in bases])]
    rows = []
    for s in specs:
        row: Vec = {}
        for idx, fs in inputs:
            for k, c in eval_natural_op(s, A, fs).items():
                row[(idx, k)] = c
        rows.append(row)
    return rows


# -- degree-0 binary operations closed under δ


def _binary_components(cap: int):
    """Input arities (a1, a2) of degree-0 binary operations with output arity <= cap."""
    return [(a1, s - a1) for s in range(2, cap + 2) for a1 in range(1, s)]


def h0_binary_evidence(name: str = "Lie", cap: int = 4, algebras=None, keep_vectors: bool = False) -> dict:
    """Closed degree-0 binary operations, truncated at arity ``cap``.

    Unknowns: coefficients of tree operations in every input multidegree with
    output arity <= cap (only operations independent on the test inputs are
    kept).  Conditions: δU(f, g) = 0 in every multidegree where d U(f, g)
    still has arity <= cap, tested on all basis inputs of each algebra in
    ``algebras``; operations vanishing on all of them count as zero.
    ``restricted_dim`` counts solutions on the multidegrees whose own
    closedness condition is imposed.  Top multidegrees only enter through the
    conditions below them, so the result is upper-bound evidence.
    """
    from itertools import product

    from .cochain import basis_cochains, d_P, intrinsic_bracket
    from .exactlin.linalg import Echelon

    if algebras is None:
        algebras = default_test_algebras(name, cap)
    P, Q = algebras[0].P, algebras[0].P_dual
    comps = _binary_components(cap)
    imposed = [c for c in comps if sum(c) - 1 < cap]
    bases = [{m: basis_cochains(A, m) for m in range(1, cap + 1)} for A in algebras]
    dbases = [{m: [d_P(A, f, m) for f in B[m]] for m in range(1, cap)} for A, B in zip(algebras, bases)]

    def values(s, c, which):
        # the operation on all test inputs: {(alg, c, x, y, out key): value}
        a1, a2 = c
        out = {}
        for ai, A in enumerate(algebras):
            B, dB = bases[ai], dbases[ai]
            L = B[a1] if which != "d1" else dB.get(a1 - 1, [])
            R = B[a2] if which != "d2" else dB.get(a2 - 1, [])
            for (x, f), (y, g) in product(enumerate(L), enumerate(R)):
                for k, v in eval_natural_op(s, A, [f, g]).items():
                    out[(ai, x, y, k)] = v
        return out

    columns, ev_rows, eq_rows = [], {}, {}
    kept = {}
    for c in comps:
        ech = Echelon()
        kept[c] = []
        for s in enumerate_tree_ops(c, sum(c) - 1, 0, P, Q):
            val = values(s, c, "plain")
            if ech.add(val):
                kept[c].append((s, val))
        for j, (s, val) in enumerate(kept[c]):
            col = (c, j)
            columns.append(col)
            a1, a2 = c
            for (ai, x, y, k), v in val.items():
                ev_rows.setdefault((ai, c, x, y, k), {})[col] = v
            if c in imposed:
                for ai, A in enumerate(algebras):
                    for x, f in enumerate(bases[ai][a1]):
                        for y, g in enumerate(bases[ai][a2]):
                            sub = {k: v for (bi, xx, yy, k), v in val.items() if (bi, xx, yy) == (ai, x, y)}
                            if sub:
                                for k, v in d_P(A, sub, a1 + a2 - 1).items():
                                    vadd(eq_rows.setdefault((ai, c, x, y, k), {}), {col: v})
            # the component also enters the conditions one multidegree down
            if (a1 - 1, a2) in imposed:
                for (ai, x, y, k), v in values(s, c, "d1").items():
                    vadd(eq_rows.setdefault((ai, (a1 - 1, a2), x, y, k), {}), {col: -v})
            if (a1, a2 - 1) in imposed:
                sgn = -((-1) ** (a1 - 1))
                for (ai, x, y, k), v in values(s, c, "d2").items():
                    vadd(eq_rows.setdefault((ai, (a1, a2 - 1), x, y, k), {}), {col: sgn * v})
    closed = nullspace([r for r in eq_rows.values() if r], columns)

    def evaluated(v, keep=None):
        out: Vec = {}
        for key, row in ev_rows.items():
            if keep is not None and key[1] not in keep:
                continue
            x = sum(row.get(col, 0) * c for col, c in v.items())
            if x:
                out[key] = x
        return out

    sols = [evaluated(v) for v in closed]
    low = [evaluated(v, set(imposed)) for v in closed]
    full_dim, restricted_dim = rank(sols), rank(low)
    br: Vec = {}
    for ai, A in enumerate(algebras):
        B = bases[ai]
        for (a1, a2) in imposed:
            for x, f in enumerate(B[a1]):
                for y, g in enumerate(B[a2]):
                    for k, v in intrinsic_bracket(A, f, a1, g, a2).items():
                        br[(ai, (a1, a2), x, y, k)] = v
    bracket_in_span = rank(low + [br]) == restricted_dim
    # transposition: (Uτ)(f, g) = (−1)^{|f||g|} U(g, f)
    eigen = None
    if restricted_dim == 1:
        gen = next(v for v in low if v)
        swapped = {(ai, (a2, a1), y, x, k): v * (-1) ** ((a1 - 1) * (a2 - 1))
                   for (ai, (a1, a2), x, y, k), v in gen.items()}
        for e in (1, -1):
            if veq(swapped, vscale(gen, e)):
                eigen = e
    extra = {"solutions": low, "bracket": br} if keep_vectors else {}
    return {**extra, "operad": name, "cap": cap, "components": comps, "imposed": imposed,
            "unknowns": len(columns), "closed_dim_raw": len(closed),
            "full_dim": full_dim, "restricted_dim": restricted_dim,
            "bracket_in_span": bracket_in_span, "transposition_eigenvalue": eigen,
            "caveat": "truncated: closedness of the top multidegrees is not imposed; upper-bound evidence only"}


def default_test_algebras(name: str, cap: int) -> list:
    """A few fixed valid algebras used as a faithful-enough test bed."""
    from .cochain import PAlgebra, _library

    out = []
    # dimension >= cap keeps Λ^cap A and hence the top conditions nonzero for Lie
    for dim in (2, max(3, cap)):
        for st in _library(name, dim):
            out.append(PAlgebra(name, dim, st, cap))
    return out

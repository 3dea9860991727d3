"""Operadic cochains C*_P(A;A) of a finite-dimensional P-algebra.

An algebra is a structure map α: P → End_A given on the binary generators
of a catalog operad.  Cochains of degree m-1 are the sign-twisted
Σ_m-invariants of T(m) = End_A(m) ⊗ P!(m), the differential is
d_P(f) = Aver[φ, f] with φ = (α ⊗ id)(χ), and ↑(P ⊗ P!) acts on cochains by
t(f_1, ..., f_n) = Aver(((α ⊗ id) t)(f_1, ..., f_n)).

The carrier A is ungraded.  Multilinear maps are vectors on End keys
``(j, I)`` meaning v_I ↦ v_j (indices from 0).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Tuple

from .exactlin.complexes import CohomologyTable, ComplexRep, cohomology_dims
from .exactlin.linalg import BasedSpace, Subspace, Vec, invert_matrix, rref, vadd, veq, vscale, vsub
from .exactlin.perms import all_perms, sign
from .liecplx import (LieElement, bracket_vec, catalog_chi, circ_vec, soul_complex)
from .operads.catalog import catalog
from .operads.constructions import Endomorphism, Suspension, Tensor
from .operads.invariants import TwistedInvariants, average, is_invariant
from .operads.morphisms import BinaryGeneratedMap, NotAMorphism

# binary generator name -> key of the catalog operad in arity 2
GENERATOR_KEYS = {
    "Ass": {"mu": (1, 2)},
    "Com": {"mu": 2},
    "Lie": {"lam": (1, 2)},
    "Sym": {"mu": ("mu", 0, (1, 2))},
    "Mag": {"mu": ("mu", 0, (1, 2))},
    "D": {"mu": ("a", (1, 2)), "nu": ("b", (1, 2))},
}

COCHAIN_OPERADS = tuple(GENERATOR_KEYS)


class InvalidAlgebra(ValueError):
    def __init__(self, witness):
        super().__init__(f"structure map is not an operad morphism: {witness}")
        self.witness = witness


@dataclass
class PAlgebra:
    """A ``dim``-dimensional algebra over a catalog operad.

    ``structure[g][i][j]`` is the list of coordinates of g(e_i, e_j).
    """

    operad: str
    dim: int
    structure: Dict[str, list]
    cap: int = 5

    def __post_init__(self):
        if self.operad not in GENERATOR_KEYS:
            raise ValueError(f"no cochain model for {self.operad!r}; choose from {COCHAIN_OPERADS}")
        gens = GENERATOR_KEYS[self.operad]
        if set(self.structure) != set(gens):
            raise ValueError(f"{self.operad} needs tables for {sorted(gens)}, got {sorted(self.structure)}")
        d = self.dim
        for g, tab in self.structure.items():
            if len(tab) != d or any(len(r) != d or any(len(v) != d for v in r) for r in tab):
                raise ValueError(f"table for {g} must be {d}x{d}x{d}")
            self.structure[g] = [[[Fraction(x) for x in v] for v in r] for r in tab]

    # -- serialization ---------------------------------------------------
    def to_json(self) -> str:
        tabs = {g: [[[str(x) for x in v] for v in r] for r in t] for g, t in self.structure.items()}
        return json.dumps({"operad": self.operad, "dim": self.dim, "structure": tabs})

    @classmethod
    def from_json(cls, text: str, cap: int = 5) -> "PAlgebra":
        d = json.loads(text)
        return cls(d["operad"], int(d["dim"]), d["structure"], cap)

    # -- operads ---------------------------------------------------------
    @cached_property
    def P(self):
        return catalog(self.operad, self.cap).P

    @cached_property
    def End(self) -> Endomorphism:
        return Endomorphism(BasedSpace(tuple(range(self.dim))), self.cap)

    @cached_property
    def _chi(self):
        return catalog_chi(self.operad, self.cap)

    @property
    def P_dual(self):
        return self._chi[0].Q

    @cached_property
    def T(self) -> Tensor:
        return Tensor(self.End, self.P_dual)

    def generator_map(self, g: str) -> Vec:
        """The bilinear map of generator g as an End_A(2) vector."""
        out: Vec = {}
        for i, row in enumerate(self.structure[g]):
            for j, v in enumerate(row):
                for k, x in enumerate(v):
                    if x:
                        out[(k, (i, j))] = x
        return out

    # -- α on P(n) ---------------------------------------------------------
    @cached_property
    def structure_map(self) -> BinaryGeneratedMap:
        gens = {key: self.generator_map(g) for g, key in GENERATOR_KEYS[self.operad].items()}
        return BinaryGeneratedMap(self.P, self.End, gens)

    def alpha(self, n: int) -> Dict:
        """α on the basis of P(n): key -> End_A(n) vector."""
        try:
            return self.structure_map.images(n)
        except NotAMorphism as e:
            raise InvalidAlgebra(e.witness) from None

    def alpha_vec(self, x: Vec, n: int) -> Vec:
        al = self.alpha(n)
        out: Vec = {}
        for k, c in x.items():
            vadd(out, al[k], c)
        return out

    def push(self, t: Vec, n: int) -> Vec:
        """(α ⊗ id)(t) for t ∈ (P ⊗ P!)(n)."""
        al = self.alpha(n)
        out: Vec = {}
        for (p, q), c in t.items():
            for e, d in al[p].items():
                vadd(out, {(e, q): c * d})
        return out

    @cached_property
    def phi(self) -> LieElement:
        _, chi = self._chi
        return LieElement(self.T, {2: self.push(chi.comps[2], 2)})


def validate_algebra(A: PAlgebra) -> Optional[str]:
    """None if α extends to P(2) and P(3) (enough for quadratic P); else a witness."""
    F = A.structure_map
    try:
        for n in (2, 3):
            bad = F.inconsistencies(n)
            if bad:
                what = "generator symmetry violated by" if n == 2 else "a relation evaluates to"
                return f"arity {n}: {what} {bad[0]}"
    except ValueError as e:
        return str(e)
    return None


def _table(d, f):
    return [[[Fraction(x) for x in f(i, j)] for j in range(d)] for i in range(d)]


def dual_numbers(operad: str = "Ass", cap: int = 5) -> PAlgebra:
    """k[ε] with basis (1, ε)."""
    tab = [[[1, 0], [0, 1]], [[0, 1], [0, 0]]]
    return PAlgebra(operad, 2, {next(iter(GENERATOR_KEYS[operad])): tab}, cap)


def ground_field(operad: str = "Ass", cap: int = 5) -> PAlgebra:
    return PAlgebra(operad, 1, {next(iter(GENERATOR_KEYS[operad])): [[[1]]]}, cap)


def zero_algebra(operad: str, dim: int, cap: int = 5) -> PAlgebra:
    z = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
    return PAlgebra(operad, dim, {g: [[list(v) for v in r] for r in z] for g in GENERATOR_KEYS[operad]}, cap)


# -- the complex ------------------------------------------------------------

@dataclass
class AlgComplex:
    A: PAlgebra
    complex: ComplexRep
    invariants: List[TwistedInvariants]

    def cochain(self, m: int, coords: Dict) -> Vec:
        """The T(m) vector of a cochain given by coordinates on the invariant basis."""
        return self.invariants[m - 1].to_vector(coords)

    def coords(self, m: int, z: Vec) -> Dict:
        return self.invariants[m - 1].coords(z)

    def d(self, z: Vec, m: int) -> Vec:
        """d_P = Aver[φ, -] on an invariant vector of arity m."""
        return self.invariants[m].to_vector(
            self.invariants[m].coords(bracket_vec(self.A.T, self.A.phi.comps[2], 2, z, m)))


def build_complex(A: PAlgebra, cap: Optional[int] = None) -> AlgComplex:
    cap = cap or A.cap
    if cap > A.cap:
        raise ValueError(f"cap {cap} exceeds the algebra's cap {A.cap}")
    bad = validate_algebra(A)
    if bad:
        raise InvalidAlgebra(bad)
    C = soul_complex(A.T, A.phi, cap, name=f"C*_{A.operad}(A;A)")
    invs = [TwistedInvariants(A.T, m, side=0) for m in range(1, cap + 1)]
    return AlgComplex(A, C, invs)


def cohomology_of_algebra(A: PAlgebra, cap: Optional[int] = None) -> CohomologyTable:
    return cohomology_dims(build_complex(A, cap).complex)


# -- operations on cochains ---------------------------------------------------

def _aver(A: PAlgebra, z: Vec, m: int) -> Vec:
    inv = _invariants(A, m)
    return inv.to_vector(inv.coords(z))


def _invariants(A: PAlgebra, m: int) -> TwistedInvariants:
    cache = A.__dict__.setdefault("_inv_cache", {})
    if m not in cache:
        cache[m] = TwistedInvariants(A.T, m, side=0)
    return cache[m]


def compose_along(S, t: Vec, n: int, args: List[Tuple[Vec, int]]) -> Vec:
    """γ(t; f_1, ..., f_n) = (...((t ∘_1 f_1) ∘_{1+m_1} f_2) ...) in S."""
    if len(args) != n:
        raise ValueError(f"expected {n} inputs, got {len(args)}")
    return S.gamma(t, n, args)


def cup_act(A: PAlgebra, t: Vec, n: int, args: List[Tuple[Vec, int]]) -> Vec:
    """t(f_1, ..., f_n) for t ∈ ↑(P ⊗ P!)(n) and cochains (vector, arity)."""
    total = sum(m for _, m in args)
    if total > A.cap:
        raise ValueError(f"output arity {total} exceeds cap {A.cap}")
    S = A.__dict__.setdefault("_susp", Suspension(A.T))
    return _aver(A, compose_along(S, A.push(t, n), n, args), total)


def prelie_circle(A: PAlgebra, f: Vec, m: int, g: Vec, n: int) -> Vec:
    return _aver(A, circ_vec(A.T, f, m, g, n), m + n - 1)


def intrinsic_bracket(A: PAlgebra, f: Vec, m: int, g: Vec, n: int) -> Vec:
    return _aver(A, bracket_vec(A.T, f, m, g, n), m + n - 1)


def d_P(A: PAlgebra, f: Vec, m: int) -> Vec:
    """d_P(f) = Aver[φ, f]."""
    return _aver(A, bracket_vec(A.T, A.phi.comps.get(2, {}), 2, f, m), m + 1)


def chi_vector(A: PAlgebra) -> Vec:
    return A._chi[1].comps[2]


def basis_cochains(A: PAlgebra, m: int) -> List[Vec]:
    inv = _invariants(A, m)
    return [inv.vector(lab) for lab in inv.labels]


def delta_of_circle(A: PAlgebra, f: Vec, m: int, g: Vec, n: int) -> Vec:
    """δ_P(∘)(f, g) = d(f∘g) - (df)∘g - (-1)^{m-1} f∘(dg)."""
    out = d_P(A, prelie_circle(A, f, m, g, n), m + n - 1)
    vadd(out, prelie_circle(A, d_P(A, f, m), m + 1, g, n), -1)
    vadd(out, prelie_circle(A, f, m, d_P(A, g, n), n + 1), -((-1) ** (m - 1)))
    return out


def embed_map(A: PAlgebra, f: Vec, m: int, dual_key=None) -> Vec:
    """Aver(f ⊗ q) for a multilinear map f and a P!(m) basis key q (default the first)."""
    q = A.P_dual.basis(m)[0] if dual_key is None else dual_key
    return _aver(A, {(k, q): c for k, c in f.items()}, m)


def diagonal_element(A: PAlgebra) -> Vec:
    """↑(μ ⊗ μ) in ↑(Ass ⊗ Ass)(2): the element acting by the classical cup product."""
    if A.operad != "Ass":
        raise ValueError("the diagonal cup element is defined here for Ass only")
    return {((1, 2), (1, 2)): 1}


def hochschild_differential(A: PAlgebra, f: Vec, m: int) -> Vec:
    """Classical δf(a_0..a_m) = a_0 f(a_1..) + Σ (-1)^{i+1} f(.., a_i a_{i+1}, ..) + (-1)^{m+1} f(..) a_m."""
    from itertools import product

    mu = A.generator_map(next(iter(GENERATOR_KEYS[A.operad])))
    E = A.End
    out: Vec = {}
    for I in product(range(A.dim), repeat=m + 1):
        args = [{i: 1} for i in I]
        r: Vec = {}
        vadd(r, _evaluate(mu, [args[0], _evaluate(f, args[1:])]))
        for i in range(m):
            vadd(r, _evaluate(f, args[:i] + [_evaluate(mu, args[i:i + 2])] + args[i + 2:]), (-1) ** (i + 1))
        vadd(r, _evaluate(mu, [_evaluate(f, args[:m]), args[m]]), (-1) ** (m + 1))
        for j, c in r.items():
            vadd(out, {(j, I): c})
    return out


def classical_cup(A: PAlgebra, f: Vec, m: int, g: Vec, n: int) -> Vec:
    """(f ∪ g)(a_1..a_{m+n}) = f(a_1..a_m) · g(a_{m+1}..a_{m+n})."""
    from itertools import product

    mu = A.generator_map(next(iter(GENERATOR_KEYS[A.operad])))
    out: Vec = {}
    for I in product(range(A.dim), repeat=m + n):
        args = [{i: 1} for i in I]
        for j, c in _evaluate(mu, [_evaluate(f, args[:m]), _evaluate(g, args[m:])]).items():
            vadd(out, {(j, I): c})
    return out


def _evaluate(f: Vec, args: List[Vec]) -> Vec:
    """f(x_1, ..., x_n) for an End_A vector and vectors x_k on basis indices."""
    out: Vec = {}
    for (j, I), c in f.items():
        coef = c
        for k, x in zip(I, args):
            coef *= x.get(k, 0)
            if not coef:
                break
        if coef:
            vadd(out, {j: coef})
    return out


def hochschild_embedding(A: PAlgebra, f: Vec, m: int) -> Vec:
    """Ψ_m(f) = 2^{m-1} ε_m Aver(f ⊗ id_m), ε_m = (-1)^{(m-1)(m-2)/2}.

    With this scaling d_P Ψ_m = Ψ_{m+1} δ_Hochschild on the nose.
    """
    if A.operad != "Ass":
        raise ValueError("Hochschild comparison needs P = Ass")
    c = 2 ** (m - 1) * (-1) ** ((m - 1) * (m - 2) // 2)
    return vscale(embed_map(A, f, m, tuple(range(1, m + 1))), c)


# -- induced structure on cohomology -----------------------------------------

class CohomologyModel:
    """Cocycle representatives and class coordinates for a built complex.

    Representatives are chosen by pivoting: cocycles not in the span of the
    coboundaries plus earlier representatives, in kernel-basis order.
    """

    def __init__(self, ac: AlgComplex):
        self.ac = ac
        C = ac.complex
        top = len(C.spaces) - 1
        self.reps: Dict[int, List[Vec]] = {}
        self._split: Dict[int, Tuple[Subspace, int]] = {}
        for k in range(top):
            d_out = C.differentials[k]
            Z = d_out.kernel()
            B = [C.differentials[k - 1].apply({lab: 1}) for lab in C.spaces[k - 1].labels] if k else []
            Bsp = Subspace(b for b in B if b)
            reps = []
            span = Subspace(list(Bsp.basis))
            for z in Z:
                if not span.contains(z):
                    reps.append(z)
                    span = Subspace(list(span.basis) + [z])
            self.reps[k] = reps
            self._split[k] = (Subspace(list(Bsp.basis) + reps), Bsp.dim)

    @property
    def degrees(self) -> List[int]:
        return sorted(self.reps)

    def dim(self, k: int) -> int:
        return len(self.reps[k])

    def rep_vector(self, k: int, i: int) -> Vec:
        """Representative of the i-th class in degree k as a T(k+1) vector."""
        return self.ac.invariants[k].to_vector(self._strip(k, self.reps[k][i]))

    @staticmethod
    def _strip(k, coords):
        return {lab[1:]: c for lab, c in coords.items()}

    def class_of(self, k: int, z: Vec) -> Optional[Vec]:
        """Coordinates of [z] for a cocycle z (T vector, arity k+1); None if k out of range."""
        if k not in self._split:
            return None
        coords = {(k + 1,) + lab: c for lab, c in self.ac.invariants[k].coords(z).items()}
        if self.ac.complex.differentials[k].apply(coords):
            raise ValueError(f"not a cocycle in degree {k}")
        sp, nb = self._split[k]
        x = sp.coordinates(coords)
        return {i: c for i, c in enumerate(x[nb:]) if c}

    def is_coboundary(self, k: int, z: Vec) -> bool:
        cls = self.class_of(k, z)
        return cls is not None and not cls


@dataclass
class GradedProducts:
    """A finite graded space with two partial bilinear products on its basis.

    ``cup[(i, j)]`` / ``bracket[(i, j)]`` are vectors on basis indices; a
    missing pair means the product leaves the computed range.
    """

    degrees: List[int]
    cup: Dict[Tuple[int, int], Vec]
    bracket: Dict[Tuple[int, int], Vec]


def _bil(table, x: Vec, y: Vec) -> Optional[Vec]:
    out: Vec = {}
    for i, a in x.items():
        for j, b in y.items():
            if (i, j) not in table:
                return None
            vadd(out, table[(i, j)], a * b)
    return out


def check_mn_algebra(H: GradedProducts, m: int, n: int) -> Dict[str, List[str]]:
    """Axioms (i)-(v) of an (m,n)-algebra on all basis triples where defined.

    Returns axiom name -> list of failure witnesses (empty list = pass).
    """
    deg = H.degrees
    N = range(len(deg))
    cup = lambda x, y: _bil(H.cup, x, y)
    br = lambda x, y: _bil(H.bracket, x, y)
    e = lambda i: {i: 1}
    fails = {k: [] for k in ("i", "ii", "iii", "iv", "v")}

    def record(name, witness, lhs, rhs):
        if lhs is not None and rhs is not None and not veq(lhs, rhs):
            fails[name].append(f"{witness}: {lhs} != {rhs}")

    def lin(*terms):
        out: Vec = {}
        for c, v in terms:
            if v is None:
                return None
            vadd(out, v, c)
        return out

    for a in N:
        for b in N:
            A_, B_ = deg[a], deg[b]
            x, y = e(a), e(b)
            record("i", (a, b), cup(x, y), lin(((-1) ** (A_ * B_ + m), cup(y, x))))
            record("ii", (a, b), br(x, y), lin((-((-1) ** (A_ * B_ + n)), br(y, x))))
            for c in N:
                C_ = deg[c]
                z = e(c)
                bc, ab = cup(y, z), cup(x, y)
                record("iii", (a, b, c), cup(x, bc) if bc is not None else None,
                       lin(((-1) ** (m * (A_ + 1)), cup(ab, z) if ab is not None else None)))
                t1 = br(y, z)
                t2 = br(z, x)
                t3 = br(x, y)
                jac = lin(((-1) ** (A_ * (C_ + n)), br(x, t1) if t1 is not None else None),
                          ((-1) ** (B_ * (A_ + n)), br(y, t2) if t2 is not None else None),
                          ((-1) ** (C_ * (B_ + n)), br(z, t3) if t3 is not None else None))
                record("iv", (a, b, c), jac, {} if jac is not None else None)
                lhs = br(x, bc) if bc is not None else None
                lhs = vscale(lhs, (-1) ** (m * A_)) if lhs is not None else None
                ab_ = br(x, y)
                ac_ = br(x, z)
                rhs = lin((1, cup(ab_, z) if ab_ is not None else None),
                          ((-1) ** (B_ * C_ + m), cup(ac_, y) if ac_ is not None else None))
                record("v", (a, b, c), lhs, rhs)
    return fails


def induced_products(A: PAlgebra, cup_element: Vec, max_degree: int = 3) -> GradedProducts:
    """Cup (from an arity-2 element of ↑(P⊗P!)) and intrinsic bracket on H^{<=max_degree}."""
    ac = build_complex(A, min(A.cap, max_degree + 2))
    Hm = CohomologyModel(ac)
    ks = [k for k in Hm.degrees if k <= max_degree]
    index, degrees, reps = {}, [], []
    for k in ks:
        for i in range(Hm.dim(k)):
            index[(k, i)] = len(degrees)
            degrees.append(k)
            reps.append((Hm.rep_vector(k, i), k + 1))
    offsets = {k: min((index[(k, i)] for i in range(Hm.dim(k))), default=None) for k in ks}

    def to_global(k, cls):
        return {offsets[k] + i: c for i, c in cls.items()}

    cup, brk = {}, {}
    for a, (f, mf) in enumerate(reps):
        for b, (g, mg) in enumerate(reps):
            kc = degrees[a] + degrees[b] + 1
            if kc in ks and mf + mg <= A.cap:
                cls = Hm.class_of(kc, cup_act(A, cup_element, 2, [(f, mf), (g, mg)]))
                cup[(a, b)] = to_global(kc, cls)
            kb = degrees[a] + degrees[b]
            if kb in ks:
                cls = Hm.class_of(kb, intrinsic_bracket(A, f, mf, g, mg))
                brk[(a, b)] = to_global(kb, cls)
    return GradedProducts(degrees, cup, brk)


def delta_of_circle_is_chi(A: PAlgebra, cap: Optional[int] = None, scale=-2) -> List[str]:
    """Residuals of δ_P(∘)(f, g) = scale · χ(f, g) over basis cochains, arities summing to <= cap - 1.

    ``scale = -2`` reflects d_P = Aver[φ, -]; see the module docstring.
    """
    cap = cap or A.cap
    build_complex(A, cap)
    chi = chi_vector(A)
    bad = []
    for m in range(1, cap):
        for n in range(1, cap - m):
            for f in basis_cochains(A, m):
                for g in basis_cochains(A, n):
                    r = delta_of_circle(A, f, m, g, n)
                    vadd(r, cup_act(A, chi, 2, [(f, m), (g, n)]), -scale)
                    if r:
                        bad.append(f"arities ({m},{n}): residual {r}")
    return bad


# -- small algebra library and random samples ----------------------------------

def _from_products(d: int, prods: Dict[Tuple[int, int], Dict[int, int]]) -> list:
    tab = [[[0] * d for _ in range(d)] for _ in range(d)]
    for (i, j), v in prods.items():
        for k, c in v.items():
            tab[i][j][k] = c
    return tab


def _library(operad: str, dim: int) -> List[Dict[str, list]]:
    """Known valid structures (as table dicts) of the given dimension."""
    ass, com, lie = [], [], []
    if dim == 1:
        ass = com = [_from_products(1, {(0, 0): {0: 1}})]
    if dim == 2:
        eps = _from_products(2, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}})
        kk = _from_products(2, {(0, 0): {0: 1}, (1, 1): {1: 1}})
        left = _from_products(2, {(0, 0): {0: 1}, (0, 1): {1: 1}})   # e0 left unit, e1 e* = 0
        ass, com = [eps, kk, left], [eps, kk]
        lie = [_from_products(2, {(0, 1): {1: 1}, (1, 0): {1: -1}})]
    if dim == 3:
        # k[x]/x^3, upper triangular 2x2 matrices (e11, e12, e22), k x k x k
        trunc = _from_products(3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 0): {1: 1}, (0, 2): {2: 1},
                                   (2, 0): {2: 1}, (1, 1): {2: 1}})
        tri = _from_products(3, {(0, 0): {0: 1}, (0, 1): {1: 1}, (1, 2): {1: 1}, (2, 2): {2: 1}})
        kkk = _from_products(3, {(0, 0): {0: 1}, (1, 1): {1: 1}, (2, 2): {2: 1}})
        ass, com = [trunc, tri, kkk], [trunc, kkk]
        heis = _from_products(3, {(0, 1): {2: 1}, (1, 0): {2: -1}})
        sl2 = _from_products(3, {(0, 1): {1: 2}, (1, 0): {1: -2}, (0, 2): {2: -2}, (2, 0): {2: 2},
                                 (1, 2): {0: 1}, (2, 1): {0: -1}})   # h, e, f
        lie = [heis, sl2]
    if dim == 4:
        # gl2 on (h, e, f, z) with z central; filiform [x0,x1] = x2, [x0,x2] = x3
        gl2 = _from_products(4, {(0, 1): {1: 2}, (1, 0): {1: -2}, (0, 2): {2: -2}, (2, 0): {2: 2},
                                 (1, 2): {0: 1}, (2, 1): {0: -1}})
        fil = _from_products(4, {(0, 1): {2: 1}, (1, 0): {2: -1}, (0, 2): {3: 1}, (2, 0): {3: -1}})
        lie = [gl2, fil]
    if operad == "Ass":
        return [{"mu": t} for t in ass]
    if operad == "Com":
        return [{"mu": t} for t in com]
    if operad == "Lie":
        return [{"lam": t} for t in lie]
    if operad == "Sym":
        # commutative, values in the last basis vector, which annihilates everything
        last = dim - 1
        prods = {(i, j): {last: 1} for i in range(last) for j in range(last)}
        return [{"mu": _from_products(dim, prods)}] if dim >= 2 else []
    if operad == "D":
        return [{"mu": a, "nu": b} for a in ass for b in ass]
    raise ValueError(f"no library for {operad}")


def transport(structure: Dict[str, list], g: List[List[Fraction]]) -> Dict[str, list]:
    """μ'(x, y) = g μ(g^{-1} x, g^{-1} y) for an invertible matrix g (columns = images of e_i)."""
    d = len(g)
    gi = invert_matrix(g)
    out = {}
    for name, tab in structure.items():
        new = [[[Fraction(0)] * d for _ in range(d)] for _ in range(d)]
        for i in range(d):
            for j in range(d):
                # e_i = Σ_a gi[a][i] e_a in the old basis
                for a in range(d):
                    if not gi[a][i]:
                        continue
                    for b in range(d):
                        if not gi[b][j]:
                            continue
                        for k in range(d):
                            c = gi[a][i] * gi[b][j] * Fraction(tab[a][b][k])
                            if c:
                                for r in range(d):
                                    new[i][j][r] += g[r][k] * c
        out[name] = new
    return out


def random_algebra(operad: str, dim: int, rng, cap: int = 5) -> PAlgebra:
    """A library algebra transported along a random invertible small-integer matrix."""
    lib = _library(operad, dim)
    if not lib:
        raise ValueError(f"no {operad}-algebras of dimension {dim} in the library")
    base = rng.choice(lib)
    while True:
        g = [[Fraction(rng.randint(-2, 2)) for _ in range(dim)] for _ in range(dim)]
        try:
            s = transport(base, g)
        except (ZeroDivisionError, ValueError):
            continue
        return PAlgebra(operad, dim, s, cap)


@dataclass
class Cochain:
    """An invariant vector of T(m) = End_A(m) ⊗ P!(m); degree m - 1."""

    arity: int
    vec: Vec

    @property
    def degree(self) -> int:
        return self.arity - 1

    def is_invariant(self, A: PAlgebra) -> bool:
        return is_invariant(A.T, self.vec, self.arity)


def realize_soul_class(cls: LieElement, A: PAlgebra, chi: Optional[LieElement] = None) -> Cochain:
    """(α ⊗ id) applied to a homogeneous invariant of (P ⊗ P!)(m).

    ``chi`` is accepted for symmetry with the soul API; the realization only
    uses α.
    """
    if len(cls.comps) != 1:
        raise ValueError("realize one homogeneous component at a time")
    ((m, v),) = cls.comps.items()
    return Cochain(m, A.push(v, m))

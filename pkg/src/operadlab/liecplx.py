"""The graded Lie algebra on an operad and the soul complexes built from it.

For an operad T the space ⊕_m T(m), with T(m) placed in degree m-1, carries

    f ∘ g   = Σ_i (-1)^{(n-1)(i-1)} f ∘_i g          (f arity m, g arity n)
    [f, g]  = f ∘ g - (-1)^{(m-1)(n-1)} g ∘ f.

Components are stored as plain T(m)-vectors; the suspension and sign twists
live entirely in these signs.  For T = P ⊗ P! the canonical element χ is
the sum of e_k ⊗ e^k over dual bases of P(2) and P!(2); [χ, χ] = 0 encodes
the quadratic relations.  The symmetric soul complex is the sign-twisted
invariant part of T with differential t ↦ Aver[χ, t]; the non-Σ one uses
all of T(m) with differential t ↦ [t, χ].
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional

from .exactlin.complexes import CohomologyTable, ComplexRep, cohomology_dims
from .exactlin.linalg import BasedSpace, invert_matrix, LinMap, Subspace, Vec, vadd, vclean, veq, vscale
from .exactlin.perms import all_perms
from .operads.base import Operad
from .operads.catalog import catalog
from .operads.constructions import Tensor, tensor
from .operads.invariants import TwistedInvariants, average, is_invariant


@dataclass
class LieElement:
    """Finite sum of components, one T(m)-vector per arity m."""

    T: Operad
    comps: Dict[int, Vec] = field(default_factory=dict)

    def __post_init__(self):
        self.comps = {m: vclean(v) for m, v in self.comps.items() if vclean(v)}

    @classmethod
    def single(cls, T, m, v):
        return cls(T, {m: v})

    def degree(self) -> Optional[int]:
        """m - 1 for a homogeneous element (internal degrees are 0 here)."""
        ms = set(self.comps)
        return None if len(ms) != 1 else ms.pop() - 1

    def is_zero(self) -> bool:
        return not self.comps

    def __add__(self, other):
        _same(self, other)
        out = {m: dict(v) for m, v in self.comps.items()}
        for m, v in other.comps.items():
            vadd(out.setdefault(m, {}), v)
        return LieElement(self.T, out)

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        return LieElement(self.T, {m: vscale(v, c) for m, v in self.comps.items()})

    def __eq__(self, other):
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.T is other.T and (self - other).is_zero()


def _same(f, g):
    if f.T is not g.T:
        raise ValueError("elements live over different operads")


def circ_vec(T: Operad, f: Vec, m: int, g: Vec, n: int) -> Vec:
    out: Vec = {}
    for i in range(1, m + 1):
        vadd(out, T.compose(i, f, m, g, n), (-1) ** ((n - 1) * (i - 1)))
    return out


def bracket_vec(T: Operad, f: Vec, m: int, g: Vec, n: int) -> Vec:
    out = circ_vec(T, f, m, g, n)
    return vadd(out, circ_vec(T, g, n, f, m), -((-1) ** ((m - 1) * (n - 1))))


def circ(f: LieElement, g: LieElement) -> LieElement:
    _same(f, g)
    out: Dict[int, Vec] = {}
    for m, x in f.comps.items():
        for n, y in g.comps.items():
            vadd(out.setdefault(m + n - 1, {}), circ_vec(f.T, x, m, y, n))
    return LieElement(f.T, out)


def bracket(f: LieElement, g: LieElement) -> LieElement:
    _same(f, g)
    out: Dict[int, Vec] = {}
    for m, x in f.comps.items():
        for n, y in g.comps.items():
            vadd(out.setdefault(m + n - 1, {}), bracket_vec(f.T, x, m, y, n))
    return LieElement(f.T, out)


class NotAssociative(ValueError):
    def __init__(self, residual):
        super().__init__(f"ω ∘_1 ω - ω ∘_2 ω = {residual!r} is not zero")
        self.residual = residual


class NotMaurerCartan(ValueError):
    def __init__(self, residual):
        super().__init__("[φ, φ] is not zero")
        self.residual = residual


def check_associative(omega: LieElement) -> Vec:
    """Residual ω∘_1ω - ω∘_2ω for an arity-2 element (empty when associative)."""
    if set(omega.comps) != {2}:
        raise ValueError("ω must be concentrated in arity 2")
    w = omega.comps[2]
    T = omega.T
    return vadd(T.compose(1, w, 2, w, 2), T.compose(2, w, 2, w, 2), -1)


def delta_omega(t: LieElement, omega: LieElement) -> LieElement:
    """δ_ω(t) = t∘_1ω - t∘_2ω + ... + (-1)^m ω∘_1t - ω∘_2t, i.e. [t, ω]."""
    res = check_associative(omega)
    if res:
        raise NotAssociative(res)
    return bracket(t, omega)


def bracket_sigma(f: LieElement, g: LieElement) -> LieElement:
    """Bracket of invariants: Aver[f, g] (the bracket on coinvariants, read
    through the averaging isomorphism).  In symmetric mode this is the
    bracket for which [χ, χ] = 0; the plain bracket is only zero modulo
    coinvariant relations."""
    b = bracket(f, g)
    return LieElement(f.T, {m: average(f.T, v, m) for m, v in b.comps.items()})


def delta_sigma(phi: LieElement, t: LieElement, check: bool = True) -> LieElement:
    """δ^Σ_φ t = [φ, t], read on invariants: the average of the bracket.

    The bracket of two invariants is only invariant up to coinvariant
    relations; averaging is the isomorphism from coinvariants back to
    invariants.
    """
    _same(phi, t)
    if check:
        pp = bracket_sigma(phi, phi)
        if not pp.is_zero():
            raise NotMaurerCartan(pp)
    return bracket_sigma(phi, t)


# -- canonical element ---------------------------------------------------

class TrivialOperad(ValueError):
    pass


def canonical_chi(P: Operad, P_dual: Operad, pairing: Dict, basis: Optional[List[Vec]] = None,
                  T: Optional[Tensor] = None) -> LieElement:
    """χ = Σ_k e_k ⊗ e^k in (P ⊗ P!)(2).

    ``pairing`` maps (p key, q key) to <p, q> for basis keys of P(2) and
    P!(2).  ``basis`` optionally replaces the standard basis of P(2) (to test
    basis independence); the dual basis is solved from the pairing.
    """
    B2 = P.basis(2)
    if not B2:
        raise TrivialOperad("P(2) = 0: the canonical element is not defined")
    Q2 = P_dual.basis(2)
    if len(Q2) != len(B2):
        raise ValueError("P(2) and P!(2) have different dimensions")
    basis = [{b: 1} for b in B2] if basis is None else basis
    # functionals q ↦ <e_k, q> on P!(2), as rows over Q2
    rows = []
    for e in basis:
        rows.append({q: sum(c * pairing.get((p, q), 0) for p, c in e.items()) for q in Q2})
    # dual basis e^l with <e_k, e^l> = δ_kl, from the inverse Gram matrix
    G = [[r.get(q, 0) for q in Q2] for r in rows]
    Ginv = _invert(G)
    T = tensor(P, P_dual) if T is None else T
    chi: Vec = {}
    for k, e in enumerate(basis):
        # e^k = Σ_q Ginv[q][k] q
        for qi, q in enumerate(Q2):
            c = Ginv[qi][k]
            if c:
                for p, a in e.items():
                    vadd(chi, {(p, q): a * c})
    return LieElement(T, {2: chi})


def _invert(G):
    try:
        return invert_matrix(G)
    except ZeroDivisionError:
        raise ValueError("pairing on arity 2 is degenerate") from None


def catalog_chi(name: str, cap: int = 6):
    """(T = P ⊗ P!, χ) for a catalog operad."""
    e = catalog(name, cap)
    if e.dual is None:
        raise ValueError(f"{name} has no stored dual")
    pairing = {(p, q): c for p, q, c in e.chi}
    T = tensor(e.P, e.dual)
    return T, canonical_chi(e.P, e.dual, pairing, T=T)


def chi_symmetric(chi: LieElement) -> bool:
    """χτ = χ for the sign-twisted action of τ = (2 1)."""
    v = chi.comps[2]
    return veq(vscale(chi.T.act(v, 2, (2, 1)), -1), v)


# -- soul complexes ------------------------------------------------------

def _label(m, lab):
    return (m,) + tuple(lab)


def soul_complex(T: Tensor, chi: LieElement, cap: int, name: str = "") -> ComplexRep:
    """Degree m-1 holds (T(m) ⊗ sgn_m)^{Σ_m}, m = 1..cap; d(t) = Aver[χ, t].

    Columns are computed on orbit seeds x0 (Aver x0 = basis element):
    Aver[χ, Aver x0] = Aver[χ, x0] because the bracket with an invariant
    descends to coinvariants.
    """
    if T.symmetric is False:
        raise ValueError("use nonsigma_soul_complex for non-Σ operads")
    w = chi.comps.get(2, {})
    invs = [TwistedInvariants(T, m) for m in range(1, cap + 1)]
    spaces = [BasedSpace(tuple(_label(m, lab) for lab in I.labels))
              for m, I in zip(range(1, cap + 1), invs)]
    diffs = []
    for k in range(cap - 1):
        m = k + 1
        src, tgt = invs[k], invs[k + 1]
        cols = []
        for lab in src.labels:
            if tgt.dim == 0:
                cols.append({})
                continue
            z = bracket_vec(T, w, 2, src.seed(lab), m)
            cols.append({_label(m + 1, l2): c for l2, c in tgt.coords(z).items()})
        diffs.append(LinMap(spaces[k], spaces[k + 1], cols))
    return ComplexRep(spaces, diffs, truncated=True, name=name or f"soul({T.name})")


def nonsigma_soul_complex(T: Tensor, chi: LieElement, cap: int, name: str = "") -> ComplexRep:
    """Degree m-1 holds T(m); d = δ_χ (t ↦ [t, χ])."""
    res = check_associative(chi)
    if res:
        raise NotAssociative(res)
    w = chi.comps[2]
    spaces = [BasedSpace(tuple((m, b) for b in T.basis(m))) for m in range(1, cap + 1)]
    diffs = []
    for k in range(cap - 1):
        m = k + 1
        cols = []
        for b in T.basis(m):
            z = bracket_vec(T, {b: 1}, m, w, 2)
            cols.append({(m + 1, key): c for key, c in z.items()})
        diffs.append(LinMap(spaces[k], spaces[k + 1], cols))
    return ComplexRep(spaces, diffs, truncated=True, name=name or f"soul({T.name})")


def catalog_soul_complex(name: str, cap: int) -> ComplexRep:
    T, chi = catalog_chi(name, cap)
    if T.symmetric:
        return soul_complex(T, chi, cap, f"soul({name})")
    return nonsigma_soul_complex(T, chi, cap, f"soul({name})")


def soul_cohomology(name: str, cap: int, check: bool = True) -> CohomologyTable:
    """Cohomology table of the soul complex of a catalog operad."""
    return cohomology_dims(catalog_soul_complex(name, cap), check=check)


def nonsigma_soul_cohomology(name: str, cap: int, check: bool = True) -> CohomologyTable:
    e = catalog(name, cap)
    if e.P.symmetric:
        raise ValueError(f"{name} is symmetric; use soul_cohomology")
    return soul_cohomology(name, cap, check)


def invariant_element(T: Tensor, m: int, vec: Vec) -> LieElement:
    """Wrap a vector after checking twisted Σ_m invariance."""
    if not is_invariant(T, vec, m):
        raise ValueError("vector is not invariant under the twisted action")
    return LieElement(T, {m: vec})


def soul_realize(cls: LieElement, A, chi: Optional[LieElement] = None):
    """Push a closed invariant soul cochain into C*_P(A; A) along α ⊗ id.

    ``A`` is a cochain.PAlgebra; the result is a cochain.Cochain.
    """
    from . import cochain

    return cochain.realize_soul_class(cls, A, chi)


def presentation_chi(p, cap: int = 6):
    """(T = P ⊗ P!, χ) for a binary quadratic presentation, P! from the annihilator.

    The arity-2 pairing is the generator pairing of the dual presentation.
    """
    from .operads.free import _gen_pairing, presented_operad, quadratic_dual

    P = presented_operad(p, cap, "P")
    D = presented_operad(quadratic_dual(p), cap, "P!")
    pairing = {}
    for a in P.basis(2):
        for b in D.basis(2):
            if a[0] == b[0]:
                pairing[(a, b)] = _gen_pairing(p.E[a[0]], a[1], b[1])
    T = tensor(P, D)
    return T, canonical_chi(P, D, pairing, T=T)

"""The permutation complex k → k[Σ_2] → k[Σ_3] → ... and its block structure.

δ(σ) = Σ_{i=0}^{m+1} (-1)^i d_i(σ), with d_i the doubling cofaces of
``exactlin.perms.doubling``; Σ_m sits in degree m-1.  Every permutation has
a grade and a primitive contraction κ; the complex splits into the
subcomplexes spanned by permutations with the same κ.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, List, Tuple

from .exactlin.complexes import CohomologyTable, ComplexRep, cohomology_dims
from .exactlin.linalg import BasedSpace, LinMap, Vec, vadd, veq, vscale
from .exactlin.perms import Perm, all_perms, doubling, identity, sign


def perm_differential(x: Vec, m: int) -> Vec:
    """δ on a combination of permutations of Σ_m."""
    out: Vec = {}
    for s, c in x.items():
        if len(s) != m:
            raise ValueError(f"{s} is not in Σ_{m}")
        for i in range(m + 2):
            vadd(out, {doubling(s, i): 1}, c * (-1) ** i)
    return out


@dataclass(frozen=True)
class GradeData:
    a: int
    b: int
    c: int
    core: Perm
    primitive: Perm

    @property
    def g(self) -> int:
        return self.a + self.b + self.c


def _standardize(vals) -> Perm:
    order = sorted(vals)
    pos = {v: i + 1 for i, v in enumerate(order)}
    return tuple(pos[v] for v in vals)


def grade(s: Perm) -> GradeData:
    n = len(s)
    if s == identity(n):
        return GradeData(0, n - 1, 0, (1,), (1,))
    a = 0
    while a < n and s[a] == a + 1:
        a += 1
    c = 0
    while c < n and s[n - 1 - c] == n - c:
        c += 1
    core = tuple(v - a for v in s[a:n - c])
    b = sum(1 for t in range(len(core) - 1) if core[t + 1] == core[t] + 1)
    # contract each maximal run ω(s), ω(s)+1, ... to one strand
    heads = [core[0]] + [core[t + 1] for t in range(len(core) - 1) if core[t + 1] != core[t] + 1]
    return GradeData(a, b, c, core, _standardize(heads))


def primitive_contraction(s: Perm) -> Perm:
    return grade(s).primitive


def is_primitive(s: Perm) -> bool:
    return grade(s).g == 0


def block_decompose(m: int) -> Dict[Perm, List[Perm]]:
    """Σ_m partitioned by primitive contraction (lexicographic within blocks)."""
    out: Dict[Perm, List[Perm]] = {}
    for s in all_perms(m):
        out.setdefault(primitive_contraction(s), []).append(s)
    return out


def expected_block_size(kappa: Perm, m: int) -> int:
    """C(g+k+1, k+1) with g = m - k for primitive κ ∈ Σ_k, k >= 2; the unit block has one element per arity."""
    k = len(kappa)
    g = m - k
    if g < 0:
        return 0
    if kappa == (1,):
        return 1
    return comb(g + k + 1, k + 1)


def perm_complex(cap: int, kappa: Perm = None) -> ComplexRep:
    """Degrees 0..cap-1 (Σ_1..Σ_cap); restricted to the block of κ if given."""
    spaces = []
    for m in range(1, cap + 1):
        if kappa is None:
            labels = tuple(all_perms(m))
        else:
            labels = tuple(s for s in all_perms(m) if primitive_contraction(s) == kappa)
        spaces.append(BasedSpace(labels))
    diffs = []
    for k in range(cap - 1):
        m = k + 1
        tgt = spaces[k + 1]
        cols = []
        for s in spaces[k].labels:
            img = perm_differential({s: 1}, m)
            if kappa is not None:
                stray = [t for t in img if t not in tgt._pos]
                if stray:
                    raise ValueError(f"δ({s}) leaves the block of {kappa}: {stray[:3]}")
            cols.append(img)
        diffs.append(LinMap(spaces[k], tgt, cols))
    name = "perm" if kappa is None else f"perm[{kappa}]"
    return ComplexRep(spaces, diffs, truncated=True, name=name)


def primitives(k: int) -> List[Perm]:
    return [s for s in all_perms(k) if is_primitive(s)]


def block_acyclicity(kappa: Perm, cap: int) -> CohomologyTable:
    if not is_primitive(kappa):
        raise ValueError(f"{kappa} is not primitive")
    return cohomology_dims(perm_complex(cap, kappa))


def alternating_identity_complex(cap: int) -> ComplexRep:
    """k → k → k → ... with d_{2i} = id and d_{2i+1} = 0 (degrees 0..cap-1)."""
    spaces = [BasedSpace(((m,),)) for m in range(1, cap + 1)]
    diffs = []
    for k in range(cap - 1):
        cols = [{(k + 2,): 1}] if k % 2 == 0 else [{}]
        diffs.append(LinMap(spaces[k], spaces[k + 1], cols))
    return ComplexRep(spaces, diffs, truncated=True, name="alt-id")


def alternating_identity_inclusion(m: int) -> Perm:
    """Generator of the degree-(m-1) piece ↦ id_m."""
    return identity(m)


def block_table(cap: int) -> List[dict]:
    """One row per primitive κ (arity <= cap): sizes per degree and cohomology."""
    rows = []
    for k in range(1, cap + 1):
        for kappa in primitives(k):
            tab = block_acyclicity(kappa, cap)
            rows.append({
                "kappa": list(kappa),
                "sizes": tab.dims,
                "expected_sizes": [expected_block_size(kappa, m) for m in range(1, cap + 1)],
                "h": tab.h,
                "reliable": tab.reliable,
            })
    return rows


def ass_identification_coeff(sigma: Perm) -> int:
    """Scalar c_m(σ) in Φ_m(σ) = c_m(σ) · Aver(id_m ⊗ σ), σ read as an Ass! word.

    The sign pattern and the 2^{m-1} rescaling make Φ a chain map onto the
    Ass soul complex on the nose; both were fixed against the algebraic side.
    """
    m = len(sigma)
    eps = (-1) ** ((m - 1) * (m - 2) // 2)
    return 2 ** (m - 1) * eps * sign(sigma)


def oracle_mismatches(cap: int = 5) -> List[str]:
    """Compare Φ ∘ δ with the algebraic Ass soul differential ∘ Φ on Σ_m, m < cap.

    Returns human-readable mismatches (empty when the two agree exactly).
    """
    from .liecplx import catalog_chi, soul_complex
    from .operads.invariants import TwistedInvariants

    T, chi = catalog_chi("Ass", cap)
    C = soul_complex(T, chi, cap, "soul(Ass)")
    word_index = {}
    for m in range(1, cap + 1):
        inv = TwistedInvariants(T, m)
        # one orbit (the identity word) with trivial stabilizer; fibre keys are Ass! words
        if len(inv.orbits.reps) != 1 or inv.fibres[0] is not None:
            raise AssertionError("unexpected invariant basis for Ass ⊗ Ass")
        word_index[m] = inv._fibre_idx(0)

    def phi_label(s):
        return (len(s), 0, word_index[len(s)][s])

    errors = []
    for m in range(1, cap):
        d = C.differentials[m - 1]
        for s in all_perms(m):
            lhs = vscale(d.columns[d.source.index(phi_label(s))], ass_identification_coeff(s))
            rhs: Vec = {}
            for t, c in perm_differential({s: 1}, m).items():
                vadd(rhs, {phi_label(t): c * ass_identification_coeff(t)})
            if not veq(lhs, rhs):
                errors.append(f"m={m} σ={s}: algebraic {lhs} vs combinatorial {rhs}")
    return errors

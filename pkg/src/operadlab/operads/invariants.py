"""Σ_n-invariants of the sign-twisted module T(n) ⊗ sgn_n for T = M ⊗ L.

The twisted action is x ⋆ g = sgn(g) (x·g).  When one tensor factor M acts
by signed permutations of its basis, T(n) splits over the M-orbits: if p0
is an orbit representative with stabilizer H, every invariant is the average
of some p0 ⊗ u with u in the fibre U = {u ∈ L(n) : u ⋆ h = η_h u, h ∈ H}
(η_h the sign with p0·h = η_h p0).  Averages of ``p0 ⊗ u_j`` over a basis
u_j of U, over all orbits, form a basis of the invariants.  This is the same
as averaging the standard basis and keeping an independent subset, but never
enumerates T(n) itself, which matters for (Ass ⊗ Ass)(7).

``coords(z)`` returns the coordinates of Aver(z) in that basis for any
z ∈ T(n), by pulling every term back to the fibre over its orbit
representative.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Hashable, List, Optional, Tuple

from math import factorial

from ..exactlin.linalg import Subspace, Vec, nullspace, vadd, vscale
from ..exactlin.perms import Perm, all_perms, compose, generators, identity, inverse, sign
from .base import Operad


class Orbits:
    """Orbits of the (signed permutation) basis of a monomial operad in arity n.

    For each key p: ``info[p] = (orbit index, ε_p, t_p)`` with p = ε_p · p0·t_p.
    ``stab[o]`` lists (h, η_h) for the stabilizer of the representative.
    """

    def __init__(self, M: Operad, n: int):
        if not M.monomial:
            raise ValueError(f"{M.name} does not act by signed permutations")
        self.M, self.n = M, n
        self.reps: List[Hashable] = []
        self.info: Dict[Hashable, Tuple[int, int, Perm]] = {}
        self.stab: List[List[Tuple[Perm, int]]] = []
        self.members: List[List[Hashable]] = []
        self.stab_gens: List[List[Tuple[Perm, int]]] = []
        gens = generators(n)
        for p0 in M.basis(n):
            if p0 in self.info:
                continue
            o = len(self.reps)
            self.reps.append(p0)
            self.info[p0] = (o, 1, identity(n))
            members = [p0]
            schreier = {}
            k = 0
            while k < len(members):
                p = members[k]
                k += 1
                _, ep, tp = self.info[p]
                for s in gens:
                    ((q, c),) = M.act_key(p, n, s).items()
                    tq = compose(tp, s)
                    eq = c * ep
                    if q not in self.info:
                        self.info[q] = (o, eq, tq)
                        members.append(q)
                    else:
                        _, e2, t2 = self.info[q]
                        h = compose(tq, inverse(t2))
                        if h != identity(n):
                            schreier[h] = eq * e2
            self.members.append(members)
            self.stab_gens.append(sorted(schreier.items()))
            self.stab.append(None)
        self._schreier = [dict(g) for g in self.stab_gens]

    def stabilizer(self, o: int) -> List[Tuple[Perm, int]]:
        """All (h, η_h) with p0·h = η_h p0, enumerated on demand."""
        if self.stab[o] is None:
            self.stab[o] = _close_group(self.n, self._schreier[o], self.M, self.reps[o])
        return self.stab[o]

    def stabilizer_order(self, o: int) -> int:
        return factorial(self.n) // len(self.members[o])

    def pull(self, p) -> Tuple[int, int, Perm]:
        return self.info[p]


def _close_group(n, gens: Dict[Perm, int], M: Operad, p0) -> List[Tuple[Perm, int]]:
    """All elements of the group generated by ``gens`` with their signs on p0."""
    elems = {identity(n): 1}
    frontier = [identity(n)]
    while frontier:
        new = []
        for g in frontier:
            for s, es in gens.items():
                h = compose(g, s)
                if h not in elems:
                    elems[h] = elems[g] * es
                    new.append(h)
        frontier = new
    # η_h read off directly; also guards against inconsistent bookkeeping
    out = []
    for h in sorted(elems):
        ((q, c),) = M.act_key(p0, n, h).items()
        if q != p0:
            raise AssertionError("stabilizer element moves the representative")
        out.append((h, c))
    return out


AVERAGE_LIMIT = 120


class _Fibre:
    """U = {u : u ⋆ h = η_h u} inside L(n), with a projection onto U.

    Small stabilizers: U is spanned by averages of the basis of L(n) and the
    projection is the average over H.  Large stabilizers (|H| > AVERAGE_LIMIT):
    U is the common kernel of u ↦ tw(h) η_h u·h - u over generators h, and the
    projection is read off from the decomposition L(n) = U ⊕ W,
    W = Σ_h im(1 - tw(h) η_h ρ(h)).  Both give the same projection.
    """

    def __init__(self, inv: "TwistedInvariants", o: int):
        self.inv, self.o = inv, o
        L, n = inv.L, inv.n
        orb = inv.orbits
        self.averaging = orb.stabilizer_order(o) <= AVERAGE_LIMIT
        self._split = None
        if self.averaging:
            vecs = [inv._project_fibre(o, {q: 1}) for q in L.basis(n)]
            self.U = Subspace(v for v in vecs if v)
        else:
            basis = L.basis(n)
            rows: Dict[Hashable, Vec] = {}
            wvecs = []
            for h, eta in orb.stab_gens[o]:
                c = inv._tw(h) * eta
                for q in basis:
                    r = vadd(vscale(L.act_key(q, n, h), c), {q: 1}, -1)
                    if r:
                        wvecs.append(r)
                    for k, x in r.items():
                        rows.setdefault((h, k), {})[q] = x
            self.U = Subspace(nullspace(list(rows.values()), basis))
            if self.U.dim:
                self._split = Subspace(list(self.U.basis) + wvecs)

    @property
    def dim(self):
        return self.U.dim

    def coordinates(self, y: Vec):
        if self.dim == 0:
            return []
        if self.averaging:
            return self.U.coordinates(self.inv._project_fibre(self.o, y))
        return self._split.coordinates(y)[:self.dim]


class TwistedInvariants:
    """Basis and coordinates for (T(n) ⊗ sgn_n)^{Σ_n}, T a two-factor Tensor.

    ``side`` selects which factor is used for orbits (0 = first); by default
    the first factor that acts monomially.
    """

    def __init__(self, T, n: int, side: Optional[int] = None, twisted: bool = True):
        self.T, self.n, self.twisted = T, n, twisted
        factors = (T.P, T.Q)
        if side is None:
            side = 0 if factors[0].monomial else 1
        if not factors[side].monomial:
            raise ValueError(f"{factors[side].name} does not act monomially; orbit invariants need such a factor")
        self.side = side
        self.M, self.L = factors[side], factors[1 - side]
        self.orbits = Orbits(self.M, n)
        self.labels: List[Tuple[int, int]] = []
        self.fibres: List[Optional[_Fibre]] = []   # None: stabilizer trivial, U = L(n)
        self._fibre_keys: List[List[Hashable]] = []
        for o, p0 in enumerate(self.orbits.reps):
            if not self.orbits.stab_gens[o]:
                keys = list(self.L.basis(n))
                self.fibres.append(None)
                self._fibre_keys.append(keys)
                self.labels.extend((o, j) for j in range(len(keys)))
            else:
                fib = _Fibre(self, o)
                self.fibres.append(fib)
                self._fibre_keys.append([])
                self.labels.extend((o, j) for j in range(fib.dim))
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def _tw(self, g) -> int:
        return sign(g) if self.twisted else 1

    def _project_fibre(self, o: int, y: Vec) -> Vec:
        """π_H(y) = 1/|H| Σ_h tw(h) η_h y·h."""
        H = self.orbits.stabilizer(o)
        out: Vec = {}
        for h, eta in H:
            vadd(out, self.L.act(y, self.n, h), self._tw(h) * eta)
        return vscale(out, Fraction(1, len(H)))

    def _split(self, key):
        return (key[0], key[1]) if self.side == 0 else (key[1], key[0])

    def _join(self, p, q):
        return (p, q) if self.side == 0 else (q, p)

    def fibres_of(self, z: Vec) -> Dict[int, Vec]:
        """Pull every term of z back to the fibre over its orbit representative."""
        out: Dict[int, Vec] = {}
        for key, c in z.items():
            p, q = self._split(key)
            o, ep, t = self.orbits.pull(p)
            y = self.L.act_key(q, self.n, inverse(t))
            vadd(out.setdefault(o, {}), y, c * ep * self._tw(t))
        return out

    def coords(self, z: Vec) -> Dict[Tuple[int, int], object]:
        """Coordinates of Aver(z) on ``labels``."""
        res: Dict[Tuple[int, int], object] = {}
        for o, y in self.fibres_of(z).items():
            if not y:
                continue
            sub = self.fibres[o]
            if sub is None:
                idx = self._fibre_idx(o)
                for q, c in y.items():
                    res[(o, idx[q])] = c
            else:
                if sub.dim == 0:
                    continue
                for j, c in enumerate(sub.coordinates(y)):
                    if c:
                        res[(o, j)] = c
        return res

    def _fibre_idx(self, o):
        cache = self.__dict__.setdefault("_idx_cache", {})
        if o not in cache:
            cache[o] = {k: j for j, k in enumerate(self._fibre_keys[o])}
        return cache[o]

    def fibre_vector(self, label) -> Vec:
        o, j = label
        sub = self.fibres[o]
        u = {self._fibre_keys[o][j]: 1} if sub is None else sub.U.basis[j]
        p0 = self.orbits.reps[o]
        return {self._join(p0, q): c for q, c in u.items()}

    def seed(self, label) -> Vec:
        """A vector x0 of T(n) with Aver(x0) equal to the basis element."""
        return self.fibre_vector(label)

    def vector(self, label) -> Vec:
        """The invariant basis element Aver(p0 ⊗ u) written out in T(n)."""
        o, j = label
        u = self._fibre_vec(o, j)
        members = self.orbits.members[o]
        out: Vec = {}
        for p in members:
            _, ep, t = self.orbits.pull(p)
            for q, c in self.L.act(u, self.n, t).items():
                vadd(out, {self._join(p, q): c}, Fraction(ep * self._tw(t), len(members)))
        return out

    def _fibre_vec(self, o, j) -> Vec:
        sub = self.fibres[o]
        return {self._fibre_keys[o][j]: 1} if sub is None else sub.U.basis[j]

    def to_vector(self, coords: Dict) -> Vec:
        out: Vec = {}
        for lab, c in coords.items():
            vadd(out, self.vector(lab), c)
        return out


def average(T: Operad, z: Vec, n: int, twisted: bool = True) -> Vec:
    """Aver(z) = 1/n! Σ_g z ⋆ g, by brute force over Σ_n."""
    out: Vec = {}
    perms = list(all_perms(n))
    for g in perms:
        vadd(out, T.act(z, n, g), sign(g) if twisted else 1)
    return vscale(out, Fraction(1, len(perms)))


def is_invariant(T: Operad, z: Vec, n: int, twisted: bool = True) -> bool:
    from ..exactlin.linalg import veq
    for s in generators(n):
        v = T.act(z, n, s)
        if twisted:
            v = vscale(v, -1)
        if not veq(v, z):
            return False
    return True

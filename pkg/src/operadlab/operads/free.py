"""Free operads on generators and their quotients by quadratic relations.

A tree monomial is an int (a leaf label) or a node ``(name, idx, children)``
where ``idx`` indexes a basis vector of the generator's representation.
In symmetric mode children are kept sorted by their smallest leaf, so every
tree is a canonical representative; moving children around acts on the node
decoration through the generator's Σ_k representation.  In non-Σ mode the
leaves read 1..n from left to right and nothing is reordered.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..exactlin.linalg import Echelon, Vec, vadd, vclean
from ..exactlin.perms import Perm, all_perms, compose, cycle, identity, inverse, sign, transposition
from .base import Operad, ResourceBound

ACTIONS = ("regular", "trivial", "sign", "matrix-list")


def adjacent_word(rho: Perm) -> List[int]:
    """Indices a_1..a_r with rho = s_{a_1} s_{a_2} ... s_{a_r}."""
    rho = list(rho)
    word = []
    while True:
        for j in range(len(rho) - 1):
            if rho[j] > rho[j + 1]:
                rho[j], rho[j + 1] = rho[j + 1], rho[j]
                word.append(j + 1)
                break
        else:
            return list(reversed(word))


@dataclass
class Generator:
    """A generator of arity k with a Σ_k representation on its span.

    ``matrices`` (for action "matrix-list") holds one square matrix per
    adjacent transposition s_1..s_{k-1}; column j is the image of basis j.
    """

    name: str
    arity: int
    degree: int = 0
    action: str = "trivial"
    matrices: Optional[List[List[List[object]]]] = None

    def __post_init__(self):
        if self.arity < 1:
            raise ValueError("generator arity must be >= 1")
        if self.action not in ACTIONS:
            raise ValueError(f"unknown action {self.action!r}")
        if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_']*", self.name):
            raise ValueError(f"bad generator name {self.name!r}")
        if self.action == "matrix-list":
            if self.matrices is None or len(self.matrices) != max(self.arity - 1, 0):
                raise ValueError("matrix-list needs one matrix per adjacent transposition")

    @property
    def dim(self) -> int:
        if self.action == "regular":
            return len(self._perms)
        if self.action == "matrix-list":
            return len(self.matrices[0]) if self.matrices else 1
        return 1

    @property
    def _perms(self) -> List[Perm]:
        return list(all_perms(self.arity))

    def act(self, idx: int, rho: Perm) -> Dict[int, object]:
        """Basis vector idx acted on from the right by rho."""
        if self.action == "trivial":
            return {idx: 1}
        if self.action == "sign":
            return {idx: sign(rho)}
        if self.action == "regular":
            ps = self._perms
            return {ps.index(compose(ps[idx], rho)): 1}
        vec = {idx: 1}
        for a in adjacent_word(rho):
            M = self.matrices[a - 1]
            new: Dict[int, object] = {}
            for j, c in vec.items():
                for i in range(len(M)):
                    if M[i][j]:
                        vadd(new, {i: M[i][j]}, c)
            vec = new
        return vec

    def check_representation(self) -> bool:
        """Coxeter relations for the supplied matrices (always true for the named actions)."""
        if self.action != "matrix-list":
            return True
        k = self.arity
        d = self.dim

        def vec_act(v, a):
            out = {}
            for j, c in v.items():
                M = self.matrices[a - 1]
                for i in range(d):
                    if M[i][j]:
                        vadd(out, {i: M[i][j]}, c)
            return out

        for j in range(d):
            e = {j: 1}
            for a in range(1, k):
                if vclean(vec_act(vec_act(e, a), a)) != e:
                    return False
                for b in range(a + 1, k):
                    if b == a + 1:
                        x = vec_act(vec_act(vec_act(e, a), b), a)
                        y = vec_act(vec_act(vec_act(e, b), a), b)
                    else:
                        x = vec_act(vec_act(e, a), b)
                        y = vec_act(vec_act(e, b), a)
                    if vclean(x) != vclean(y):
                        return False
        return True


@dataclass
class GeneratorSet:
    generators: List[Generator]
    symmetric: bool = True

    def __post_init__(self):
        names = [g.name for g in self.generators]
        if len(set(names)) != len(names):
            raise ValueError("generator names must be distinct")
        for g in self.generators:
            if g.arity == 1:
                raise ValueError("arity-1 generators make the free operad infinite in arity 1")
            if g.degree % 2:
                raise ValueError("odd generator degrees are not supported by the tree model")
            if not g.check_representation():
                raise ValueError(f"matrices for {g.name} do not define a Σ_{g.arity} action")

    def __getitem__(self, name) -> Generator:
        for g in self.generators:
            if g.name == name:
                return g
        raise KeyError(name)


# -- trees ---------------------------------------------------------------

def leaves(t) -> Tuple[int, ...]:
    if isinstance(t, int):
        return (t,)
    out = ()
    for c in t[2]:
        out += leaves(c)
    return out


def min_leaf(t) -> int:
    return t if isinstance(t, int) else min(min_leaf(c) for c in t[2])


def relabel(t, f):
    if isinstance(t, int):
        return f(t)
    return (t[0], t[1], tuple(relabel(c, f) for c in t[2]))


def graft(t, i: int, s, n: int):
    """Plug tree s (arity n) into leaf i of t, shifting labels, no canonicalization."""
    def f(j):
        if j < i:
            return j
        if j > i:
            return j + n - 1
        return relabel(s, lambda x: x + i - 1)
    return relabel(t, f)


def tree_degree(t, E: GeneratorSet) -> int:
    if isinstance(t, int):
        return 0
    return E[t[0]].degree + sum(tree_degree(c, E) for c in t[2])


def canonical(t, E: GeneratorSet) -> Vec:
    """Expand a tree with arbitrarily ordered children into canonical monomials."""
    if isinstance(t, int):
        return {t: 1}
    name, idx, children = t
    kids = [canonical(c, E) for c in children]
    order = sorted(range(len(children)), key=lambda j: min_leaf(children[j]))
    rho = tuple(o + 1 for o in order)
    dec = E[name].act(idx, rho)
    out: Vec = {}
    sorted_kids = [kids[o] for o in order]
    for combo in product(*[list(k.items()) for k in sorted_kids]):
        coeff = 1
        for _, c in combo:
            coeff *= c
        key_children = tuple(k for k, _ in combo)
        for d, c in dec.items():
            vadd(out, {(name, d, key_children): c}, coeff)
    return out


def format_tree(t, E: Optional[GeneratorSet] = None) -> str:
    if isinstance(t, int):
        return str(t)
    name, idx, children = t
    tag = name
    if E is not None and E[name].dim > 1 and E[name].action == "regular":
        # write the decoration through its leaf order: mu(2,1) rather than an index
        p = E[name]._perms[idx]
        inv = inverse(p)
        children = tuple(children[inv[j] - 1] for j in range(len(children)))
        return f"{name}(" + ",".join(format_tree(c, E) for c in children) + ")"
    if E is None or E[name].dim > 1:
        tag = f"{name}[{idx}]"
    return f"{tag}(" + ",".join(format_tree(c, E) for c in children) + ")"


_TOKEN = re.compile(r"\s*(?:([A-Za-z_][A-Za-z0-9_']*)(?:\[(\d+)\])?|(\d+)|([(),]))")


def parse_tree(s: str):
    """Parse "mu(mu(1,2),3)" or "nu[1](2,1)" into a raw (uncanonicalized) tree."""
    toks = []
    pos = 0
    s = s.strip()
    while pos < len(s):
        m = _TOKEN.match(s, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse tree string at {s[pos:]!r}")
        toks.append(m.groups())
        pos = m.end()
    it = iter(range(len(toks)))
    k = [0]

    def peek():
        return toks[k[0]] if k[0] < len(toks) else (None, None, None, None)

    def take():
        t = peek()
        k[0] += 1
        return t

    def node():
        name, idx, num, punct = take()
        if num is not None:
            return int(num)
        if name is None:
            raise ValueError(f"expected a leaf or generator in {s!r}")
        if take()[3] != "(":
            raise ValueError(f"expected '(' after {name} in {s!r}")
        kids = [node()]
        while True:
            p = take()[3]
            if p == ")":
                break
            if p != ",":
                raise ValueError(f"expected ',' or ')' in {s!r}")
            kids.append(node())
        return (name, int(idx) if idx else 0, tuple(kids))

    t = node()
    if k[0] != len(toks):
        raise ValueError(f"trailing input in {s!r}")
    return t


def tree_from_string(s: str, E: GeneratorSet):
    """Canonical expansion of a tree string; checks arities and leaf labels."""
    t = parse_tree(s)

    def check(u):
        if isinstance(u, int):
            return
        g = E[u[0]]
        if len(u[2]) != g.arity:
            raise ValueError(f"{u[0]} has arity {g.arity}, got {len(u[2])} inputs")
        if not 0 <= u[1] < g.dim:
            raise ValueError(f"decoration index {u[1]} out of range for {u[0]}")
        for c in u[2]:
            check(c)

    check(t)
    lv = leaves(t)
    if sorted(lv) != list(range(1, len(lv) + 1)):
        raise ValueError(f"leaf labels of {s!r} must be 1..{len(lv)}")
    if not E.symmetric:
        if list(lv) != sorted(lv):
            raise ValueError("non-Σ trees must have leaves in order")
        return {t: 1}, len(lv)
    return canonical(t, E), len(lv)


# -- free operads --------------------------------------------------------

def _set_partitions(labels: Tuple[int, ...], k: int):
    """Partitions into k nonempty blocks, blocks ordered by their minimum."""
    if k == 0:
        if not labels:
            yield []
        return
    if len(labels) < k:
        return
    first, rest = labels[0], labels[1:]
    # first goes into the first block; choose the rest of that block
    n = len(rest)
    for mask in range(1 << n):
        block = (first,) + tuple(rest[j] for j in range(n) if mask >> j & 1)
        others = tuple(rest[j] for j in range(n) if not mask >> j & 1)
        for tail in _set_partitions(others, k - 1):
            yield [block] + tail


def _compositions(labels: Tuple[int, ...], k: int):
    """Splits of an ordered tuple into k consecutive nonempty blocks."""
    n = len(labels)
    if k == 1:
        if n:
            yield [labels]
        return
    for cut in range(1, n - k + 2):
        for tail in _compositions(labels[cut:], k - 1):
            yield [labels[:cut]] + tail


class FreeOperad(Operad):
    """Γ(E) truncated at ``cap``."""

    def __init__(self, E: GeneratorSet, cap: int = 6, name: str = "Free"):
        super().__init__(cap)
        self.E = E
        self.symmetric = E.symmetric
        self.name = name
        self._tree_cache = {}

    def unit(self):
        return 1

    def degree(self, key, n):
        return tree_degree(key, self.E)

    def _trees(self, labels: Tuple[int, ...]):
        if labels in self._tree_cache:
            return self._tree_cache[labels]
        if len(labels) == 1:
            out = [labels[0]]
        else:
            out = []
            split = _set_partitions if self.E.symmetric else _compositions
            for g in self.E.generators:
                for blocks in split(labels, g.arity):
                    for kids in product(*[self._trees(b) for b in blocks]):
                        for d in range(g.dim):
                            out.append((g.name, d, tuple(kids)))
        self._tree_cache[labels] = out
        return out

    def _basis(self, n):
        return self._trees(tuple(range(1, n + 1)))

    def _compose(self, i, a, m, b, n):
        t = graft(a, i, b, n)
        if not self.symmetric:
            return {t: 1}
        return canonical(t, self.E)

    def _act(self, a, n, sigma):
        inv = inverse(sigma)
        return canonical(relabel(a, lambda j: inv[j - 1]), self.E)

    def element(self, s: str) -> Tuple[Vec, int]:
        return tree_from_string(s, self.E)

    def format(self, key) -> str:
        return format_tree(key, self.E)


def free_operad(E: GeneratorSet, cap: int = 6, name: str = "Free") -> FreeOperad:
    return FreeOperad(E, cap, name)


# -- presented operads ---------------------------------------------------

@dataclass
class Presentation:
    """Generators plus relation vectors (dicts of canonical tree monomials)."""

    E: GeneratorSet
    relations: List[Tuple[Vec, int]] = field(default_factory=list)  # (vector, arity)

    @classmethod
    def from_strings(cls, E: GeneratorSet, relations: Sequence[Sequence[Tuple[str, object]]]):
        rels = []
        for rel in relations:
            vec: Vec = {}
            ar = None
            for tree, coeff in rel:
                v, a = tree_from_string(tree, E)
                if ar is not None and a != ar:
                    raise ValueError("all monomials of a relation must have the same arity")
                ar = a
                vadd(vec, v, Fraction(coeff))
            if ar is not None:
                rels.append((vclean(vec), ar))
        return cls(E, rels)

    def to_json(self) -> dict:
        gens = []
        for g in self.E.generators:
            d = {"name": g.name, "arity": g.arity, "degree": g.degree, "action": g.action}
            if g.action == "matrix-list":
                d["matrices"] = [[[str(x) for x in row] for row in M] for M in g.matrices]
            gens.append(d)
        rels = []
        for vec, _ in self.relations:
            rels.append([{"tree": format_tree(t, self.E), "coeff": str(c)}
                         for t, c in sorted(vec.items(), key=lambda kv: repr(kv[0]))])
        return {"generators": gens, "relations": rels, "symmetric": self.E.symmetric}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        gens = []
        for d in data["generators"]:
            mats = d.get("matrices")
            if mats is not None:
                mats = [[[Fraction(x) for x in row] for row in M] for M in mats]
            gens.append(Generator(d["name"], int(d["arity"]), int(d.get("degree", 0)),
                                  d.get("action", "trivial"), mats))
        E = GeneratorSet(gens, bool(data.get("symmetric", True)))
        rels = [[(r["tree"], Fraction(str(r.get("coeff", 1)))) for r in rel]
                for rel in data.get("relations", [])]
        return cls.from_strings(E, rels)


class InconsistentPresentation(ValueError):
    pass


class PresentedOperad(Operad):
    """Γ(E)/(R): bases are the non-pivot tree monomials of each arity."""

    def __init__(self, p: Presentation, cap: int = 6, name: str = "Presented"):
        super().__init__(cap)
        self.presentation = p
        self.free = FreeOperad(p.E, cap, name + "-free")
        self.symmetric = p.E.symmetric
        self.name = name
        self._ideal: Dict[int, Echelon] = {}
        self._ideal_rows: Dict[int, List[Vec]] = {}
        for vec, ar in p.relations:
            if ar == 1:
                raise InconsistentPresentation("relations in arity 1 would kill the unit")
            if ar > cap:
                raise ResourceBound(f"relation of arity {ar} beyond cap {cap}")

    def unit(self):
        return 1

    @property
    def monomial(self) -> bool:
        """Whether Σ_n permutes basis keys up to sign, for every n <= cap."""
        if "_monomial" not in self.__dict__:
            ok = True
            if self.symmetric:
                for n in range(2, self.cap + 1):
                    gens = [transposition(n, 1, 2)] + ([cycle(n, n - 1)] if n > 2 else [])
                    if any(len(self.act_key(k, n, g)) > 1 for k in self.basis(n) for g in gens):
                        ok = False
                        break
            self.__dict__["_monomial"] = ok
        return self.__dict__["_monomial"]

    def degree(self, key, n):
        return self.free.degree(key, n)

    def ideal(self, n: int) -> Echelon:
        """The ideal component I(n) as an echelon basis over the free basis."""
        if n in self._ideal:
            return self._ideal[n]
        F = self.free
        ech = Echelon(list(reversed(F.basis(n))))
        rows: List[Vec] = []

        def push(v):
            v = vclean(v)
            if v and ech.add(v):
                rows.append(v)
                return True
            return False

        for vec, ar in self.presentation.relations:
            if ar == n:
                push(vec)
        for g in self.presentation.E.generators:
            k = g.arity
            lower = n - k + 1
            if lower < 2:
                continue
            low_rows = self._ideal_rows_of(lower)
            for d in range(g.dim):
                gk = (g.name, d, tuple(range(1, k + 1)))
                for x in low_rows:
                    for j in range(1, lower + 1):
                        push(F.compose(j, x, lower, {gk: 1}, k))
                    for j in range(1, k + 1):
                        push(F.compose(j, {gk: 1}, k, x, lower))
        if self.symmetric and n > 1:
            gens = [transposition(n, 1, 2)] + ([cycle(n, n - 1)] if n > 2 else [])
            todo = list(rows)
            while todo:
                x = todo.pop()
                for s in gens:
                    y = F.act(x, n, s)
                    if push(y):
                        todo.append(rows[-1])
        self._ideal[n] = ech
        self._ideal_rows[n] = rows
        return ech

    def _ideal_rows_of(self, n):
        self.ideal(n)
        return self._ideal_rows[n]

    def _basis(self, n):
        ech = self.ideal(n)
        piv = {ech._keys[c] for c in ech.rows}
        return [t for t in self.free.basis(n) if t not in piv]

    def normal_form(self, v: Vec, n: int) -> Vec:
        return self.ideal(n).residual(v)

    def _compose(self, i, a, m, b, n):
        return self.normal_form(self.free.compose_keys(i, a, m, b, n), m + n - 1)

    def _act(self, a, n, sigma):
        return self.normal_form(self.free.act_key(a, n, sigma), n)

    def element(self, s: str) -> Tuple[Vec, int]:
        v, n = self.free.element(s)
        return self.normal_form(v, n), n

    def format(self, key) -> str:
        return self.free.format(key)


def presented_operad(p: Presentation, cap: int = 6, name: str = "Presented") -> PresentedOperad:
    return PresentedOperad(p, cap, name)


# -- standard presentations ---------------------------------------------

def _binary(name="mu", action="regular", symmetric=True):
    return GeneratorSet([Generator(name, 2, 0, action)], symmetric)


def ass_presentation(symmetric=True) -> Presentation:
    if symmetric:
        E = _binary()
        return Presentation.from_strings(E, [[("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)]])
    E = _binary(action="trivial", symmetric=False)
    return Presentation.from_strings(E, [[("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)]])


def com_presentation() -> Presentation:
    E = _binary(action="trivial")
    return Presentation.from_strings(E, [[("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)]])


def lie_presentation() -> Presentation:
    E = _binary("lam", "sign")
    jac = [("lam(lam(1,2),3)", 1), ("lam(lam(2,3),1)", 1), ("lam(lam(3,1),2)", 1)]
    return Presentation.from_strings(E, [jac])


def prelie_presentation() -> Presentation:
    # associator (x1 x2) x3 - x1 (x2 x3) symmetric in x2, x3
    E = _binary()
    rel = [("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1),
           ("mu(mu(1,3),2)", -1), ("mu(1,mu(3,2))", 1)]
    return Presentation.from_strings(E, [rel])


def d_presentation() -> Presentation:
    E = GeneratorSet([Generator("mu", 2, 0, "regular"), Generator("nu", 2, 0, "regular")])
    return Presentation.from_strings(E, [
        [("mu(mu(1,2),3)", 1), ("mu(1,mu(2,3))", -1)],
        [("nu(nu(1,2),3)", 1), ("nu(1,nu(2,3))", -1)],
    ])


def sym_presentation() -> Presentation:
    return Presentation(_binary(action="trivial"), [])


def mag_presentation() -> Presentation:
    return Presentation(_binary(), [])


# -- quadratic duality (cross-check only) -------------------------------

_DUAL_ACTION = {"regular": "regular", "trivial": "sign", "sign": "trivial"}


def _gen_pairing(g: Generator, i: int, j: int) -> int:
    """<g_i, g*_j> with <x·ρ, y·ρ> = sgn(ρ) <x, y>."""
    if i != j:
        return 0
    if g.action == "regular":
        return sign(g._perms[i])
    return 1


def _first_slot_form(s, E: GeneratorSet) -> Vec:
    """Rewrite an arity-3 monomial so that its inner vertex sits in input 1
    of the root: g(C1, C2) = (g·τ)(C2, C1)."""
    name, idx, (c1, c2) = s
    if not isinstance(c1, int):
        return {s: 1}
    return {(name, d, (c2, c1)): c for d, c in E[name].act(idx, (2, 1)).items()}


def weight_two_pairing(s, t, E: GeneratorSet, Ed: Optional[GeneratorSet] = None):
    """Pairing of canonical arity-3 monomials of Γ(E) and Γ(E^∨ ⊗ sgn).

    Both sides are written as (outer ∘_1 inner) on the same three leaves;
    the pairing is then the product of the generator pairings, which makes
    it satisfy <xρ, yρ> = sgn(ρ) <x, y>.
    """
    Ed = dual_generators(E) if Ed is None else Ed
    total = 0
    for a, x in _first_slot_form(s, E).items():
        for b, y in _first_slot_form(t, Ed).items():
            if a[0] != b[0] or a[2][1] != b[2][1]:
                continue
            ia, ib = a[2][0], b[2][0]
            if ia[0] != ib[0] or ia[2] != ib[2]:
                continue
            # shapes are compared in cyclic form (x1x2)x3, (x2x3)x1, (x3x1)x2,
            # so the inner pair (1,3) is written (3,1) on both sides
            cyc = -1 if ia[2] == (1, 3) else 1
            total += cyc * x * y * _gen_pairing(E[a[0]], a[1], b[1]) * _gen_pairing(E[ia[0]], ia[1], ib[1])
    return total


def dual_generators(E: GeneratorSet) -> GeneratorSet:
    return GeneratorSet([Generator(g.name, 2, -g.degree, _DUAL_ACTION[g.action])
                         for g in E.generators])


def quadratic_dual(p: Presentation) -> Presentation:
    """Dual generators E^∨ ⊗ sgn and the annihilator of the relations."""
    E = p.E
    if not E.symmetric:
        raise ValueError("quadratic_dual is implemented for symmetric presentations")
    for g in E.generators:
        if g.arity != 2 or g.action not in _DUAL_ACTION:
            raise ValueError("quadratic_dual supports binary generators with named actions only")
    for _, ar in p.relations:
        if ar != 3:
            raise ValueError("relations must be quadratic (arity 3)")
    Ed = dual_generators(E)
    F = FreeOperad(E, 3)
    Fd = FreeOperad(Ed, 3)
    from ..exactlin.linalg import nullspace

    span = Echelon()
    rels = []
    for vec, _ in p.relations:
        for r in all_perms(3):
            v = F.act(vec, 3, r)
            if span.add(v):
                rels.append(v)
    rows = []
    for vec in rels:
        rows.append({t: sum(c * weight_two_pairing(s, t, E, Ed) for s, c in vec.items())
                     for t in Fd.basis(3)})
    ann = nullspace([vclean(r) for r in rows], Fd.basis(3))
    return Presentation(Ed, [(v, 3) for v in ann])

"""Explicit models of the standard operads and their quadratic duals.

Each model is built directly (words, left-normed brackets, rooted trees,
bicoloured trees) rather than as a quotient, so it can serve as an
independent check of ``presented_operad``.
"""
from __future__ import annotations

from itertools import product
from typing import Dict, List, NamedTuple, Optional, Tuple

from ..exactlin.linalg import Vec, vadd
from ..exactlin.perms import all_perms, inverse, sign
from .base import DEFAULT_CAP, Operad
from .free import FreeOperad, Generator, GeneratorSet


def word_compose(a: Tuple[int, ...], i: int, b: Tuple[int, ...]) -> Tuple[int, ...]:
    """Substitute the word b for letter i of a (associative monomials)."""
    n = len(b)
    out = []
    for x in a:
        if x < i:
            out.append(x)
        elif x > i:
            out.append(x + n - 1)
        else:
            out.extend(y + i - 1 for y in b)
    return tuple(out)


def word_act(w: Tuple[int, ...], sigma) -> Tuple[int, ...]:
    inv = inverse(sigma)
    return tuple(inv[x - 1] for x in w)


class Ass(Operad):
    """Associative operad: Ass(n) has the words in 1..n as basis."""

    name = "Ass"

    def _basis(self, n):
        return list(all_perms(n))

    def unit(self):
        return (1,)

    def _compose(self, i, a, m, b, n):
        return {word_compose(a, i, b): 1}

    def _act(self, a, n, sigma):
        return {word_act(a, sigma): 1}


class NonSigmaOneDim(Operad):
    """Non-Σ operad with one basis element per arity (uAss); key = arity."""

    symmetric = False
    name = "uAss"

    def _basis(self, n):
        return [n]

    def unit(self):
        return 1

    def _compose(self, i, a, m, b, n):
        return {m + n - 1: 1}


class Com(NonSigmaOneDim):
    symmetric = True
    name = "Com"

    def _act(self, a, n, sigma):
        return {a: 1}


class Lie(Operad):
    """Lie(n) inside Ass(n), basis of left-normed brackets [[x_1, x_w2], ...].

    The coordinate of a Lie element on the bracket indexed by w (w_1 = 1) is
    its coefficient on the word w, since w is the only word starting with 1
    in the expansion of that bracket.
    """

    name = "Lie"
    monomial = False

    def __init__(self, cap=DEFAULT_CAP):
        super().__init__(cap)
        self._exp: Dict[tuple, Vec] = {}

    def _basis(self, n):
        return [w for w in all_perms(n) if w[0] == 1]

    def unit(self):
        return (1,)

    def expand(self, w) -> Vec:
        """The bracket ℓ_w as a combination of associative words."""
        e = self._exp.get(w)
        if e is None:
            if len(w) == 1:
                e = {w: 1}
            else:
                e = {}
                x = w[-1]
                for u, c in self.expand(w[:-1]).items():
                    vadd(e, {u + (x,): c})
                    vadd(e, {(x,) + u: -c})
            self._exp[w] = e
        return e

    def to_ass(self, v: Vec) -> Vec:
        out: Vec = {}
        for w, c in v.items():
            vadd(out, self.expand(w), c)
        return out

    @staticmethod
    def from_ass(v: Vec) -> Vec:
        return {w: c for w, c in v.items() if w[0] == 1}

    def _compose(self, i, a, m, b, n):
        out: Vec = {}
        eb = self.expand(b)
        for u, c in self.expand(a).items():
            if u[0] != 1:
                # substituting into a word not starting with 1 never yields one that does
                continue
            for v, d in eb.items():
                w = word_compose(u, i, v)
                if w[0] == 1:
                    vadd(out, {w: c * d})
        return out

    def _act(self, a, n, sigma):
        out: Vec = {}
        for u, c in self.expand(a).items():
            w = word_act(u, sigma)
            if w[0] == 1:
                vadd(out, {w: c})
        return out


class PreLie(Operad):
    """Rooted trees on vertices 1..n; a key is the parent tuple (0 marks the root).

    Composition T ∘_i S substitutes S for vertex i and reattaches the
    children of i to the vertices of S in all possible ways.
    """

    name = "preLie"

    def _basis(self, n):
        out = []
        for root in range(1, n + 1):
            others = [j for j in range(1, n + 1) if j != root]
            for choice in product(range(1, n + 1), repeat=n - 1):
                par = [0] * n
                ok = True
                for j, p in zip(others, choice):
                    if p == j:
                        ok = False
                        break
                    par[j - 1] = p
                if ok and _is_rooted_tree(par):
                    out.append(tuple(par))
        return sorted(out)

    def unit(self):
        return (0,)

    def _compose(self, i, a, m, b, n):
        def sh(j):
            return j if j < i else j + n - 1

        base = [0] * (m + n - 1)
        sroot = None
        for v in range(1, n + 1):
            p = b[v - 1]
            if p == 0:
                sroot = v + i - 1
            else:
                base[v + i - 2] = p + i - 1
        kids = []
        for j in range(1, m + 1):
            if j == i:
                continue
            p = a[j - 1]
            if p == i:
                kids.append(sh(j))
            else:
                base[sh(j) - 1] = sh(p) if p else 0
        pi = a[i - 1]
        base[sroot - 1] = sh(pi) if pi else 0
        out: Vec = {}
        targets = range(i, i + n)
        for choice in product(targets, repeat=len(kids)):
            t = list(base)
            for k, v in zip(kids, choice):
                t[k - 1] = v
            vadd(out, {tuple(t): 1})
        return out

    def _act(self, a, n, sigma):
        inv = inverse(sigma)
        t = [0] * n
        for j in range(1, n + 1):
            p = a[j - 1]
            t[inv[j - 1] - 1] = inv[p - 1] if p else 0
        return {tuple(t): 1}


def _is_rooted_tree(par) -> bool:
    n = len(par)
    if sum(1 for p in par if p == 0) != 1:
        return False
    for j in range(1, n + 1):
        seen = set()
        while par[j - 1]:
            if j in seen:
                return False
            seen.add(j)
            j = par[j - 1]
            if len(seen) > n:
                return False
    return True


class FreeProductAss(Operad):
    """D = Ass * Ass: planar trees with vertices coloured 'a'/'b', adjacent
    vertices of different colours; a node is ``(colour, children)``."""

    name = "D"
    colours = ("a", "b")

    def __init__(self, cap=DEFAULT_CAP):
        super().__init__(cap)
        self._cache = {}

    def unit(self):
        return 1

    def _trees(self, labels, colour):
        """Trees on ``labels`` (a set, any order of leaves) whose root has ``colour``."""
        key = (labels, colour)
        if key in self._cache:
            return self._cache[key]
        out = []
        other = "b" if colour == "a" else "a"
        # ordered set partitions into >= 2 blocks
        for blocks in _ordered_partitions(labels):
            if len(blocks) < 2:
                continue
            options = []
            for blk in blocks:
                if len(blk) == 1:
                    options.append([blk[0]])
                else:
                    options.append(self._trees(blk, other))
            for kids in product(*options):
                out.append((colour, tuple(kids)))
        self._cache[key] = out
        return out

    def _basis(self, n):
        if n == 1:
            return [1]
        labels = tuple(range(1, n + 1))
        return self._trees(labels, "a") + self._trees(labels, "b")

    @staticmethod
    def _relabel(t, f):
        if isinstance(t, int):
            return f(t)
        return (t[0], tuple(FreeProductAss._relabel(c, f) for c in t[1]))

    @staticmethod
    def _flatten(t):
        if isinstance(t, int):
            return t
        kids = []
        for c in t[1]:
            c = FreeProductAss._flatten(c)
            if not isinstance(c, int) and c[0] == t[0]:
                kids.extend(c[1])
            else:
                kids.append(c)
        return (t[0], tuple(kids))

    def _compose(self, i, a, m, b, n):
        def f(j):
            if j < i:
                return j
            if j > i:
                return j + n - 1
            return self._relabel(b, lambda x: x + i - 1)
        return {self._flatten(self._relabel(a, f)): 1}

    def _act(self, a, n, sigma):
        inv = inverse(sigma)
        return {self._relabel(a, lambda j: inv[j - 1]): 1}


def _ordered_partitions(labels):
    """All ordered set partitions of a tuple of labels."""
    if not labels:
        yield []
        return
    n = len(labels)
    for mask in range(1, 1 << n):
        block = tuple(labels[j] for j in range(n) if mask >> j & 1)
        rest = tuple(labels[j] for j in range(n) if not mask >> j & 1)
        for tail in _ordered_partitions(rest):
            yield [block] + tail


class UpToTwo(Operad):
    """Operads concentrated in arities 1 and 2 (all binary compositions vanish).

    ``binary`` lists the arity-2 basis keys; ``action`` maps a key and the
    transposition to a signed key (None for the non-Σ case).
    """

    def __init__(self, name, binary, action=None, cap=DEFAULT_CAP):
        super().__init__(cap)
        self.name = name
        self._binary = list(binary)
        self._action = action
        self.symmetric = action is not None

    def unit(self):
        return "e"

    def _basis(self, n):
        if n == 1:
            return ["e"]
        if n == 2:
            return list(self._binary)
        return []

    def _compose(self, i, a, m, b, n):
        if a == "e":
            return {b: 1}
        if b == "e":
            return {a: 1}
        return {}

    def _act(self, a, n, sigma):
        if a == "e":
            return {a: 1}
        return self._action(a)


class AssWedgeAss(Operad):
    """Ass ∨ Ass: two copies of Ass glued along the unit, mixed composites zero.
    Keys are ``(colour, word)`` in arities >= 2 and ``(1,)`` in arity 1."""

    name = "Ass∨Ass"

    def unit(self):
        return (1,)

    def _basis(self, n):
        if n == 1:
            return [(1,)]
        return [(c, w) for c in ("a", "b") for w in all_perms(n)]

    def _compose(self, i, a, m, b, n):
        if m == 1:
            return {b: 1}
        if n == 1:
            return {a: 1}
        if a[0] != b[0]:
            return {}
        return {(a[0], word_compose(a[1], i, b[1])): 1}

    def _act(self, a, n, sigma):
        if n == 1:
            return {a: 1}
        return {(a[0], word_act(a[1], sigma)): 1}


# -- catalog -------------------------------------------------------------

def mag(cap=DEFAULT_CAP) -> FreeOperad:
    return FreeOperad(GeneratorSet([Generator("mu", 2, 0, "regular")]), cap, "Mag")


def sym(cap=DEFAULT_CAP) -> FreeOperad:
    return FreeOperad(GeneratorSet([Generator("mu", 2, 0, "trivial")]), cap, "Sym")


def umag(cap=DEFAULT_CAP) -> FreeOperad:
    return FreeOperad(GeneratorSet([Generator("mu", 2, 0, "trivial")], symmetric=False), cap, "uMag")


def _swap_word(a):
    return {(a[1], a[0]): 1}


class CatalogEntry(NamedTuple):
    P: Operad
    dual: Optional[Operad]
    # χ ∈ P(2) ⊗ P!(2) as (p key, q key, coefficient) triples; None without a dual
    chi: Optional[List[Tuple[object, object, int]]]


CATALOG_NAMES = ("Ass", "uAss", "Com", "Lie", "Sym", "Mag", "uMag", "preLie", "D")


def catalog(name: str, cap: int = DEFAULT_CAP) -> CatalogEntry:
    """(P, P!, χ) for a named operad.  Duals are fixed models, not computed.

    χ = Σ e_k ⊗ e^k, dual bases for the pairing P(2) x P!(2) -> k with
    <pτ, qτ> = -<p, q> (P!(2) is the linear dual twisted by the sign).
    """
    if name == "Ass":
        P, D = Ass(cap), Ass(cap)
        D.name = "Ass!"
        return CatalogEntry(P, D, [((1, 2), (1, 2), 1), ((2, 1), (2, 1), -1)])
    if name == "uAss":
        P, D = NonSigmaOneDim(cap), NonSigmaOneDim(cap)
        D.name = "uAss!"
        return CatalogEntry(P, D, [(2, 2, 1)])
    if name == "Com":
        return CatalogEntry(Com(cap), Lie(cap), [(2, (1, 2), 1)])
    if name == "Lie":
        return CatalogEntry(Lie(cap), Com(cap), [((1, 2), 2, 1)])
    if name == "Sym":
        dual = UpToTwo("Sym!", ["nu"], lambda a: {a: -1}, cap)
        mu = ("mu", 0, (1, 2))
        return CatalogEntry(sym(cap), dual, [(mu, "nu", 1)])
    if name == "Mag":
        dual = UpToTwo("Mag!", [(1, 2), (2, 1)], _swap_word, cap)
        return CatalogEntry(mag(cap), dual, [(("mu", 0, (1, 2)), (1, 2), 1),
                                             (("mu", 1, (1, 2)), (2, 1), -1)])
    if name == "uMag":
        dual = UpToTwo("uMag!", ["nu"], None, cap)
        return CatalogEntry(umag(cap), dual, [(("mu", 0, (1, 2)), "nu", 1)])
    if name == "preLie":
        return CatalogEntry(PreLie(cap), None, None)
    if name == "D":
        chi = []
        for c in ("a", "b"):
            chi.append(((c, (1, 2)), (c, (1, 2)), 1))
            chi.append(((c, (2, 1)), (c, (2, 1)), -1))
        return CatalogEntry(FreeProductAss(cap), AssWedgeAss(cap), chi)
    raise KeyError(f"unknown catalog operad {name!r}; choose from {', '.join(CATALOG_NAMES)}")

"""Operad maps determined by their values on binary generators.

If Src is generated by arity-2 elements, a map Src → Tgt is pinned down by
images of a few arity-2 keys.  Arity by arity, the pairs
(x ∘_i g)·σ ↦ (F(x) ∘_i F(g))·σ are row-reduced with the Src part first;
rows whose Src part vanishes but whose Tgt part does not are witnesses that
no such morphism exists.
"""
from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Tuple

from ..exactlin.linalg import Vec, rref, vadd
from ..exactlin.perms import all_perms
from .base import Operad


class NotAMorphism(ValueError):
    def __init__(self, arity, witness):
        super().__init__(f"no operad map with these generator images: arity {arity} residual {witness}")
        self.arity, self.witness = arity, witness


class BinaryGeneratedMap:
    """F: Src → Tgt with F(g) given for arity-2 keys g (extended equivariantly).

    ``units`` optionally fixes F on Src(1) (default: unit ↦ unit element).
    """

    def __init__(self, src: Operad, tgt: Operad, generators: Dict[Hashable, Vec], units=None):
        self.src, self.tgt = src, tgt
        self.generators = generators
        one = units if units is not None else {k: tgt.unit_element() for k in src.basis(1)}
        self._cache: Dict[int, Dict[Hashable, Vec]] = {1: one}
        self._bad: Dict[int, List[Vec]] = {}

    def _symbols(self, n: int) -> Iterable[Tuple[Vec, Vec]]:
        S, T = self.src, self.tgt
        if n == 2:
            for g, img in self.generators.items():
                for s in all_perms(2):
                    yield S.act_key(g, 2, s), T.act(img, 2, s)
            return
        lower, two = self.images(n - 1), self.images(2)
        for x, fx in lower.items():
            for g, fg in two.items():
                for i in range(1, n):
                    pv = S.compose_keys(i, x, n - 1, g, 2)
                    if not pv:
                        continue
                    ev = T.compose(i, fx, n - 1, fg, 2)
                    for s in all_perms(n):
                        yield S.act(pv, n, s), T.act(ev, n, s)

    def _solve(self, n: int):
        order = [("S", k) for k in self.src.basis(n)]
        rows = []
        for pv, ev in self._symbols(n):
            r = {("S", k): c for k, c in pv.items()}
            r.update({("T", k): c for k, c in ev.items()})
            if r:
                rows.append(r)
        piv, red = rref(rows, order)
        images, bad = {}, []
        for c in piv:
            row = red[c]
            if c[0] == "T":
                bad.append({k[1]: x for k, x in row.items()})
                continue
            if any(k[0] == "S" and k != c for k in row):
                raise ValueError(f"arity {n} of {self.src.name} is not generated in arity 2")
            # row operations keep T-part = F(S-part), and the S-part is the key alone
            images[c[1]] = {k[1]: x for k, x in row.items() if k[0] == "T"}
        missing = [k for k in self.src.basis(n) if k not in images]
        if missing:
            raise ValueError(f"arity {n} keys {missing[:3]} of {self.src.name} not reached")
        return images, bad

    def inconsistencies(self, n: int) -> List[Vec]:
        """Residuals showing the generator images violate a relation in arity n."""
        if n == 1:
            return []
        if n not in self._bad:
            images, bad = self._solve(n)
            self._bad[n] = bad
            if not bad:
                self._cache[n] = images
        return self._bad[n]

    def images(self, n: int) -> Dict[Hashable, Vec]:
        if n not in self._cache:
            bad = self.inconsistencies(n)
            if bad:
                raise NotAMorphism(n, bad[0])
        return self._cache[n]

    def apply(self, x: Vec, n: int) -> Vec:
        im = self.images(n)
        out: Vec = {}
        for k, c in x.items():
            vadd(out, im[k], c)
        return out

"""Operads built from other operads: tensor product, suspension,
symmetrization of non-Σ operads, and endomorphism operads of graded spaces."""
from __future__ import annotations

from itertools import product
from typing import Optional

from ..exactlin.linalg import BasedSpace, Vec, vadd, vscale
from ..exactlin.perms import all_perms, compose, inverse, sign
from .base import DEFAULT_CAP, Operad, ResourceBound, block_perm


class Tensor(Operad):
    """Arity-wise tensor product with diagonal action; keys are pairs.

    (p⊗q) ∘_i (p'⊗q') = (-1)^{|q||p'|} (p ∘_i p') ⊗ (q ∘_i q').
    """

    def __init__(self, P: Operad, Q: Operad):
        if P.cap != Q.cap:
            raise ValueError(f"cap mismatch: {P.cap} vs {Q.cap}")
        if P.symmetric != Q.symmetric:
            raise ValueError("cannot tensor a symmetric with a non-Σ operad")
        super().__init__(P.cap)
        self.P, self.Q = P, Q
        self.symmetric = P.symmetric
        self.monomial = P.monomial and Q.monomial
        self.name = f"({P.name}⊗{Q.name})"

    def _basis(self, n):
        return [(p, q) for p in self.P.basis(n) for q in self.Q.basis(n)]

    def unit(self):
        return (self.P.unit(), self.Q.unit())

    def unit_element(self):
        return {(u, v): c * d for u, c in self.P.unit_element().items()
                for v, d in self.Q.unit_element().items()}

    def degree(self, key, n):
        return self.P.degree(key[0], n) + self.Q.degree(key[1], n)

    def _compose(self, i, a, m, b, n):
        s = (-1) ** (self.Q.degree(a[1], m) * self.P.degree(b[0], n))
        x = self.P.compose_keys(i, a[0], m, b[0], n)
        y = self.Q.compose_keys(i, a[1], m, b[1], n)
        return {(u, v): s * c * d for u, c in x.items() for v, d in y.items()}

    def _act(self, a, n, sigma):
        x = self.P.act_key(a[0], n, sigma)
        y = self.Q.act_key(a[1], n, sigma)
        return {(u, v): c * d for u, c in x.items() for v, d in y.items()}


def tensor(P: Operad, Q: Operad) -> Tensor:
    return Tensor(P, Q)


class Suspension(Operad):
    """↑P(n) = ↑^{n-1} P(n) ⊗ sgn_n, same basis keys as P.

    ↑p ∘_i ↑q = (-1)^{(n-1)(i-1) + (n-1)|p|} ↑(p ∘_i q) for q of arity n,
    the signs that make ↑End_A ≅ End_{↓A}.
    """

    def __init__(self, P: Operad):
        super().__init__(P.cap)
        self.P = P
        self.symmetric = P.symmetric
        self.monomial = P.monomial
        self.name = f"↑{P.name}"

    def _basis(self, n):
        return self.P.basis(n)

    def unit(self):
        return self.P.unit()

    def unit_element(self):
        return self.P.unit_element()

    def degree(self, key, n):
        return self.P.degree(key, n) + n - 1

    def _compose(self, i, a, m, b, n):
        e = (n - 1) * (i - 1) + (n - 1) * self.P.degree(a, m)
        return vscale(self.P.compose_keys(i, a, m, b, n), (-1) ** e)

    def _act(self, a, n, sigma):
        return vscale(self.P.act_key(a, n, sigma), sign(sigma))


def suspension(P: Operad) -> Suspension:
    return Suspension(P)


class Symmetrization(Operad):
    """P(n) = P̲(n) ⊗ k[Σ_n] for a non-Σ operad P̲; key (p, σ) stands for p·σ."""

    def __init__(self, P: Operad):
        if P.symmetric:
            raise ValueError("symmetrization expects a non-Σ operad")
        super().__init__(P.cap)
        self.P = P
        self.symmetric = True
        self.name = f"Σ{P.name}"

    def _basis(self, n):
        return [(p, s) for p in self.P.basis(n) for s in all_perms(n)]

    def unit(self):
        return (self.P.unit(), (1,))

    def unit_element(self):
        return {(u, (1,)): c for u, c in self.P.unit_element().items()}

    def degree(self, key, n):
        return self.P.degree(key[0], n)

    def _compose(self, i, a, m, b, n):
        (p, s), (q, t) = a, b
        bp = block_perm(s, i, t)
        return {(r, bp): c for r, c in self.P.compose_keys(s[i - 1], p, m, q, n).items()}

    def _act(self, a, n, sigma):
        return {(a[0], compose(a[1], sigma)): 1}


def symmetrization(P: Operad) -> Symmetrization:
    return Symmetrization(P)


def koszul_place_sign(degrees, sigma) -> int:
    """Sign of moving graded entries from position s to position σ(s)."""
    e = 0
    n = len(sigma)
    for s in range(n):
        if degrees[s] % 2 == 0:
            continue
        for t in range(s + 1, n):
            if degrees[t] % 2 and sigma[s] > sigma[t]:
                e += 1
    return -1 if e % 2 else 1


class Endomorphism(Operad):
    """End_V(n) = Hom(V^⊗n, V) with basis E(j; I): v_I ↦ v_j.

    Keys are ``(j, I)``; the degree of E(j; I) is |v_j| - Σ|v_{I_k}|.
    Composition and the place-permutation action carry Koszul signs.
    """

    def __init__(self, V: BasedSpace, cap: int = DEFAULT_CAP):
        if V.dim < 1:
            raise ValueError("End_V needs dim V >= 1")
        super().__init__(cap)
        if V.dim ** (cap + 1) > 2_000_000:
            raise ResourceBound(f"End_V with dim {V.dim} at cap {cap} is too large")
        self.V = V
        self.deg = tuple(V.degrees) if V.degrees is not None else (0,) * V.dim
        self.name = f"End_V(dim {V.dim})"

    def _basis(self, n):
        d = self.V.dim
        return [(j, I) for j in range(d) for I in product(range(d), repeat=n)]

    def unit(self):
        # the identity map is Σ_j E(j; j); for dim V > 1 it is not a basis key
        if self.V.dim != 1:
            raise ValueError("identity of End_V is not a single basis key; use unit_element")
        return (0, (0,))

    def unit_element(self) -> Vec:
        return {(j, (j,)): 1 for j in range(self.V.dim)}

    def degree(self, key, n):
        j, I = key
        return self.deg[j] - sum(self.deg[x] for x in I)

    def _compose(self, i, a, m, b, n):
        (j, I), (j2, I2) = a, b
        if I[i - 1] != j2:
            return {}
        e = self.degree(b, n) * sum(self.deg[x] for x in I[:i - 1])
        return {(j, I[:i - 1] + I2 + I[i:]): (-1) ** e}

    def _act(self, a, n, sigma):
        j, I = a
        K = tuple(I[sigma[s] - 1] for s in range(n))
        return {(j, K): koszul_place_sign([self.deg[x] for x in K], sigma)}

    def evaluate(self, f: Vec, n: int, inputs) -> Vec:
        """f(v_{K_1}, ..., v_{K_n}) for a tuple K of basis indices."""
        out: Vec = {}
        for (j, I), c in f.items():
            if tuple(I) == tuple(inputs):
                vadd(out, {j: c})
        return out


def endomorphism_operad(V: BasedSpace, cap: int = DEFAULT_CAP) -> Endomorphism:
    return Endomorphism(V, cap)

"""Arity-truncated operads with explicit bases.

An operad stores, for each arity n <= cap, a list of hashable basis keys.
Elements are sparse dicts ``{key: coefficient}``; the arity is always passed
alongside an element because some keys (e.g. the single basis element of
Com(n)) do not record it.

Conventions: the right Σ_n action is the place permutation in which the
input at position j is fed into slot σ(j); ``p ∘_i q`` plugs q into input i
of p.  With these, equivariance reads
``(pσ) ∘_i (qτ) = (p ∘_{σ(i)} q)(σ ∘_i τ)`` with ``block_perm`` below.
"""
from __future__ import annotations

from typing import Dict, Hashable, Iterable, List, Optional, Tuple

from ..exactlin.linalg import Vec, vadd, vclean, veq, vscale
from ..exactlin.perms import Perm, all_perms, compose, generators, identity

DEFAULT_CAP = 6
MAX_CAP = 8


class ResourceBound(RuntimeError):
    """Raised when a requested arity exceeds the configured cap."""


def block_perm(sigma: Perm, i: int, tau: Perm) -> Perm:
    """σ ∘_i τ in Σ_{m+n-1}: σ with its i-th strand replaced by the block τ."""
    m, n = len(sigma), len(tau)
    si = sigma[i - 1]

    def pos(s):
        return s if s < si else s + n - 1

    out = []
    for j in range(1, m + 1):
        if j == i:
            out.extend(si + t - 1 for t in tau)
        else:
            out.append(pos(sigma[j - 1]))
    return tuple(out)


class Operad:
    """Base class.  Subclasses implement ``_basis``, ``_compose`` and ``_act``."""

    symmetric = True
    monomial = True  # _act returns a single signed basis key
    name = "operad"

    def __init__(self, cap: int = DEFAULT_CAP):
        if cap < 1:
            raise ValueError("arity cap must be >= 1")
        if cap > MAX_CAP:
            raise ResourceBound(f"cap {cap} exceeds the hard maximum {MAX_CAP}")
        self.cap = cap
        self._basis_cache: Dict[int, List[Hashable]] = {}
        self._index_cache: Dict[int, Dict[Hashable, int]] = {}
        self._compose_cache: Dict[tuple, Vec] = {}

    # -- to implement -------------------------------------------------
    def _basis(self, n: int) -> List[Hashable]:
        raise NotImplementedError

    def _compose(self, i: int, a, m: int, b, n: int) -> Vec:
        raise NotImplementedError

    def _act(self, a, n: int, sigma: Perm) -> Vec:
        raise NotImplementedError

    def unit(self) -> Hashable:
        raise NotImplementedError

    def unit_element(self) -> Vec:
        return {self.unit(): 1}

    def degree(self, key, n: int) -> int:
        """Internal degree of a basis element (0 for every catalog operad)."""
        return 0

    # -- public API ---------------------------------------------------
    def _check_arity(self, n: int):
        if n > self.cap:
            raise ResourceBound(f"arity {n} exceeds cap {self.cap} of {self.name}")

    def basis(self, n: int) -> List[Hashable]:
        if n not in self._basis_cache:
            self._check_arity(n)
            self._basis_cache[n] = [] if n < 1 else list(self._basis(n))
        return self._basis_cache[n]

    def index(self, n: int) -> Dict[Hashable, int]:
        if n not in self._index_cache:
            self._index_cache[n] = {k: i for i, k in enumerate(self.basis(n))}
        return self._index_cache[n]

    def dim(self, n: int) -> int:
        return len(self.basis(n))

    def dims(self, upto: Optional[int] = None) -> List[int]:
        upto = self.cap if upto is None else upto
        return [self.dim(n) for n in range(1, upto + 1)]

    def compose_keys(self, i: int, a, m: int, b, n: int) -> Vec:
        if not 1 <= i <= m:
            raise ValueError(f"∘_{i} undefined in arity {m}")
        self._check_arity(m + n - 1)
        ck = (i, a, m, b, n)
        r = self._compose_cache.get(ck)
        if r is None:
            r = self._compose_cache[ck] = vclean(self._compose(i, a, m, b, n))
        return r

    def compose(self, i: int, x: Vec, m: int, y: Vec, n: int) -> Vec:
        out: Vec = {}
        for a, ca in x.items():
            for b, cb in y.items():
                vadd(out, self.compose_keys(i, a, m, b, n), ca * cb)
        return out

    def act_key(self, a, n: int, sigma: Perm) -> Vec:
        if not self.symmetric:
            raise TypeError(f"{self.name} is a non-Σ operad")
        if sigma == identity(n):
            return {a: 1}
        return self._act(a, n, sigma)

    def act(self, x: Vec, n: int, sigma: Perm) -> Vec:
        out: Vec = {}
        for a, c in x.items():
            vadd(out, self.act_key(a, n, sigma), c)
        return out

    def gamma(self, p: Vec, m: int, args: List[Tuple[Vec, int]]) -> Vec:
        """γ(p; x_1..x_m) computed left to right as iterated ∘_i."""
        cur, ar, shift = p, m, 0
        for x, k in args:
            cur = self.compose(shift + 1, cur, ar, x, k)
            ar += k - 1
            shift += k
        return cur

    def __repr__(self):
        return f"<{self.name} cap={self.cap}>"


def check_operad_axioms(P: Operad, cap: Optional[int] = None, sample=None) -> List[str]:
    """Exhaustively (or on ``sample`` basis keys) checks unit, associativity and
    equivariance within ``cap``.  Returns a list of violation messages."""
    cap = P.cap if cap is None else cap
    errs: List[str] = []
    e = P.unit_element()

    def keys(n):
        b = P.basis(n)
        return b if sample is None else b[:sample]

    for n in range(1, cap + 1):
        for p in keys(n):
            for i in range(1, n + 1):
                if not veq(P.compose(i, {p: 1}, n, e, 1), {p: 1}):
                    errs.append(f"right unit fails at {p!r} ∘_{i} e")
            if not veq(P.compose(1, e, 1, {p: 1}, n), {p: 1}):
                errs.append(f"left unit fails at e ∘ {p!r}")
    # associativity: sequential and parallel
    for m in range(1, cap + 1):
        for n in range(1, cap + 2 - m):
            for k in range(1, cap + 3 - m - n):
                if m + n + k - 2 > cap:
                    continue
                for p in keys(m):
                    for q in keys(n):
                        for r in keys(k):
                            for i in range(1, m + 1):
                                pq = P.compose_keys(i, p, m, q, n)
                                for j in range(1, n + 1):
                                    lhs = P.compose(i + j - 1, pq, m + n - 1, {r: 1}, k)
                                    rhs = P.compose(i, {p: 1}, m, P.compose_keys(j, q, n, r, k),
                                                    n + k - 1)
                                    if not veq(lhs, rhs):
                                        errs.append(f"sequential assoc fails {p!r},{q!r},{r!r},{i},{j}")
                                for j in range(i + 1, m + 1):
                                    # (p ∘_j r) ∘_i q = (p ∘_i q) ∘_{j+n-1} r, up to Koszul sign
                                    lhs = P.compose(i, P.compose_keys(j, p, m, r, k), m + k - 1,
                                                    {q: 1}, n)
                                    rhs = P.compose(j + n - 1, pq, m + n - 1, {r: 1}, k)
                                    s = (-1) ** (P.degree(q, n) * P.degree(r, k))
                                    if not veq(lhs, vscale(rhs, s)):
                                        errs.append(f"parallel assoc fails {p!r},{q!r},{r!r},{i},{j}")
    if P.symmetric:
        for m in range(1, cap + 1):
            for n in range(1, cap + 2 - m):
                gm = generators(m) or [identity(m)]
                gn = generators(n) or [identity(n)]
                for p in keys(m):
                    for q in keys(n):
                        for s in gm:
                            for t in gn:
                                for i in range(1, m + 1):
                                    lhs = P.compose(i, P.act_key(p, m, s), m, P.act_key(q, n, t), n)
                                    rhs = P.act(P.compose_keys(s[i - 1], p, m, q, n), m + n - 1,
                                                block_perm(s, i, t))
                                    if not veq(lhs, rhs):
                                        errs.append(f"equivariance fails {p!r},{q!r},{s},{t},{i}")
        for n in range(2, cap + 1):
            g = generators(n)
            for p in keys(n):
                for a in g:
                    for b in g:
                        lhs = P.act(P.act_key(p, n, a), n, b)
                        if not veq(lhs, P.act_key(p, n, compose(a, b))):
                            errs.append(f"not a right action at {p!r}")
    return errs


def sigma_character(P: Operad, n: int) -> Dict[Perm, object]:
    """Character of the Σ_n-module P(n): trace of every group element."""
    out = {}
    for s in all_perms(n):
        tr = 0
        for k in P.basis(n):
            tr += P.act_key(k, n, s).get(k, 0)
        out[s] = tr
    return out

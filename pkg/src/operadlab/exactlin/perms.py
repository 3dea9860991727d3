"""Permutations in one-line notation and the symmetric-group helpers.

A permutation of {1..n} is a tuple ``p`` with ``p[i-1] = p(i)``.
Composition is ``(a * b)(i) = a(b(i))``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import permutations as _itperms
from math import factorial
from typing import Callable, Dict, Hashable, Iterable, Iterator, List, Sequence, Tuple

Perm = Tuple[int, ...]


def is_perm(p: Sequence[int]) -> bool:
    return sorted(p) == list(range(1, len(p) + 1))


def check_perm(p: Sequence[int]) -> Perm:
    p = tuple(p)
    if not is_perm(p):
        raise ValueError(f"not a permutation of 1..{len(p)}: {p}")
    return p


def identity(n: int) -> Perm:
    return tuple(range(1, n + 1))


def compose(a: Perm, b: Perm) -> Perm:
    """a after b."""
    if len(a) != len(b):
        raise ValueError("size mismatch")
    return tuple(a[x - 1] for x in b)


def inverse(a: Perm) -> Perm:
    inv = [0] * len(a)
    for i, x in enumerate(a, 1):
        inv[x - 1] = i
    return tuple(inv)


def sign(a: Perm) -> int:
    """Sign via cycle decomposition."""
    seen = [False] * len(a)
    s = 1
    for i in range(len(a)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = a[j] - 1
            length += 1
        if length % 2 == 0:
            s = -s
    return s


def perm_sign(a: Perm) -> Fraction:
    return Fraction(sign(a))


def block_sum(a: Perm, b: Perm) -> Perm:
    """a x b: a on the first len(a) letters, b shifted onto the rest."""
    k = len(a)
    return tuple(a) + tuple(x + k for x in b)


def all_perms(n: int) -> Iterator[Perm]:
    """Σ_n in lexicographic order."""
    return (tuple(p) for p in _itperms(range(1, n + 1)))


def transposition(n: int, i: int, j: int) -> Perm:
    p = list(range(1, n + 1))
    p[i - 1], p[j - 1] = p[j - 1], p[i - 1]
    return tuple(p)


def generators(n: int) -> List[Perm]:
    """Adjacent transpositions generating Σ_n (empty for n < 2)."""
    return [transposition(n, i, i + 1) for i in range(1, n)]


def cycle(k: int, n: int) -> Perm:
    """The cycle (1 2 ... k) in Σ_{n+1}: i -> i+1 for i < k, k -> 1."""
    if not 1 <= k <= n + 1:
        raise ValueError(f"need 1 <= k <= n+1, got k={k}, n={n}")
    if k == 1:
        return identity(n + 1)
    return tuple(list(range(2, k + 1)) + [1] + list(range(k + 1, n + 2)))


def doubling(sigma: Perm, i: int) -> Perm:
    """The i-th coface d_i : Σ_m -> Σ_{m+1} of the permutation complex.

    d_0 = id_1 x σ, d_{m+1} = σ x id_1; for 1 <= i <= m the strand entering
    at input i is doubled into adjacent inputs i, i+1 which go to adjacent
    outputs σ(i), σ(i)+1.
    """
    m = len(sigma)
    if not 0 <= i <= m + 1:
        raise ValueError(f"doubling index {i} out of range 0..{m + 1}")
    if i == 0:
        return block_sum((1,), sigma)
    if i == m + 1:
        return block_sum(sigma, (1,))
    s = sigma[i - 1]
    out = []
    for j in range(1, m + 1):
        v = sigma[j - 1]
        if j == i:
            out.extend((s, s + 1))
        else:
            out.append(v + 1 if v > s else v)
    return tuple(out)


def act_on_tuple(t: Sequence, sigma: Perm) -> tuple:
    """Place-permutation: entry at position j moves to position σ(j)."""
    out = [None] * len(t)
    for j, x in enumerate(t):
        out[sigma[j] - 1] = x
    return tuple(out)


def average(v: Dict[Hashable, object], act: Callable[[Dict, Perm], Dict], n: int,
            group: Iterable[Perm] = None) -> Dict[Hashable, object]:
    """Aver(v) = 1/|G| Σ_g v·g for a right action of Σ_n (or a listed subgroup)."""
    from .linalg import vadd, vscale

    elems = list(all_perms(n)) if group is None else list(group)
    out: Dict[Hashable, object] = {}
    for g in elems:
        vadd(out, act(v, g))
    return vscale(out, Fraction(1, len(elems)))


def check_right_action(act: Callable[[Dict, Perm], Dict], basis: Iterable[Hashable], n: int) -> bool:
    """Checks (v·a)·b = v·(ab) on basis vectors for generator pairs and v·id = v."""
    from .linalg import veq

    gens = generators(n) + ([cycle(n, n - 1)] if n > 1 else [])
    ident = identity(n)
    for key in basis:
        v = {key: 1}
        if not veq(act(v, ident), v):
            return False
        for a in gens:
            for b in gens:
                if not veq(act(act(v, a), b), act(v, compose(a, b))):
                    return False
    return True


def factorial_int(n: int) -> int:
    return factorial(n)

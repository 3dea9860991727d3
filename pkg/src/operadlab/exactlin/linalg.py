"""Exact sparse linear algebra over the rationals.

Vectors are plain dicts mapping a hashable basis key to an exact number
(``int`` or ``fractions.Fraction``); zero entries are never stored.
Matrices are handled row-wise: a list of such dicts.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import gcd
from typing import Dict, Hashable, Iterable, List, Optional, Sequence

Vec = Dict[Hashable, object]


def scalar(x) -> Fraction:
    """Canonical exact scalar (reduced, positive denominator)."""
    if isinstance(x, float):
        raise TypeError("floating point values are not exact scalars")
    return Fraction(x)


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return x.numerator
    return x


def vadd(target: Vec, other: Vec, coeff=1) -> Vec:
    """In-place ``target += coeff * other``; returns target."""
    if not coeff:
        return target
    for k, v in other.items():
        w = target.get(k, 0) + coeff * v
        if w:
            target[k] = _norm(w)
        else:
            target.pop(k, None)
    return target


def vscale(v: Vec, c) -> Vec:
    if not c:
        return {}
    return {k: _norm(c * x) for k, x in v.items()}


def vsum(vectors: Iterable[Vec]) -> Vec:
    out: Vec = {}
    for v in vectors:
        vadd(out, v)
    return out


def vclean(v: Vec) -> Vec:
    return {k: _norm(x) for k, x in v.items() if x}


def veq(a: Vec, b: Vec) -> bool:
    return vclean(a) == vclean(b)


def vsub(a: Vec, b: Vec) -> Vec:
    return vadd(dict(a), b, -1)


def _integer_row(row: Vec) -> Dict[Hashable, int]:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {k: int(v * den) for k, v in row.items() if v}
    g = 0
    for v in out.values():
        g = gcd(g, v)
        if g == 1:
            break
    if g > 1:
        out = {k: v // g for k, v in out.items()}
    return out


class Echelon:
    """Incremental semi-echelon basis of a row space.

    Columns are numbered in first-seen order (or by an explicit ``order``)
    and rows are kept over the integers, fraction free, with their pivot at
    the smallest column index.  Eliminating a stored row's pivot therefore
    only introduces larger columns, so reduction of a new row terminates.
    """

    def __init__(self, order: Optional[Sequence[Hashable]] = None):
        self.rows: Dict[int, Dict[int, int]] = {}
        self._idx: Dict[Hashable, int] = {}
        self._keys: List[Hashable] = []
        if order is not None:
            for c in order:
                self._col(c)

    def _col(self, key) -> int:
        i = self._idx.get(key)
        if i is None:
            i = self._idx[key] = len(self._keys)
            self._keys.append(key)
        return i

    def _encode(self, row: Vec) -> Dict[int, int]:
        return _integer_row({self._col(k): v for k, v in row.items() if v})

    def _reduce(self, r: Dict[int, int]) -> Dict[int, int]:
        rows = self.rows
        while r:
            hits = [c for c in r if c in rows]
            if not hits:
                break
            c = min(hits)
            p = rows[c]
            a, b = p[c], r[c]
            g = gcd(a, b)
            fa, fb = a // g, b // g
            if fa != 1:
                new = {k: fa * v for k, v in r.items()}
            else:
                new = dict(r)
            for k, v in p.items():
                w = new.get(k, 0) - fb * v
                if w:
                    new[k] = w
                else:
                    del new[k]
            r = new
            if fa != 1:
                cont = 0
                for v in r.values():
                    cont = gcd(cont, v)
                    if cont == 1:
                        break
                if cont > 1:
                    r = {k: v // cont for k, v in r.items()}
        return r

    def reduce(self, row: Vec) -> Vec:
        """Residual of ``row`` (up to a nonzero scalar) modulo the row space."""
        r = self._reduce(self._encode(row))
        return {self._keys[k]: v for k, v in r.items()}

    def residual(self, row: Vec) -> Vec:
        """Exact normal form: row minus a combination of stored rows, with no
        entry in any pivot column."""
        rows = self.rows
        r = {self._col(k): scalar(v) for k, v in row.items() if v}
        while True:
            hits = [c for c in r if c in rows]
            if not hits:
                break
            c = min(hits)
            p = rows[c]
            f = r[c] / p[c]
            for k, v in p.items():
                w = r.get(k, 0) - f * v
                if w:
                    r[k] = w
                else:
                    r.pop(k, None)
        return {self._keys[k]: _norm(v) for k, v in r.items()}

    def add(self, row: Vec) -> bool:
        """Insert a row; returns True if it increased the rank."""
        r = self._reduce(self._encode(row))
        if not r:
            return False
        self.rows[min(r)] = r
        return True

    def contains(self, row: Vec) -> bool:
        return not self._reduce(self._encode(row))

    @property
    def rank(self) -> int:
        return len(self.rows)


def rank(rows: Iterable[Vec]) -> int:
    """Exact rank of the matrix whose rows are given as sparse dicts."""
    ech = Echelon()
    for r in rows:
        ech.add(r)
    return ech.rank


def rref(rows: Iterable[Vec], order: Optional[Sequence[Hashable]] = None):
    """Reduced row echelon form over the rationals.

    Returns ``(pivots, reduced)`` where ``reduced[c]`` is the row with pivot
    column ``c`` normalised to 1 and zero in every other pivot column.
    ``order`` fixes column priority (earlier columns pivot first); columns
    not listed come after, in first-seen order.
    """
    ech = Echelon(order)
    for r in rows:
        ech.add(r)
    piv = sorted(ech.rows)
    red: Dict[int, Dict[int, object]] = {}
    for c in reversed(piv):
        row = ech.rows[c]
        lead = row[c]
        v = {k: Fraction(x, lead) for k, x in row.items()}
        # red[k] vanishes on every other pivot, so no new pivot entries appear;
        # an earlier subtraction may however have cancelled a queued one
        for k in sorted(k for k in v if k != c and k in red):
            coeff = v.get(k, 0)
            if not coeff:
                continue
            # red[k][k] == 1, so this also clears v[k]
            for kk, x in red[k].items():
                w = v.get(kk, 0) - coeff * x
                if w:
                    v[kk] = w
                else:
                    v.pop(kk, None)
        red[c] = {k: _norm(x) for k, x in v.items()}
    keys = ech._keys
    return ([keys[c] for c in piv],
            {keys[c]: {keys[k]: x for k, x in r.items()} for c, r in red.items()})


def nullspace(rows: Iterable[Vec], columns: Sequence[Hashable]) -> List[Vec]:
    """Basis of {x : row . x = 0 for every row}, x indexed by ``columns``.

    Deterministic: one vector per free column, in column order.
    """
    piv, red = rref(rows, order=columns)
    pset = set(piv)
    basis = []
    for f in columns:
        if f in pset:
            continue
        v = {f: 1}
        for c in piv:
            x = red[c].get(f)
            if x:
                v[c] = _norm(-x)
        basis.append(v)
    return basis


class _Tag:
    __slots__ = ("i",)

    def __init__(self, i):
        self.i = i

    def __hash__(self):
        return hash(("_Tag", self.i))

    def __eq__(self, other):
        return isinstance(other, _Tag) and other.i == self.i


class Subspace:
    """Span of given vectors, with membership tests and coordinates.

    ``basis`` keeps the independent input vectors in input order.
    Coordinates are tracked by augmenting every basis vector with a private
    tag column placed after all real columns.
    """

    def __init__(self, vectors: Iterable[Vec]):
        self.basis: List[Vec] = []
        self._plain = Echelon()
        for v in vectors:
            v = vclean(v)
            if self._plain.add(v):
                self.basis.append(v)
        self._aug = None

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Vec) -> bool:
        return self._plain.contains(v)

    def _augmented(self):
        if self._aug is None:
            cols = list(self._plain._keys)
            tags = [_Tag(i) for i in range(self.dim)] + [_Tag(-1)]
            ech = Echelon(cols + tags)
            for i, b in enumerate(self.basis):
                row = dict(b)
                row[tags[i]] = 1
                ech.add(row)
            self._aug = (ech, tags)
        return self._aug

    def coordinates(self, v: Vec) -> List[Fraction]:
        """Coordinates of ``v`` in ``self.basis``; ValueError if not a member."""
        ech, tags = self._augmented()
        row = dict(vclean(v))
        row[tags[-1]] = 1
        r = ech.reduce(row)
        lam = r.get(tags[-1], 0)
        if any(not isinstance(k, _Tag) for k in r) or not lam:
            raise ValueError("vector is not in the subspace")
        return [Fraction(-r.get(t, 0), lam) for t in tags[:-1]]


@dataclass(frozen=True)
class BasedSpace:
    """Finite-dimensional space with named basis labels and optional degrees."""

    labels: tuple
    degrees: Optional[tuple] = None

    def __post_init__(self):
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("basis labels must be distinct")
        if self.degrees is not None and len(self.degrees) != len(self.labels):
            raise ValueError("one degree per basis label")

    @property
    def dim(self) -> int:
        return len(self.labels)

    @cached_property
    def _pos(self) -> Dict[Hashable, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, label) -> int:
        return self._pos[label]


@dataclass
class LinMap:
    """Sparse linear map; ``columns[j]`` is the image of source basis j."""

    source: BasedSpace
    target: BasedSpace
    columns: List[Vec] = field(default_factory=list)

    def __post_init__(self):
        if len(self.columns) != self.source.dim:
            raise ValueError("need one column per source basis vector")
        tl = self.target._pos
        for col in self.columns:
            bad = [k for k in col if k not in tl]
            if bad:
                raise ValueError(f"entries outside target basis: {bad[:3]}")

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [{} for _ in range(source.dim)])

    @classmethod
    def identity(cls, space):
        return cls(space, space, [{lab: 1} for lab in space.labels])

    def apply(self, v: Vec) -> Vec:
        out: Vec = {}
        for lab, x in v.items():
            vadd(out, self.columns[self.source.index(lab)], x)
        return out

    def rank(self) -> int:
        return rank(self.columns)

    def kernel(self) -> List[Vec]:
        rows: Dict[Hashable, Vec] = {}
        for lab, col in zip(self.source.labels, self.columns):
            for k, x in col.items():
                rows.setdefault(k, {})[lab] = x
        return nullspace(rows.values(), list(self.source.labels))

    def compose(self, other: "LinMap") -> "LinMap":
        """self after other."""
        if other.target != self.source:
            raise ValueError("composition of incompatible maps")
        idx = {lab: i for i, lab in enumerate(self.source.labels)}
        cols = []
        for col in other.columns:
            out: Vec = {}
            for lab, x in col.items():
                vadd(out, self.columns[idx[lab]], x)
            cols.append(out)
        return LinMap(other.source, self.target, cols)

    def is_zero(self) -> bool:
        return all(not c for c in self.columns)


def invert_matrix(G: Sequence[Sequence]) -> List[List[Fraction]]:
    """Exact inverse of a square matrix (list of rows); ZeroDivisionError if singular."""
    n = len(G)
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(G)]
    for col in range(n):
        piv = next((r for r in range(col, n) if A[r][col]), None)
        if piv is None:
            raise ZeroDivisionError("singular matrix")
        A[col], A[piv] = A[piv], A[col]
        lead = A[col][col]
        A[col] = [x / lead for x in A[col]]
        for r in range(n):
            if r != col and A[r][col]:
                f = A[r][col]
                A[r] = [x - f * y for x, y in zip(A[r], A[col])]
    return [row[n:] for row in A]

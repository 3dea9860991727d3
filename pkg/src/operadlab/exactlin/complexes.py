"""Cochain complexes of based spaces and their exact cohomology."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import List, Optional

from .linalg import BasedSpace, LinMap


class NotAComplex(ValueError):
    """Raised when consecutive differentials do not compose to zero."""


@dataclass
class ComplexRep:
    """Spaces C^0..C^N with differentials d^k : C^k -> C^{k+1}, k < N.

    ``truncated`` marks a complex cut off at degree N; then the top degree's
    outgoing differential is unknown and H^N is not reported as reliable.
    """

    spaces: List[BasedSpace]
    differentials: List[LinMap]
    truncated: bool = True
    name: str = ""

    def __post_init__(self):
        if len(self.differentials) != max(len(self.spaces) - 1, 0):
            raise ValueError("need one differential between consecutive spaces")
        for k, d in enumerate(self.differentials):
            if d.source != self.spaces[k] or d.target != self.spaces[k + 1]:
                raise ValueError(f"differential {k} has wrong source/target")

    @property
    def dims(self) -> List[int]:
        return [s.dim for s in self.spaces]

    def check_square_zero(self) -> None:
        for k in range(len(self.differentials) - 1):
            d0, d1 = self.differentials[k], self.differentials[k + 1]
            for lab, col in zip(d0.source.labels, d0.columns):
                img = d1.apply(col)
                if img:
                    raise NotAComplex(
                        f"d^{k + 1} d^{k} != 0 on basis vector {lab!r} of degree {k}")


@dataclass
class CohomologyTable:
    """Per-degree dimensions, ranks and reliability flags."""

    dims: List[int]
    ranks: List[int]
    h: List[int]
    reliable: List[bool]
    name: str = ""

    def reliable_h(self) -> List[int]:
        return [x for x, ok in zip(self.h, self.reliable) if ok]

    def rows(self):
        """One dict per degree, for JSON/CSV emission."""
        out = []
        for k, dim in enumerate(self.dims):
            out.append({
                "degree": k,
                "dim": dim,
                "rank_out": self.ranks[k] if k < len(self.ranks) else None,
                "rank_in": self.ranks[k - 1] if 0 < k <= len(self.ranks) else 0,
                "h_dim": self.h[k],
                "reliable": self.reliable[k],
            })
        return out


def cohomology_dims(c: ComplexRep, check: bool = True) -> CohomologyTable:
    """dim H^k = dim ker d^k - rank d^{k-1}, with truncation flags."""
    if check:
        c.check_square_zero()
    ranks = [d.rank() for d in c.differentials]
    n = len(c.spaces)
    h, reliable = [], []
    for k in range(n):
        r_out = ranks[k] if k < len(ranks) else 0
        r_in = ranks[k - 1] if k > 0 else 0
        h.append(c.spaces[k].dim - r_out - r_in)
        reliable.append(k < n - 1 or not c.truncated)
    return CohomologyTable(c.dims, ranks, h, reliable, c.name)


def two_term(dim: int, identity: bool = True) -> ComplexRep:
    """k^dim -> k^dim, the identity (or zero) map."""
    a = BasedSpace(tuple(("a", i) for i in range(dim)))
    b = BasedSpace(tuple(("b", i) for i in range(dim)))
    cols = [{("b", i): 1} if identity else {} for i in range(dim)]
    return ComplexRep([a, b], [LinMap(a, b, cols)], truncated=False)

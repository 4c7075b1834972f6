"""Brute-force ground truth: induced P4 search and exhaustive fill enumeration.

Nothing here uses the recognizer's module or twin machinery. The P4 scan
looks at every 4-subset; the fill search tries every set of addable edges.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import numpy as np

from .cotree import Cotree, realize
from .graph import LabeledGraph, ensure_valid, probe_reduce

__all__ = [
    "DEFAULT_MAX_FILL",
    "Discrepancy",
    "OracleResult",
    "OracleStatus",
    "candidate_fill",
    "find_induced_p4",
    "first_discrepancy",
    "oracle_is_kprobe",
    "verify_embedding",
]

DEFAULT_MAX_FILL = 20


def _bitsets(adj: np.ndarray | LabeledGraph) -> list[int]:
    if isinstance(adj, LabeledGraph):
        adj = adj.adj
    return [sum(1 << int(u) for u in np.flatnonzero(row)) for row in np.asarray(adj, dtype=bool)]


def _p4_in_bitsets(nbr: Sequence[int]) -> tuple[int, int, int, int] | None:
    n = len(nbr)
    for quad in combinations(range(n), 4):
        mask = sum(1 << v for v in quad)
        deg = [(nbr[v] & mask).bit_count() for v in quad]
        # 3 edges with degrees {1,1,2,2} is exactly a path; the star and K3+K1 differ
        if sum(deg) != 6 or sorted(deg) != [1, 1, 2, 2]:
            continue
        ends = [v for v, d in zip(quad, deg) if d == 1]
        path = [min(ends)]
        prev = -1
        while len(path) < 4:
            cur = path[-1]
            nxt = next(v for v in quad if v != prev and v != cur and nbr[cur] >> v & 1)
            prev = cur
            path.append(nxt)
        return tuple(path)  # type: ignore[return-value]
    return None


def find_induced_p4(adj: np.ndarray | LabeledGraph) -> tuple[int, int, int, int] | None:
    """Return some induced path ``a-b-c-d`` or ``None`` if the graph is a cograph.

    The witness is taken from the lexicographically first 4-subset that
    induces a path, oriented so that ``a < d``.
    """
    return _p4_in_bitsets(_bitsets(adj))


@dataclass(frozen=True)
class Discrepancy:
    """First pair where the certificate disagrees with the graph.

    ``kind`` is ``"missing-edge"`` when the graph has an edge the realized
    cograph lacks, and ``"illegal-fill"`` when the cograph adds an edge
    between orthogonal labels that the graph does not have.
    """

    u: int
    v: int
    kind: str

    def describe(self) -> str:
        what = "missing edge" if self.kind == "missing-edge" else "illegal fill"
        return f"{what} {{{self.u + 1},{self.v + 1}}}"


def first_discrepancy(g: LabeledGraph, t: Cotree) -> Discrepancy | None:
    """Pairwise check of the certificate; ``None`` means it is an embedding."""
    h = realize(t, g.n)
    for u in range(g.n):
        for v in range(u + 1, g.n):
            if g.adj[u, v] and not h[u, v]:
                return Discrepancy(u, v, "missing-edge")
            if h[u, v] and not g.adj[u, v] and g.orthogonal(u, v):
                return Discrepancy(u, v, "illegal-fill")
    return None


def verify_embedding(g: LabeledGraph, t: Cotree) -> bool:
    """True iff removing the intra-N_i edges of ``realize(t)`` gives back ``g``.

    Raises :class:`~kprobe.cotree.MalformedCotreeError` when the leaves of
    ``t`` are not a bijection onto the vertices of ``g``.
    """
    h = g.with_adjacency(realize(t, g.n))
    return probe_reduce(h) == g


class OracleStatus(enum.Enum):
    ACCEPTED = "accepted"
    REJECTED = "rejected"
    BUDGET_EXCEEDED = "budget_exceeded"


@dataclass(frozen=True)
class OracleResult:
    status: OracleStatus
    fill: tuple[tuple[int, int], ...] | None = None
    candidates: int = 0

    @property
    def accepted(self) -> bool:
        return self.status is OracleStatus.ACCEPTED


def candidate_fill(g: LabeledGraph) -> list[tuple[int, int]]:
    """Non-adjacent pairs with non-orthogonal labels: the only edges an embedding may add."""
    return [
        (u, v)
        for u in range(g.n)
        for v in range(u + 1, g.n)
        if not g.adj[u, v] and not g.orthogonal(u, v)
    ]


def oracle_is_kprobe(g: LabeledGraph, max_fill: int = DEFAULT_MAX_FILL) -> OracleResult:
    """Decide membership by trying every subset of addable edges.

    Subsets are tried by increasing size, lexicographically within a size;
    the first one whose addition leaves no induced P4 is returned as the fill.
    """
    ensure_valid(g)
    pairs = candidate_fill(g)
    if len(pairs) > max_fill:
        return OracleResult(OracleStatus.BUDGET_EXCEEDED, None, len(pairs))
    base = _bitsets(g)
    for size in range(len(pairs) + 1):
        for fill in combinations(pairs, size):
            nbr = list(base)
            for u, v in fill:
                nbr[u] |= 1 << v
                nbr[v] |= 1 << u
            if _p4_in_bitsets(nbr) is None:
                return OracleResult(OracleStatus.ACCEPTED, fill, len(pairs))
    return OracleResult(OracleStatus.REJECTED, None, len(pairs))

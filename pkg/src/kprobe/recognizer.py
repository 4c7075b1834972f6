"""Greedy twin-merging recognition of labeled k-probe cographs.

Two labels are *orthogonal* when they share no set N_i; only orthogonal pairs
may be adjacent. A vertex set X is a *module* when every outside vertex z is
either adjacent to nothing in X, or adjacent to every x in X whose label is
orthogonal to z's. Disjoint modules X and Y are *twins* when their cross
adjacency is empty (union twins) or covers every orthogonal cross pair (join
twins), and X | Y is again a module.

Recognition starts from one subtree per vertex and repeatedly merges the
first twin pair found, scanning list positions ``(i, j)``, ``i < j``, in
lexicographic order and restarting after each merge. It accepts when a single
subtree remains and rejects when a full scan finds no twin.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Union

import numpy as np

from . import _kernels
from .cotree import Cotree, CotreeBuilder, NodeKind
from .graph import LabeledGraph, ensure_valid

__all__ = [
    "Accepted",
    "Counters",
    "RecognitionResult",
    "Rejected",
    "SubtreeEntry",
    "TwinKind",
    "are_twins",
    "complexity_counters",
    "is_module",
    "recognize",
]


class TwinKind(enum.Enum):
    UNION = "union"
    JOIN = "join"

    @property
    def node_kind(self) -> NodeKind:
        return NodeKind.UNION if self is TwinKind.UNION else NodeKind.JOIN


@dataclass
class Counters:
    """Work done by one recognition.

    ``twin_tests`` counts subtree pairs handed to the twin test,
    ``pair_probes`` counts adjacency-matrix lookups between vertex pairs and
    ``orth_tests`` counts label orthogonality evaluations.
    """

    twin_tests: int = 0
    pair_probes: int = 0
    orth_tests: int = 0
    merges: int = 0

    def __str__(self) -> str:
        return f"twin_tests={self.twin_tests} pair_probes={self.pair_probes} orth_tests={self.orth_tests}"


@dataclass(frozen=True)
class SubtreeEntry:
    vertices: np.ndarray  # sorted vertex ids
    fragment: int  # root node id of the partial cotree


@dataclass(frozen=True)
class Accepted:
    cotree: Cotree
    counters: Counters = field(default_factory=Counters, compare=False)

    accepted = True


@dataclass(frozen=True)
class Rejected:
    remaining: tuple[frozenset[int], ...]
    counters: Counters = field(default_factory=Counters, compare=False)

    accepted = False


RecognitionResult = Union[Accepted, Rejected]


def _as_index(g: LabeledGraph, xs: Iterable[int] | np.ndarray, name: str) -> np.ndarray:
    arr = np.unique(np.fromiter(xs, dtype=np.intp) if not isinstance(xs, np.ndarray) else xs)
    if arr.size == 0:
        raise ValueError(f"{name} must be nonempty")
    if arr[0] < 0 or arr[-1] >= g.n:
        raise ValueError(f"{name} contains a vertex outside 0..{g.n - 1}")
    return arr.astype(np.int64)


def _tally() -> np.ndarray:
    return np.zeros(3, dtype=np.int64)


def _absorb(counters: Counters, cnt: np.ndarray) -> None:
    counters.twin_tests += int(cnt[0])
    counters.pair_probes += int(cnt[1])
    counters.orth_tests += int(cnt[2])


def is_module(g: LabeledGraph, xs: Iterable[int]) -> bool:
    """Label-aware module test for the vertex set ``xs``."""
    members = _as_index(g, xs, "X")
    in_set = np.zeros(g.n, dtype=bool)
    in_set[members] = True
    return bool(_kernels.module_test(g.adj, g.label_words, in_set, members, _tally()))


def are_twins(g: LabeledGraph, xs: Iterable[int], ys: Iterable[int]) -> TwinKind | None:
    """Twin test for disjoint modules ``xs`` and ``ys``.

    Pairs with no cross edge are union twins, even when no cross pair is
    orthogonal and a join would be equally consistent.
    """
    x = _as_index(g, xs, "X")
    y = _as_index(g, ys, "Y")
    if np.intersect1d(x, y).size:
        raise ValueError("X and Y must be disjoint")
    kind = _kernels.twin_test(g.adj, g.label_words, x, y, np.zeros(g.n, dtype=bool), _tally())
    return _TWIN_KINDS[kind]


_TWIN_KINDS = {
    _kernels.NO_TWIN: None,
    _kernels.UNION_TWIN: TwinKind.UNION,
    _kernels.JOIN_TWIN: TwinKind.JOIN,
}


def recognize(g: LabeledGraph) -> RecognitionResult:
    """Build a cotree embedding of ``g`` or report that none exists.

    Raises :class:`~kprobe.graph.ValidationError` on invalid input. The
    returned result carries the work counters of the run.
    """
    ensure_valid(g)
    counters = Counters()
    if g.n == 0:
        return Accepted(Cotree.empty(), counters)

    builder = CotreeBuilder()
    entries = [SubtreeEntry(np.array([v], dtype=np.int64), builder.leaf(v)) for v in range(g.n)]
    cnt = _tally()
    while len(entries) > 1:
        order = np.concatenate([e.vertices for e in entries])
        starts = np.zeros(len(entries) + 1, dtype=np.int64)
        np.cumsum([len(e.vertices) for e in entries], out=starts[1:])
        i, j, code = _kernels.first_twin(g.adj, g.label_words, order, starts, cnt)
        if code == _kernels.NO_TWIN:
            _absorb(counters, cnt)
            remaining = tuple(frozenset(e.vertices.tolist()) for e in entries)
            return Rejected(remaining, counters)
        kind = _TWIN_KINDS[code]
        a, b = entries[i], entries[j]
        node = builder.internal(kind.node_kind, a.fragment, b.fragment)
        entries[i] = SubtreeEntry(np.sort(np.concatenate((a.vertices, b.vertices))), node)
        del entries[j]
        counters.merges += 1
    _absorb(counters, cnt)
    return Accepted(builder.build(entries[0].fragment), counters)


def complexity_counters(g: LabeledGraph) -> Counters:
    """Work counters of :func:`recognize` on ``g``."""
    return recognize(g).counters

"""Labeled graphs, label algebra and input validation.

A labeled graph carries, for every vertex, a k-bit membership vector over the
sets N_1..N_k. Bit ``i - 1`` of :attr:`Label.bits` is membership in N_i.
Vertices are dense ids ``0..n-1``; file formats shift these to ``1..n``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "InvariantError",
    "Label",
    "LabeledGraph",
    "ValidationError",
    "ValidationReport",
    "Violation",
    "labels_orthogonal",
    "probe_reduce",
    "validate",
]

WORD_BITS = 64


class InvariantError(ValueError):
    """Raised when an operation is handed data that breaks a type invariant."""


@dataclass(frozen=True)
class Label:
    bits: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 0:
            raise InvariantError(f"label length must be >= 0, got {self.k}")
        if self.bits < 0 or self.bits >> self.k:
            raise InvariantError(f"bits {self.bits:#x} do not fit in {self.k} positions")

    @classmethod
    def from_string(cls, text: str) -> Label:
        """Parse ``"101"`` (position 1 first). ``"-"`` and ``""`` give the k=0 label."""
        if text in ("", "-"):
            return cls(0, 0)
        if set(text) - {"0", "1"}:
            raise InvariantError(f"label must be a 0/1 string, got {text!r}")
        return cls(sum(1 << i for i, ch in enumerate(text) if ch == "1"), len(text))

    def to_string(self) -> str:
        if self.k == 0:
            return "-"
        return "".join("1" if self.bits >> i & 1 else "0" for i in range(self.k))

    def __getitem__(self, i: int) -> bool:
        """Membership in N_i, 1-based."""
        if not 1 <= i <= self.k:
            raise IndexError(i)
        return bool(self.bits >> (i - 1) & 1)

    def __str__(self) -> str:
        return self.to_string()


def labels_orthogonal(a: Label, b: Label) -> bool:
    """True iff no position holds a 1 in both labels."""
    if a.k != b.k:
        raise InvariantError(f"label length mismatch: {a.k} vs {b.k}")
    return a.bits & b.bits == 0


def _pack_words(bits: Sequence[int], k: int) -> np.ndarray:
    words = -(-k // WORD_BITS)
    out = np.zeros((len(bits), words), dtype=np.uint64)
    mask = (1 << WORD_BITS) - 1
    for v, b in enumerate(bits):
        for w in range(words):
            out[v, w] = (b >> (w * WORD_BITS)) & mask
    return out


@dataclass(frozen=True, eq=False)
class LabeledGraph:
    """Simple undirected graph with one :class:`Label` per vertex.

    ``adj`` is an ``n x n`` boolean matrix. Construction does not validate;
    call :func:`validate` explicitly.
    """

    n: int
    k: int
    labels: tuple[Label, ...]
    adj: np.ndarray
    label_words: np.ndarray = field(init=False, repr=False)

    def __post_init__(self) -> None:
        adj = np.array(self.adj, dtype=bool, copy=True)
        if adj.shape != (self.n, self.n):
            raise InvariantError(f"adjacency shape {adj.shape} != ({self.n}, {self.n})")
        if len(self.labels) != self.n:
            raise InvariantError(f"{len(self.labels)} labels for {self.n} vertices")
        for lab in self.labels:
            if lab.k != self.k:
                raise InvariantError(f"label {lab} has length {lab.k}, graph has k={self.k}")
        adj.setflags(write=False)
        words = _pack_words([lab.bits for lab in self.labels], self.k)
        words.setflags(write=False)
        object.__setattr__(self, "labels", tuple(self.labels))
        object.__setattr__(self, "adj", adj)
        object.__setattr__(self, "label_words", words)

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[tuple[int, int]] = (),
        labels: Sequence[Label | str | int] | None = None,
        k: int | None = None,
    ) -> LabeledGraph:
        """Build a graph from 0-based edges.

        Labels may be :class:`Label` objects, bitstrings (``"10"``), or ints
        (interpreted with the given ``k``). Missing labels mean k=0.
        """
        if labels is None:
            k = k or 0
            labs = tuple(Label(0, k) for _ in range(n))
        else:
            labs = tuple(_coerce_label(lab, k) for lab in labels)
            if k is None:
                k = labs[0].k if labs else 0
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            adj[u, v] = adj[v, u] = True
        return cls(n, k, labs, adj)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        us, vs = np.nonzero(np.triu(self.adj, 1))
        return zip(us.tolist(), vs.tolist())

    @property
    def m(self) -> int:
        return int(np.triu(self.adj, 1).sum())

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u, v])

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self.adj[v]).tolist()

    def with_adjacency(self, adj: np.ndarray) -> LabeledGraph:
        return LabeledGraph(self.n, self.k, self.labels, adj)

    def with_labels(self, labels: Sequence[Label]) -> LabeledGraph:
        k = labels[0].k if labels else 0
        return LabeledGraph(self.n, k, tuple(labels), self.adj)

    def zero_labels(self) -> LabeledGraph:
        return self.with_labels([Label(0, 0)] * self.n)

    def orthogonal(self, u: int, v: int) -> bool:
        return self.labels[u].bits & self.labels[v].bits == 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LabeledGraph):
            return NotImplemented
        return (
            self.n == other.n
            and self.k == other.k
            and self.labels == other.labels
            and np.array_equal(self.adj, other.adj)
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self.labels, self.adj.tobytes()))

    def __repr__(self) -> str:
        labs = " ".join(str(lab) for lab in self.labels)
        return f"LabeledGraph(n={self.n}, k={self.k}, labels=[{labs}], edges={list(self.edges())})"


def _coerce_label(lab: Label | str | int, k: int | None) -> Label:
    if isinstance(lab, Label):
        return lab
    if isinstance(lab, str):
        return Label.from_string(lab)
    if k is None:
        raise InvariantError("integer labels need an explicit k")
    return Label(int(lab), k)


@dataclass(frozen=True)
class Violation:
    """One reason a graph is not a valid instance.

    ``kind`` is ``"loop"``, ``"asymmetric"`` or ``"dependent-set"``. For the
    last one, ``set_index`` is the 1-based index of the set containing both
    endpoints.
    """

    kind: str
    edge: tuple[int, int]
    set_index: int | None = None

    def describe(self, base: int = 1) -> str:
        u, v = (x + base for x in self.edge)
        if self.kind == "dependent-set":
            return f"edge {{{u},{v}}} lies inside N_{self.set_index}"
        if self.kind == "loop":
            return f"self-loop at vertex {u}"
        return f"adjacency not symmetric at ({u},{v})"


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[Violation, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def __bool__(self) -> bool:
        return self.ok

    def describe(self, base: int = 1) -> str:
        return "; ".join(v.describe(base) for v in self.violations) or "ok"


class ValidationError(ValueError):
    def __init__(self, report: ValidationReport) -> None:
        super().__init__(report.describe())
        self.report = report


def validate(g: LabeledGraph) -> ValidationReport:
    """Check symmetry, irreflexivity and independence of every N_i."""
    found: list[Violation] = []
    adj = g.adj
    for v in np.flatnonzero(np.diagonal(adj)).tolist():
        found.append(Violation("loop", (v, v)))
    us, vs = np.nonzero(adj != adj.T)
    for u, v in zip(us.tolist(), vs.tolist()):
        if u < v:
            found.append(Violation("asymmetric", (u, v)))
    for u, v in g.edges():
        shared = g.labels[u].bits & g.labels[v].bits
        if shared:
            i = (shared & -shared).bit_length()
            found.append(Violation("dependent-set", (u, v), i))
    return ValidationReport(tuple(found))


def ensure_valid(g: LabeledGraph) -> None:
    report = validate(g)
    if not report.ok:
        raise ValidationError(report)


def orthogonality_matrix(g: LabeledGraph, rows: np.ndarray, cols: np.ndarray) -> np.ndarray:
    """Boolean ``len(rows) x len(cols)`` matrix of label orthogonality."""
    a = g.label_words[rows]
    b = g.label_words[cols]
    return ((a[:, None, :] & b[None, :, :]) == 0).all(axis=2)


def probe_reduce(h: LabeledGraph) -> LabeledGraph:
    """Delete every edge whose endpoints share a set N_i. Labels are kept."""
    idx = np.arange(h.n)
    orth = orthogonality_matrix(h, idx, idx)
    return h.with_adjacency(h.adj & orth)

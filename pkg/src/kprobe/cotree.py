"""Binary cotrees: the acceptance certificate.

Nodes live in an arena (a tuple indexed by node id). Internal nodes are
``JOIN`` (every cross pair between the two subtrees is an edge) or ``UNION``
(no cross pair is an edge); leaves carry a 0-based vertex id.

The text form is an s-expression over 1-based vertex ids::

    tree := id | "(" ("join" | "union") tree tree ")"

The empty cotree (n = 0) is written ``()``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterator

import numpy as np

__all__ = [
    "Cotree",
    "CotreeBuilder",
    "CotreeNode",
    "CotreeSyntaxError",
    "MalformedCotreeError",
    "NodeKind",
    "leaf_partition",
    "parse",
    "realize",
    "serialize",
    "tree_edges",
]


class NodeKind(enum.Enum):
    JOIN = "join"
    UNION = "union"
    LEAF = "leaf"


class MalformedCotreeError(ValueError):
    """The certificate is structurally unusable (leaves not a bijection, bad arity)."""


class CotreeSyntaxError(ValueError):
    def __init__(self, message: str, offset: int) -> None:
        super().__init__(f"{message} at byte {offset}")
        self.offset = offset


@dataclass(frozen=True)
class CotreeNode:
    kind: NodeKind
    children: tuple[int, ...] = ()
    vertex: int | None = None

    def __post_init__(self) -> None:
        if self.kind is NodeKind.LEAF:
            if self.children or self.vertex is None:
                raise MalformedCotreeError("a leaf has a vertex and no children")
        elif len(self.children) != 2 or self.vertex is not None:
            raise MalformedCotreeError(f"{self.kind.value} node needs exactly 2 children")

    @property
    def is_leaf(self) -> bool:
        return self.kind is NodeKind.LEAF


class CotreeBuilder:
    """Append-only arena used to assemble a :class:`Cotree` bottom-up."""

    def __init__(self) -> None:
        self._nodes: list[CotreeNode] = []

    def leaf(self, vertex: int) -> int:
        self._nodes.append(CotreeNode(NodeKind.LEAF, vertex=vertex))
        return len(self._nodes) - 1

    def internal(self, kind: NodeKind, left: int, right: int) -> int:
        self._nodes.append(CotreeNode(kind, (left, right)))
        return len(self._nodes) - 1

    def join(self, left: int, right: int) -> int:
        return self.internal(NodeKind.JOIN, left, right)

    def union(self, left: int, right: int) -> int:
        return self.internal(NodeKind.UNION, left, right)

    def build(self, root: int | None) -> Cotree:
        return Cotree(tuple(self._nodes), root)


@dataclass(frozen=True)
class Cotree:
    nodes: tuple[CotreeNode, ...]
    root: int | None

    @classmethod
    def empty(cls) -> Cotree:
        return cls((), None)

    @classmethod
    def single(cls, vertex: int = 0) -> Cotree:
        return cls((CotreeNode(NodeKind.LEAF, vertex=vertex),), 0)

    def __len__(self) -> int:
        return sum(1 for _ in self.leaves())

    def _reachable(self) -> Iterator[int]:
        """Node ids reachable from the root, in pre-order."""
        if self.root is None:
            return
        stack = [self.root]
        while stack:
            i = stack.pop()
            yield i
            stack.extend(reversed(self.nodes[i].children))

    def leaves(self, node: int | None = None) -> Iterator[int]:
        """Vertex ids below ``node`` (default: root), left to right."""
        start = self.root if node is None else node
        if start is None:
            return
        stack = [start]
        while stack:
            nd = self.nodes[stack.pop()]
            if nd.is_leaf:
                yield nd.vertex  # type: ignore[misc]
            else:
                stack.extend(reversed(nd.children))

    def parents(self) -> dict[int, int]:
        return {c: i for i in self._reachable() for c in self.nodes[i].children}

    def check(self, n: int) -> None:
        """Raise :class:`MalformedCotreeError` unless leaves biject onto ``0..n-1``."""
        if self.root is None:
            if n:
                raise MalformedCotreeError(f"empty certificate for {n} vertices")
            return
        if not 0 <= self.root < len(self.nodes):
            raise MalformedCotreeError(f"root id {self.root} out of range")
        seen_nodes: set[int] = set()
        stack = [self.root]
        verts: list[int] = []
        while stack:
            i = stack.pop()
            if not 0 <= i < len(self.nodes) or i in seen_nodes:
                raise MalformedCotreeError(f"node {i} is missing or shared")
            seen_nodes.add(i)
            nd = self.nodes[i]
            if nd.is_leaf:
                verts.append(nd.vertex)  # type: ignore[arg-type]
            else:
                stack.extend(nd.children)
        if sorted(verts) != list(range(n)):
            dup = sorted({v for v in verts if verts.count(v) > 1})
            missing = sorted(set(range(n)) - set(verts))
            extra = sorted(v for v in set(verts) if not 0 <= v < n)
            raise MalformedCotreeError(
                f"leaves are not a bijection onto 1..{n}: duplicate={[v + 1 for v in dup]} "
                f"missing={[v + 1 for v in missing]} out-of-range={[v + 1 for v in extra]}"
            )

    def shape(self, node: int | None = None) -> object:
        """Nested-tuple form, e.g. ``("join", 0, ("union", 1, 2))``.

        Two cotrees are structurally equal iff their shapes are equal.
        """
        start = self.root if node is None else node
        if start is None:
            return ()
        nd = self.nodes[start]
        if nd.is_leaf:
            return nd.vertex
        return (nd.kind.value, self.shape(nd.children[0]), self.shape(nd.children[1]))

    def canonical(self) -> Cotree:
        """Copy with the children of every node ordered by minimum leaf id."""
        b = CotreeBuilder()

        def rec(i: int) -> tuple[int, int]:
            nd = self.nodes[i]
            if nd.is_leaf:
                return b.leaf(nd.vertex), nd.vertex  # type: ignore[arg-type]
            (l, lmin), (r, rmin) = rec(nd.children[0]), rec(nd.children[1])
            if rmin < lmin:
                l, r = r, l
            return b.internal(nd.kind, l, r), min(lmin, rmin)

        if self.root is None:
            return Cotree.empty()
        root, _ = rec(self.root)
        return b.build(root)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Cotree):
            return NotImplemented
        return self.shape() == other.shape()

    def __hash__(self) -> int:
        return hash(self.shape())

    def __str__(self) -> str:
        return serialize(self)


def realize(t: Cotree, n: int) -> np.ndarray:
    """Adjacency matrix of the cograph described by ``t``."""
    t.check(n)
    adj = np.zeros((n, n), dtype=bool)
    if t.root is None:
        return adj
    below: dict[int, list[int]] = {}
    for i in reversed(list(t._reachable())):
        nd = t.nodes[i]
        if nd.is_leaf:
            below[i] = [nd.vertex]  # type: ignore[list-item]
            continue
        left, right = (below.pop(c) for c in nd.children)
        if nd.kind is NodeKind.JOIN:
            adj[np.ix_(left, right)] = True
            adj[np.ix_(right, left)] = True
        below[i] = left + right
    return adj


def tree_edges(t: Cotree) -> list[int]:
    """Tree edges, each named by its lower endpoint (a non-root node id)."""
    return [i for i in t._reachable() if i != t.root]


def leaf_partition(t: Cotree, edge: int) -> tuple[frozenset[int], frozenset[int]]:
    """Split the leaf set across the tree edge above node ``edge``.

    Returns ``(below, rest)``.
    """
    if edge == t.root or edge not in t.parents():
        raise ValueError(f"{edge} does not name an edge of the cotree")
    below = frozenset(t.leaves(edge))
    return below, frozenset(t.leaves()) - below


def serialize(t: Cotree, format: str = "sexp", ascii: bool = False) -> str:
    if format == "sexp":
        return _to_sexp(t)
    if format == "dot":
        return _to_dot(t, ascii)
    raise ValueError(f"unknown cotree format {format!r}")


def _to_sexp(t: Cotree) -> str:
    if t.root is None:
        return "()"
    parts: list[str] = []
    # explicit stack; cotrees from large inputs can be deeper than the recursion limit
    stack: list[int | str] = [t.root]
    while stack:
        item = stack.pop()
        if isinstance(item, str):
            parts.append(item)
            continue
        nd = t.nodes[item]
        if nd.is_leaf:
            parts.append(str(nd.vertex + 1))  # type: ignore[operator]
        else:
            parts.append(f"({nd.kind.value}")
            stack.extend([")", nd.children[1], " ", nd.children[0], " "])
    return "".join(parts)


_DOT_SYMBOLS = {NodeKind.JOIN: ("⊗", "x"), NodeKind.UNION: ("⊕", "u")}


def _to_dot(t: Cotree, ascii: bool) -> str:
    lines = ["digraph cotree {"]
    for i in t._reachable():
        nd = t.nodes[i]
        if nd.is_leaf:
            lines.append(f'  n{i} [shape=circle, label="{nd.vertex + 1}"];')  # type: ignore[operator]
        else:
            sym = _DOT_SYMBOLS[nd.kind][1 if ascii else 0]
            shape = "box" if nd.kind is NodeKind.JOIN else "ellipse"
            lines.append(f'  n{i} [shape={shape}, label="{sym}"];')
    for i in t._reachable():
        for c in t.nodes[i].children:
            lines.append(f"  n{i} -> n{c};")
    lines.append("}")
    return "\n".join(lines) + "\n"


_TOKEN = re.compile(r"\s*(?:(\()|(\))|(join|union)|([0-9]+)|(\S))")


def parse(text: str, n: int | None = None) -> Cotree:
    """Inverse of ``serialize(t, "sexp")``.

    With ``n`` given, the leaf set must be exactly ``1..n``; otherwise the
    ids must be ``1..(number of leaves)``.
    """
    data = text.encode()
    tokens: list[tuple[str, str, int]] = []
    pos = 0
    for m in _TOKEN.finditer(text):
        if m.group(5) is not None:
            raise CotreeSyntaxError(f"unexpected character {m.group(5)!r}", _byte(text, m.start(5)))
        kind = next(name for name, g in zip(("(", ")", "op", "id"), m.groups()) if g is not None)
        start = m.start(m.lastindex)  # type: ignore[arg-type]
        tokens.append((kind, m.group(m.lastindex), _byte(text, start)))  # type: ignore[arg-type]
        pos = m.end()
    if text[pos:].strip():
        raise CotreeSyntaxError("trailing garbage", _byte(text, pos))
    end = len(data)

    if len(tokens) == 2 and tokens[0][0] == "(" and tokens[1][0] == ")":
        tree = Cotree.empty()
        tree.check(n or 0)
        return tree
    if not tokens:
        raise CotreeSyntaxError("empty certificate", end)

    b = CotreeBuilder()
    seen: dict[int, int] = {}
    # each frame: [kind, children, offset]
    frames: list[list] = []
    root: int | None = None
    i = 0
    while i < len(tokens):
        kind, val, off = tokens[i]
        if root is not None:
            raise CotreeSyntaxError("text after complete tree", off)
        if kind == "(":
            if i + 1 >= len(tokens) or tokens[i + 1][0] != "op":
                at = tokens[i + 1][2] if i + 1 < len(tokens) else end
                raise CotreeSyntaxError("expected 'join' or 'union'", at)
            frames.append([NodeKind(tokens[i + 1][1]), [], off])
            i += 2
            continue
        if kind == ")":
            if not frames:
                raise CotreeSyntaxError("unbalanced ')'", off)
            op, kids, _ = frames.pop()
            if len(kids) != 2:
                raise CotreeSyntaxError(f"{op.value} needs exactly 2 operands, got {len(kids)}", off)
            node = b.internal(op, kids[0], kids[1])
        elif kind == "id":
            vid = int(val)
            if vid < 1:
                raise CotreeSyntaxError("vertex ids are 1-based", off)
            if vid in seen:
                raise MalformedCotreeError(f"duplicate leaf {vid} at byte {off}")
            node = b.leaf(vid - 1)
            seen[vid] = off
        else:
            raise CotreeSyntaxError(f"unexpected {val!r}", off)
        if frames:
            if len(frames[-1][1]) == 2:
                raise CotreeSyntaxError("too many operands", off)
            frames[-1][1].append(node)
        else:
            root = node
        i += 1
    if frames:
        raise CotreeSyntaxError("unexpected end of input; missing ')'", end)
    tree = b.build(root)
    tree.check(len(seen) if n is None else n)
    return tree


def _byte(text: str, char_index: int) -> int:
    return len(text[:char_index].encode())

"""The ``p kprobe`` instance file format.

::

    # comment
    p kprobe <n> <k> <m>
    l 1 <bits>        (n lines, ids ascending; bits has length k, or "-" when k = 0)
    e <u> <v>         (m lines, u < v, 1-based)

Blank lines and ``#`` lines may appear anywhere and are ignored.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .graph import InvariantError, Label, LabeledGraph

__all__ = ["GraphFormatError", "parse_graph", "read_graph", "serialize_graph"]


class GraphFormatError(ValueError):
    def __init__(self, message: str, line: int | None = None) -> None:
        super().__init__(f"line {line}: {message}" if line is not None else message)
        self.line = line


def _ints(fields: list[str], lineno: int, what: str) -> list[int]:
    try:
        values = [int(f) for f in fields]
    except ValueError:
        raise GraphFormatError(f"{what}: expected integers, got {' '.join(fields)!r}", lineno) from None
    if any(v < 0 for v in values):
        raise GraphFormatError(f"{what}: negative value", lineno)
    return values


def parse_graph(text: str, edge_lines: dict[tuple[int, int], int] | None = None) -> LabeledGraph:
    """Parse an instance file. Vertex ids become 0-based.

    If ``edge_lines`` is given it is filled with ``(u, v) -> line number``
    (0-based endpoints) so later diagnostics can point at the source.
    """
    header: tuple[int, int, int] | None = None
    labels: list[Label] = []
    edges: set[tuple[int, int]] = set()
    adj: np.ndarray | None = None
    last = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        last = lineno
        tag, *fields = line.split()
        if header is None:
            if tag != "p" or len(fields) != 4 or fields[0] != "kprobe":
                raise GraphFormatError("expected header 'p kprobe <n> <k> <m>'", lineno)
            n, k, m = _ints(fields[1:], lineno, "header")
            header = (n, k, m)
            adj = np.zeros((n, n), dtype=bool)
            continue
        n, k, m = header
        if tag == "l":
            if edges:
                raise GraphFormatError("label line after edge lines", lineno)
            if len(fields) != 2:
                raise GraphFormatError("expected 'l <vertex> <bits>'", lineno)
            (vid,) = _ints(fields[:1], lineno, "label")
            if vid != len(labels) + 1:
                raise GraphFormatError(f"expected label for vertex {len(labels) + 1}, got {vid}", lineno)
            if vid > n:
                raise GraphFormatError(f"vertex {vid} exceeds n={n}", lineno)
            bits = fields[1]
            if (k == 0 and bits != "-") or (k > 0 and len(bits) != k):
                raise GraphFormatError(f"label {bits!r} does not have length k={k}", lineno)
            try:
                labels.append(Label.from_string(bits))
            except InvariantError as exc:
                raise GraphFormatError(str(exc), lineno) from None
        elif tag == "e":
            if len(labels) != n:
                raise GraphFormatError(f"edge before all {n} label lines", lineno)
            if len(fields) != 2:
                raise GraphFormatError("expected 'e <u> <v>'", lineno)
            u, v = _ints(fields, lineno, "edge")
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", lineno)
            if not u < v:
                raise GraphFormatError(f"edge endpoints must satisfy u < v, got {u} {v}", lineno)
            if not 1 <= u or v > n:
                raise GraphFormatError(f"edge {{{u},{v}}} outside 1..{n}", lineno)
            if (u, v) in edges:
                raise GraphFormatError(f"duplicate edge {{{u},{v}}}", lineno)
            if len(edges) == m:
                raise GraphFormatError(f"more than m={m} edges", lineno)
            edges.add((u, v))
            if edge_lines is not None:
                edge_lines[(u - 1, v - 1)] = lineno
            adj[u - 1, v - 1] = adj[v - 1, u - 1] = True  # type: ignore[index]
        else:
            raise GraphFormatError(f"unknown line type {tag!r}", lineno)
    if header is None:
        raise GraphFormatError("missing header 'p kprobe <n> <k> <m>'", last or None)
    n, k, m = header
    if len(labels) != n:
        raise GraphFormatError(f"expected {n} label lines, found {len(labels)}", last)
    if len(edges) != m:
        raise GraphFormatError(f"expected {m} edges, found {len(edges)}", last)
    return LabeledGraph(n, k, tuple(labels) if n else (), adj)  # type: ignore[arg-type]


def serialize_graph(g: LabeledGraph, comments: tuple[str, ...] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    edges = list(g.edges())
    lines.append(f"p kprobe {g.n} {g.k} {len(edges)}")
    lines.extend(f"l {v + 1} {lab.to_string()}" for v, lab in enumerate(g.labels))
    lines.extend(f"e {u + 1} {v + 1}" for u, v in edges)
    return "\n".join(lines) + "\n"


def read_graph(path: str | Path) -> LabeledGraph:
    return parse_graph(Path(path).read_text(encoding="utf-8"))

from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

from kprobe.cotree import Cotree, CotreeBuilder, NodeKind
from kprobe.graph import Label, LabeledGraph

settings.register_profile(
    "default",
    max_examples=200,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")


def path4(labels: str | None = None) -> LabeledGraph:
    """a-b-c-d on vertices 0..3. ``labels`` like ``"1001"`` gives k=1."""
    labs = list(labels) if labels else None
    return LabeledGraph.from_edges(4, [(0, 1), (1, 2), (2, 3)], labs, k=0 if labs is None else None)


def cycle(n: int, labels: list[str] | None = None) -> LabeledGraph:
    return LabeledGraph.from_edges(n, [(i, (i + 1) % n) for i in range(n)], labels)


@pytest.fixture
def p4_labeled() -> LabeledGraph:
    return path4("1001")


@pytest.fixture
def p4_plain() -> LabeledGraph:
    return path4()


@st.composite
def labeled_graphs(draw: st.DrawFn, max_n: int = 7, max_k: int = 2, min_n: int = 0) -> LabeledGraph:
    """Valid labeled graphs: edges are only drawn between orthogonal labels."""
    n = draw(st.integers(min_n, max_n))
    k = draw(st.integers(0, max_k))
    bits = draw(st.lists(st.integers(0, (1 << k) - 1), min_size=n, max_size=n))
    labels = [Label(b, k) for b in bits]
    legal = [(u, v) for u, v in combinations(range(n), 2) if bits[u] & bits[v] == 0]
    chosen = draw(st.lists(st.sampled_from(legal), unique=True)) if legal else []
    return LabeledGraph.from_edges(n, chosen, labels, k)


@st.composite
def raw_labeled_graphs(draw: st.DrawFn, max_n: int = 7, max_k: int = 2) -> LabeledGraph:
    """Labeled graphs that may violate independence of the N_i."""
    n = draw(st.integers(0, max_n))
    k = draw(st.integers(0, max_k))
    bits = draw(st.lists(st.integers(0, (1 << k) - 1), min_size=n, max_size=n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return LabeledGraph.from_edges(n, chosen, [Label(b, k) for b in bits], k)


@st.composite
def cotrees(draw: st.DrawFn, max_n: int = 12, min_n: int = 1) -> Cotree:
    n = draw(st.integers(min_n, max_n))
    perm = draw(st.permutations(range(n)))
    b = CotreeBuilder()
    nodes = [b.leaf(v) for v in perm]
    while len(nodes) > 1:
        i = draw(st.integers(0, len(nodes) - 2))
        kind = draw(st.sampled_from([NodeKind.JOIN, NodeKind.UNION]))
        nodes[i : i + 2] = [b.internal(kind, nodes[i], nodes[i + 1])]
    return b.build(nodes[0])


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in test_acceptance.RESULTS:
            terminalreporter.write_line(line)

"""Seeded random instances: k-probe cographs with witnesses, and unstructured graphs.

All randomness comes from :class:`XorShift64Star`, so instances are identical
across runs, platforms and Python versions. The generator state ``x`` is a
nonzero 64-bit word; one step is::

    x ^= x >> 12
    x ^= x << 25   (mod 2**64)
    x ^= x >> 27
    output = x * 0x2545F4914F6CDD1D  (mod 2**64)

The seed is expanded into the initial state by one SplitMix64 step::

    z = (seed + 0x9E3779B97F4A7C15) mod 2**64
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB
    state = z ^ (z >> 31)            (replaced by 1 if it is 0)
"""

from __future__ import annotations

import numpy as np

from .cotree import Cotree, CotreeBuilder, NodeKind, realize
from .graph import Label, LabeledGraph, probe_reduce

__all__ = ["XorShift64Star", "generate", "generate_random_labeled"]

MASK64 = (1 << 64) - 1


class XorShift64Star:
    MULTIPLIER = 0x2545F4914F6CDD1D

    def __init__(self, seed: int) -> None:
        z = (seed + 0x9E3779B97F4A7C15) & MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        self.state = (z ^ (z >> 31)) or 1

    def next_u64(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK64
        x ^= x >> 27
        self.state = x
        return (x * self.MULTIPLIER) & MASK64

    def random(self) -> float:
        """Uniform float in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) * (1.0 / (1 << 53))

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)`` by rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - (1 << 64) % bound
        while True:
            r = self.next_u64()
            if r < limit:
                return r % bound

    def bernoulli(self, p: float) -> bool:
        return self.random() < p

    def shuffle(self, items: list) -> None:
        """Fisher-Yates, from the back."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def _check_prob(name: str, p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"{name} must lie in [0, 1], got {p}")


def _random_labels(rng: XorShift64Star, n: int, k: int, membership_prob: float) -> list[Label]:
    labels = []
    for _ in range(n):
        bits = 0
        for i in range(k):
            if rng.bernoulli(membership_prob):
                bits |= 1 << i
        labels.append(Label(bits, k))
    return labels


def random_cotree(rng: XorShift64Star, n: int, join_prob: float) -> Cotree:
    """Cotree on a random permutation of ``0..n-1`` by recursive random splits.

    A block of ``m`` leaves splits into sizes ``s`` and ``m - s`` with ``s``
    uniform in ``1..m-1``; the node is a join with probability ``join_prob``.
    Shapes are not uniform over binary trees.
    """
    order = list(range(n))
    rng.shuffle(order)
    b = CotreeBuilder()
    # pre-order construction with an explicit stack: (lo, hi, parent slot)
    root_slot: list[int] = []
    pending: list[tuple[int, int, list[int]]] = [(0, n, root_slot)]
    internal: list[tuple[NodeKind, list[int], list[int]]] = []
    while pending:
        lo, hi, slot = pending.pop()
        if hi - lo == 1:
            slot.append(b.leaf(order[lo]))
            continue
        split = lo + 1 + rng.below(hi - lo - 1)
        kind = NodeKind.JOIN if rng.bernoulli(join_prob) else NodeKind.UNION
        kids: list[int] = []
        internal.append((kind, kids, slot))
        pending.append((split, hi, kids))
        pending.append((lo, split, kids))
    # children are complete once every node created after their parent exists
    for kind, kids, slot in reversed(internal):
        slot.append(b.internal(kind, kids[0], kids[1]))
    return b.build(root_slot[0])


def generate(
    n: int,
    k: int,
    membership_prob: float = 0.3,
    join_prob: float = 0.5,
    seed: int = 0,
) -> tuple[LabeledGraph, Cotree]:
    """A labeled k-probe cograph on ``n`` vertices together with its witness cotree.

    Draw order is pinned: vertex permutation, tree splits and node kinds
    (pre-order), then labels vertex by vertex, set by set.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if k < 0:
        raise ValueError("k must be non-negative")
    _check_prob("membership_prob", membership_prob)
    _check_prob("join_prob", join_prob)
    rng = XorShift64Star(seed)
    witness = random_cotree(rng, n, join_prob)
    labels = _random_labels(rng, n, k, membership_prob)
    h = LabeledGraph(n, k, tuple(labels), realize(witness, n))
    return probe_reduce(h), witness


def generate_random_labeled(
    n: int,
    k: int,
    edge_prob: float = 0.5,
    membership_prob: float = 0.3,
    seed: int = 0,
) -> LabeledGraph:
    """Random labels, then one coin per pair ``u < v``; edges inside some N_i are dropped."""
    if n < 0 or k < 0:
        raise ValueError("n and k must be non-negative")
    _check_prob("edge_prob", edge_prob)
    _check_prob("membership_prob", membership_prob)
    rng = XorShift64Star(seed)
    labels = _random_labels(rng, n, k, membership_prob)
    adj = np.zeros((n, n), dtype=bool)
    for u in range(n):
        for v in range(u + 1, n):
            if rng.bernoulli(edge_prob) and labels[u].bits & labels[v].bits == 0:
                adj[u, v] = adj[v, u] = True
    return LabeledGraph(n, k, tuple(labels), adj)

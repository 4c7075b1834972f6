"""Compiled inner loops for the module and twin tests.

Every adjacency lookup and label comparison is counted in ``cnt``:
``cnt[0]`` twin tests, ``cnt[1]`` adjacency probes, ``cnt[2]`` orthogonality
tests. Loops short-circuit exactly as written, so the counts are the work done.
"""

from __future__ import annotations

import numpy as np
from numba import njit

NO_TWIN = 0
UNION_TWIN = 1
JOIN_TWIN = 2


@njit(cache=True)
def orth(words, a, b):
    for w in range(words.shape[1]):
        if words[a, w] & words[b, w]:
            return False
    return True


@njit(cache=True)
def module_test(adj, words, in_set, members, cnt):
    n = adj.shape[0]
    for z in range(n):
        if in_set[z]:
            continue
        touches = False
        for x in members:
            cnt[1] += 1
            if adj[z, x]:
                touches = True
                break
        if not touches:
            continue
        for x in members:
            cnt[2] += 1
            if orth(words, z, x):
                cnt[1] += 1
                if not adj[z, x]:
                    return False
    return True


@njit(cache=True)
def twin_test(adj, words, xs, ys, in_set, cnt):
    cnt[0] += 1
    crossed = False
    for x in xs:
        for y in ys:
            cnt[1] += 1
            if adj[x, y]:
                crossed = True
                break
        if crossed:
            break
    kind = UNION_TWIN
    if crossed:
        kind = JOIN_TWIN
        for x in xs:
            for y in ys:
                cnt[2] += 1
                if orth(words, x, y):
                    cnt[1] += 1
                    if not adj[x, y]:
                        return NO_TWIN
    merged = np.concatenate((xs, ys))
    for v in merged:
        in_set[v] = True
    ok = module_test(adj, words, in_set, merged, cnt)
    for v in merged:
        in_set[v] = False
    return kind if ok else NO_TWIN


@njit(cache=True)
def first_twin(adj, words, order, starts, cnt):
    """Scan entry pairs ``(i, j)``, ``i < j``, lexicographically.

    Entry ``e`` owns ``order[starts[e]:starts[e + 1]]``. Returns
    ``(i, j, kind)`` for the first twin, or ``(-1, -1, NO_TWIN)``.
    """
    m = starts.shape[0] - 1
    in_set = np.zeros(adj.shape[0], dtype=np.bool_)
    for i in range(m - 1):
        xs = order[starts[i] : starts[i + 1]]
        for j in range(i + 1, m):
            ys = order[starts[j] : starts[j + 1]]
            kind = twin_test(adj, words, xs, ys, in_set, cnt)
            if kind != NO_TWIN:
                return i, j, kind
    return -1, -1, NO_TWIN

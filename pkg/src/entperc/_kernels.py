"""Compiled inner loops: union-find over edge lists and breadth-first levels."""

import numpy as np
from numba import njit


@njit(cache=True)
def _find(parent, x):
    # path halving
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


@njit(cache=True)
def union_find_labels(n, us, vs, keep):
    """Root label of every vertex after merging the kept edges.

    ``keep`` is a boolean mask over the edge arrays; union by size.
    """
    parent = np.arange(n)
    size = np.ones(n, dtype=np.int64)
    for e in range(us.shape[0]):
        if not keep[e]:
            continue
        a = _find(parent, us[e])
        b = _find(parent, vs[e])
        if a == b:
            continue
        if size[a] < size[b]:
            a, b = b, a
        parent[b] = a
        size[a] += size[b]
    for x in range(n):
        parent[x] = _find(parent, x)
    return parent


@njit(cache=True)
def bfs_levels(indptr, indices, source, dist, queue):
    """Number of vertices at each hop distance from ``source``.

    ``dist`` must be filled with -1 on entry and is restored before return;
    ``queue`` is scratch space of length N.
    """
    head = 0
    tail = 1
    queue[0] = source
    dist[source] = 0
    max_d = 0
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = dv + 1
                if dv + 1 > max_d:
                    max_d = dv + 1
                queue[tail] = w
                tail += 1
    levels = np.zeros(max_d + 1, dtype=np.int64)
    for i in range(tail):
        levels[dist[queue[i]]] += 1
        dist[queue[i]] = -1
    return levels


@njit(cache=True)
def bfs_ball_size(indptr, indices, source, l, dist, queue):
    """Vertices within ``l`` hops of ``source``; stops expanding at depth l."""
    head = 0
    tail = 1
    queue[0] = source
    dist[source] = 0
    while head < tail:
        v = queue[head]
        head += 1
        dv = dist[v]
        if dv >= l:
            continue
        for j in range(indptr[v], indptr[v + 1]):
            w = indices[j]
            if dist[w] < 0:
                dist[w] = dv + 1
                queue[tail] = w
                tail += 1
    for i in range(tail):
        dist[queue[i]] = -1
    return tail

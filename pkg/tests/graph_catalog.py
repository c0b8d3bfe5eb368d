"""Catalog of all connected graphs up to isomorphism, for small n.

Built by vertex augmentation: every connected graph on n+1 vertices
arises from a connected graph on n vertices by attaching a new vertex to
a nonempty neighbor subset (delete any non-cutvertex to see this), so
augmenting the level-n catalog with all 2^n - 1 subsets and deduplicating
up to isomorphism is exhaustive.

Deduplication buckets candidates by a cheap invariant and settles ties
with an exact backtracking isomorphism test.  The known class counts

    n:       1  2  3  4   5    6    7      8
    classes: 1  1  2  6  21  112  853  11117

are asserted, which pins down the correctness of both the augmentation
and the isomorphism test.
"""

from __future__ import annotations

from functools import lru_cache

CONNECTED_CLASS_COUNTS = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}


def _invariant(nbr):
    """Cheap isomorphism invariant of an adjacency-bitmask graph."""
    n = len(nbr)
    degs = [bin(m).count("1") for m in nbr]
    ndegs = [
        tuple(sorted(degs[v] for v in range(n) if nbr[u] >> v & 1)) for u in range(n)
    ]
    tri = [
        sum(
            bin(nbr[u] & nbr[v]).count("1")
            for v in range(n)
            if nbr[u] >> v & 1
        )
        for u in range(n)
    ]
    return (
        n,
        sum(degs) // 2,
        tuple(sorted(degs)),
        tuple(sorted(ndegs)),
        tuple(sorted(tri)),
    )


def _isomorphic(a, b):
    """Exact isomorphism of two adjacency-bitmask graphs of equal size."""
    n = len(a)
    deg_a = [bin(m).count("1") for m in a]
    deg_b = [bin(m).count("1") for m in b]
    if sorted(deg_a) != sorted(deg_b):
        return False
    order = sorted(range(n), key=lambda u: -deg_a[u])
    mapping = [-1] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        u = order[i]
        for v in range(n):
            if used[v] or deg_b[v] != deg_a[u]:
                continue
            ok = True
            for j in range(i):
                w = order[j]
                if bool(a[u] >> w & 1) != bool(b[v] >> mapping[w] & 1):
                    ok = False
                    break
            if not ok:
                continue
            mapping[u] = v
            used[v] = True
            if extend(i + 1):
                return True
            used[v] = False
            mapping[u] = -1
        return False

    return extend(0)


@lru_cache(maxsize=None)
def connected_catalog(max_n):
    """All connected graphs with 1..max_n vertices, one per iso class.

    Returns a list of adjacency-bitmask tuples.  Cached per session.
    """
    if max_n < 1:
        return []
    levels = {1: [(0,)]}
    for n in range(1, max_n):
        classes = {}
        for nbr in levels[n]:
            for subset in range(1, 1 << n):
                new = tuple(
                    m | ((subset >> u & 1) << n) for u, m in enumerate(nbr)
                ) + (subset,)
                key = _invariant(new)
                bucket = classes.setdefault(key, [])
                if not any(_isomorphic(new, other) for other in bucket):
                    bucket.append(new)
        levels[n + 1] = [g for bucket in classes.values() for g in bucket]
        expected = CONNECTED_CLASS_COUNTS.get(n + 1)
        if expected is not None and len(levels[n + 1]) != expected:
            raise AssertionError(
                f"catalog broken: {len(levels[n + 1])} classes on {n + 1} "
                f"vertices, expected {expected}"
            )
    out = []
    for n in range(1, max_n + 1):
        out.extend(levels[n])
    return out


def masks_to_edges(nbr):
    n = len(nbr)
    return [(u, v) for u in range(n) for v in range(u + 1, n) if nbr[u] >> v & 1]

"""Independent brute-force oracles.

Everything here is deliberately written from the definitions, without
touching the library's search/SCC/kernel code paths, so tests can pin
the fast implementations against it.
"""

from itertools import combinations

import numpy as np

from diagsemi.elements import PBR, Bipartition, bit_indices


def pbr_product_by_walks(a: PBR, b: PBR) -> PBR:
    """PBR product by enumerating alternating walks of length <= 4n in the
    stacked graph (revisits allowed; the length bound cuts cycles)."""
    n = a.degree
    # stacked vertices: 0..n-1 upper, n..2n-1 middle, 2n..3n-1 lower
    a_edges = [(u, v) for u in range(2 * n) for v in bit_indices(a.rows[u])]
    b_edges = [(u + n, v + n) for u in range(2 * n) for v in bit_indices(b.rows[u])]
    outer = list(range(n)) + list(range(2 * n, 3 * n))
    max_len = 4 * n

    result = set()
    for start in outer:
        # walk states: (vertex, colour of last edge); colour 0 = a, 1 = b
        frontier = {(v, 0) for u, v in a_edges if u == start}
        frontier |= {(v, 1) for u, v in b_edges if u == start}
        reached = set()
        for _ in range(max_len):
            if not frontier:
                break
            reached |= frontier
            nxt = set()
            for v, colour in frontier:
                edges = b_edges if colour == 0 else a_edges
                for u, w in edges:
                    if u == v:
                        nxt.add((w, 1 - colour))
            frontier = nxt - reached
        for v, _ in reached:
            if v < n or v >= 2 * n:
                s = start if start < n else start - n
                t = v if v < n else v - n
                result.add((s, t))
    return PBR.from_edges(n, result)


def brute_closed_subsets(table):
    """All product-closed subsets of {0..N-1}, by scanning every subset."""
    n = len(table)
    out = []
    for mask in range(1 << n):
        members = [i for i in range(n) if mask >> i & 1]
        ok = True
        for x in members:
            for y in members:
                if not mask >> int(table[x][y]) & 1:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(mask)
    return out


def _partition_key(classes):
    """Canonical form of a partition given as element -> class-key map."""
    relabel = {}
    return tuple(relabel.setdefault(classes[i], len(relabel)) for i in range(len(classes)))


def brute_r_classes(table):
    """t R s iff the principal right ideals tS^1 and sS^1 agree."""
    n = len(table)
    ideals = [frozenset(int(v) for v in table[s]) | {s} for s in range(n)]
    return _partition_key(ideals)


def brute_l_classes(table):
    n = len(table)
    ideals = [frozenset(int(v) for v in table[:, s]) | {s} for s in range(n)]
    return _partition_key(ideals)


def brute_d_classes(table):
    """Join of the brute R and L partitions via union-find."""
    n = len(table)
    r = brute_r_classes(table)
    l = brute_l_classes(table)
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for part in (r, l):
        first = {}
        for i in range(n):
            c = part[i]
            if c in first:
                a, b = find(first[c]), find(i)
                if a != b:
                    parent[max(a, b)] = min(a, b)
            else:
                first[c] = i
    return _partition_key([find(i) for i in range(n)])


def brute_j_classes(table):
    """t J s iff S^1 t S^1 = S^1 s S^1, ideals read off the full table.

    Computed once per brute R-class (R-related elements are J-related by
    definition), which keeps the quadratic blow-up tolerable."""
    n = len(table)
    r = brute_r_classes(table)
    rep_ideal = {}
    classes = [None] * n
    for s in range(n):
        if r[s] not in rep_ideal:
            us = set(int(v) for v in table[:, s])
            us.add(s)
            rows = table[sorted(us), :]
            ideal = frozenset(int(v) for v in np.unique(rows)) | us
            rep_ideal[r[s]] = ideal
        classes[s] = rep_ideal[r[s]]
    return _partition_key(classes)


def brute_idempotents(elements):
    return [i for i, x in enumerate(elements) if x * x == x]


def all_perfect_matchings(points):
    """All perfect matchings of an even-sized point list."""
    if not points:
        yield []
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        remaining = rest[:k] + rest[k + 1:]
        for matching in all_perfect_matchings(remaining):
            yield [(first, other)] + matching


def all_brauer_diagrams(n):
    for matching in all_perfect_matchings(list(range(2 * n))):
        yield Bipartition.from_blocks(n, matching)

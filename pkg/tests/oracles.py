"""Slow, obviously-correct reference computations used only by the tests.

Nothing here touches the elimination or enumeration code under test.
"""

import itertools
import math
from fractions import Fraction
from functools import reduce

import numpy as np


def span_rank_gf2(rows):
    """Rank over GF(2) from the size of the row span (rows as 0/1 lists)."""
    span = {0}
    for r in rows:
        v = int("".join(map(str, r)) or "0", 2)
        span |= {s ^ v for s in span}
    return int(math.log2(len(span)))


def numpy_rank_gf2(a):
    a = (np.array(a, dtype=np.uint8) % 2).copy()
    if a.size == 0:
        return 0
    rank = 0
    rows, cols = a.shape
    for c in range(cols):
        pivot = next((r for r in range(rank, rows) if a[r, c]), None)
        if pivot is None:
            continue
        a[[rank, pivot]] = a[[pivot, rank]]
        for r in range(rows):
            if r != rank and a[r, c]:
                a[r] ^= a[rank]
        rank += 1
    return rank


def det(m):
    m = [[Fraction(x) for x in row] for row in m]
    n, sign, out = len(m), 1, Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c]), None)
        if p is None:
            return 0
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        out *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return int(sign * out)


def invariant_factors_by_minors(m):
    """``d_k = D_k / D_{k-1}`` where ``D_k`` is the gcd of all ``k x k`` minors."""
    rows, cols = len(m), len(m[0]) if m else 0
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        minors = [det([[m[i][j] for j in cs] for i in rs])
                  for rs in itertools.combinations(range(rows), k)
                  for cs in itertools.combinations(range(cols), k)]
        g = reduce(math.gcd, minors, 0)
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def brute_simplices(vertices, member, max_dim):
    """All subsets of ``vertices`` up to ``max_dim + 1`` elements passing ``member``."""
    return [[c for c in itertools.combinations(sorted(vertices), k + 1) if member(c)]
            for k in range(max_dim + 1)]


def brute_betti_gf2(groups, top):
    """Unreduced GF(2) Betti numbers from dense boundary matrices."""
    ranks = [0] * (top + 2)
    for i in range(1, min(top + 2, len(groups))):
        idx = {s: r for r, s in enumerate(groups[i - 1])}
        a = np.zeros((len(groups[i - 1]), len(groups[i])), dtype=np.uint8)
        for j, s in enumerate(groups[i]):
            for k in range(len(s)):
                a[idx[s[:k] + s[k + 1:]], j] = 1
        ranks[i] = numpy_rank_gf2(a)
    counts = [len(g) for g in groups] + [0] * (top + 2)
    return [counts[i] - ranks[i] - ranks[i + 1] for i in range(top + 1)]


def neighborhood_member(adj):
    """Membership test for N(G) straight from an adjacency-set dict."""
    every = set(adj)

    def member(c):
        common = set(every)
        for v in c:
            common &= adj[v]
        return bool(common)

    return member


def isomorphic(adj_a, adj_b):
    """Brute-force isomorphism for tiny graphs given as adjacency-set dicts."""
    va, vb = sorted(adj_a), sorted(adj_b)
    if len(va) != len(vb):
        return False
    for perm in itertools.permutations(vb):
        f = dict(zip(va, perm))
        if all({f[w] for w in adj_a[u]} == adj_b[f[u]] for u in va):
            return True
    return False

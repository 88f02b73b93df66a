"""Slow, independent reference computations used to cross-check the fast code.

Nothing here reuses the greedy interweaving search, the flip generators or
the Vandermonde product of the main modules: chains are found by
exhaustive search, volumes by exact elimination, and maximal collections
by clique enumeration.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb

import networkx as nx

from .posets import FinitePoset


# ---------------------------------------------------------------- counting


@lru_cache(maxsize=None)
def catalan(k: int) -> int:
    """Catalan numbers from the convolution recursion."""
    if k == 0:
        return 1
    return sum(catalan(i) * catalan(k - 1 - i) for i in range(k))


def reduced_words_w0(n: int) -> list[tuple[int, ...]]:
    """All reduced words for the longest permutation of [n] (letters 1..n-1)."""
    target = tuple(range(n, 0, -1))
    words = []

    def walk(perm, word):
        if perm == target:
            words.append(tuple(word))
            return
        for i in range(n - 1):
            if perm[i] < perm[i + 1]:
                nxt = list(perm)
                nxt[i], nxt[i + 1] = nxt[i + 1], nxt[i]
                word.append(i + 1)
                walk(tuple(nxt), word)
                word.pop()

    walk(tuple(range(1, n + 1)), [])
    return words


def commutation_classes(n: int) -> int:
    """Number of commutation classes of reduced words of the longest element."""
    words = reduced_words_w0(n)
    g = nx.Graph()
    g.add_nodes_from(words)
    index = set(words)
    for w in words:
        for k in range(len(w) - 1):
            if abs(w[k] - w[k + 1]) >= 2:
                v = w[:k] + (w[k + 1], w[k]) + w[k + 2 :]
                if v in index:
                    g.add_edge(w, v)
    return nx.number_connected_components(g)


# ---------------------------------------------------------------- Tamari lattice


def binary_trees(k: int):
    """Binary trees with k internal nodes as nested tuples (None is a leaf)."""
    if k == 0:
        return [None]
    out = []
    for i in range(k):
        for left in binary_trees(i):
            for right in binary_trees(k - 1 - i):
                out.append((left, right))
    return out


def _rotations(t):
    """Trees obtained by one right rotation anywhere in t: ((a,b),c) -> (a,(b,c))."""
    if t is None:
        return []
    left, right = t
    out = []
    if left is not None:
        a, b = left
        out.append((a, (b, right)))
    out.extend((l2, right) for l2 in _rotations(left))
    out.extend((left, r2) for r2 in _rotations(right))
    return out


def tamari_lattice(k: int) -> FinitePoset:
    """The Tamari lattice on binary trees with k internal nodes."""
    trees = binary_trees(k)
    index = {t: i for i, t in enumerate(trees)}
    covers = {(index[t], index[u]) for t in trees for u in _rotations(t)}
    return FinitePoset(tuple(trees), frozenset(covers))


# ---------------------------------------------------------------- subsets


def _els(mask):
    return [i + 1 for i in range(mask.bit_length()) if mask >> i & 1]


def brute_interweaves(a: int, b: int, delta: int) -> bool:
    """Exhaustive search for an alternating chain with its top in b - a."""
    only_a, only_b = a & ~b, b & ~a
    pool = sorted(_els(only_a) + _els(only_b))
    for chain in combinations(pool, delta + 2):
        ok = True
        for pos, e in enumerate(chain):
            want_b = (delta + 1 - pos) % 2 == 0
            if want_b != bool(only_b >> (e - 1) & 1):
                ok = False
                break
        if ok:
            return True
    return False


def brute_separated(a: int, b: int, delta: int) -> bool:
    return not brute_interweaves(a, b, delta) and not brute_interweaves(b, a, delta)


def brute_boundary(n: int, delta: int) -> set[int]:
    """Subsets separated from every subset of [n]."""
    return {
        a
        for a in range(1 << n)
        if all(brute_separated(a, b, delta) for b in range(1 << n))
    }


def brute_maximal_collections(n: int, delta: int) -> list[frozenset]:
    """All maximum delta-separated collections, via clique enumeration."""
    boundary = brute_boundary(n, delta)
    inner = [a for a in range(1 << n) if a not in boundary]
    graph = nx.Graph()
    graph.add_nodes_from(inner)
    for a, b in combinations(inner, 2):
        if brute_separated(a, b, delta):
            graph.add_edge(a, b)
    want = comb(n - 1, delta + 1)
    if want == 0:
        return [frozenset(boundary)]
    out = []
    for clique in nx.find_cliques(graph):
        if len(clique) == want:
            out.append(frozenset(boundary) | frozenset(clique))
    return out


def brute_bruhat_covers(collections: list[frozenset], delta: int) -> set[tuple[frozenset, frozenset]]:
    """Pairs (C, C') differing in one subset, the outgoing one interweaving the incoming one."""
    by_rest = {}
    for c in collections:
        for x in c:
            by_rest.setdefault(c - {x}, []).append((x, c))
    out = set()
    for rest, group in by_rest.items():
        for (x, c), (y, d) in combinations(group, 2):
            if brute_interweaves(x, y, delta):
                out.add((c, d))
            elif brute_interweaves(y, x, delta):
                out.add((d, c))
    return out


# ---------------------------------------------------------------- triangulations


def _det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    size = len(m)
    det = Fraction(1)
    for c in range(size):
        p = next((r for r in range(c, size) if m[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, size):
            f = m[r][c] / m[c][c]
            for k in range(c, size):
                m[r][k] -= f * m[c][k]
    return det


def simplex_volume(mask: int, delta: int) -> int:
    """delta! times the volume of the simplex on the moment curve, by elimination."""
    rows = [[t**p for p in range(delta + 1)] for t in _els(mask)]
    return abs(int(_det(rows)))


def _brute_circuit(a: int, b: int, delta: int) -> bool:
    """Chain alternating between a and b (shared elements allowed), top in b."""
    pool = sorted(set(_els(a)) | set(_els(b)))
    for chain in combinations(pool, delta + 2):
        if all(
            (b if (delta + 1 - pos) % 2 == 0 else a) >> (e - 1) & 1 for pos, e in enumerate(chain)
        ):
            return True
    return False


def brute_triangulations(n: int, delta: int) -> list[frozenset]:
    """All triangulations of C(n, delta).

    Candidates are maximal cliques of pairwise properly meeting simplices;
    such simplices have disjoint interiors, so a clique is a triangulation
    exactly when its total volume is the largest one attained.
    """
    simplices = [sum(1 << (e - 1) for e in c) for c in combinations(range(1, n + 1), delta + 1)]
    graph = nx.Graph()
    graph.add_nodes_from(simplices)
    for a, b in combinations(simplices, 2):
        if not _brute_circuit(a, b, delta) and not _brute_circuit(b, a, delta):
            graph.add_edge(a, b)
    vol = {s: simplex_volume(s, delta) for s in simplices}
    cliques = [frozenset(c) for c in nx.find_cliques(graph)]
    best = max(sum(vol[s] for s in c) for c in cliques)
    return [c for c in cliques if sum(vol[s] for s in c) == best]


def brute_hst_covers(n: int, triangulations: list[frozenset], delta: int) -> set[tuple[frozenset, frozenset]]:
    """Pairs (T, T') where T' replaces the lower facets of some (delta+2)-set by its upper ones."""
    index = set(triangulations)
    out = set()
    for t in triangulations:
        for s_els in combinations(range(1, n + 1), delta + 2):
            s = sum(1 << (e - 1) for e in s_els)
            lower, upper = set(), set()
            for pos, e in enumerate(s_els):
                facet = s & ~(1 << (e - 1))
                # the gap left at e has delta+1-pos elements of s above it
                (lower if (delta + 1 - pos) % 2 == 0 else upper).add(facet)
            if lower <= t:
                new = (t - lower) | upper
                if new in index:
                    out.add((t, new))
    return out

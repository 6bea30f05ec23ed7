"""Shared fixtures and brute-force oracles.

The oracles deliberately use plain sets of pairs and itertools instead of the
bit rows the package runs on.
"""
import itertools
import random

import pytest

from posetlab.poset import FinitePoset


def naive_closure(n, pairs):
    """Warshall on a set of pairs; None if a cycle appears."""
    rel = set(pairs)
    for k in range(n):
        for i in range(n):
            if (i, k) in rel:
                for j in range(n):
                    if (k, j) in rel:
                        rel.add((i, j))
    if any((i, i) in rel for i in range(n)):
        return None
    return rel


def rel_of(P):
    return {(i, j) for i in range(P.n) for j in range(P.n) if P.lt(i, j)}


def naive_embeds(host_rel, hn, pat_rel, pn):
    for img in itertools.permutations(range(hn), pn):
        if all(((a, b) in pat_rel) == ((img[a], img[b]) in host_rel)
               for a in range(pn) for b in range(pn) if a != b):
            return img
    return None


def naive_extensions(P):
    rel = rel_of(P)
    out = []
    for perm in itertools.permutations(range(P.n)):
        pos = {x: i for i, x in enumerate(perm)}
        if all(pos[a] < pos[b] for a, b in rel):
            out.append(perm)
    return out


def naive_heights(P):
    """Longest chain below each element by memoised recursion over pairs."""
    rel = rel_of(P)
    memo = {}

    def h(x):
        if x not in memo:
            memo[x] = max([h(y) + 1 for y in range(P.n) if (y, x) in rel], default=0)
        return memo[x]

    return [h(x) for x in range(P.n)]


def le2(N):
    """Window of the order n < m iff n + 2 <= m."""
    return FinitePoset.from_edges(N, [(i, j) for i in range(N) for j in range(i + 2, N)])


def two_chain_q(a=6, b=64):
    """Chain A of a, chain B of b, a_i below b_j iff j >= 2^i."""
    pairs = [(i, i + 1) for i in range(a - 1)]
    pairs += [(a + j, a + j + 1) for j in range(b - 1)]
    pairs += [(i, a + j) for i in range(a) for j in range(b) if j >= 2 ** i]
    return FinitePoset.from_edges(a + b, pairs)


@pytest.fixture
def rng():
    return random.Random(20240601)


@pytest.fixture
def two_plus_two():
    return FinitePoset.from_edges(4, [(0, 1), (2, 3)])


@pytest.fixture
def three_plus_one():
    return FinitePoset.from_edges(4, [(0, 1), (1, 2)])

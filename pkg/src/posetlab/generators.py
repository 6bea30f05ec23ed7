"""Seeded instance generators used by the tests and the CLI."""
from __future__ import annotations

import itertools
import random

from .poset import FinitePoset, intersect_orders
from .recognition import IntervalAssignment


def random_order(n: int, rng: random.Random, density: float | None = None) -> FinitePoset:
    """Closure of a random DAG on a shuffled labelling."""
    p = rng.random() if density is None else density
    perm = list(range(n))
    rng.shuffle(perm)
    pairs = [(perm[i], perm[j]) for i in range(n) for j in range(i + 1, n) if rng.random() < p]
    return FinitePoset.from_edges(n, pairs)


def random_interval_order(n: int, rng: random.Random, span: int = 12) -> FinitePoset:
    """Order of n random closed intervals with integer ends in [0, span]."""
    iv = []
    for _ in range(n):
        a, b = sorted((rng.randint(0, span), rng.randint(0, span)))
        iv.append((a, b))
    return IntervalAssignment(tuple(iv)).order()


def random_unit_interval_order(n: int, rng: random.Random, length: float = 1.0) -> FinitePoset:
    """Semiorder from unit intervals with random left ends."""
    lefts = [rng.uniform(0, n / 2) for _ in range(n)]
    up = [sum(1 << y for y in range(n) if lefts[x] + length < lefts[y]) for x in range(n)]
    return FinitePoset(n, up)


def all_strict_orders(n: int) -> list[FinitePoset]:
    """Every strict order on range(n), deduplicated.

    Closes every DAG whose arcs go up in index order, then relabels each
    result by every permutation.
    """
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    natural = set()
    for sel in range(1 << len(slots)):
        pairs = [slots[k] for k in range(len(slots)) if sel >> k & 1]
        natural.add(FinitePoset.from_edges(n, pairs))
    out = set()
    for P in natural:
        for perm in itertools.permutations(range(n)):
            up = [0] * n
            for i in range(n):
                row = 0
                r = P.up[i]
                j = 0
                while r:
                    if r & 1:
                        row |= 1 << perm[j]
                    r >>= 1
                    j += 1
                up[perm[i]] = row
            out.add(FinitePoset(n, up))
    return sorted(out, key=lambda P: (P.pair_count(), P.up))


def bounded_displacement_order(N: int, d: int, rng: random.Random) -> list[int]:
    """A permutation of range(N) where every element moves at most d places.

    Sort by key i + U{0..d}, ties broken by index.
    """
    keys = [(i + rng.randint(0, d), i) for i in range(N)]
    keys.sort()
    return [i for _, i in keys]


def displacement_intersection(N: int, k: int, d: int, rng: random.Random):
    """Intersection of k bounded-displacement linear orders; returns (poset, orders)."""
    seqs = [bounded_displacement_order(N, d, rng) for _ in range(k)]
    P = intersect_orders([FinitePoset.from_linear_order(s) for s in seqs])
    return P, seqs

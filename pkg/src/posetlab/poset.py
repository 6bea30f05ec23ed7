"""Finite strict orders on {0..n-1}.

The relation is stored as two tuples of Python integers used as bit rows:
``up[i]`` has bit j set iff i < j, ``down[j]`` has bit i set iff i < j.
All set-valued results use the same bitmask convention internally and are
converted to frozensets at the public surface.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    ArityMismatch,
    CycleDetected,
    EmptyBlock,
    IndexOutOfRange,
    NotTransitive,
    PatternTooLarge,
    SearchBoundExceeded,
    SizeMismatch,
    TooLarge,
)

MAX_ELEMENTS = 4096
DEFAULT_EXTENSION_CAP = 10**6
PATTERN_BOUND = 8
REALIZER_MAX_N = 10
REALIZER_MAX_K = 3


def bits(mask: int) -> Iterator[int]:
    """Indices of set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def _check_size(n: int) -> None:
    if n < 0:
        raise IndexOutOfRange(f"negative element count {n}")
    if n > MAX_ELEMENTS:
        raise TooLarge(f"{n} elements exceeds the limit of {MAX_ELEMENTS}")


class FinitePoset:
    """Immutable strict order on ``range(n)``."""

    __slots__ = ("n", "up", "down", "_hash")

    def __init__(self, n: int, up: Sequence[int], down: Sequence[int] | None = None):
        # trusted constructor: callers guarantee a closed strict order
        self.n = n
        self.up = tuple(up)
        if down is None and n > 256:
            down = matrix_to_rows(rows_to_matrix(self.up, n).T)
        if down is None:
            dn = [0] * n
            for i, row in enumerate(self.up):
                bit = 1 << i
                for j in bits(row):
                    dn[j] |= bit
            down = dn
        self.down = tuple(down)
        self._hash = None

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]], closed: bool = False) -> "FinitePoset":
        """Strict order generated by ``pairs`` (i, j) meaning i < j.

        With ``closed=True`` the pairs must already be transitive; this is
        verified rather than trusted.
        """
        _check_size(n)
        succ = [0] * n
        for pair in pairs:
            i, j = int(pair[0]), int(pair[1])
            if not (0 <= i < n and 0 <= j < n):
                raise IndexOutOfRange(f"pair ({i}, {j}) outside 0..{n - 1}")
            if i == j:
                raise CycleDetected(f"pair ({i}, {i}) makes {i} < {i}")
            succ[i] |= 1 << j
        order = _topological_order(n, succ)
        if closed:
            P = cls(n, succ)
            bad = P.transitivity_violation()
            if bad is not None:
                raise NotTransitive(f"closed input is not transitive: {bad}")
            return P
        up = list(succ)
        for i in reversed(order):
            row = succ[i]
            acc = row
            for j in bits(row):
                acc |= up[j]
            up[i] = acc
        return cls(n, up)

    @classmethod
    def from_rows(cls, n: int, up: Sequence[int], check: bool = True) -> "FinitePoset":
        """Build from ready-made up-rows, verifying the strict-order axioms."""
        _check_size(n)
        if len(up) != n:
            raise SizeMismatch(f"expected {n} rows, got {len(up)}")
        full = (1 << n) - 1
        for i, row in enumerate(up):
            if row & ~full:
                raise IndexOutOfRange(f"row {i} has bits outside 0..{n - 1}")
            if row >> i & 1:
                raise CycleDetected(f"{i} < {i}")
        P = cls(n, up)
        if check:
            bad = P.transitivity_violation()
            if bad is not None:
                raise NotTransitive(f"rows are not transitive: {bad}")
            for i in range(n):
                if P.up[i] & P.down[i]:
                    j = next(bits(P.up[i] & P.down[i]))
                    raise CycleDetected(f"{i} < {j} and {j} < {i}")
        return P

    @classmethod
    def chain(cls, n: int) -> "FinitePoset":
        full = (1 << n) - 1
        return cls(n, [full & ~((1 << (i + 1)) - 1) for i in range(n)])

    @classmethod
    def antichain(cls, n: int) -> "FinitePoset":
        return cls(n, [0] * n)

    @classmethod
    def from_linear_order(cls, sequence: Sequence[int]) -> "FinitePoset":
        """Linear order listing the elements of ``range(len(sequence))`` bottom to top."""
        n = len(sequence)
        if sorted(sequence) != list(range(n)):
            raise IndexOutOfRange("sequence is not a permutation of 0..n-1")
        up = [0] * n
        above = 0
        for e in reversed(sequence):
            up[e] = above
            above |= 1 << e
        return cls(n, up)

    # -- basic queries ----------------------------------------------------
    def lt(self, i: int, j: int) -> bool:
        return bool(self.up[i] >> j & 1)

    def le(self, i: int, j: int) -> bool:
        return i == j or self.lt(i, j)

    def comparable(self, i: int, j: int) -> bool:
        return i == j or bool((self.up[i] | self.down[i]) >> j & 1)

    def incomparable_row(self, i: int) -> int:
        return ((1 << self.n) - 1) & ~(self.up[i] | self.down[i] | (1 << i))

    def pairs(self) -> list[tuple[int, int]]:
        return [(i, j) for i in range(self.n) for j in bits(self.up[i])]

    def pair_count(self) -> int:
        return sum(row.bit_count() for row in self.up)

    def minimal(self, within: int | None = None) -> int:
        """Mask of minimal elements of the sub-poset induced on ``within``."""
        within = (1 << self.n) - 1 if within is None else within
        return mask_of(i for i in bits(within) if not self.down[i] & within)

    def maximal(self, within: int | None = None) -> int:
        within = (1 << self.n) - 1 if within is None else within
        return mask_of(i for i in bits(within) if not self.up[i] & within)

    def transitivity_violation(self) -> tuple[int, int, int] | None:
        """First triple (i, j, k) with i<j<k but not i<k, or None."""
        if self.n > 256:
            return _transitivity_violation_dense(self)
        for i in range(self.n):
            row = self.up[i]
            for j in bits(row):
                extra = self.up[j] & ~row
                if extra:
                    return (i, j, next(bits(extra)))
        return None

    def is_chain(self) -> bool:
        return all(self.incomparable_row(i) == 0 for i in range(self.n))

    def induced(self, elements: Iterable[int]) -> "FinitePoset":
        """Sub-poset on ``elements`` renumbered 0..k-1 in ascending order."""
        elems = sorted(set(elements))
        pos = {e: k for k, e in enumerate(elems)}
        up = []
        for e in elems:
            up.append(mask_of(pos[f] for f in bits(self.up[e]) if f in pos))
        return FinitePoset(len(elems), up)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FinitePoset):
            return NotImplemented
        return self.n == other.n and self.up == other.up

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.up))
        return self._hash

    def __len__(self) -> int:
        return self.n

    def __repr__(self) -> str:
        return f"FinitePoset({self.n}, {self.pairs()})"

    def to_dict(self) -> dict:
        return {"n": self.n, "pairs": [list(p) for p in self.pairs()], "closed": True}


def rows_to_matrix(rows: Sequence[int], n: int):
    """Dense boolean matrix M with M[i, j] = bit j of rows[i]."""
    import numpy as np

    nbytes = (n + 7) // 8
    buf = b"".join(r.to_bytes(nbytes, "little") for r in rows)
    arr = np.frombuffer(buf, dtype=np.uint8).reshape(len(rows), nbytes)
    return np.unpackbits(arr, axis=1, bitorder="little")[:, :n].astype(bool)


def matrix_to_rows(M) -> list[int]:
    """Inverse of rows_to_matrix."""
    import numpy as np

    packed = np.packbits(np.ascontiguousarray(M, dtype=bool), axis=1, bitorder="little")
    return [int.from_bytes(r.tobytes(), "little") for r in packed]


def _transitivity_violation_dense(P: "FinitePoset"):
    import numpy as np

    R = rows_to_matrix(P.up, P.n)
    F = R.astype(np.float32)
    two_step = (F @ F) > 0.5
    bad = two_step & ~R
    if not bad.any():
        return None
    i, k = (int(v) for v in np.argwhere(bad)[0])
    j = next(bits(P.up[i] & P.down[k]))
    return (i, j, k)


def _topological_order(n: int, succ: Sequence[int]) -> list[int]:
    """Kahn's algorithm, smallest index first; raises CycleDetected."""
    indeg = [0] * n
    for i in range(n):
        for j in bits(succ[i]):
            indeg[j] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    heapq.heapify(ready)
    order = []
    while ready:
        i = heapq.heappop(ready)
        order.append(i)
        for j in bits(succ[i]):
            indeg[j] -= 1
            if indeg[j] == 0:
                heapq.heappush(ready, j)
    if len(order) != n:
        stuck = min(i for i in range(n) if indeg[i] > 0)
        raise CycleDetected(f"the pairs contain a cycle through {stuck}")
    return order


def from_edges(n: int, pairs: Iterable[Sequence[int]], closed: bool = False) -> FinitePoset:
    return FinitePoset.from_edges(n, pairs, closed)


def transitive_reduction(P: FinitePoset) -> list[tuple[int, int]]:
    """Cover pairs (Hasse diagram edges), sorted."""
    covers = []
    for i in range(P.n):
        row = P.up[i]
        reach = 0
        for j in bits(row):
            reach |= P.up[j]
        covers.extend((i, j) for j in bits(row & ~reach))
    return covers


def _as_mask(P: FinitePoset, A) -> int:
    if isinstance(A, int):
        return A
    m = 0
    for a in A:
        if not 0 <= a < P.n:
            raise IndexOutOfRange(f"element {a} outside 0..{P.n - 1}")
        m |= 1 << a
    return m


def down_set(P: FinitePoset, A: Iterable[int]) -> frozenset[int]:
    """The initial segment generated by A."""
    m = _as_mask(P, A)
    acc = m
    for a in bits(m):
        acc |= P.down[a]
    return frozenset(bits(acc))


def up_set(P: FinitePoset, A: Iterable[int]) -> frozenset[int]:
    """The final segment generated by A."""
    m = _as_mask(P, A)
    acc = m
    for a in bits(m):
        acc |= P.up[a]
    return frozenset(bits(acc))


def is_initial_segment(P: FinitePoset, S: Iterable[int]) -> bool:
    m = _as_mask(P, S)
    return all(P.down[s] & ~m == 0 for s in bits(m))


def is_final_segment(P: FinitePoset, S: Iterable[int]) -> bool:
    m = _as_mask(P, S)
    return all(P.up[s] & ~m == 0 for s in bits(m))


def dual(P: FinitePoset) -> FinitePoset:
    return FinitePoset(P.n, P.down, P.up)


def strengthens(P: FinitePoset, Q: FinitePoset) -> bool:
    """True iff the order of P contains the order of Q."""
    if P.n != Q.n:
        raise SizeMismatch(f"{P.n} vs {Q.n} elements")
    return all(q & ~p == 0 for p, q in zip(P.up, Q.up))


def direct_sum(*posets: FinitePoset) -> FinitePoset:
    """Disjoint union, no comparabilities across summands."""
    up = []
    offset = 0
    for Q in posets:
        up.extend(row << offset for row in Q.up)
        offset += Q.n
    return FinitePoset(offset, up)


def lexicographic_sum(index: FinitePoset, blocks: Sequence[FinitePoset]) -> FinitePoset:
    """Replace each index element a by ``blocks[a]``; numbering is block-major."""
    if len(blocks) != index.n:
        raise ArityMismatch(f"{len(blocks)} blocks for an index of {index.n} elements")
    offsets = []
    total = 0
    for a, B in enumerate(blocks):
        if B.n == 0:
            raise EmptyBlock(f"block {a} is empty")
        offsets.append(total)
        total += B.n
    _check_size(total)
    block_mask = [((1 << B.n) - 1) << offsets[a] for a, B in enumerate(blocks)]
    up = []
    for a, B in enumerate(blocks):
        above = 0
        for b in bits(index.up[a]):
            above |= block_mask[b]
        up.extend((row << offsets[a]) | above for row in B.up)
    return FinitePoset(total, up)


# -- linear extensions ------------------------------------------------------
@dataclass
class LinearExtensions:
    """Lazy, lexicographically ordered linear extensions of a poset.

    Iteration stops after ``cap`` permutations. ``count`` is exact unless
    ``truncated`` is set, in which case it equals ``cap``.
    """

    poset: FinitePoset
    cap: int = DEFAULT_EXTENSION_CAP

    def __post_init__(self):
        if self.cap < 1:
            raise ValueError("cap must be at least 1")
        self._count = None

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        P = self.poset
        n = P.n
        emitted = 0
        seq: list[int] = []

        def rec(placed: int):
            nonlocal emitted
            if len(seq) == n:
                emitted += 1
                yield tuple(seq)
                return
            avail = [i for i in range(n) if not placed >> i & 1 and P.down[i] & ~placed == 0]
            for i in avail:
                if emitted >= self.cap:
                    return
                seq.append(i)
                yield from rec(placed | 1 << i)
                seq.pop()

        yield from rec(0)

    def _compute_count(self) -> tuple[int, bool]:
        # DP over down-closed sets; states are initial segments already placed
        P = self.poset
        n = P.n
        full = (1 << n) - 1
        memo: dict[int, int] = {full: 1}
        budget = [self.cap]

        def ways(placed: int) -> int:
            got = memo.get(placed)
            if got is not None:
                return got
            budget[0] -= 1
            if budget[0] < 0:
                raise _Truncated
            total = 0
            rest = full & ~placed
            for i in bits(rest):
                if P.down[i] & ~placed == 0:
                    total += ways(placed | 1 << i)
            memo[placed] = total
            return total

        try:
            c = ways(0)
        except _Truncated:
            return self.cap, True
        if c > self.cap:
            return self.cap, True
        return c, False

    @property
    def count(self) -> int:
        if self._count is None:
            self._count = self._compute_count()
        return self._count[0]

    @property
    def truncated(self) -> bool:
        if self._count is None:
            self._count = self._compute_count()
        return self._count[1]


class _Truncated(Exception):
    pass


def linear_extensions(P: FinitePoset, cap: int = DEFAULT_EXTENSION_CAP) -> LinearExtensions:
    return LinearExtensions(P, cap)


def first_linear_extension(P: FinitePoset) -> tuple[int, ...]:
    order = _topological_order(P.n, P.up)
    return tuple(order)


# -- pattern embedding -------------------------------------------------------
def embeds_pattern(host: FinitePoset, pattern: FinitePoset, bound: int = PATTERN_BOUND) -> tuple[int, ...] | None:
    """First induced embedding of ``pattern`` into ``host`` in lexicographic
    order of the image tuple, or None."""
    k = pattern.n
    if k > bound:
        raise PatternTooLarge(f"pattern has {k} elements, bound is {bound}")
    if k == 0:
        return ()
    incomp = [host.incomparable_row(i) for i in range(host.n)]
    # existence first, placing incomparability constraints early: in
    # near-linear hosts those rows are tiny, so failing searches end fast
    if _pattern_search(host, pattern, _incomparable_first(pattern), incomp) is None:
        return None
    return _pattern_search(host, pattern, list(range(k)), incomp)


def _incomparable_first(pattern: FinitePoset) -> list[int]:
    order = [0]
    rest = set(range(1, pattern.n))
    while rest:
        nxt = max(rest, key=lambda q: (sum(not pattern.comparable(p, q) for p in order), -q))
        order.append(nxt)
        rest.discard(nxt)
    return order


def _pattern_search(host, pattern, order, incomp):
    k = len(order)
    full = (1 << host.n) - 1
    image = [0] * pattern.n

    def rec(d: int, used: int) -> bool:
        if d == k:
            return True
        q = order[d]
        cand = full & ~used
        for p in order[:d]:
            h = image[p]
            if pattern.lt(p, q):
                cand &= host.up[h]
            elif pattern.lt(q, p):
                cand &= host.down[h]
            else:
                cand &= incomp[h]
            if not cand:
                return False
        for c in bits(cand):
            image[q] = c
            if rec(d + 1, used | 1 << c):
                return True
        return False

    return tuple(image) if rec(0, 0) else None


def is_embedding(host: FinitePoset, pattern: FinitePoset, mapping: Sequence[int]) -> bool:
    if len(mapping) != pattern.n or len(set(mapping)) != len(mapping):
        return False
    if any(not 0 <= m < host.n for m in mapping):
        return False
    for x in range(pattern.n):
        for y in range(pattern.n):
            if x != y and pattern.lt(x, y) != host.lt(mapping[x], mapping[y]):
                return False
    return True


# -- intersections and realizers ---------------------------------------------
def intersect_orders(orders: Sequence[FinitePoset]) -> FinitePoset:
    if not orders:
        raise SizeMismatch("need at least one order")
    n = orders[0].n
    for Q in orders:
        if Q.n != n:
            raise SizeMismatch(f"{Q.n} vs {n} elements")
    up = list(orders[0].up)
    for Q in orders[1:]:
        up = [a & b for a, b in zip(up, Q.up)]
    return FinitePoset(n, up)


def _close_with(up: list[int], down: list[int], i: int, j: int) -> bool:
    """Add i<j to a closed order in place; False if it would create a cycle."""
    if up[j] >> i & 1 or i == j:
        return False
    if up[i] >> j & 1:
        return True
    below = down[i] | 1 << i
    above = up[j] | 1 << j
    for b in bits(below):
        up[b] |= above
    for a in bits(above):
        down[a] |= below
    return True


def realizer_search(P: FinitePoset, k: int) -> list[tuple[int, ...]] | None:
    """k linear extensions whose intersection is exactly P, or None.

    Exhaustive backtracking over the incomparable pairs: each unordered pair
    must be ordered one way in some extension and the other way in another.
    """
    n = P.n
    if n > REALIZER_MAX_N or k > REALIZER_MAX_K:
        raise SearchBoundExceeded(f"realizer search limited to n<={REALIZER_MAX_N}, k<={REALIZER_MAX_K}")
    if k < 1:
        raise SearchBoundExceeded("k must be positive")
    todo = [(x, y) for x in range(n) for y in range(x + 1, n) if not P.comparable(x, y)]
    if not todo:
        ext = first_linear_extension(P)
        return [ext] * k
    if k == 1:
        return None

    def linearize(up_rows):
        return first_linear_extension(FinitePoset(n, up_rows))

    ups = [list(P.up) for _ in range(k)]
    downs = [list(P.down) for _ in range(k)]

    def satisfied(x, y):
        fwd = any(ups[i][x] >> y & 1 for i in range(k))
        bwd = any(ups[i][y] >> x & 1 for i in range(k))
        return fwd, bwd

    def rec() -> bool:
        # pick the pending pair with the fewest options
        best = None
        best_opts = None
        for x, y in todo:
            fwd, bwd = satisfied(x, y)
            if fwd and bwd:
                continue
            opts = []
            for i in range(k):
                for j in range(k):
                    if i == j:
                        continue
                    ok_i = fwd or not ups[i][y] >> x & 1
                    ok_j = bwd or not ups[j][x] >> y & 1
                    if ok_i and ok_j:
                        opts.append((i, j))
            if not opts:
                return False
            if best is None or len(opts) < len(best_opts):
                best, best_opts = (x, y), opts
                if len(opts) == 1:
                    break
        if best is None:
            return True
        x, y = best
        fwd, bwd = satisfied(x, y)
        seen = set()
        for i, j in best_opts:
            # symmetry: untouched orders are interchangeable
            key = (i if fwd is False else -1, j if bwd is False else -1)
            if key in seen:
                continue
            seen.add(key)
            saved = [(list(u), list(d)) for u, d in zip(ups, downs)]
            ok = True
            if not fwd:
                ok = _close_with(ups[i], downs[i], x, y)
            if ok and not bwd:
                ok = _close_with(ups[j], downs[j], y, x)
            if ok and rec():
                return True
            for t, (u, d) in enumerate(saved):
                ups[t], downs[t] = u, d
        return False

    if not rec():
        return None
    return [linearize(ups[i]) for i in range(k)]


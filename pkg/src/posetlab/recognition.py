"""Interval orders, semiorders and threshold orders.

Every recognizer runs two independent routes and insists they agree:

* forbidden patterns: search for an induced 2+2 (and 3+1 for semiorders);
* quasi-orders: x <=pred y iff every strict predecessor of x is one of y,
  x <=succ y iff every strict successor of y is one of x. P is an interval
  order iff <=pred is total, a semiorder iff <=pred ∩ <=succ is total.
"""
from __future__ import annotations

from dataclasses import dataclass

from .certificate import FAIL, PASS, Certificate
from .errors import NotIntervalOrder, NotSemiorder, RouteDisagreement
from .poset import FinitePoset, bits, direct_sum, embeds_pattern

TWO_PLUS_TWO = direct_sum(FinitePoset.chain(2), FinitePoset.chain(2))
THREE_PLUS_ONE = direct_sum(FinitePoset.chain(3), FinitePoset.chain(1))


@dataclass(frozen=True)
class QuasiOrder:
    """Reflexive, transitive relation; ``leq[x]`` is the bit row {y : x <= y}."""

    n: int
    leq: tuple[int, ...]

    def le(self, x: int, y: int) -> bool:
        return bool(self.leq[x] >> y & 1)

    def lt(self, x: int, y: int) -> bool:
        return self.le(x, y) and not self.le(y, x)

    def is_total(self) -> bool:
        return self.incomparable_pair() is None

    def incomparable_pair(self) -> tuple[int, int] | None:
        for x in range(self.n):
            for y in range(x + 1, self.n):
                if not (self.le(x, y) or self.le(y, x)):
                    return (x, y)
        return None

    def is_reflexive(self) -> bool:
        return all(self.leq[x] >> x & 1 for x in range(self.n))

    def is_transitive(self) -> bool:
        for x in range(self.n):
            for y in bits(self.leq[x]):
                if self.leq[y] & ~self.leq[x]:
                    return False
        return True

    def __and__(self, other: "QuasiOrder") -> "QuasiOrder":
        return QuasiOrder(self.n, tuple(a & b for a, b in zip(self.leq, other.leq)))

    def pairs(self) -> list[tuple[int, int]]:
        return [(x, y) for x in range(self.n) for y in bits(self.leq[x])]


def pred_quasiorder(P: FinitePoset) -> QuasiOrder:
    """x <= y iff every z < x also satisfies z < y."""
    n = P.n
    leq = []
    for x in range(n):
        dx = P.down[x]
        leq.append(sum(1 << y for y in range(n) if dx & ~P.down[y] == 0))
    return QuasiOrder(n, tuple(leq))


def succ_quasiorder(P: FinitePoset) -> QuasiOrder:
    """x <= y iff every z > y also satisfies z > x."""
    n = P.n
    leq = []
    for x in range(n):
        ux = P.up[x]
        leq.append(sum(1 << y for y in range(n) if P.up[y] & ~ux == 0))
    return QuasiOrder(n, tuple(leq))


def _pattern_route(P: FinitePoset, semi: bool):
    emb = embeds_pattern(P, TWO_PLUS_TWO)
    if emb is not None:
        return "2+2", emb
    if semi:
        emb = embeds_pattern(P, THREE_PLUS_ONE)
        if emb is not None:
            return "3+1", emb
    return None, None


def is_interval_order(P: FinitePoset) -> Certificate:
    pattern, emb = _pattern_route(P, semi=False)
    pred = pred_quasiorder(P)
    total = pred.is_total()
    if total != (pattern is None):
        raise RouteDisagreement(f"pattern route {pattern}, pred totality {total} on {P!r}")
    if pattern is not None:
        a, b, c, d = emb
        return Certificate(
            FAIL,
            "forbidden-pattern+pred-quasiorder",
            {"pattern": "2+2", "embedding": list(emb), "pairs": [[a, b], [c, d]],
             "pred_incomparable": list(pred.incomparable_pair())},
        )
    return Certificate(PASS, "forbidden-pattern+pred-quasiorder", {"pred": pred.pairs()})


def is_semiorder(P: FinitePoset) -> Certificate:
    pattern, emb = _pattern_route(P, semi=True)
    both = pred_quasiorder(P) & succ_quasiorder(P)
    total = both.is_total()
    if total != (pattern is None):
        raise RouteDisagreement(f"pattern route {pattern}, pred∩succ totality {total} on {P!r}")
    if pattern is not None:
        if pattern == "2+2":
            pairs = [[emb[0], emb[1]], [emb[2], emb[3]]]
        else:
            pairs = [[emb[0], emb[1]], [emb[1], emb[2]]]
        return Certificate(
            FAIL,
            "forbidden-pattern+pred-succ-quasiorder",
            {"pattern": pattern, "embedding": list(emb), "pairs": pairs,
             "quasiorder_incomparable": list(both.incomparable_pair())},
        )
    return Certificate(PASS, "forbidden-pattern+pred-succ-quasiorder", {"pred_succ": both.pairs()})


def is_threshold(P: FinitePoset) -> bool:
    pred = pred_quasiorder(P)
    succ = succ_quasiorder(P)
    return pred.is_total() and succ.is_total() and pred.leq == succ.leq


# -- interval representation --------------------------------------------------
@dataclass(frozen=True)
class IntervalAssignment:
    intervals: tuple[tuple[int, int], ...]

    def order(self) -> FinitePoset:
        n = len(self.intervals)
        up = []
        for x in range(n):
            rx = self.intervals[x][1]
            up.append(sum(1 << y for y in range(n) if rx < self.intervals[y][0]))
        return FinitePoset(n, up)


def interval_representation(P: FinitePoset) -> IntervalAssignment:
    """Intervals on the chain 0..2n-1.

    Left end is twice the rank of the predecessor set among distinct
    predecessor sets (a chain under inclusion for interval orders); right end
    is twice the rank of the successor set among distinct successor sets,
    ranked by decreasing size, plus one.
    """
    if not is_interval_order(P):
        raise NotIntervalOrder("poset embeds 2+2")
    n = P.n
    downs = sorted({P.down[x] for x in range(n)}, key=lambda m: m.bit_count())
    ups = sorted({P.up[x] for x in range(n)}, key=lambda m: -m.bit_count())
    lrank = {m: i for i, m in enumerate(downs)}
    rrank = {m: i for i, m in enumerate(ups)}
    intervals = tuple((2 * lrank[P.down[x]], 2 * rrank[P.up[x]] + 1) for x in range(n))
    return IntervalAssignment(intervals)


# -- Psi representation ----------------------------------------------------------
@dataclass(frozen=True)
class PsiRepresentation:
    """h maps elements to positions of the chain K (K lists elements bottom to
    top, h(x) is the position of x); psi[k] is a bit mask of K-positions."""

    h: tuple[int, ...]
    K: tuple[int, ...]
    psi: tuple[int, ...]
    order_reversing: bool

    def reconstruct(self) -> FinitePoset:
        n = len(self.h)
        up = []
        for x in range(n):
            s = self.psi[self.h[x]]
            up.append(sum(1 << y for y in range(n) if s >> self.h[y] & 1))
        return FinitePoset(n, up)

    def check_conditions(self) -> bool:
        """k not in psi(k), each psi(k) a final segment of K, and when flagged,
        k <= k' implies psi(k') ⊆ psi(k)."""
        m = len(self.K)
        for k, s in enumerate(self.psi):
            if s >> k & 1:
                return False
            if s and s != ((1 << m) - 1) & ~((1 << (s & -s).bit_length() - 1) - 1):
                return False
        if self.order_reversing:
            for k in range(m - 1):
                if self.psi[k + 1] & ~self.psi[k]:
                    return False
        return True


def psi_representation(P: FinitePoset, require_order_reversing: bool = False) -> PsiRepresentation:
    """K is a linear order contained in <=pred (in <=pred ∩ <=succ for a
    semiorder), h is the identity onto K, psi(h(x)) = {h(y) : x < y}."""
    if not is_interval_order(P):
        raise NotIntervalOrder("poset embeds 2+2")
    semi = bool(is_semiorder(P))
    if require_order_reversing and not semi:
        raise NotSemiorder("an order-reversing psi needs a semiorder")
    n = P.n
    if semi:
        key = lambda x: (P.down[x].bit_count(), -P.up[x].bit_count(), x)
    else:
        key = lambda x: (P.down[x].bit_count(), x)
    K = tuple(sorted(range(n), key=key))
    h = [0] * n
    for pos, x in enumerate(K):
        h[x] = pos
    psi = [0] * n
    for x in range(n):
        psi[h[x]] = sum(1 << h[y] for y in bits(P.up[x]))
    return PsiRepresentation(tuple(h), K, tuple(psi), semi)


def psi_relation(h, psi) -> list[int]:
    """Up-rows of x <_psi y iff h(y) in psi(h(x)), for arbitrary h and psi."""
    n = len(h)
    return [sum(1 << y for y in range(n) if psi[h[x]] >> h[y] & 1) for x in range(n)]

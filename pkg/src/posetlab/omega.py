"""Countable posets on the naturals given by finite presentations.

Every presentation here only puts a number below larger numbers, so the
predecessors of x all live in [0, x) and any window [0, N) computes them
exactly. ``bound(x)`` is a presentation-level promise: every m > bound(x) is
above x, hence P minus the up-set of x sits inside [0, bound(x)].
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .certificate import FAIL, PASS, VERIFIED_UP_TO, Certificate
from .errors import (ContainmentViolated, MalformedPresentation, NotPureWitness,
                     NotStrictOrder, PosetLabError)
from .poset import FinitePoset, _close_with, bits
from .recognition import is_semiorder
from .structure import levels

INF = math.inf


# -- rules ---------------------------------------------------------------------
@dataclass(frozen=True)
class JacoRule:
    """a_n = prefix[n] for n < len(prefix), then the tail.

    tail is ("const", c), ("affine", s, t) meaning a_n = s*n + t, or
    ("callable", f). A prefix entry may be INF: that position is never
    dominated (only meaningful for lexicographic-sum index rules).
    """

    prefix: tuple = ()
    tail: tuple = ("const", 1)

    def __post_init__(self):
        object.__setattr__(self, "prefix", tuple(self.prefix))
        object.__setattr__(self, "tail", tuple(self.tail))
        kind = self.tail[0]
        if kind == "const" and len(self.tail) == 2:
            return
        if kind == "affine" and len(self.tail) == 3 and self.tail[1] >= 0:
            return
        if kind == "callable" and len(self.tail) == 2 and callable(self.tail[1]):
            return
        raise MalformedPresentation(f"bad tail {self.tail!r}")

    @classmethod
    def const(cls, c, prefix=()):
        return cls(tuple(prefix), ("const", c))

    @classmethod
    def affine(cls, s, t, prefix=()):
        return cls(tuple(prefix), ("affine", s, t))

    def __call__(self, n: int):
        if n < len(self.prefix):
            return self.prefix[n]
        kind = self.tail[0]
        if kind == "const":
            return self.tail[1]
        if kind == "affine":
            return self.tail[1] * n + self.tail[2]
        return self.tail[1](n)

    def threshold(self, n: int):
        """t(n) = a_n + n: n is below exactly the m > t(n)."""
        a = self(n)
        return INF if a == INF else a + n

    @property
    def closed_form(self) -> bool:
        return self.tail[0] != "callable" and INF not in self.prefix

    def validate(self, minimum: int = 1, monotone: bool = True, allow_inf: bool = False) -> None:
        if not allow_inf and INF in self.prefix:
            raise MalformedPresentation("infinite entries are not allowed here")
        fin = [a for a in self.prefix if a != INF]
        if any(not isinstance(a, int) or a < minimum for a in fin):
            raise MalformedPresentation(f"prefix entries must be integers >= {minimum}")
        kind = self.tail[0]
        if kind == "const" and self.tail[1] < minimum:
            raise MalformedPresentation(f"tail constant must be >= {minimum}")
        if kind == "affine":
            s, t = self.tail[1], self.tail[2]
            if s < 0 or t < minimum or s * len(self.prefix) + t < minimum:
                raise MalformedPresentation("affine tail must be nonnegative slope, positive values")
        if monotone:
            seq = [self(i) for i in range(len(self.prefix) + 2)]
            for i in range(len(seq) - 1):
                if seq[i] > seq[i + 1]:
                    raise MalformedPresentation(f"a_{i}={seq[i]} > a_{i + 1}={seq[i + 1]}")

    def to_doc(self) -> dict:
        if self.tail[0] == "callable":
            raise MalformedPresentation("callable tails have no document form")
        prefix = ["inf" if a == INF else a for a in self.prefix]
        if self.tail[0] == "const":
            tail = {"const": self.tail[1]}
        else:
            tail = {"affine": [self.tail[1], self.tail[2]]}
        return {"prefix": prefix, "tail": tail}


# -- presentations ---------------------------------------------------------------
class OmegaPresentation:
    kind = "abstract"

    def lt(self, n: int, m: int) -> bool:
        raise NotImplementedError

    def bound(self, x: int):
        """Largest element possibly not above x, or None when unknown/unbounded."""
        return None

    def analytic(self) -> bool:
        """True when every bound(x) is finite by a closed-form argument."""
        return False

    def up_rows(self, N: int) -> list[int]:
        return [sum(1 << m for m in range(N) if m != n and self.lt(n, m)) for n in range(N)]

    def comparability(self, n: int, m: int) -> str:
        if n == m:
            return "equal"
        if self.lt(n, m):
            return "lt"
        if self.lt(m, n):
            return "gt"
        return "incomparable"


class JacoComplement(OmegaPresentation):
    """n < m iff m > a_n + n (the complement of the Jaco graph arcs)."""

    kind = "JacoComplement"

    def __init__(self, rule: JacoRule, validate: bool = True):
        if validate:
            rule.validate(minimum=1, monotone=True)
        self.rule = rule

    def lt(self, n, m):
        return n < m and m > self.rule.threshold(n)

    def bound(self, x):
        t = self.rule.threshold(x)
        return None if t == INF else t

    def analytic(self):
        return self.rule.closed_form

    def up_rows(self, N):
        full = (1 << N) - 1
        out = []
        for n in range(N):
            t = self.rule.threshold(n)
            t = max(t, n)
            out.append(0 if t == INF or t >= N - 1 else full & ~((1 << (t + 1)) - 1))
        return out

    def to_doc(self):
        return {"kind": self.kind, **self.rule.to_doc()}

    def __repr__(self):
        return f"JacoComplement({self.rule.prefix}, {self.rule.tail})"


class LexSumOmega(OmegaPresentation):
    """Finite blocks, cycled, placed along the index order i < j iff j > a_i + i.

    Elements are numbered block-major. Index rules may use a_i = 0 (a chain
    of blocks) and INF (a block nothing is above).
    """

    kind = "LexSumOmega"

    def __init__(self, blocks, index: JacoRule, validate: bool = True):
        self.blocks = tuple(blocks)
        if not self.blocks or any(b.n == 0 for b in self.blocks):
            raise MalformedPresentation("blocks must be non-empty")
        if validate:
            index.validate(minimum=0, monotone=False, allow_inf=True)
        self.index = index
        self._sizes = [b.n for b in self.blocks]
        self._cycle = sum(self._sizes)
        starts = [0]
        for s in self._sizes:
            starts.append(starts[-1] + s)
        self._starts = starts

    def offset(self, b: int) -> int:
        q, r = divmod(b, len(self.blocks))
        return q * self._cycle + self._starts[r]

    def locate(self, x: int) -> tuple[int, int]:
        q, r = divmod(x, self._cycle)
        k = 0
        while self._starts[k + 1] <= r:
            k += 1
        return q * len(self.blocks) + k, r - self._starts[k]

    def lt(self, n, m):
        bn, pn = self.locate(n)
        bm, pm = self.locate(m)
        if bn == bm:
            return self.blocks[bn % len(self.blocks)].lt(pn, pm)
        return bm > bn and bm > self.index.threshold(bn)

    def bound(self, x):
        b, _ = self.locate(x)
        t = self.index.threshold(b)
        if t == INF:
            return None
        return self.offset(max(t, b) + 1) - 1

    def analytic(self):
        return self.index.closed_form

    def up_rows(self, N):
        full = (1 << N) - 1
        out = []
        for x in range(N):
            b, p = self.locate(x)
            blk = self.blocks[b % len(self.blocks)]
            row = blk.up[p] << self.offset(b)
            t = self.index.threshold(b)
            if t != INF:
                start = self.offset(max(t, b) + 1)
                if start < N:
                    row |= full & ~((1 << start) - 1)
            out.append(row & full)
        return out

    def to_doc(self):
        return {"kind": self.kind, "blocks": [b.to_dict() for b in self.blocks], "index": self.index.to_doc()}

    def __repr__(self):
        return f"LexSumOmega({len(self.blocks)} blocks, {self.index.prefix}, {self.index.tail})"


class Sandwich(OmegaPresentation):
    """Transitive closure of a lower presentation plus finitely many extra pairs.

    Extra pairs must point upward in the natural order, otherwise the result
    would not sit below the natural order of the naturals.
    """

    kind = "Sandwich"

    def __init__(self, lower: OmegaPresentation, extra, validate: bool = True):
        self.lower = lower
        self.extra = tuple((int(i), int(j)) for i, j in extra)
        if validate:
            for i, j in self.extra:
                if i >= j:
                    raise ContainmentViolated(f"extra pair ({i}, {j}) is not increasing", (i, j))
        self._cache = {}

    def up_rows(self, N):
        up = list(self.lower.up_rows(N))
        down = [0] * N
        for i, row in enumerate(up):
            for j in bits(row):
                down[j] |= 1 << i
        for i, j in self.extra:
            if i < N and j < N:
                if not _close_with(up, down, i, j):
                    raise MalformedPresentation(f"extra pair ({i}, {j}) creates a cycle")
        return up

    def _rows_upto(self, N):
        key = max(N, 1)
        if key not in self._cache:
            self._cache = {key: self.up_rows(key)}
        return self._cache[key]

    def lt(self, n, m):
        N = max([n, m] + [max(p) for p in self.extra]) + 1
        return bool(self._rows_upto(N)[n] >> m & 1)

    def bound(self, x):
        return self.lower.bound(x)

    def analytic(self):
        return self.lower.analytic() and all(i < j for i, j in self.extra)

    def to_doc(self):
        return {"kind": self.kind, "lower": self.lower.to_doc(), "extra": [list(p) for p in self.extra]}

    def __repr__(self):
        return f"Sandwich({self.lower!r}, {list(self.extra)})"


class CustomPresentation(OmegaPresentation):
    """Arbitrary comparability callable; nothing is trusted, nothing extends past N."""

    kind = "Custom"

    def __init__(self, lt: Callable[[int, int], bool], name: str = "custom", bound=None):
        self._lt = lt
        self.name = name
        self._bound = bound

    def lt(self, n, m):
        return bool(self._lt(n, m))

    def bound(self, x):
        return None if self._bound is None else self._bound(x)

    def __repr__(self):
        return f"CustomPresentation({self.name})"


# -- documents ---------------------------------------------------------------------
def _rule_from_doc(doc: dict) -> JacoRule:
    prefix = tuple(INF if a in ("inf", "INF", None) else int(a) for a in doc.get("prefix", []))
    tail = doc.get("tail", {"const": 1})
    if "const" in tail:
        return JacoRule(prefix, ("const", int(tail["const"])))
    if "affine" in tail:
        s, t = tail["affine"]
        return JacoRule(prefix, ("affine", int(s), int(t)))
    raise MalformedPresentation(f"unknown tail {tail!r}")


def presentation_from_doc(doc: dict):
    """Build a presentation (or a layered height document) from parsed JSON."""
    from .io import poset_from_doc
    from .ordinal import parse
    from .structure import LayeredPresentation

    kind = doc.get("kind")
    try:
        if kind == "JacoComplement":
            return JacoComplement(_rule_from_doc(doc))
        if kind == "LexSumOmega":
            blocks = [poset_from_doc(b) for b in doc["blocks"]]
            return LexSumOmega(blocks, _rule_from_doc(doc["index"]))
        if kind == "Sandwich":
            return Sandwich(presentation_from_doc(doc["lower"]), doc.get("extra", []))
        if kind == "Layered":
            return LayeredPresentation(parse(str(doc["height"])),
                                       tuple(parse(str(h)) for h in doc.get("res", [])),
                                       tuple(parse(str(h)) for h in doc.get("infinite_levels", [])))
    except (KeyError, TypeError) as e:
        raise MalformedPresentation(f"bad {kind} document: {e}") from None
    raise MalformedPresentation(f"unknown presentation kind {kind!r}")


# -- truncation and strict-order check ------------------------------------------------
def truncate(pres: OmegaPresentation, N: int) -> FinitePoset:
    if N < 1:
        raise ValueError("window must be >= 1")
    up = pres.up_rows(N)
    try:
        return FinitePoset.from_rows(N, up, check=not pres.analytic())
    except MalformedPresentation:
        raise
    except PosetLabError as e:
        raise MalformedPresentation(f"{pres!r} is not a strict order on [0, {N}): {e}") from None


def _window_scan(pres: OmegaPresentation, N: int):
    """(window poset or None, failure witness or None)."""
    if isinstance(pres, CustomPresentation):
        for n in range(N):
            if pres.lt(n, n):
                return None, {"irreflexive": [n]}
        rows = [sum(1 << m for m in range(N) if m != n and pres.lt(n, m)) for n in range(N)]
    else:
        rows = pres.up_rows(N)
        for n in range(N):
            if rows[n] >> n & 1:
                return None, {"irreflexive": [n]}
    P = FinitePoset(N, rows)
    for n in range(N):
        both = P.up[n] & P.down[n]
        if both:
            return None, {"antisymmetry": [n, next(bits(both))]}
    bad = P.transitivity_violation()
    if bad is not None:
        return None, {"triple": list(bad)}
    return P, None


def strict_order_check(pres: OmegaPresentation, N: int) -> Certificate:
    """Irreflexivity, antisymmetry and transitivity on [0, N).

    For analytic presentations the window scan is backed by the threshold
    argument: k > t(j) >= j > t(i) gives k > t(i), so the order is strict on
    all of the naturals.
    """
    P, bad = _window_scan(pres, N)
    if bad is not None:
        return Certificate(FAIL, "window-scan", bad, window=N)
    if pres.analytic():
        return Certificate(PASS, "window-scan+threshold-monotonicity",
                           {"argument": "k > t(j) >= j > t(i) implies k > t(i)"}, window=N)
    return Certificate(VERIFIED_UP_TO, "window-scan", {}, window=N)


def _require_strict(pres, N) -> FinitePoset:
    P, bad = _window_scan(pres, N)
    if bad is not None:
        raise NotStrictOrder(f"{pres!r}: {bad}")
    return P


# -- minimal type ----------------------------------------------------------------------
def minimal_type_window(P: FinitePoset, exact: int | None = None, margin: int = 2,
                        bound: Callable[[int], int] | None = None) -> dict:
    """Witness table m(n) inside a finite window.

    m(n) is the least m such that every element of height <= n is below
    every element of height >= m. Only heights below h_cut are trusted: h_cut
    is the least height of an element outside ``exact`` (all elements by
    default). n ranges over [0, h_cut - margin).

    With ``bound`` (every m > bound(x) lies above x, elements numbered along
    the naturals) n is further cut to the levels where that promise puts an
    answer below h_cut, so edge effects cannot pose as failures.
    """
    prof = levels(P)
    h = prof.heights
    full = (1 << P.n) - 1
    if exact is None:
        exact = full
    outside = [h[x] for x in bits(full & ~exact)]
    h_cut = min([prof.height] + outside)
    lv = [prof.level_mask(a) for a in range(h_cut)]
    # f(y): least height holding an element not below y
    f = {}
    for a in range(h_cut):
        for y in prof.levels[a]:
            d = P.down[y]
            b = 0
            while b < a and lv[b] & ~d == 0:
                b += 1
            f[y] = b
    # g(m) = min f(y) over y with m <= h(y) < h_cut, nondecreasing in m
    g = [0] * (h_cut + 1)
    g[h_cut] = h_cut
    for a in range(h_cut - 1, -1, -1):
        g[a] = min([g[a + 1]] + [f[y] for y in prof.levels[a]])
    limit = max(0, h_cut - margin)
    if bound is not None:
        limit = min(limit, _safe_levels(P, h, h_cut, bound))
    table = {}
    failure = None
    m = 1
    for n in range(limit):
        m = max(m, n + 1)
        while m < h_cut and g[m] <= n:
            m += 1
        if m >= h_cut:
            top = next(y for y in prof.levels[h_cut - 1] if f[y] <= n) if h_cut else None
            x = next(bits(lv[f[top]] & ~P.down[top])) if top is not None else None
            failure = {"n": n, "pair": [x, top]}
            break
        table[n] = m
    return {"table": table, "h_cut": h_cut, "failure": failure, "heights": h}


def _safe_levels(P, h, h_cut, bound) -> int:
    """Number of leading levels n whose m(n) the bound forces below h_cut."""
    top_index = {}
    for x, hx in enumerate(h):
        top_index[hx] = max(top_index.get(hx, -1), x)
    running = [0] * P.n  # running[i] = max height among elements <= i
    for x in range(P.n):
        running[x] = max(h[x], running[x - 1] if x else 0)
    X = -1
    for n in range(h_cut):
        X = max(X, top_index.get(n, -1))
        B = bound(X)
        if B + 1 >= P.n or running[B] + 1 >= h_cut:
            return n
    return h_cut


def minimal_type_certify(pres: OmegaPresentation, N: int) -> Certificate:
    """Proper initial segments finite, checked through the m(n) table.

    Analytic presentations pass for all of the naturals: P minus the up-set
    of x lies in [0, bound(x)], so it is finite for every x. Everything else
    gets verified_up_to(N) or a failure pair from the window.
    """
    P = _require_strict(pres, N)
    res = minimal_type_window(P)
    witness = {"m": res["table"], "levels_checked": len(res["table"])}
    if res["failure"] is not None:
        witness["failure"] = res["failure"]
        witness["growth"] = _growth_evidence(pres, N)
        return Certificate(FAIL, "window-table", witness, window=N)
    if pres.analytic():
        return Certificate(PASS, "window-table+threshold", witness, window=N,
                           notes=("initial segments below bound(x) for every x",))
    return Certificate(VERIFIED_UP_TO, "window-table", witness, window=N)


def _growth_evidence(pres, N) -> dict:
    """Width of the minimal layer and the set left of the first bad element,
    sampled at N/4, N/2, N: growth suggests an infinite antichain or segment."""
    out = {}
    for w in sorted({max(2, N // 4), max(2, N // 2), N}):
        P = truncate(pres, w)
        prof = levels(P)
        out[w] = {"level0": len(prof.levels[0]) if prof.height else 0, "height": prof.height}
    return out


# -- countable Jónsson ----------------------------------------------------------------------
def jonsson_countable_check(pres: OmegaPresentation, N: int) -> Certificate:
    """|P minus up-set of x| for each x, exact when bound(x) < N."""
    P = _require_strict(pres, N)
    full = (1 << N) - 1
    sizes = {}
    skipped = 0
    for x in range(N):
        b = pres.bound(x)
        rest = full & ~P.up[x] & ~(1 << x)
        if b is None:
            if isinstance(pres, CustomPresentation):
                # no promise: look for growth of the complement across the window
                tail = rest >> (N // 2)
                if x < N // 4 and tail:
                    return Certificate(FAIL, "window-growth", {"x": x, "late_non_successors": bin(tail).count("1")}, window=N)
                skipped += 1
                continue
            return Certificate(FAIL, "presentation-bound", {"x": x, "size": "infinite"}, window=N)
        if b < N:
            sizes[x] = bin(rest).count("1")
        else:
            skipped += 1
    witness = {"sizes": sizes, "beyond_window": skipped}
    if pres.analytic():
        return Certificate(PASS, "presentation-bound", witness, window=N)
    return Certificate(VERIFIED_UP_TO, "presentation-bound", witness, window=N)


# -- purity --------------------------------------------------------------------------------------
def purity_certify(pres: OmegaPresentation, N: int, strict: bool = False) -> Certificate:
    """For each x the least y above x with everything outside the up-set of x below y.

    x is decided once the search range is inside the window: any y beyond
    bound(m) for every m <= bound(x) works, so y(x) <= that max + 1. Custom
    presentations have no bounds and are decided on the first half of the
    window only. Also walks x_0 = 0, x_{k+1} = y(x_k) to get the increasing
    cofinal sequence.
    """
    P = _require_strict(pres, N)
    full = (1 << N) - 1
    custom = isinstance(pres, CustomPresentation)
    table = {}
    scanned, reach = -1, -1  # reach = max bound(m) over m <= scanned
    for x in range(N):
        b = pres.bound(x)
        if b is None and not custom:
            if strict:
                raise NotPureWitness(f"nothing bounds the complement of the up-set of {x}")
            return Certificate(FAIL, "presentation-bound", {"x": x}, window=N)
        if custom:
            if x >= N // 2:
                break
        else:
            if b >= N:
                break
            while scanned < b:
                scanned += 1
                bm = pres.bound(scanned)
                reach = N if bm is None else max(reach, bm)
            if reach + 1 >= N:
                break
        rest = full & ~P.up[x] & ~(1 << x)
        y = next((y for y in bits(P.up[x]) if rest & ~P.down[y] == 0), None)
        if y is None:
            if strict:
                raise NotPureWitness(f"no y in the window works for {x}")
            return Certificate(FAIL, "window-scan", {"x": x}, window=N)
        table[x] = y
    seq = [0] if 0 in table else []
    while seq[-1:] and seq[-1] in table:
        seq.append(table[seq[-1]])
    witness = {"y": table, "sequence": seq}
    if pres.analytic():
        return Certificate(PASS, "presentation-bound", witness, window=N)
    return Certificate(VERIFIED_UP_TO, "window-scan", witness, window=N)


def verify_purity_table(pres: OmegaPresentation, N: int, table: dict) -> bool:
    P = truncate(pres, N)
    full = (1 << N) - 1
    for x, y in table.items():
        rest = full & ~P.up[x] & ~(1 << x)
        if not P.lt(x, y) or rest & ~P.down[y]:
            return False
    return True


# -- sandwich -------------------------------------------------------------------------------------
def sandwich_check(pres: Sandwich, N: int) -> Certificate:
    """Lower order a semiorder with no maximal element, lower <= pres <= natural order."""
    if not isinstance(pres, Sandwich):
        raise MalformedPresentation("sandwich_check needs a Sandwich presentation")
    for i, j in pres.extra:
        if i >= j:
            raise ContainmentViolated(f"({i}, {j}) is not in the natural order", (i, j))
    L = truncate(pres.lower, N)
    semi = is_semiorder(L)
    if not semi:
        return Certificate(FAIL, "sandwich", {"lower_not_semiorder": semi.witness}, window=N)
    for x in range(N):
        b = pres.lower.bound(x)
        if b is None:
            return Certificate(FAIL, "sandwich", {"maximal_in_lower": x}, window=N)
    P = truncate(pres, N)
    for i in range(N):
        miss = L.up[i] & ~P.up[i]
        if miss:
            j = next(bits(miss))
            raise ContainmentViolated(f"lower pair ({i}, {j}) lost", (i, j))
        low = P.up[i] & ((1 << (i + 1)) - 1)
        if low:
            j = next(bits(low))
            raise ContainmentViolated(f"({i}, {j}) is not in the natural order", (i, j))
    verdict = PASS if pres.analytic() else VERIFIED_UP_TO
    return Certificate(verdict, "sandwich", {"extra": [list(p) for p in pres.extra],
                                             "lower_semiorder": True}, window=N)

"""Levels, heights, König chains, uniformity windows, spectra, modules.

Finite posets are always well founded, so every height here is a natural
number. Uniformity is checked with window semantics: a finite poset is
trivially uniform via phi = top level, so quantifiers only range over
levels below a caller supplied boundary.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .certificate import FAIL, PASS, Certificate
from .errors import (BoundaryTooLarge, LevelInfinite, PosetLabError, TooLarge,
                     TooLargeForExhaustive, TowerTooTall)
from .ordinal import Ordinal, add, compare, limit_part
from .poset import FinitePoset, bits, linear_extensions, mask_of

EXHAUSTIVE_MAX_N = 24
ANTICHAIN_RANK_MAX_N = 16
TOWER_MAX_K = 3
MODULE_LIMIT = 10**6


# -- heights -----------------------------------------------------------------
@dataclass(frozen=True)
class HeightProfile:
    heights: tuple[int, ...]
    levels: tuple[tuple[int, ...], ...]

    @property
    def height(self) -> int:
        """Least empty level index (number of levels)."""
        return len(self.levels)

    def level_mask(self, alpha: int) -> int:
        return mask_of(self.levels[alpha])

    def below_mask(self, alpha: int) -> int:
        """Elements of height <= alpha."""
        return mask_of(x for a in range(min(alpha + 1, self.height)) for x in self.levels[a])

    def above_mask(self, gamma: int) -> int:
        """Elements of height > gamma."""
        return mask_of(x for a in range(gamma + 1, self.height) for x in self.levels[a])


def peel_heights(P: FinitePoset) -> list[int]:
    """Min-peeling: level a is Min of what is left after removing levels < a."""
    h = [0] * P.n
    left = (1 << P.n) - 1
    a = 0
    while left:
        layer = P.minimal(left)
        for x in bits(layer):
            h[x] = a
        left &= ~layer
        a += 1
    return h


def chain_heights(P: FinitePoset) -> list[int]:
    """Length of the longest strict chain ending at each element.

    Walks the elements by size of their down-set (a topological order of a
    closed order) keeping one mask per chain length seen so far; x extends
    the longest bucket meeting its predecessors.
    """
    h = [0] * P.n
    bucket = []
    for x in sorted(range(P.n), key=lambda x: (P.down[x].bit_count(), x)):
        d = P.down[x]
        a = len(bucket) - 1
        while a >= 0 and not bucket[a] & d:
            a -= 1
        h[x] = a + 1
        if a + 1 == len(bucket):
            bucket.append(0)
        bucket[a + 1] |= 1 << x
    return h


def levels(P: FinitePoset) -> HeightProfile:
    h = peel_heights(P)
    h2 = chain_heights(P)
    if h != h2:
        raise AssertionError(f"height routes disagree on {P!r}")
    H = max(h) + 1 if h else 0
    lv = [[] for _ in range(H)]
    for x, a in enumerate(h):
        lv[a].append(x)
    return HeightProfile(tuple(h), tuple(tuple(l) for l in lv))


def konig_chain(P: FinitePoset) -> list[int]:
    """One element per level, consecutive ones comparable, listed bottom up.

    Start from the smallest index of top height and walk down, always taking
    the smallest predecessor one level lower.
    """
    prof = levels(P)
    if not prof.height:
        return []
    h = prof.heights
    x = prof.levels[-1][0]
    chain = [x]
    while h[x]:
        x = next(y for y in bits(P.down[x]) if h[y] == h[x] - 1)
        chain.append(x)
    return chain[::-1]


# -- uniformity ----------------------------------------------------------------
@dataclass(frozen=True)
class UniformityWitness:
    phi: tuple[int | None, ...]
    kind: str
    margin: int
    weak_phi: tuple[int | None, ...] = ()

    def is_extensive(self) -> bool:
        return all(p is None or p >= a for a, p in enumerate(self.phi))

    def is_order_preserving(self) -> bool:
        vals = [p for p in self.phi if p is not None]
        return all(a <= b for a, b in zip(vals, vals[1:]))


def _dominated_by_all_above(P: FinitePoset, prof: HeightProfile, xs: int, gamma: int) -> bool:
    """Every y of height > gamma lies strictly above every element of xs."""
    for y in bits(prof.above_mask(gamma)):
        if xs & ~P.down[y]:
            return False
    return True


def _least_gamma(P, prof, xs, alpha) -> int | None:
    # phi never points at the top level: some y above phi(alpha) must exist
    for g in range(alpha, prof.height - 1):
        if _dominated_by_all_above(P, prof, xs, g):
            return g
    return None


def _window(prof: HeightProfile, boundary: int) -> range:
    if boundary > prof.height:
        raise BoundaryTooLarge(f"boundary {boundary} exceeds height {prof.height}")
    return range(max(0, min(boundary, prof.height) - 1))


def weak_phi(P: FinitePoset, boundary: int, prof: HeightProfile | None = None) -> list[int | None]:
    """phi_w(alpha) = least gamma >= alpha with level alpha below every element above gamma."""
    prof = prof or levels(P)
    return [_least_gamma(P, prof, prof.level_mask(a), a) for a in _window(prof, boundary)]


def uniform_phi(P: FinitePoset, boundary: int, prof: HeightProfile | None = None) -> list[int | None]:
    """Least gamma working for all of P_{<=alpha}; the running max of phi_w."""
    out = []
    best = 0
    for g in weak_phi(P, boundary, prof):
        if g is None or (out and out[-1] is None):
            out.append(None)
        else:
            best = max(best, g)
            out.append(best)
    return out


def order_preserving_search(P: FinitePoset, boundary: int, prof: HeightProfile | None = None):
    """Exhaustive DFS for an extensive order preserving phi below the boundary.

    Independent of the greedy construction; used as its oracle.
    """
    prof = prof or levels(P)
    dom = list(_window(prof, boundary))
    top = min(boundary, prof.height - 1)
    phi = []

    def ok(a, g):
        return _dominated_by_all_above(P, prof, prof.below_mask(a), g)

    def rec(i, lo):
        if i == len(dom):
            return True
        a = dom[i]
        for g in range(max(a, lo), top):
            if ok(a, g):
                phi.append(g)
                if rec(i + 1, g):
                    return True
                phi.pop()
        return False

    return tuple(phi) if rec(0, 0) else None


def uniformity(P: FinitePoset, boundary: int) -> UniformityWitness:
    prof = levels(P)
    w = weak_phi(P, boundary, prof)
    u = uniform_phi(P, boundary, prof)
    if all(g is not None and g < boundary for g in u):
        kind, phi = "uniform", u
    elif all(g is not None for g in w):
        kind, phi = "weakly_uniform", w
    else:
        kind, phi = "none", w
    return UniformityWitness(tuple(phi), kind, boundary, tuple(w))


def h_minimal_check(P: FinitePoset, boundary: int) -> Certificate:
    """Checks weak uniformity against (h-minimal and every level majorized).

    h-minimal in the window: for x of height in the domain, P minus the up-set
    of x never reaches the top level. Majorized: some y sits above the whole
    level.
    """
    prof = levels(P)
    dom = _window(prof, boundary)
    full = (1 << P.n) - 1
    top = prof.level_mask(prof.height - 1) if prof.height else 0
    bad_min = []
    for a in dom:
        for x in prof.levels[a]:
            rest = full & ~P.up[x] & ~(1 << x)
            if rest & top:
                bad_min.append(x)
    bad_maj = []
    for a in dom:
        L = prof.level_mask(a)
        if not any(L & ~P.down[y] == 0 for y in range(P.n)):
            bad_maj.append(a)
    weak = all(g is not None for g in weak_phi(P, boundary, prof))
    rhs = not bad_min and not bad_maj
    witness = {"weakly_uniform": weak, "h_minimal": not bad_min,
               "all_levels_majorized": not bad_maj, "equivalent": weak == rhs}
    if bad_min:
        witness["not_h_minimal_at"] = bad_min[:8]
    if bad_maj:
        witness["unmajorized_levels"] = bad_maj[:8]
    return Certificate(PASS if rhs else FAIL, "window-levels", witness, window=boundary)


# -- spectrum ------------------------------------------------------------------
@dataclass(frozen=True)
class LayeredPresentation:
    """Height as an ordinal plus the explicit heights of res(P), the elements
    at height >= the limit part of the height."""

    height: Ordinal
    res: tuple[Ordinal, ...]
    infinite_levels: tuple[Ordinal, ...] = ()

    def __post_init__(self):
        lim, r = limit_part(self.height)
        for h in self.res:
            if compare(h, lim) < 0 or compare(h, self.height) >= 0:
                raise PosetLabError(f"res height {h} outside [{lim}, {self.height})")
        seen = {h for h in self.res}
        for i in range(r):
            if add(lim, Ordinal.of(i)) not in seen:
                raise PosetLabError(f"level {add(lim, Ordinal.of(i))} of res is empty")


@dataclass(frozen=True)
class SpectrumReport:
    min_type: Ordinal
    extension_count: int
    truncated: bool
    single_type: bool = True


def min_extension_type(source) -> Ordinal:
    """Least order type of a linear extension: limit part of the height plus |res|."""
    if isinstance(source, LayeredPresentation):
        if source.infinite_levels:
            raise LevelInfinite(f"levels {[str(a) for a in source.infinite_levels]} are infinite")
        lim, _ = limit_part(source.height)
        return add(lim, Ordinal.of(len(source.res)))
    if isinstance(source, FinitePoset):
        source = levels(source)
    # finite height: the limit part is 0 and res is everything
    return Ordinal.of(len(source.heights))


def spectrum_finite(P: FinitePoset, cap: int = 10**6) -> SpectrumReport:
    ext = linear_extensions(P, cap)
    return SpectrumReport(min_extension_type(P), ext.count, ext.truncated, True)


# -- autonomous subsets ------------------------------------------------------------
def is_autonomous(P: FinitePoset, S: int) -> bool:
    outside = ((1 << P.n) - 1) & ~S
    for y in bits(outside):
        a = P.up[y] & S
        b = P.down[y] & S
        if (a and a != S) or (b and b != S):
            return False
    return True


def _exhaustive_masks(P: FinitePoset) -> list[int]:
    n = P.n
    if n > EXHAUSTIVE_MAX_N:
        raise TooLargeForExhaustive(f"n={n} > {EXHAUSTIVE_MAX_N}")
    out = []
    chunk = 1 << 20
    total = 1 << n
    for start in range(0, total, chunk):
        S = np.arange(start, min(total, start + chunk), dtype=np.int64)
        ok = np.ones(len(S), dtype=bool)
        for y in range(n):
            inside = (S >> y) & 1
            a = S & P.up[y]
            b = S & P.down[y]
            good = ((a == 0) | (a == S)) & ((b == 0) | (b == S))
            ok &= (inside == 1) | good
        out.extend(int(s) for s in S[ok])
    return out


def _module_closure(P: FinitePoset, M: int, within: int) -> int:
    """Smallest module of P restricted to ``within`` containing M."""
    changed = True
    while changed:
        changed = False
        for y in bits(within & ~M):
            a = P.up[y] & M
            b = P.down[y] & M
            if (a and a != M) or (b and b != M):
                M |= 1 << y
                changed = True
    return M


def _components(n_mask: int, adj) -> list[int]:
    comps = []
    left = n_mask
    while left:
        seed = left & -left
        comp = seed
        frontier = seed
        while frontier:
            nxt = 0
            for v in bits(frontier):
                nxt |= adj(v)
            nxt &= n_mask & ~comp
            comp |= nxt
            frontier = nxt
        comps.append(comp)
        left &= ~comp
    return comps


@dataclass
class DecompositionNode:
    kind: str  # leaf | parallel | series | prime
    members: int
    children: list = field(default_factory=list)


def modular_decomposition(P: FinitePoset, S: int | None = None) -> DecompositionNode:
    """Recursive modular decomposition of the comparability structure.

    Parallel nodes split the comparability graph into components, series
    nodes split the incomparability graph (children then form a chain in P,
    listed bottom up), and prime nodes split into maximal proper modules
    found by closing pairs.
    """
    if S is None:
        S = (1 << P.n) - 1
    if S & (S - 1) == 0:
        return DecompositionNode("leaf", S)
    comp = lambda v: P.up[v] | P.down[v]
    parts = _components(S, comp)
    if len(parts) > 1:
        return DecompositionNode("parallel", S, [modular_decomposition(P, c) for c in parts])
    parts = _components(S, lambda v: P.incomparable_row(v))
    if len(parts) > 1:
        # co-components are totally ordered; sort them bottom up
        parts.sort(key=lambda c: -bin(P.up[(c & -c).bit_length() - 1] & S).count("1"))
        return DecompositionNode("series", S, [modular_decomposition(P, c) for c in parts])
    # prime: x, y share a maximal module iff their module closure is proper
    elems = list(bits(S))
    owner = {}
    blocks = []
    for x in elems:
        if x in owner:
            continue
        block = 1 << x
        for y in elems:
            if y != x and y not in owner:
                if _module_closure(P, (1 << x) | (1 << y), S) != S:
                    block |= 1 << y
        block = _module_closure(P, block, S) if block & (block - 1) else block
        for z in bits(block):
            owner[z] = len(blocks)
        blocks.append(block)
    return DecompositionNode("prime", S, [modular_decomposition(P, b) for b in blocks])


def _modules_from_tree(node: DecompositionNode, out: set, limit: int) -> None:
    out.add(node.members)
    kids = node.children
    for c in kids:
        _modules_from_tree(c, out, limit)
    if node.kind == "parallel":
        k = len(kids)
        if (1 << k) > limit:
            raise TooLarge(f"parallel node with {k} children has too many modules")
        for sel in range(1, 1 << k):
            if sel & (sel - 1):
                out.add(mask_of_union(kids, sel))
    elif node.kind == "series":
        for i in range(len(kids)):
            acc = kids[i].members
            for j in range(i + 1, len(kids)):
                acc |= kids[j].members
                out.add(acc)
    if len(out) > limit:
        raise TooLarge(f"more than {limit} modules")


def mask_of_union(kids, sel: int) -> int:
    m = 0
    for i in bits(sel):
        m |= kids[i].members
    return m


def autonomous_subsets(P: FinitePoset, proper_only: bool = False, mode: str = "fast",
                       limit: int = MODULE_LIMIT) -> list[frozenset[int]]:
    """All autonomous subsets (modules), sorted by size then elements.

    mode "exhaustive" scans every subset (n <= 24); "fast" reads them off the
    modular decomposition tree.
    """
    n = P.n
    if mode == "exhaustive":
        masks = set(_exhaustive_masks(P))
    elif mode == "fast":
        masks = {0}
        if n:
            _modules_from_tree(modular_decomposition(P), masks, limit)
        masks.update(1 << x for x in range(n))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    full = (1 << n) - 1
    if proper_only:
        masks = {m for m in masks if m and m & (m - 1) and m != full}
    out = [frozenset(bits(m)) for m in masks]
    out.sort(key=lambda s: (len(s), sorted(s)))
    return out


# -- powerset tower ----------------------------------------------------------------
@dataclass(frozen=True)
class Tower:
    poset: FinitePoset
    level_of: tuple[int, ...]
    label: tuple[tuple[int, ...], ...]  # members (global indices) for levels >= 1


def powerset_tower(k: int) -> Tower:
    """Q_0 is a 2-antichain, Q_{n+1} the subsets of Q_n.

    p < S when p is a member of S (consecutive levels), and every element of
    Q_n lies below every element of Q_m once n+2 <= m.
    """
    if k < 1:
        raise ValueError("k >= 1")
    if k > TOWER_MAX_K:
        raise TowerTooTall(f"k={k} > {TOWER_MAX_K}")
    lv = [[0, 1]]
    label = [(), ()]
    nxt = 2
    pairs = []
    for _ in range(1, k):
        prev = lv[-1]
        cur = []
        for sub in range(1 << len(prev)):
            members = tuple(prev[i] for i in bits(sub))
            cur.append(nxt)
            label.append(members)
            pairs.extend((p, nxt) for p in members)
            nxt += 1
        lv.append(cur)
    for a in range(len(lv)):
        for b in range(a + 2, len(lv)):
            pairs.extend((x, y) for x in lv[a] for y in lv[b])
    level_of = [0] * nxt
    for a, l in enumerate(lv):
        for x in l:
            level_of[x] = a
    return Tower(FinitePoset.from_edges(nxt, pairs), tuple(level_of), tuple(label))


def tower_report(k: int) -> dict:
    """Module findings for the tower; reported, not judged."""
    T = powerset_tower(k)
    P = T.poset
    mods = autonomous_subsets(P, proper_only=True, mode="exhaustive" if P.n <= 16 else "fast")
    empties = [x for x in range(P.n) if T.level_of[x] > 0 and not T.label[x]]
    return {
        "k": k,
        "n": P.n,
        "pairs": P.pair_count(),
        "proper_modules": [sorted(m) for m in mods],
        "empty_set_elements": empties,
        "decomposable": bool(mods),
    }


# -- antichain rank ----------------------------------------------------------------
def antichain_rank(P: FinitePoset) -> int:
    """Height of the empty antichain among antichains under reverse inclusion.

    Maximal antichains sit at height 0 and A gets 1 + max over one-point
    extensions, so memoize over antichain bitmasks.
    """
    n = P.n
    if n > ANTICHAIN_RANK_MAX_N:
        raise TooLarge(f"n={n} > {ANTICHAIN_RANK_MAX_N}")
    comp = [P.up[x] | P.down[x] for x in range(n)]

    @lru_cache(maxsize=None)
    def h(A: int) -> int:
        blocked = A
        for x in bits(A):
            blocked |= comp[x]
        free = ((1 << n) - 1) & ~blocked
        best = -1
        for x in bits(free):
            best = max(best, h(A | 1 << x))
        return best + 1

    return h(0)

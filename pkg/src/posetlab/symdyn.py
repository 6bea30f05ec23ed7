"""Substitution words, recurrence, and factor posets.

The language of a subshift is approximated by the factors of a long prefix
of one of its words. That is exact for uniformly recurrent words once the
prefix is long enough; the top levels are kept out of every quantifier.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from .certificate import FAIL, PASS, Certificate
from .errors import MarginTooSmall, NotFactorClosed, NotProlongable, PrefixTooShort
from .omega import minimal_type_window
from .poset import FinitePoset

DOUBLINGS = 3


@dataclass(frozen=True)
class WordSystem:
    """Either a prolongable substitution (rules, seed) or a literal word
    prefix + repeat^omega."""

    rules: dict | None = None
    seed: str | None = None
    literal: tuple[str, str] | None = None
    alphabet: tuple[str, ...] = ()

    def __post_init__(self):
        if self.literal is not None:
            prefix, repeat = self.literal
            if not repeat:
                raise NotProlongable("literal word needs a non-empty repeating block")
            alpha = set(prefix) | set(repeat)
        else:
            if not self.rules or self.seed is None:
                raise NotProlongable("need rules and a seed")
            img = self.rules.get(self.seed, "")
            if not img.startswith(self.seed) or len(img) < 2:
                raise NotProlongable(f"rule({self.seed!r}) = {img!r} does not extend the seed")
            alpha = set(self.rules)
            for w in self.rules.values():
                missing = set(w) - set(self.rules)
                if missing:
                    raise NotProlongable(f"symbols {sorted(missing)} have no rule")
        if not self.alphabet:
            object.__setattr__(self, "alphabet", tuple(sorted(alpha)))

    @classmethod
    def substitution(cls, rules: dict, seed: str) -> "WordSystem":
        return cls(rules=dict(rules), seed=seed)

    @classmethod
    def from_literal(cls, prefix: str, repeat: str) -> "WordSystem":
        return cls(literal=(prefix, repeat))

    def to_doc(self) -> dict:
        if self.literal is not None:
            return {"literal": {"prefix": self.literal[0], "repeat": self.literal[1]}}
        return {"alphabet": list(self.alphabet), "rules": dict(self.rules), "seed": self.seed}

    @classmethod
    def from_doc(cls, doc: dict) -> "WordSystem":
        if "literal" in doc:
            lit = doc["literal"]
            return cls.from_literal(lit.get("prefix", ""), lit["repeat"])
        return cls(rules=dict(doc["rules"]), seed=doc["seed"], alphabet=tuple(doc.get("alphabet", ())))


PRESETS = {
    "fibonacci": WordSystem.substitution({"0": "01", "1": "0"}, "0"),
    "thue-morse": WordSystem.substitution({"0": "01", "1": "10"}, "0"),
    "constant": WordSystem.from_literal("", "0"),
    "one-zeros": WordSystem.from_literal("1", "0"),
}


def generate(system: WordSystem, L: int) -> str:
    if L < 1:
        raise ValueError("L >= 1")
    if system.literal is not None:
        prefix, repeat = system.literal
        w = prefix + repeat * ((L - len(prefix)) // len(repeat) + 1)
        return w[:L]
    w = system.seed
    while len(w) < L:
        w = "".join(system.rules[c] for c in w)
    return w[:L]


def factors(word: str, maxlen: int) -> frozenset[str]:
    """All distinct blocks of length 1..maxlen."""
    if maxlen > len(word):
        raise ValueError(f"maxlen {maxlen} exceeds word length {len(word)}")
    return frozenset(word[i:i + l] for l in range(1, maxlen + 1) for i in range(len(word) - l + 1))


# -- recurrence --------------------------------------------------------------------
def recurrence_value(word: str, l: int) -> int:
    """Least r such that every length-r window of ``word`` holds every length-l factor.

    Per factor with first/last occurrence p1/pk and largest gap g between
    consecutive starts, r must cover p1 + l, g + l - 1 and len - pk.
    """
    L = len(word)
    first, last, gap = {}, {}, {}
    for i in range(L - l + 1):
        f = word[i:i + l]
        if f in last:
            g = i - last[f]
            if g > gap[f]:
                gap[f] = g
        else:
            first[f] = i
            gap[f] = 0
        last[f] = i
    r = l
    for f in first:
        r = max(r, first[f] + l, gap[f] + l - 1, L - last[f])
    return r


@dataclass(frozen=True)
class RecurrenceProfile:
    R: dict  # l -> int, or None for unbounded evidence
    samples: dict  # l -> R on prefixes L/8, L/4, L/2, L
    length: int

    def unbounded(self, l: int) -> bool:
        return self.R.get(l, 0) is None


def recurrence_profile(word: str, maxlen: int) -> RecurrenceProfile:
    """Empirical R(l) for l = 1..maxlen; unbounded evidence means R grew at
    each of the three prefix doublings."""
    L = len(word)
    if L < 20 * maxlen:
        raise PrefixTooShort(f"prefix of {L} is shorter than 20*{maxlen}")
    cuts = [L >> k for k in range(DOUBLINGS, -1, -1)]
    R, samples = {}, {}
    for l in range(1, maxlen + 1):
        vals = tuple(recurrence_value(word[:c], l) for c in cuts)
        samples[l] = vals
        growing = all(b > a for a, b in zip(vals, vals[1:]))
        R[l] = None if growing else vals[-1]
    return RecurrenceProfile(R, samples, L)


# -- factor posets -----------------------------------------------------------------
@dataclass(frozen=True)
class FactorPoset:
    words: tuple[str, ...]
    poset: FinitePoset
    source: str | None = None
    index: dict = field(default_factory=dict, compare=False)

    @property
    def maxlen(self) -> int:
        return max((len(w) for w in self.words), default=0)


def factor_poset(facs, source: str | None = None) -> FactorPoset:
    """Factors ordered by s < t iff s is a proper block of t; shortlex numbering."""
    words = tuple(sorted(set(facs), key=lambda w: (len(w), w)))
    if any(not w for w in words):
        raise NotFactorClosed("the empty word is not a factor here")
    idx = {w: i for i, w in enumerate(words)}
    pairs = []
    for w in words:
        if len(w) > 1:
            for s in (w[1:], w[:-1]):
                if s not in idx:
                    raise NotFactorClosed(f"{s!r} is a block of {w!r} but missing")
                pairs.append((idx[s], idx[w]))
    P = FinitePoset.from_edges(len(words), pairs)
    return FactorPoset(words, P, source, idx)


def minimal_type_window_check(fp: FactorPoset, depth: int | None = None) -> Certificate:
    """Witness table m(n) over the levels the window can decide.

    m(n) is the least m with every factor of length <= n+1 inside every
    factor of length >= m+1; n runs over [0, H-2) with H the number of
    levels (top two excluded). When m(n) is missing and the source word
    shows unbounded recurrence for length n+1 this is a failure with an
    explicit pair; when the recurrence is bounded but longer than the
    window, the decidable margin ends at n instead. ``depth`` caps how many
    n are examined.
    """
    H = fp.maxlen
    if H < 3:
        raise MarginTooSmall(f"need at least 3 levels, have {H}")
    res = minimal_type_window(fp.poset, margin=2)
    table = res["table"]
    if depth is not None:
        table = {n: m for n, m in table.items() if n < depth}
    fail = res["failure"]
    if depth is not None and fail is not None and fail["n"] >= depth:
        fail = None
    prof = None
    if fp.source is not None:
        prof = recurrence_profile(fp.source, min(H, len(fp.source) // 20))
    witness = {"m": table}
    if fail is not None:
        n = fail["n"]
        x, y = (fp.words[i] for i in fail["pair"])
        if prof is None or prof.unbounded(n + 1):
            witness["failure"] = {"n": n, "pair": [x, y]}
            return Certificate(FAIL, "factor-window", witness, window=H)
        margin = n
    else:
        margin = len(table)
    if margin == 0:
        raise MarginTooSmall("no level of the window is decidable")
    witness["margin"] = margin
    if prof is not None:
        cross = {}
        for n, m in table.items():
            r = prof.R.get(n + 1)
            cross[n] = [m + 1, None if r is None else max(r, n + 2)]
        witness["cross_check"] = cross
        witness["cross_check_agrees"] = all(a == b for a, b in cross.values())
    return Certificate(PASS, "factor-window", witness, window=H)

"""Ordinals below epsilon_0 in Cantor normal form.

An ordinal is a tuple of (exponent, coefficient) terms with exponents
(themselves ordinals) strictly decreasing and coefficients >= 1; the empty
tuple is 0. Text syntax: ``w^E*c`` terms joined by ``+``, e.g.
``w^2*3 + w + 4`` or ``w^(w+1)``. Compound exponents need parentheses.
"""
from __future__ import annotations

import re
from functools import total_ordering

from .errors import OrdinalSyntaxError


@total_ordering
class Ordinal:
    __slots__ = ("terms", "_hash")

    def __init__(self, terms=()):
        self.terms = tuple(terms)
        self._hash = None

    @classmethod
    def of(cls, value) -> "Ordinal":
        if isinstance(value, Ordinal):
            return value
        if isinstance(value, int) and not isinstance(value, bool):
            if value < 0:
                raise ValueError("ordinals are non-negative")
            return cls(((ZERO, value),)) if value else ZERO
        if isinstance(value, str):
            return parse(value)
        raise TypeError(f"cannot make an ordinal from {value!r}")

    # -- structure ------------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_finite(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.terms[0][0].is_zero())

    def finite_value(self) -> int:
        if not self.is_finite():
            raise ValueError(f"{self} is infinite")
        return self.terms[0][1] if self.terms else 0

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.terms[-1][0].is_zero()

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0].is_zero()

    def leading_exponent(self) -> "Ordinal":
        return self.terms[0][0] if self.terms else ZERO

    def is_normal(self) -> bool:
        prev = None
        for e, c in self.terms:
            if not isinstance(c, int) or c < 1 or not e.is_normal():
                return False
            if prev is not None and compare(e, prev) >= 0:
                return False
            prev = e
        return True

    # -- python protocol ----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other) if other >= 0 else None
            if other is None:
                return False
        if not isinstance(other, Ordinal):
            return NotImplemented
        return self.terms == other.terms

    def __lt__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = Ordinal.of(other)
        if not isinstance(other, Ordinal):
            return NotImplemented
        return compare(self, other) < 0

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(self.terms)
        return self._hash

    def __add__(self, other):
        return add(self, Ordinal.of(other))

    def __radd__(self, other):
        return add(Ordinal.of(other), self)

    def __str__(self):
        return format_ordinal(self)

    def __repr__(self):
        return f"Ordinal({format_ordinal(self)!r})"


ZERO = Ordinal(())
ONE = Ordinal(((ZERO, 1),))
OMEGA = Ordinal(((ONE, 1),))


def compare(a: Ordinal, b: Ordinal) -> int:
    """-1, 0 or 1; lexicographic over CNF terms, exponent before coefficient."""
    for (ea, ca), (eb, cb) in zip(a.terms, b.terms):
        c = compare(ea, eb)
        if c:
            return c
        if ca != cb:
            return -1 if ca < cb else 1
    la, lb = len(a.terms), len(b.terms)
    return (la > lb) - (la < lb)


def add(a: Ordinal, b: Ordinal) -> Ordinal:
    """Ordinal sum a + b (left terms smaller than b's leading exponent vanish)."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    if b.is_zero():
        return a
    e, c = b.terms[0]
    kept = []
    for ea, ca in a.terms:
        s = compare(ea, e)
        if s > 0:
            kept.append((ea, ca))
        elif s == 0:
            c += ca
            break
        else:
            break
    return Ordinal(tuple(kept) + ((e, c),) + b.terms[1:])


def natural_sum(a: Ordinal, b: Ordinal) -> Ordinal:
    """Hessenberg sum: merge the CNF terms adding coefficients of equal exponents."""
    a, b = Ordinal.of(a), Ordinal.of(b)
    merged = []
    i = j = 0
    ta, tb = a.terms, b.terms
    while i < len(ta) and j < len(tb):
        s = compare(ta[i][0], tb[j][0])
        if s > 0:
            merged.append(ta[i])
            i += 1
        elif s < 0:
            merged.append(tb[j])
            j += 1
        else:
            merged.append((ta[i][0], ta[i][1] + tb[j][1]))
            i += 1
            j += 1
    merged.extend(ta[i:])
    merged.extend(tb[j:])
    return Ordinal(tuple(merged))


def omega_times(b: Ordinal) -> Ordinal:
    """w·b, the only multiplication the package needs: exponent e becomes 1+e."""
    b = Ordinal.of(b)
    return Ordinal(tuple((add(ONE, e), c) for e, c in b.terms))


def limit_part(a: Ordinal) -> tuple[Ordinal, int]:
    """Split a = w·beta + r with r finite; returns (w·beta, r)."""
    a = Ordinal.of(a)
    if a.terms and a.terms[-1][0].is_zero():
        return Ordinal(a.terms[:-1]), a.terms[-1][1]
    return a, 0


def limit_quotient(a: Ordinal) -> Ordinal:
    """The beta with limit_part(a) = w·beta."""
    lim, _ = limit_part(a)
    out = []
    for e, c in lim.terms:
        if e.is_finite():
            out.append((Ordinal.of(e.finite_value() - 1), c))
        else:
            out.append((e, c))
    return Ordinal(tuple(out))


# -- text syntax ----------------------------------------------------------------
def format_ordinal(a: Ordinal) -> str:
    if a.is_zero():
        return "0"
    parts = []
    for e, c in a.terms:
        if e.is_zero():
            parts.append(str(c))
            continue
        if e == ONE:
            base = "w"
        elif e.is_finite():
            base = f"w^{e.finite_value()}"
        elif e == OMEGA:
            base = "w^w"
        else:
            base = f"w^({format_ordinal(e)})"
        parts.append(base if c == 1 else f"{base}*{c}")
    return "+".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|(w|ω)|(\^)|(\*)|(\+)|(\()|(\)))")


def _tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise OrdinalSyntaxError(f"unexpected character at {pos} in {text!r}")
        kinds = ("int", "w", "^", "*", "+", "(", ")")
        for k, g in zip(kinds, m.groups()):
            if g is not None:
                out.append((k, g))
                break
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def take(self, kind):
        if self.peek() != kind:
            raise OrdinalSyntaxError(f"expected {kind!r} in {self.text!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok[1]

    def ordinal(self):
        terms = [self.term()]
        while self.peek() == "+":
            self.take("+")
            terms.append(self.term())
        if len(terms) == 1 and terms[0] == (ZERO, 0):
            return ZERO
        for e, c in terms:
            if c == 0:
                raise OrdinalSyntaxError(f"zero coefficient in {self.text!r}")
        for (e1, _), (e2, _) in zip(terms, terms[1:]):
            if compare(e1, e2) <= 0:
                raise OrdinalSyntaxError(f"exponents not strictly decreasing in {self.text!r}")
        return Ordinal(tuple(terms))

    def term(self):
        if self.peek() == "int":
            return (ZERO, int(self.take("int")))
        self.take("w")
        e = ONE
        if self.peek() == "^":
            self.take("^")
            e = self.exponent()
        c = 1
        if self.peek() == "*":
            self.take("*")
            c = int(self.take("int"))
        if e.is_zero():
            raise OrdinalSyntaxError(f"write w^0*c as c in {self.text!r}")
        return (e, c)

    def exponent(self):
        k = self.peek()
        if k == "int":
            return Ordinal.of(int(self.take("int")))
        if k == "w":
            self.take("w")
            return OMEGA
        self.take("(")
        e = self.ordinal()
        self.take(")")
        return e


def parse(text: str) -> Ordinal:
    """Parse CNF text; non-normal input is rejected rather than normalized."""
    p = _Parser(text)
    if p.peek() is None:
        raise OrdinalSyntaxError("empty ordinal")
    a = p.ordinal()
    if p.peek() is not None:
        raise OrdinalSyntaxError(f"trailing input in {text!r}")
    return a

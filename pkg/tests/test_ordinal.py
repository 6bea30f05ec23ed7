import itertools

import pytest
from hypothesis import given, strategies as st

from posetlab.errors import OrdinalSyntaxError
from posetlab.ordinal import (OMEGA, ONE, ZERO, Ordinal, add, compare, format_ordinal, limit_part,
                              limit_quotient, natural_sum, omega_times, parse)

# Oracle representation below w^w: the non-increasing list of exponents of
# w^e1 + w^e2 + ... with every coefficient expanded.


def expand(a: Ordinal) -> list[int]:
    out = []
    for e, c in a.terms:
        out += [e.finite_value()] * c
    return out


def collapse(exps: list[int]) -> Ordinal:
    terms = []
    for e, grp in itertools.groupby(exps):
        terms.append((Ordinal.of(e), len(list(grp))))
    return Ordinal(tuple(terms))


def naive_add(a, b):
    out = expand(a)
    for e in expand(b):  # add one w^e at a time, absorbing smaller tails
        while out and out[-1] < e:
            out.pop()
        out.append(e)
    return collapse(out)


def naive_natsum(a, b):
    return collapse(sorted(expand(a) + expand(b), reverse=True))


small = st.lists(st.integers(0, 3), min_size=4, max_size=4).map(
    lambda cs: Ordinal(tuple((Ordinal.of(3 - i), c) for i, c in enumerate(cs) if c)))


def test_compare_examples():
    assert compare(ZERO, ZERO) == 0
    assert compare(OMEGA, Ordinal.of(5)) == 1
    assert Ordinal.of(5) < OMEGA and OMEGA == parse("w")


def test_compare_additive_oracle():
    """a < b iff a + c = b for some c != 0, over all of w^3 with coefficients <= 3."""
    S = [Ordinal(tuple((Ordinal.of(2 - i), c) for i, c in enumerate(cs) if c))
         for cs in itertools.product(range(4), repeat=3)]
    for a in S:
        reach = {add(a, c) for c in S if not c.is_zero()}
        for b in S:
            assert (compare(a, b) < 0) == (b in reach)


def test_add_examples():
    assert add(ONE, OMEGA) == OMEGA
    assert str(add(OMEGA, ONE)) == "w+1"
    assert str(add(parse("w*2+3"), parse("w+1"))) == "w*3+1"
    assert naive_add(parse("w*2+3"), parse("w+1")) == parse("w*3+1")


def test_natural_sum_examples():
    assert str(natural_sum(OMEGA, OMEGA)) == "w*2"
    assert str(natural_sum(parse("w+1"), OMEGA)) == "w*2+1"
    a = parse("w^2+w*3")
    assert natural_sum(ZERO, a) == a


def test_limit_part_examples():
    assert limit_part(Ordinal.of(5)) == (ZERO, 5)
    assert limit_part(parse("w*2+3")) == (parse("w*2"), 3)
    assert limit_part(parse("w^2")) == (parse("w^2"), 0)
    assert omega_times(limit_quotient(parse("w^2+w*3+1"))) == parse("w^2+w*3")


@given(small, small)
def test_add_and_natsum_match_oracle(a, b):
    assert add(a, b) == naive_add(a, b)
    assert natural_sum(a, b) == naive_natsum(a, b)


@given(small, small, small)
def test_algebra(a, b, c):
    assert natural_sum(a, b) == natural_sum(b, a)
    assert natural_sum(natural_sum(a, b), c) == natural_sum(a, natural_sum(b, c))
    assert add(add(a, b), c) == add(a, add(b, c))
    lim, r = limit_part(a)
    assert add(lim, Ordinal.of(r)) == a and not lim.is_successor()
    assert a <= natural_sum(a, b) and a <= add(a, b)
    if b < c:  # right monotone, strictly
        assert add(a, b) < add(a, c)


def test_hessenberg_identities():
    """(a (+) a) + b for a few a, b, checked against the oracles."""
    for sa, sb in [("w", "1"), ("w+1", "w"), ("w^2+2", "w*3"), ("5", "w")]:
        a, b = parse(sa), parse(sb)
        got = add(natural_sum(a, a), b)
        assert got == naive_add(naive_natsum(a, a), b)
    assert str(add(natural_sum(OMEGA, OMEGA), ONE)) == "w*2+1"
    assert str(add(natural_sum(parse("w+1"), parse("w+1")), OMEGA)) == "w*3"


@pytest.mark.parametrize("text", ["0", "7", "w", "w+1", "w*2+3", "w^2*3+w+4", "w^w", "w^(w+1)*2+w^w+w^3+5",
                                  "w^(w^2+1)"])
def test_parse_format_round_trip(text):
    assert format_ordinal(parse(text)) == text


def test_parse_lenient_spacing_and_symbol():
    assert parse("w^2*3 + w + 4") == parse("w^2*3+w+4")
    assert parse("ω^1*2") == parse("w*2")


@pytest.mark.parametrize("bad", ["", "w+w", "1+w", "w^2+w^3", "w*0", "w^0*3", "w^", "w+", "(w)", "x",
                                 "w^(w+w)"])
def test_parse_rejects_non_normal(bad):
    with pytest.raises(OrdinalSyntaxError):
        parse(bad)


def test_nested_exponents_compare():
    assert parse("w^w") > parse("w^5*9")
    assert parse("w^(w+1)") > parse("w^w*100")
    assert parse("w^(w+1)").is_normal()

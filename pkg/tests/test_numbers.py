from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from jswitness.algebra import Betw, MulOf, NotMulOf, XBetw
from jswitness.json_model import INF, NEG_INF
from jswitness.numbers import gen_number, is_multiple, merge, rational_lcm

D = Decimal


@pytest.mark.parametrize(
    "itos, expected",
    [
        ([Betw(D(5), D(5)), MulOf(D("2.5"))], D(5)),
        ([Betw(D(0), D(20)), MulOf(D(10)), NotMulOf(D(4)), NotMulOf(D(6))], D(10)),
        ([XBetw(D(0), INF), MulOf(D(1)), NotMulOf(D(2)), NotMulOf(D(3))], D(5)),
        ([XBetw(D(0), D(1))], D("0.1")),
        ([Betw(D(3), INF)], D(3)),
        ([], D(0)),
    ],
)
def test_examples(itos, expected):
    assert gen_number(itos) == expected


@pytest.mark.parametrize(
    "itos",
    [
        [MulOf(D(6)), NotMulOf(D(3))],
        [Betw(D(1), D(0))],
        [XBetw(D(1), D(1))],
        [Betw(D(1), D(5)), MulOf(D(7))],
        [Betw(D(2), D(2)), NotMulOf(D(1))],
        [Betw(D("0.5"), D("0.5")), MulOf(D("0.2"))],
    ],
)
def test_unsatisfiable_groups(itos):
    assert gen_number(itos) is None


def test_merge_takes_tightest_bounds_and_lcm():
    c = merge([Betw(D(0), D(10)), XBetw(D(0), D(9)), MulOf(D("1.5")), MulOf(D(2)), NotMulOf(D(-4))])
    assert (c.lo, c.lo_open, c.hi, c.hi_open) == (0, True, 9, True)
    assert c.modulus == 6
    assert c.excluded == [4]


def test_rational_lcm():
    assert rational_lcm(Fraction(3, 2), Fraction(2)) == 6
    assert rational_lcm(Fraction(1, 4), Fraction(1, 6)) == Fraction(1, 2)
    assert rational_lcm(Fraction(0), Fraction(3)) == 0


def test_negative_infinite_side_uses_negative_multiples():
    x = gen_number([XBetw(NEG_INF, D(-1)), MulOf(D(1)), NotMulOf(D(2)), NotMulOf(D(3))])
    assert x < -1 and x % 2 != 0 and x % 3 != 0


def test_deadline_hook_is_called_on_long_scans():
    calls = []
    gen_number([Betw(D(0), D(10**6)), MulOf(D(1)), NotMulOf(D(1))], lambda: calls.append(1))
    # every integer is excluded: caught before scanning
    assert calls == []
    x = gen_number([Betw(D(1), D(10**6)), MulOf(D(2)), NotMulOf(D(4)), NotMulOf(D(6))], lambda: calls.append(1))
    assert x == 2 and calls == [1]


# small decimal parameters keep a brute-force scan complete
small = st.integers(-12, 12).map(lambda k: D(k) / 2)
positive = st.sampled_from([D("0.5"), D(1), D("1.5"), D(2), D(3), D(4), D(6)])
bound = st.one_of(small, st.just(None))


@st.composite
def groups(draw):
    itos = []
    lo, hi = draw(bound), draw(bound)
    if lo is not None or hi is not None:
        ctor = draw(st.sampled_from([Betw, XBetw]))
        itos.append(ctor(NEG_INF if lo is None else lo, INF if hi is None else hi))
    itos += [MulOf(q) for q in draw(st.lists(positive, max_size=2))]
    itos += [NotMulOf(q) for q in draw(st.lists(positive, max_size=3))]
    return itos


def satisfies(itos, x: Fraction) -> bool:
    c = merge(itos)
    return c.admits(x)


def brute_force(itos):
    # a grid of step 1/4 over [-40, 40]; a hit here is a witness the
    # generator must not miss
    for k in range(-160, 161):
        x = Fraction(k, 4)
        if satisfies(itos, x):
            return x
    return None


@settings(max_examples=400, deadline=None)
@given(groups())
def test_sound_and_complete_against_brute_force(itos):
    x = gen_number(itos)
    found = brute_force(itos)
    if x is not None:
        assert satisfies(itos, Fraction(x))
    if found is not None:
        assert x is not None


def test_is_multiple():
    assert is_multiple(Fraction(15, 2), Fraction(5, 2))
    assert not is_multiple(Fraction(1), Fraction(2, 3))
    assert is_multiple(Fraction(0), Fraction(0))

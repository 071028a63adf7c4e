"""Witnesses for groups of numeric assertions.

A numeric group is a conjunction of closed and open bounds, ``mulOf`` and
``notMulOf`` assertions.  Bounds merge into a single interval and ``mulOf``
assertions into a single modulus (their least common multiple), leaving a
short case analysis over the shape of the interval.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from sympy import nextprime

from .algebra import Betw, MulOf, NotMulOf, XBetw
from .json_model import INF, NEG_INF, fraction_to_decimal, is_infinite, to_fraction


@dataclass
class NumericConstraints:
    """Merged form of a numeric group.

    ``lo``/``hi`` are Fractions or the infinities; ``modulus`` is None when
    there is no ``mulOf``; ``excluded`` lists the ``notMulOf`` arguments.
    """

    lo: object = NEG_INF
    lo_open: bool = False
    hi: object = INF
    hi_open: bool = False
    modulus: Fraction | None = None
    excluded: list = field(default_factory=list)

    def contains(self, x: Fraction) -> bool:
        if not is_infinite(self.lo) and (x < self.lo or (self.lo_open and x == self.lo)):
            return False
        if not is_infinite(self.hi) and (x > self.hi or (self.hi_open and x == self.hi)):
            return False
        return True

    def admits(self, x: Fraction) -> bool:
        """Whether ``x`` satisfies every merged assertion."""
        if not self.contains(x):
            return False
        if self.modulus is not None and not is_multiple(x, self.modulus):
            return False
        return not any(is_multiple(x, n) for n in self.excluded)

    @property
    def empty_interval(self) -> bool:
        if is_infinite(self.lo) or is_infinite(self.hi):
            return self.lo == INF or self.hi == NEG_INF
        if self.lo > self.hi:
            return True
        return self.lo == self.hi and (self.lo_open or self.hi_open)


def is_multiple(x: Fraction, n: Fraction) -> bool:
    if n == 0:
        return x == 0
    return (x / n).denominator == 1


def _bound(v):
    return v if is_infinite(v) else to_fraction(v)


def rational_lcm(a: Fraction, b: Fraction) -> Fraction:
    """Least positive rational that is an integer multiple of both ``a`` and ``b``."""
    a, b = abs(a), abs(b)
    if a == 0 or b == 0:
        return Fraction(0)
    num = math.lcm(a.numerator, b.numerator)
    den = math.gcd(a.denominator, b.denominator)
    return Fraction(num, den)


def merge(itos) -> NumericConstraints:
    c = NumericConstraints()
    for a in itos:
        if isinstance(a, (Betw, XBetw)):
            opened = isinstance(a, XBetw)
            lo, hi = _bound(a.lo), _bound(a.hi)
            if lo > c.lo or (lo == c.lo and opened and not is_infinite(lo)):
                c.lo, c.lo_open = lo, opened
            if hi < c.hi or (hi == c.hi and opened and not is_infinite(hi)):
                c.hi, c.hi_open = hi, opened
        elif isinstance(a, MulOf):
            q = abs(to_fraction(a.q))
            c.modulus = q if c.modulus is None else rational_lcm(c.modulus, q)
        elif isinstance(a, NotMulOf):
            c.excluded.append(abs(to_fraction(a.q)))
    c.excluded = sorted(set(c.excluded))
    return c


def _power_of_ten_below(x: Fraction) -> Fraction:
    """Largest power of ten not exceeding the positive rational ``x``."""
    e = math.floor(math.log10(x.numerator) - math.log10(x.denominator))
    p = Fraction(10) ** e
    while p > x:
        p /= 10
    while p * 10 <= x:
        p *= 10
    return p


def _without_modulus(c: NumericConstraints):
    # simple candidates first, for readable witnesses
    simple = [Fraction(0)]
    if not is_infinite(c.lo):
        simple += [c.lo, Fraction(math.floor(c.lo) + 1)]
    if not is_infinite(c.hi):
        simple += [c.hi, Fraction(math.ceil(c.hi) - 1)]
    for x in simple:
        if c.admits(x):
            return x
    # l+1 evenly spaced candidates spanning less than every excluded
    # modulus: each modulus rules out at most one of them
    l = len(c.excluded)
    width = None if is_infinite(c.lo) or is_infinite(c.hi) else c.hi - c.lo
    limits = [n for n in c.excluded if n > 0] + ([width] if width is not None else [])
    span = min(limits) if limits else Fraction(1)
    eps = _power_of_ten_below(span / (l + 2))
    if not is_infinite(c.lo):
        start, step = c.lo, eps
    elif not is_infinite(c.hi):
        start, step = c.hi, -eps
    else:
        start, step = Fraction(0), eps
    for k in range(1, l + 2):
        x = start + k * step
        if c.admits(x):
            return x
    return None


def _multiples_in_range(c: NumericConstraints):
    m = c.modulus
    first = math.ceil(c.lo / m)
    last = math.floor(c.hi / m)
    if c.lo_open and first * m == c.lo:
        first += 1
    if c.hi_open and last * m == c.hi:
        last -= 1
    return first, last


def _scan_period(c: NumericConstraints) -> int:
    """Period, in multiples of the modulus, of the pattern of excluded multiples."""
    period = 1
    for n in c.excluded:
        period = math.lcm(period, (n / c.modulus).numerator)
    return period


def gen_number_constraints(c: NumericConstraints, deadline_check=None):
    if c.empty_interval:
        return None
    if c.modulus is not None and c.modulus == 0:
        return Fraction(0) if c.admits(Fraction(0)) else None
    if c.modulus is not None and any(is_multiple(c.modulus, n) for n in c.excluded):
        return None  # every multiple of the modulus is excluded
    if not is_infinite(c.lo) and not is_infinite(c.hi) and c.lo == c.hi:
        return c.lo if c.admits(c.lo) else None
    if c.modulus is None:
        return _without_modulus(c)
    m = c.modulus
    if not is_infinite(c.lo) and not is_infinite(c.hi):
        first, last = _multiples_in_range(c)
        limit = min(last, first + _scan_period(c) - 1)
        for k in range(first, limit + 1):
            if deadline_check is not None and (k - first) % 4096 == 0:
                deadline_check()
            if c.admits(k * m):
                return k * m
        return None
    if not c.excluded:
        if not is_infinite(c.lo):
            return _multiples_in_range_from_lo(c)
        if not is_infinite(c.hi):
            return _multiples_in_range_from_hi(c)
        return Fraction(0)
    # write the modulus and excluded values over a common denominator d; a
    # prime p above every excluded numerator gives p*M, which no excluded
    # value divides because none divides M itself
    d = math.lcm(m.denominator, *(n.denominator for n in c.excluded))
    bound = max(int(n * d) for n in c.excluded)
    if not is_infinite(c.lo) or is_infinite(c.hi):
        if not is_infinite(c.lo):
            bound = max(bound, math.floor(c.lo / m))
        p = nextprime(bound)
        while not c.admits(p * m):
            p = nextprime(p)
        return p * m
    bound = max(bound, math.floor(-c.hi / m))
    p = nextprime(bound)
    while not c.admits(-p * m):
        p = nextprime(p)
    return -p * m


def _multiples_in_range_from_lo(c):
    k = math.ceil(c.lo / c.modulus)
    if c.lo_open and k * c.modulus == c.lo:
        k += 1
    return k * c.modulus


def _multiples_in_range_from_hi(c):
    k = math.floor(c.hi / c.modulus)
    if c.hi_open and k * c.modulus == c.hi:
        k -= 1
    return k * c.modulus


def gen_number(itos, deadline_check=None):
    """A JSON number (Decimal) satisfying all numeric assertions, or None."""
    x = gen_number_constraints(merge(itos), deadline_check)
    if x is None:
        return None
    return _to_json_number(x)


def _to_json_number(x: Fraction):
    try:
        return fraction_to_decimal(x)
    except ValueError:
        # never produced by the constructions above (all denominators come
        # from decimal inputs), kept as a guard
        return None

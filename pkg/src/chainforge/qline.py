"""Exact arithmetic on Q and the partition {J_n : n in omega} into dense classes.

The class of a rational is read off its reduced denominator: integers land in
class 0, everything else in the prime-index of the smallest prime dividing the
denominator.  Each class {a/p^k : ...} is dense in every interval and the rule
is shift-invariant, so the classes are dense and coinitial in Q.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Optional

Rat = Fraction

_PRIMES: list[int] = [2, 3, 5, 7, 11, 13]


def _smallest_prime_factor(n: int) -> int:
    if n % 2 == 0:
        return 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return f
        f += 2
    return n


def _prime_index(p: int) -> int:
    while _PRIMES[-1] < p:
        c = _PRIMES[-1] + 2
        while _smallest_prime_factor(c) != c:
            c += 2
        _PRIMES.append(c)
    return _PRIMES.index(p)


def denominator_class(d: int) -> int:
    """Class index shared by every rational whose reduced denominator is d."""
    if d < 1:
        raise ValueError(f"denominator must be positive, got {d}")
    if d == 1:
        return 0
    return _prime_index(_smallest_prime_factor(d))


def jclass(q: Rat) -> int:
    """Index n of the unique class J_n containing q."""
    return denominator_class(Fraction(q).denominator)


@dataclass(frozen=True)
class Window:
    """Finite viewport on Q: open interval with a denominator cap.

    lo/hi may be None, standing for -infinity / +infinity.
    """

    lo: Optional[Rat]
    hi: Optional[Rat]
    denom_bound: int = 64

    def __post_init__(self) -> None:
        if self.denom_bound < 1:
            raise ValueError("denom_bound must be >= 1")
        if self.lo is not None and self.hi is not None and not self.lo < self.hi:
            raise ValueError(f"empty window: lo={self.lo} hi={self.hi}")

    @property
    def bounded(self) -> bool:
        return self.lo is not None and self.hi is not None

    def contains(self, q: Rat) -> bool:
        if self.lo is not None and not q > self.lo:
            return False
        if self.hi is not None and not q < self.hi:
            return False
        return Fraction(q).denominator <= self.denom_bound


def rationals_in(lo: Rat, hi: Rat, denom_bound: int) -> Iterator[Rat]:
    """All q in the open interval (lo, hi) with reduced denominator <= bound,
    emitted denominator-major, value-minor.  Each value appears once, at its
    reduced denominator."""
    for d in range(1, denom_bound + 1):
        k_lo = math.floor(lo * d) + 1
        k_hi = math.ceil(hi * d) - 1
        for k in range(k_lo, k_hi + 1):
            if math.gcd(k, d) == 1:
                q = Fraction(k, d)
                if lo < q < hi:
                    yield q


def window_members(n: int, w: Window) -> list[Rat]:
    """J_n restricted to the window, ascending."""
    if not w.bounded:
        raise ValueError("window_members needs a bounded window")
    assert w.lo is not None and w.hi is not None
    out = [
        q
        for q in rationals_in(w.lo, w.hi, w.denom_bound)
        if denominator_class(q.denominator) == n
    ]
    out.sort()
    return out


def coinitial_witness(n: int, bound: Rat) -> Rat:
    """Canonical element of J_n below `bound`: smallest denominator, then
    largest value."""
    d = 1
    while True:
        if denominator_class(d) == n:
            # largest k/d < bound with gcd(k, d) = 1
            k = math.ceil(bound * d) - 1
            while math.gcd(k, d) != 1 or not Fraction(k, d) < bound:
                k -= 1
            return Fraction(k, d)
        d += 1


def format_rat(q: Rat) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}" if q.denominator != 1 else str(q.numerator)


def parse_rat(s: str) -> Rat:
    return Fraction(s.strip())

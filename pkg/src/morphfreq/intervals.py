"""Exact rational intervals.

All endpoints are `fractions.Fraction`, so ordinary interval arithmetic is
exact; `outward` exists to trade precision for bounded bit growth without
ever shrinking an enclosure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

RationalLike = Fraction | int


@dataclass(frozen=True)
class Interval:
    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"empty interval [{self.lo}, {self.hi}]")

    @classmethod
    def point(cls, x: RationalLike) -> "Interval":
        x = Fraction(x)
        return cls(x, x)

    @classmethod
    def hull_of(cls, values: Iterable[RationalLike]) -> "Interval":
        vals = [Fraction(v) for v in values]
        if not vals:
            raise ValueError("hull of no values")
        return cls(min(vals), max(vals))

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def contains(self, x: RationalLike) -> bool:
        return self.lo <= x <= self.hi

    def intersects(self, other: "Interval") -> bool:
        return self.lo <= other.hi and other.lo <= self.hi

    def intersect(self, other: "Interval") -> "Interval | None":
        lo = max(self.lo, other.lo)
        hi = min(self.hi, other.hi)
        if lo > hi:
            return None
        return Interval(lo, hi)

    def hull(self, other: "Interval") -> "Interval":
        return Interval(min(self.lo, other.lo), max(self.hi, other.hi))

    def distance_to(self, x: RationalLike) -> Fraction:
        """Distance from a point to the interval; 0 when inside."""
        x = Fraction(x)
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return Fraction(0)

    def gap(self, other: "Interval") -> Fraction:
        """Distance between two intervals; 0 when they intersect."""
        if self.intersects(other):
            return Fraction(0)
        return max(other.lo - self.hi, self.lo - other.hi)

    def __add__(self, other: "Interval") -> "Interval":
        return Interval(self.lo + other.lo, self.hi + other.hi)

    def scale(self, c: RationalLike) -> "Interval":
        """Multiply by a non-negative exact scalar."""
        c = Fraction(c)
        if c < 0:
            raise ValueError("scale factor must be non-negative")
        return Interval(self.lo * c, self.hi * c)

    def widen(self, r: RationalLike) -> "Interval":
        """Symmetric enlargement by a non-negative radius."""
        r = Fraction(r)
        if r < 0:
            raise ValueError("radius must be non-negative")
        return Interval(self.lo - r, self.hi + r)

    def clamp(self, lo: RationalLike = 0, hi: RationalLike = 1) -> "Interval":
        """Intersect with a known enclosing range, e.g. [0, 1] for frequencies."""
        return Interval(min(max(self.lo, Fraction(lo)), Fraction(hi)),
                        max(min(self.hi, Fraction(hi)), Fraction(lo)))

    def outward(self, bits: int) -> "Interval":
        """Round endpoints outward onto the 2^-bits grid (caps denominator size)."""
        scale = 1 << bits
        lo = Fraction(math.floor(self.lo * scale), scale)
        hi = Fraction(math.ceil(self.hi * scale), scale)
        return Interval(lo, hi)


def isum(intervals: Iterable[Interval]) -> Interval:
    """Exact interval sum; the empty sum is [0, 0]."""
    lo = Fraction(0)
    hi = Fraction(0)
    for iv in intervals:
        lo += iv.lo
        hi += iv.hi
    return Interval(lo, hi)


def quotient(num: Interval, den: Interval) -> Interval:
    """Outward interval quotient; the denominator must be strictly positive."""
    if den.lo <= 0:
        raise ZeroDivisionError("interval quotient needs a positive denominator")
    if num.lo < 0:
        raise ValueError("quotient defined here for non-negative numerators only")
    return Interval(num.lo / den.hi, num.hi / den.lo)

"""Points of projective 5-space with exact rational coordinates."""

from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

from .poly import NVARS


class ZeroPoint(ValueError):
    pass


class PointParseError(ValueError):
    pass


def parse_rational(text: str) -> Fraction:
    """Parse ``p``, ``-p`` or ``p/q``."""
    text = text.strip()
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", text):
        raise PointParseError(f"not a rational number: {text!r}")
    try:
        return Fraction(text)
    except ZeroDivisionError:
        raise PointParseError(f"zero denominator in {text!r}") from None


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class ProjectivePoint:
    """A point [c0:...:c5], stored as its canonical integer representative.

    The representative has coprime integer entries whose first nonzero
    entry is positive, so two points are equal iff their coordinates are
    proportional.
    """

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence):
        if len(coords) != NVARS:
            raise ValueError(f"expected {NVARS} coordinates, got {len(coords)}")
        qs = [Fraction(c) for c in coords]
        if not any(qs):
            raise ZeroPoint("all homogeneous coordinates are zero")
        den = lcm(*(q.denominator for q in qs))
        ints = [int(q * den) for q in qs]
        g = gcd(*ints)
        ints = [v // g for v in ints]
        if next(v for v in ints if v) < 0:
            ints = [-v for v in ints]
        self.coords = tuple(ints)

    @classmethod
    def parse(cls, text: str) -> "ProjectivePoint":
        m = re.fullmatch(r"\s*\[(.*)\]\s*", text)
        if not m:
            raise PointParseError(f"point must look like [c0:c1:c2:c3:c4:c5], got {text!r}")
        parts = m.group(1).split(":")
        if len(parts) != NVARS:
            raise PointParseError(f"expected {NVARS} coordinates, got {len(parts)}")
        return cls([parse_rational(p) for p in parts])

    def pivot(self) -> int:
        """Index of the first nonzero coordinate."""
        return next(i for i, v in enumerate(self.coords) if v)

    def affine(self, pivot: int | None = None) -> tuple:
        """Coordinates scaled so the pivot entry is 1."""
        i = self.pivot() if pivot is None else pivot
        p = self.coords[i]
        if p == 0:
            raise ValueError(f"coordinate {i} vanishes at this point")
        return tuple(Fraction(v, p) for v in self.coords)

    def __eq__(self, other):
        if not isinstance(other, ProjectivePoint):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def __iter__(self):
        return iter(self.coords)

    def __str__(self):
        return "[" + ":".join(str(v) for v in self.coords) + "]"

    def __repr__(self):
        return f"ProjectivePoint({self})"


def proportional(a: Sequence, b: Sequence) -> bool:
    """Exact projective equality of two coordinate vectors by cross-multiplication."""
    if not any(a) or not any(b):
        return False
    n = len(a)
    return all(a[i] * b[j] == a[j] * b[i] for i in range(n) for j in range(i + 1, n))

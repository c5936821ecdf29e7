"""Generators for the three extremal constructions and their closed forms.

Coordinates are emitted exactly as the constructions list them, already in
canonical order, so no renumbering is applied.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .core import InstancePair, Point, TomographyError


class InvalidParameters(TomographyError):
    pass


class Family(enum.Enum):
    EXAMPLE1 = "example1"
    EXAMPLE2 = "example2"
    EXAMPLE3 = "example3"


def _cells(f1, f2, row, lo, hi, where):
    for j in range(lo, hi + 1):
        if "1" in where:
            f1.add(Point(row, j))
        if "2" in where:
            f2.add(Point(row, j))


def gen_example1(m: int) -> InstancePair:
    """Disjoint pair with alpha = 2**m and |F1| = 2**m + m * 2**(m-1)."""
    if m < 1:
        raise InvalidParameters("invalid parameters: need m >= 1")
    f1, f2 = set(), set()
    _cells(f1, f2, 1, 1, 2**m, "1")
    _cells(f1, f2, 1, 2**m + 1, 2 ** (m + 1), "2")
    for l in range(m):
        for i in range(2**l + 1, 2 ** (l + 1) + 1):
            _cells(f1, f2, i, 1, 2 ** (m - l - 1), "1")
            _cells(f1, f2, i, 2 ** (m - l - 1) + 1, 2 ** (m - l), "2")
    return InstancePair(frozenset(f1), frozenset(f2))


def gen_example2(k: int, m: int) -> InstancePair:
    """Overlapping pair with p = 2**k - 1 and alpha = 2**m - 2**k + 1."""
    if k < 2 or m < 2 * k - 2:
        raise InvalidParameters("invalid parameters: need k >= 2 and m >= 2k - 2")
    f1, f2 = set(), set()
    h = 2 ** (k - 1)
    _cells(f1, f2, 1, 1, h, "12")
    _cells(f1, f2, 1, h + 1, 2**m - h + 1, "1")
    _cells(f1, f2, 1, 2**m - h + 2, 2 ** (m + 1) - 2**k - h + 2, "2")
    for l in range(0, k - 1):
        split = 2 ** (m - l - 1) - 2 ** (k - l - 2) + 1
        for i in range(2**l + 1, 2 ** (l + 1) + 1):
            _cells(f1, f2, i, 1, 1, "12")
            _cells(f1, f2, i, 2, split, "1")
            _cells(f1, f2, i, split + 1, 2 ** (m - l) - 2 ** (k - l - 1) + 1, "2")
    # ranges below are empty when m = 2k - 2
    for l in range(k - 1, m - k + 1):
        for i in range(2**l + 1, 2 ** (l + 1) + 1):
            _cells(f1, f2, i, 1, 2 ** (m - l - 1), "1")
            _cells(f1, f2, i, 2 ** (m - l - 1) + 1, 2 ** (m - l), "2")
    for l in range(m - k + 1, m):
        lo = 2**l - 2 ** (l - m + k - 1) + 2
        hi = 2 ** (l + 1) - 2 ** (l - m + k) + 1
        for i in range(lo, hi + 1):
            _cells(f1, f2, i, 1, 2 ** (m - l - 1), "1")
            _cells(f1, f2, i, 2 ** (m - l - 1) + 1, 2 ** (m - l), "2")
    return InstancePair(frozenset(f1), frozenset(f2))


def gen_example3(n: int, alpha: int) -> InstancePair:
    """Large-overlap pair with |F1| - p = 2 * n * alpha."""
    if n < 1 or alpha < 1:
        raise InvalidParameters("invalid parameters: need N >= 1 and alpha >= 1")
    f1, f2 = set(), set()
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            f1.add(Point(i, j))
            f2.add(Point(i, j))
    for i in range(1, n + 1):
        bands = [
            (n + 1, n + (n - i) * alpha, (f1, f2)),
            (n + (n - i) * alpha + 1, n + (n - i + 1) * alpha, (f1,)),
            (n + (n - i + 1) * alpha + 1, n + (n - i + 2) * alpha, (f2,)),
        ]
        for lo, hi, targets in bands:
            for j in range(lo, hi + 1):
                for s in targets:
                    s.add(Point(i, j))
                    s.add(Point(j, i))
    for t in range(1, alpha + 1):
        f2.add(Point(n + t, n + alpha + 1 - t))
    return InstancePair(frozenset(f1), frozenset(f2))


@dataclass(frozen=True)
class ClosedForm:
    alpha: int
    p: int
    size1: int


def example1_closed_form(m: int) -> ClosedForm:
    return ClosedForm(alpha=2**m, p=0, size1=2**m + m * 2 ** (m - 1))


def example2_closed_form(k: int, m: int) -> ClosedForm:
    return ClosedForm(
        alpha=2**m - 2**k + 1,
        p=2**k - 1,
        size1=2**m + m * 2 ** (m - 1) + 2 ** (k - 1) - k * 2 ** (k - 1),
    )


def example3_closed_form(n: int, alpha: int) -> ClosedForm:
    return ClosedForm(alpha=alpha, p=n * n + n * n * alpha - n * alpha, size1=n * n + n * n * alpha + n * alpha)


def example2_log_form(alpha: int, p: int) -> float:
    """|F1| of Example 2 rewritten through alpha and p with base-2 logs."""
    s = alpha + p
    return s + s / 2 * math.log2(s) + (p + 1) / 2 - (p + 1) / 2 * math.log2(p + 1)


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    params: tuple[int, ...]

    def generate(self) -> InstancePair:
        return _GEN[self.family](*self.params)

    def closed_form(self) -> ClosedForm:
        return _CLOSED[self.family](*self.params)


_GEN = {Family.EXAMPLE1: gen_example1, Family.EXAMPLE2: gen_example2, Family.EXAMPLE3: gen_example3}
_CLOSED = {
    Family.EXAMPLE1: example1_closed_form,
    Family.EXAMPLE2: example2_closed_form,
    Family.EXAMPLE3: example3_closed_form,
}

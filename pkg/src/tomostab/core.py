"""Lattice point sets, line sums and the basic stability metrics.

Coordinates are 1-based ``(row, col)`` pairs with rows growing downwards,
the usual matrix convention.  Point sets are plain ``frozenset`` objects of
:class:`Point`; every operation here is a pure function.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple


class TomographyError(ValueError):
    """Base class for domain errors raised by this package."""


class NotUniqueError(TomographyError):
    """F1 is not uniquely determined by its line sums."""


class SizeMismatchError(TomographyError):
    """|F1| and |F2| differ where equal sizes are required."""


class InfeasibleError(TomographyError):
    """No binary image realizes the given line sums."""


class Point(NamedTuple):
    row: int
    col: int


PointSet = frozenset  # frozenset[Point]


def point_set(points: Iterable[tuple[int, int]]) -> frozenset[Point]:
    """Build a point set, rejecting non-positive coordinates."""
    out = set()
    for r, c in points:
        if r < 1 or c < 1:
            raise TomographyError(f"coordinates must be >= 1, got ({r}, {c})")
        out.add(Point(int(r), int(c)))
    return frozenset(out)


def _trim(values: list[int]) -> tuple[int, ...]:
    while values and values[-1] == 0:
        values.pop()
    return tuple(values)


@dataclass(frozen=True)
class Projections:
    """Row and column sums, 1-based (``rows[0]`` is row 1), zeros trimmed."""

    rows: tuple[int, ...]
    cols: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "rows", _trim(list(self.rows)))
        object.__setattr__(self, "cols", _trim(list(self.cols)))

    def row(self, i: int) -> int:
        return self.rows[i - 1] if 1 <= i <= len(self.rows) else 0

    def col(self, j: int) -> int:
        return self.cols[j - 1] if 1 <= j <= len(self.cols) else 0

    @property
    def total(self) -> int:
        return sum(self.rows)


def projections(points: Iterable[Point]) -> Projections:
    rc = Counter()
    cc = Counter()
    for r, c in points:
        rc[r] += 1
        cc[c] += 1
    rows = [rc[i] for i in range(1, max(rc, default=0) + 1)]
    cols = [cc[j] for j in range(1, max(cc, default=0) + 1)]
    return Projections(tuple(rows), tuple(cols))


def conjugate(parts: Iterable[int]) -> tuple[int, ...]:
    """Conjugate partition: entry j counts the parts that are >= j."""
    parts = [x for x in parts if x > 0]
    if not parts:
        return ()
    return tuple(sum(1 for x in parts if x >= j) for j in range(1, max(parts) + 1))


def is_uniquely_determined(pr: Projections) -> bool:
    """Decide uniqueness from the line sums alone.

    A binary image is the only realization of its line sums exactly when
    the sorted column sums are the conjugate of the sorted row sums.
    """
    if sum(pr.rows) != sum(pr.cols):
        raise TomographyError("not a projection pair")
    rows = sorted((x for x in pr.rows if x), reverse=True)
    cols = sorted((x for x in pr.cols if x), reverse=True)
    return conjugate(rows) == tuple(cols)


def triangular_realization(pr: Projections) -> frozenset[Point]:
    if not is_uniquely_determined(pr):
        raise NotUniqueError("projections are not uniquely determined")
    if list(pr.rows) != sorted(pr.rows, reverse=True) or list(pr.cols) != sorted(pr.cols, reverse=True):
        raise TomographyError("projections are not in non-increasing order")
    return frozenset(Point(i, j) for i, r in enumerate(pr.rows, 1) for j in range(1, r + 1))


def is_triangular(points: frozenset[Point]) -> bool:
    """True if every row i is occupied exactly in columns 1..r_i with r non-increasing."""
    pr = projections(points)
    if list(pr.rows) != sorted(pr.rows, reverse=True) or 0 in pr.rows:
        return False
    return all(Point(i, j) in points for i, r in enumerate(pr.rows, 1) for j in range(1, r + 1))


@dataclass(frozen=True)
class Metrics:
    alpha: int
    p: int
    u: int
    a: int
    b: int
    size1: int
    size2: int

    @property
    def error(self) -> int:
        return 2 * self.alpha


def line_sum_error(f1: Iterable[Point], f2: Iterable[Point]) -> int:
    """Total L1 distance between the row and column sums of two sets."""
    r = defaultdict(int)
    c = defaultdict(int)
    for i, j in f1:
        r[i] += 1
        c[j] += 1
    for i, j in f2:
        r[i] -= 1
        c[j] -= 1
    return sum(map(abs, r.values())) + sum(map(abs, c.values()))


def metrics(f1: frozenset[Point], f2: frozenset[Point]) -> Metrics:
    err = line_sum_error(f1, f2)
    if err % 2:
        raise AssertionError("parity violated")
    sym = len(f1 ^ f2)
    return Metrics(
        alpha=err // 2,
        p=len(f1 & f2),
        # u is half of |F1 xor F2|; for unequal sizes the xor can be odd and u is floored
        u=sym // 2,
        a=len({r for r, _ in f1}),
        b=len({c for _, c in f1}),
        size1=len(f1),
        size2=len(f2),
    )


@dataclass(frozen=True)
class InstancePair:
    """An image F1 together with a candidate reconstruction F2."""

    f1: frozenset[Point]
    f2: frozenset[Point]

    @classmethod
    def of(cls, f1, f2) -> "InstancePair":
        return cls(point_set(f1), point_set(f2))

    @cached_property
    def metrics(self) -> Metrics:
        return metrics(self.f1, self.f2)

    @property
    def only1(self) -> frozenset[Point]:
        return self.f1 - self.f2

    @property
    def only2(self) -> frozenset[Point]:
        return self.f2 - self.f1

    def f1_unique(self) -> bool:
        return is_uniquely_determined(projections(self.f1))


def _stable_order(n: int, key_sums: Counter) -> tuple[int, ...]:
    order = sorted(range(1, n + 1), key=lambda i: -key_sums[i])
    perm = [0] * n
    for new, old in enumerate(order, 1):
        perm[old - 1] = new
    return tuple(perm)


def canonicalize(f1: frozenset[Point], f2: frozenset[Point]):
    """Renumber rows and columns so F1's line sums are non-increasing.

    Returns ``(row_perm, col_perm, pair)`` where ``row_perm[i - 1]`` is the
    new index of old row ``i``.  The permutations cover every index up to the
    largest one occupied by either set and are applied to both sets.  Equal
    sums keep their original relative order, so a canonical pair maps to
    itself under identity permutations.
    """
    if not f1:
        raise TomographyError("F1 empty")
    both = list(f1) + list(f2)
    nrows = max(r for r, _ in both)
    ncols = max(c for _, c in both)
    rsum = Counter(r for r, _ in f1)
    csum = Counter(c for _, c in f1)
    rp = _stable_order(nrows, rsum)
    cp = _stable_order(ncols, csum)

    def move(s):
        return frozenset(Point(rp[r - 1], cp[c - 1]) for r, c in s)

    return rp, cp, InstancePair(move(f1), move(f2))


def is_canonical(pair: InstancePair) -> bool:
    rp, cp, _ = canonicalize(pair.f1, pair.f2)
    return rp == tuple(range(1, len(rp) + 1)) and cp == tuple(range(1, len(cp) + 1))


def gale_ryser_feasible(pr: Projections) -> bool:
    """Gale-Ryser test: sorted column sums are dominated by the conjugate of the row sums."""
    if sum(pr.rows) != sum(pr.cols):
        return False
    conj = conjugate(pr.rows)
    cols = sorted((c for c in pr.cols if c), reverse=True)
    acc_c = acc_k = 0
    for k, c in enumerate(cols):
        acc_c += c
        acc_k += conj[k] if k < len(conj) else 0
        if acc_c > acc_k:
            return False
    return True


def ryser_reconstruct(pr: Projections) -> frozenset[Point]:
    """Greedy reconstruction of some image with the given line sums.

    Columns are filled in order of non-increasing sum; each column takes the
    rows with the largest residual row sums, ties going to the smaller row.
    """
    if not gale_ryser_feasible(pr):
        raise InfeasibleError("no realization")
    residual = list(pr.rows)
    out = []
    order = sorted(range(1, len(pr.cols) + 1), key=lambda j: -pr.col(j))
    for j in order:
        need = pr.col(j)
        chosen = sorted(range(len(residual)), key=lambda i: (-residual[i], i))[:need]
        for i in chosen:
            if residual[i] == 0:
                raise InfeasibleError("no realization")
            residual[i] -= 1
            out.append(Point(i + 1, j))
    return frozenset(out)

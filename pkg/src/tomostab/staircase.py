"""Staircase chains and the decomposition of F1 xor F2.

With F1 in triangular shape, every point of F2 \\ F1 lies to the right of
the F1 points in its row and below the F1 points in its column.  A staircase
therefore climbs from bottom-left to top-right: an F1-only point links
rightwards (row link) to an F2-only point, and an F2-only point links
upwards (column link) to an F1-only point.
"""

from __future__ import annotations

import bisect
import enum
from collections import Counter, defaultdict
from dataclasses import dataclass
from functools import lru_cache

from .core import (
    InstancePair,
    NotUniqueError,
    Point,
    SizeMismatchError,
    TomographyError,
    is_triangular,
    is_uniquely_determined,
    projections,
)


class Label(enum.IntEnum):
    F1_ONLY = 1
    F2_ONLY = 2


@dataclass(frozen=True)
class Staircase:
    points: tuple[Point, ...]
    labels: tuple[Label, ...]

    def __len__(self):
        return len(self.points)

    @property
    def first(self) -> tuple[Point, Label]:
        return self.points[0], self.labels[0]

    @property
    def last(self) -> tuple[Point, Label]:
        return self.points[-1], self.labels[-1]

    def endpoint_labels(self) -> tuple[Label, Label]:
        """Labels at both ends; a one-point staircase contributes its label twice."""
        return self.labels[0], self.labels[-1]

    def validate(self) -> None:
        """Raise ``TomographyError`` if the chain breaks alternation or link geometry."""
        if len(self.points) != len(self.labels) or not self.points:
            raise TomographyError("empty or malformed staircase")
        for (p, lp), (q, lq) in zip(zip(self.points, self.labels), zip(self.points[1:], self.labels[1:])):
            if lp == lq:
                raise TomographyError(f"labels do not alternate at {p} -> {q}")
            if lp == Label.F1_ONLY and not (q.row == p.row and q.col > p.col):
                raise TomographyError(f"F1 -> F2 link must go right along a row: {p} -> {q}")
            if lp == Label.F2_ONLY and not (q.col == p.col and q.row < p.row):
                raise TomographyError(f"F2 -> F1 link must go up along a column: {p} -> {q}")


@dataclass(frozen=True)
class Decomposition:
    staircases: tuple[Staircase, ...]
    source: InstancePair

    def __len__(self):
        return len(self.staircases)

    def points(self) -> list[Point]:
        return [p for s in self.staircases for p in s.points]

    def endpoint_counts(self) -> Counter:
        c = Counter()
        for s in self.staircases:
            c.update(s.endpoint_labels())
        return c


def tau(part1, part2) -> int:
    """Signed line-sum imbalance of a labelled subset A of F1 xor F2.

    ``part1`` holds the points of A in F1 \\ F2 and ``part2`` those in
    F2 \\ F1.  Returns the sum over rows and columns of the absolute
    difference between the F1-labelled and F2-labelled counts.
    """
    rho = defaultdict(int)
    sigma = defaultdict(int)
    for r, c in part1:
        rho[r] += 1
        sigma[c] += 1
    for r, c in part2:
        rho[r] -= 1
        sigma[c] -= 1
    return sum(map(abs, rho.values())) + sum(map(abs, sigma.values()))


class _Index:
    """Unused points of one label, grouped by row and by column, kept sorted."""

    def __init__(self, points):
        self.by_row = defaultdict(list)
        self.by_col = defaultdict(list)
        for r, c in sorted(points):
            self.by_row[r].append(c)
            self.by_col[c].append(r)

    def remove(self, p: Point) -> None:
        row = self.by_row[p.row]
        row.pop(bisect.bisect_left(row, p.col))
        col = self.by_col[p.col]
        col.pop(bisect.bisect_left(col, p.row))

    def right_of(self, p: Point):
        row = self.by_row.get(p.row)
        if row:
            k = bisect.bisect_right(row, p.col)
            if k < len(row):
                return Point(p.row, row[k])
        return None

    def left_of(self, p: Point):
        row = self.by_row.get(p.row)
        if row:
            k = bisect.bisect_left(row, p.col)
            if k > 0:
                return Point(p.row, row[k - 1])
        return None

    def above(self, p: Point):
        col = self.by_col.get(p.col)
        if col:
            k = bisect.bisect_left(col, p.row)
            if k > 0:
                return Point(col[k - 1], p.col)
        return None

    def below(self, p: Point):
        col = self.by_col.get(p.col)
        if col:
            k = bisect.bisect_right(col, p.row)
            if k < len(col):
                return Point(col[k], p.col)
        return None


@lru_cache(maxsize=256)
def _f1_shape(f1: frozenset) -> str:
    if not is_uniquely_determined(projections(f1)):
        return "not unique"
    if not is_triangular(f1):
        return "not triangular"
    return "ok"


def _check_decomposable(pair: InstancePair) -> None:
    if len(pair.f1) != len(pair.f2):
        raise SizeMismatchError("sizes differ; call equalize first")
    status = _f1_shape(pair.f1)
    if status == "not unique":
        raise NotUniqueError("F1 is not uniquely determined by its line sums")
    if status == "not triangular":
        raise TomographyError("F1 is not in triangular shape; canonicalize the pair first")


def decompose(pair: InstancePair, check_tau: bool = False) -> Decomposition:
    """Split F1 xor F2 into staircases that cannot be extended at either end.

    Seeds are taken in (row, col) order.  Each end is extended to the
    nearest unused point of the opposite label until neither end extends.
    With ``check_tau`` the imbalance of the remaining set is recomputed after
    every removal and must drop by exactly two.
    """
    _check_decomposable(pair)
    only1 = pair.only1
    only2 = pair.only2
    idx = {Label.F1_ONLY: _Index(only1), Label.F2_ONLY: _Index(only2)}
    seeds = sorted([(p, Label.F1_ONLY) for p in only1] + [(p, Label.F2_ONLY) for p in only2])
    used = set()
    left1, left2 = set(only1), set(only2)
    current_tau = tau(left1, left2) if check_tau else None
    out = []

    for seed, lab in seeds:
        if seed in used:
            continue
        used.add(seed)
        idx[lab].remove(seed)
        chain = [(seed, lab)]
        # top-right end
        while True:
            p, lp = chain[-1]
            if lp == Label.F1_ONLY:
                q, lq = idx[Label.F2_ONLY].right_of(p), Label.F2_ONLY
            else:
                q, lq = idx[Label.F1_ONLY].above(p), Label.F1_ONLY
            if q is None:
                break
            used.add(q)
            idx[lq].remove(q)
            chain.append((q, lq))
        # bottom-left end
        head = []
        while True:
            p, lp = head[-1] if head else chain[0]
            if lp == Label.F1_ONLY:
                q, lq = idx[Label.F2_ONLY].below(p), Label.F2_ONLY
            else:
                q, lq = idx[Label.F1_ONLY].left_of(p), Label.F1_ONLY
            if q is None:
                break
            used.add(q)
            idx[lq].remove(q)
            head.append((q, lq))
        chain = head[::-1] + chain
        stair = Staircase(tuple(p for p, _ in chain), tuple(lab for _, lab in chain))
        out.append(stair)
        if check_tau:
            for p, lp in chain:
                (left1 if lp == Label.F1_ONLY else left2).discard(p)
            new_tau = tau(left1, left2)
            if new_tau != current_tau - 2:
                raise AssertionError(f"tau dropped from {current_tau} to {new_tau}")
            current_tau = new_tau

    return Decomposition(tuple(out), pair)


def _row_col_counts(s):
    rows = Counter(r for r, _ in s)
    cols = Counter(c for _, c in s)
    return rows, cols


def rebalance(pair: InstancePair) -> InstancePair:
    """Move F2 \\ F1 points between rows until F1 and F2 have equal row sums.

    Each move takes an F2-only point out of a row where F2 has a surplus
    and drops it on an empty cell of a row where F2 has a deficit.  The row
    error falls by two per move and the column error rises by at most two,
    so alpha never increases; p and |F1 xor F2| are unchanged.
    """
    if len(pair.f1) != len(pair.f2):
        raise SizeMismatchError("sizes differ; call equalize first")
    f1 = pair.f1
    f2 = set(pair.f2)
    r1, c1 = _row_col_counts(f1)
    r2, c2 = _row_col_counts(f2)
    while True:
        surplus = sorted(i for i in r2 if r2[i] > r1[i])
        if not surplus:
            break
        deficit = sorted(i for i in r1 if r1[i] > r2[i])
        x, x2 = surplus[0], deficit[0]
        movable = sorted(q for q in f2 if q.row == x and q not in f1)
        src = next((q for q in movable if c2[q.col] > c1[q.col]), movable[-1])
        f2.remove(src)
        r2[src.row] -= 1
        c2[src.col] -= 1
        width = max(c for _, c in f1 | f2) + 1
        empty = [j for j in range(1, width + 1) if Point(x2, j) not in f1 and Point(x2, j) not in f2]
        dst = next((j for j in empty if c2[j] < c1[j]), empty[0])
        f2.add(Point(x2, dst))
        r2[x2] += 1
        c2[dst] += 1
    return InstancePair(f1, frozenset(f2))


def equalize(pair: InstancePair) -> InstancePair:
    """Add or delete F2 points until |F2| = |F1| without increasing alpha.

    When F2 is too small, points go into a row where F2 is short, in the
    first free column beyond F1's last column; alpha is unchanged.  When F2 is
    too large, F2-only points are deleted from rows where F2 has a surplus.
    """
    f1 = pair.f1
    f2 = set(pair.f2)
    r1, c1 = _row_col_counts(f1)
    r2, c2 = _row_col_counts(f2)
    b = max((c for _, c in f1), default=0)
    while len(f2) < len(f1):
        i = min(i for i in r1 if r1[i] > r2[i])
        j = b + 1
        while Point(i, j) in f2:
            j += 1
        f2.add(Point(i, j))
        r2[i] += 1
        c2[j] += 1
    while len(f2) > len(f1):
        i = min(i for i in r2 if r2[i] > r1[i])
        cands = sorted(q for q in f2 if q.row == i and q not in f1)
        q = next((q for q in cands if c2[q.col] > c1[q.col]), cands[-1])
        f2.remove(q)
        r2[i] -= 1
        c2[q.col] -= 1
    return InstancePair(f1, frozenset(f2))

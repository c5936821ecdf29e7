"""Exhaustive desk-scale verification.

Every uniquely determined F1 up to a cell budget is paired with every F2
inside a bounding box and the decomposition and bound checks are run on
each pair.  Work units are individual F1 shapes; summaries merge
commutatively, so serial and parallel runs print the same thing.
"""

from __future__ import annotations

import enum
import itertools
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterator, Optional

from .bounds import BoundEntry, report, size_entries, u_squared_bound
from .core import InstancePair, Point, Projections, TomographyError
from .staircase import Label, decompose, equalize, rebalance

GUARD_LIMIT = 10**8


class GuardError(TomographyError):
    """Enumeration would exceed the desk-scale guard."""


class Mode(enum.Enum):
    DISJOINT = "disjoint"
    GENERAL = "general"
    UNEQUAL = "unequal"


@dataclass(frozen=True)
class EnumSpec:
    max_cells: int = 6
    box: tuple[int, int] = (6, 6)
    mode: Mode = Mode.GENERAL

    def __post_init__(self):
        if self.max_cells < 1:
            raise TomographyError("max_cells must be >= 1")
        if self.box[0] < self.max_cells or self.box[1] < self.max_cells:
            raise TomographyError("box must be at least max_cells x max_cells")


def partitions(n: int) -> list[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in lexicographic order."""

    def gen(rest, cap):
        if rest == 0:
            yield ()
            return
        for first in range(1, min(rest, cap) + 1):
            for tail in gen(rest - first, first):
                yield (first,) + tail

    return sorted(gen(n, n))


def shape(parts) -> frozenset[Point]:
    return frozenset(Point(i, j) for i, r in enumerate(parts, 1) for j in range(1, r + 1))


def enumerate_unique_sets(max_cells: int) -> Iterator[frozenset[Point]]:
    for n in range(1, max_cells + 1):
        for lam in partitions(n):
            yield shape(lam)


def _sizes(n: int, mode: Mode) -> list[int]:
    if mode is Mode.UNEQUAL:
        return [s for s in (n - 1, n + 1) if s >= 0]
    return [n]


def counterpart_count(f1, box, mode: Mode) -> int:
    cells = box[0] * box[1]
    if mode is Mode.DISJOINT:
        cells -= len(f1)
    return sum(math.comb(cells, s) for s in _sizes(len(f1), mode))


def enumerate_counterpart_sets(f1, box, mode: Mode, allow_large: bool = False) -> Iterator[frozenset[Point]]:
    """All F2 inside the box with the size (and overlap) the mode asks for, in rank order."""
    if not allow_large and counterpart_count(f1, box, mode) > GUARD_LIMIT:
        raise GuardError(f"more than {GUARD_LIMIT} candidate sets; pass an explicit override")
    cells = [Point(r, c) for r in range(1, box[0] + 1) for c in range(1, box[1] + 1)]
    if mode is Mode.DISJOINT:
        cells = [q for q in cells if q not in f1]
    for s in _sizes(len(f1), mode):
        for combo in itertools.combinations(cells, s):
            yield frozenset(combo)


def count_realizations(pr: Projections, limit: int = 16) -> int:
    """Number of binary images with the given line sums, by memoized search."""
    if sum(pr.rows) != sum(pr.cols):
        return 0
    if sum(pr.rows) > limit:
        raise GuardError(f"count_realizations limited to {limit} cells")
    rows = pr.rows
    ncols = len(pr.cols)

    @lru_cache(maxsize=None)
    def count(i, residual):
        if i == len(rows):
            return int(not any(residual))
        # a column needing more points than rows remain is dead
        if max(residual, default=0) > len(rows) - i:
            return 0
        open_cols = [j for j in range(ncols) if residual[j] > 0]
        total = 0
        for combo in itertools.combinations(open_cols, rows[i]):
            nxt = list(residual)
            for j in combo:
                nxt[j] -= 1
            total += count(i + 1, tuple(nxt))
        return total

    return count(0, tuple(pr.cols))


@dataclass(frozen=True)
class Counterexample:
    rank: tuple[int, int]
    check: str
    f1: frozenset
    f2: frozenset


@dataclass
class VerificationSummary:
    mode: Mode
    instances: int = 0
    checks: Counter = field(default_factory=Counter)
    violations: Counter = field(default_factory=Counter)
    first: Optional[Counterexample] = None

    @property
    def total_violations(self) -> int:
        return sum(self.violations.values())

    def fail(self, rank, check, f1, f2):
        self.violations[check] += 1
        if self.first is None or rank < self.first.rank:
            self.first = Counterexample(rank, check, f1, f2)

    def merge(self, other: "VerificationSummary") -> "VerificationSummary":
        self.instances += other.instances
        self.checks.update(other.checks)
        self.violations.update(other.violations)
        if other.first is not None and (self.first is None or other.first.rank < self.first.rank):
            self.first = other.first
        return self

    def render(self) -> str:
        lines = [f"mode {self.mode.value}", f"instances {self.instances}"]
        for name in sorted(self.checks):
            lines.append(f"check {name:<32} {self.checks[name]:>9}  violations {self.violations[name]}")
        if self.first is None:
            lines.append("0 violations")
        else:
            lines.append(f"{self.total_violations} violations; first: {self.first.check} at rank {self.first.rank}")
        return "\n".join(lines) + "\n"


def _check_decomposition(pair: InstancePair, summary, rank, tag=""):
    """Staircase checks on an equal-size pair; returns nothing, records failures."""
    alpha = pair.metrics.alpha

    def check(name, ok):
        summary.checks[tag + name] += 1
        if not ok:
            summary.fail(rank, tag + name, pair.f1, pair.f2)

    try:
        dec = decompose(pair, check_tau=True)
    except AssertionError:
        check("tau_step", False)
        return
    check("tau_step", True)
    pts = dec.points()
    check("partition", len(pts) == len(set(pts)) and set(pts) == pair.f1 ^ pair.f2)
    check("staircase_count", len(dec) == alpha)
    ends = dec.endpoint_counts()
    check("endpoint_balance", ends[Label.F1_ONLY] == alpha and ends[Label.F2_ONLY] == alpha)
    geometry_ok = True
    for s in dec.staircases:
        try:
            s.validate()
        except TomographyError:
            geometry_ok = False
    check("staircase_geometry", geometry_ok)

    rb = rebalance(pair)
    rm = rb.metrics
    r1 = Counter(r for r, _ in rb.f1)
    r2 = Counter(r for r, _ in rb.f2)
    check("rebalance", r1 == r2 and rm.alpha <= alpha and len(rb.f1 ^ rb.f2) == len(pair.f1 ^ pair.f2)
          and rm.p == pair.metrics.p)
    if rm.alpha:
        e = BoundEntry("u_squared", rm.u**2, u_squared_bound(rm.alpha, rm.a, rm.b))
        check("rebalanced_u_squared", e.holds)


def _check_bounds(pair: InstancePair, summary, rank, tag=""):
    rep = report(pair)
    for e in rep.entries:
        if e.conditional:
            continue
        summary.checks[tag + "bound_" + e.name] += 1
        if not e.holds:
            summary.fail(rank, tag + "bound_" + e.name, pair.f1, pair.f2)


def verify_one(f1, f2, mode: Mode, summary: VerificationSummary, rank) -> None:
    pair = InstancePair(f1, f2)
    summary.instances += 1
    summary.checks["parity"] += 1
    try:
        pair.metrics
    except AssertionError:
        summary.fail(rank, "parity", f1, f2)
        return
    if mode is Mode.UNEQUAL:
        m = pair.metrics
        # |F1|-only bounds on the raw pair, with its original alpha
        for e in size_entries(m.alpha, m.p, m.size1) if m.alpha else ():
            summary.checks["raw_bound_" + e.name] += 1
            if not e.holds:
                summary.fail(rank, "raw_bound_" + e.name, f1, f2)
        eq = equalize(pair)
        ok = len(eq.f1) == len(eq.f2) and eq.metrics.alpha <= m.alpha and eq.metrics.p == m.p
        if len(f2) < len(f1):
            ok = ok and eq.metrics.alpha == m.alpha
        summary.checks["equalize"] += 1
        if not ok:
            summary.fail(rank, "equalize", f1, f2)
        pair = eq
    _check_decomposition(pair, summary, rank)
    _check_bounds(pair, summary, rank)


def _verify_shape(args) -> VerificationSummary:
    index, f1, box, mode, allow_large = args
    summary = VerificationSummary(mode)
    for k, f2 in enumerate(enumerate_counterpart_sets(f1, box, mode, allow_large)):
        verify_one(f1, f2, mode, summary, (index, k))
    return summary


def iter_instances(spec: EnumSpec) -> Iterator[tuple[tuple[int, int], frozenset, frozenset]]:
    """Yield ``(rank, f1, f2)`` for every instance of ``spec`` in enumeration order."""
    for i, f1 in enumerate(enumerate_unique_sets(spec.max_cells)):
        for k, f2 in enumerate(enumerate_counterpart_sets(f1, spec.box, spec.mode, allow_large=True)):
            yield (i, k), f1, f2


def check_guard(spec: EnumSpec) -> None:
    # the largest F1 dominates the candidate count
    worst = counterpart_count(shape((spec.max_cells,)), spec.box, spec.mode)
    if worst > GUARD_LIMIT:
        raise GuardError(f"{worst} candidate sets for a {spec.max_cells}-cell F1 exceeds the guard of {GUARD_LIMIT}")


def verify_all(spec: EnumSpec, workers: int = 1, allow_large: bool = False) -> VerificationSummary:
    """Run every check on every enumerated instance of ``spec``."""
    if not allow_large:
        check_guard(spec)
    jobs = [(i, f1, spec.box, spec.mode, True) for i, f1 in enumerate(enumerate_unique_sets(spec.max_cells))]
    summary = VerificationSummary(spec.mode)
    if workers <= 1:
        parts = map(_verify_shape, jobs)
        for part in parts:
            summary.merge(part)
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for part in pool.map(_verify_shape, jobs):
                summary.merge(part)
    return summary

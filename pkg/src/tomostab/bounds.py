"""Closed-form stability bounds and per-instance bound reports.

All logarithms are natural.  Integral bounds are compared exactly; real
bounds with a relative tolerance of ``REL_TOL``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .core import InstancePair, TomographyError
from .staircase import equalize

REL_TOL = 1e-9


def harmonic_bound(alpha: int) -> int:
    """Largest |F1| compatible with a disjoint reconstruction at error 2*alpha."""
    if alpha < 1:
        raise TomographyError("alpha must be >= 1")
    return sum(alpha // i for i in range(1, alpha + 1))


def disjoint_log_bound(alpha: int) -> float:
    if alpha < 1:
        raise TomographyError("alpha must be >= 1")
    return alpha * (1 + math.log(alpha))


def general_harmonic_bound(alpha: int, p: int) -> int:
    if alpha < 1 or p < 0:
        raise TomographyError("need alpha >= 1 and p >= 0")
    n = alpha + p
    return sum(n // i for i in range(1, n + 1))


def general_log_bound(alpha: int, p: int) -> float:
    if alpha < 1 or p < 0:
        raise TomographyError("need alpha >= 1 and p >= 0")
    n = alpha + p
    return n * (1 + math.log(n))


def u_squared_bound(alpha: int, a: int, b: int) -> float:
    """Upper bound on u**2, where 2u = |F1 xor F2|."""
    s = a + b
    return alpha / 4 * s * (s + alpha - 1)


def f1_lower_bound(alpha: int, a: int, b: int) -> float:
    return (a + b) ** 2 / (4 * (alpha + 1))


def _root_term(alpha: int, p: int) -> float:
    beta = math.sqrt(alpha) * (alpha + 1)
    return beta + math.sqrt(beta * (alpha - 1) + 4 * (alpha + 1) * p + beta**2) + (alpha - 1) / 2


def sqrt_bound(alpha: int, p: int) -> float:
    """Square-root upper bound on |F1| in terms of alpha and p = |F1 & F2|."""
    if alpha < 1 or p < 0:
        raise TomographyError("need alpha >= 1 and p >= 0")
    t = _root_term(alpha, p)
    return p + math.sqrt(alpha / 4 * t * t - (alpha - 1) ** 2 * alpha / 16)


def alpers_comparison_bound(alpha: int, p: int) -> float:
    if alpha < 1 or p < 0:
        raise TomographyError("need alpha >= 1 and p >= 0")
    return p + (alpha + 1) * (alpha - 0.5) + (alpha + 1) * math.sqrt(2 * p + (2 * alpha - 1) ** 2 / 4)


def symmetric_bounds(alpha: int, p: int) -> tuple[float, float]:
    """Both upper bounds on |F1 xor F2| that do not mention |F1|."""
    if alpha < 0 or p < 0 or alpha + p == 0:
        raise TomographyError("need alpha + p >= 1")
    n = alpha + p
    log_form = 2 * alpha + 2 * n * math.log(n)
    t = _root_term(alpha, p)
    root_form = math.sqrt(alpha * t * t - (alpha - 1) ** 2 * alpha / 4)
    return log_form, root_form


def alpers_alpha1_lower(size1: int) -> float:
    """Alpers' sharp alpha = 1 lower bound on p."""
    return size1 + 0.5 - math.sqrt(2 * size1 + 0.25)


def sqrt_alpha1_lower(size1: int) -> float:
    """Lower bound on p implied by the square-root bound at alpha = 1."""
    return size1 - math.sqrt(2 * size1)


@dataclass(frozen=True)
class BoundEntry:
    name: str
    measured: float
    bound: float
    kind: str = "upper"  # "upper": measured <= bound; "lower": measured >= bound
    integral: bool = False
    conditional: bool = False  # hypothesis not met; informational only

    @property
    def slack(self) -> float:
        return self.bound - self.measured if self.kind == "upper" else self.measured - self.bound

    @property
    def holds(self) -> bool:
        if self.integral:
            return self.slack >= 0
        return self.slack >= -REL_TOL * max(1.0, abs(self.bound))


@dataclass(frozen=True)
class BoundReport:
    alpha: int
    p: int
    u: int
    a: int
    b: int
    size1: int
    size2: int
    equalized: bool = False
    entries: tuple[BoundEntry, ...] = field(default_factory=tuple)

    def applicable(self):
        return [e for e in self.entries if not e.conditional]

    @property
    def all_hold(self) -> bool:
        return all(e.holds for e in self.applicable())

    def violations(self):
        return [e for e in self.applicable() if not e.holds]

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)


def pruning_hypothesis(pair: InstancePair) -> bool:
    """Every row and column holding F1 points also holds a point of F1 xor F2."""
    sym = pair.f1 ^ pair.f2
    rows = {r for r, _ in sym}
    cols = {c for _, c in sym}
    return all(r in rows and c in cols for r, c in pair.f1)


def size_entries(alpha: int, p: int, size1: int) -> list[BoundEntry]:
    """Bounds that only need alpha, p and |F1|; valid for unequal sizes as well.

    The symmetric forms measure 2(|F1| - p), which is |F1 xor F2| once the
    sizes agree.
    """
    entries = []
    if p == 0:
        entries.append(BoundEntry("harmonic", size1, harmonic_bound(alpha), integral=True))
        entries.append(BoundEntry("disjoint_log", size1, disjoint_log_bound(alpha)))
    entries += [
        BoundEntry("general_harmonic", size1, general_harmonic_bound(alpha, p), integral=True),
        BoundEntry("general_log", size1, general_log_bound(alpha, p)),
        BoundEntry("sqrt", size1, sqrt_bound(alpha, p)),
        BoundEntry("alpers_comparison", size1, alpers_comparison_bound(alpha, p)),
    ]
    log_form, root_form = symmetric_bounds(alpha, p)
    sym = 2 * (size1 - p)
    entries.append(BoundEntry("symmetric_log", sym, log_form))
    entries.append(BoundEntry("symmetric_root", sym, root_form))
    return entries


def report(pair: InstancePair) -> BoundReport:
    """Evaluate every applicable bound on a canonical pair.

    Unequal sizes are first equalized; |F1| and p do not change and alpha
    can only shrink, so the bounds are then evaluated with the smaller alpha.
    With alpha = 0 the two sets coincide and no bound applies.
    """
    equalized = len(pair.f1) != len(pair.f2)
    if equalized:
        pair = equalize(pair)
    m = pair.metrics
    base = dict(alpha=m.alpha, p=m.p, u=m.u, a=m.a, b=m.b, size1=m.size1, size2=m.size2, equalized=equalized)
    if m.alpha == 0:
        return BoundReport(**base)
    alpha, p, n1 = m.alpha, m.p, m.size1
    entries = size_entries(alpha, p, n1)
    entries[-2:-2] = [
        BoundEntry("u_squared", m.u**2, u_squared_bound(alpha, m.a, m.b)),
        BoundEntry("f1_lower", n1, f1_lower_bound(alpha, m.a, m.b), kind="lower",
                   conditional=not pruning_hypothesis(pair)),
    ]
    if alpha == 1:
        # both alpha = 1 forms are shown side by side, neither is asserted
        entries.append(BoundEntry("alpers_alpha1", p, alpers_alpha1_lower(n1), kind="lower", conditional=True))
        entries.append(BoundEntry("sqrt_alpha1", p, sqrt_alpha1_lower(n1), kind="lower", conditional=True))
    return BoundReport(**base, entries=tuple(entries))

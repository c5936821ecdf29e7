import itertools

import pytest
from hypothesis import strategies as st

from tomostab.core import InstancePair, Point, Projections
from tomostab.oracle import partitions, shape


def brute_force_realizations(pr: Projections) -> int:
    """Count realizations by trying every subset of the bounding grid."""
    nr, nc = len(pr.rows), len(pr.cols)
    cells = [Point(i, j) for i in range(1, nr + 1) for j in range(1, nc + 1)]
    total = sum(pr.rows)
    found = 0
    for combo in itertools.combinations(cells, total):
        rows = [0] * nr
        cols = [0] * nc
        for r, c in combo:
            rows[r - 1] += 1
            cols[c - 1] += 1
        if tuple(rows) == pr.rows and tuple(cols) == pr.cols:
            found += 1
    return found


@st.composite
def equal_size_pairs(draw, max_cells=6, box=6):
    """Triangular F1 from a random partition and a same-size F2 inside a box."""
    n = draw(st.integers(1, max_cells))
    lam = draw(st.sampled_from(partitions(n)))
    f1 = shape(lam)
    cells = [Point(r, c) for r in range(1, box + 1) for c in range(1, box + 1)]
    f2 = draw(st.lists(st.sampled_from(cells), min_size=n, max_size=n, unique=True))
    return InstancePair(f1, frozenset(f2))


@st.composite
def any_size_pairs(draw, max_cells=6, box=6):
    n = draw(st.integers(1, max_cells))
    lam = draw(st.sampled_from(partitions(n)))
    f1 = shape(lam)
    cells = [Point(r, c) for r in range(1, box + 1) for c in range(1, box + 1)]
    f2 = draw(st.lists(st.sampled_from(cells), max_size=2 * max_cells, unique=True))
    return InstancePair(f1, frozenset(f2))


@pytest.fixture
def l_shape():
    return frozenset({Point(1, 1), Point(1, 2), Point(2, 1)})

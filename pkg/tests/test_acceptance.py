"""Acceptance criteria, one test each, each printing a PASS/FAIL line.

Run ``python3 tests/test_acceptance.py`` for just the ten summary lines.
"""

import itertools
import math
import os
import subprocess
import sys
import time
from functools import lru_cache

import pytest

from tomostab.bounds import general_harmonic_bound, general_log_bound, harmonic_bound, report, sqrt_bound
from tomostab.core import Projections, is_uniquely_determined, line_sum_error
from tomostab.families import gen_example1, gen_example2, gen_example3
from tomostab.oracle import (
    EnumSpec,
    Mode,
    VerificationSummary,
    count_realizations,
    iter_instances,
    partitions,
    verify_all,
    verify_one,
)
from tomostab.staircase import decompose, equalize

REL = 1e-9


def criterion_1():
    t0 = time.perf_counter()
    bad = []
    for m in range(1, 7):
        pair = gen_example1(m)
        mt = pair.metrics
        want = (2**m, 2**m + m * 2 ** (m - 1), 0)
        got = (mt.alpha, mt.size1, mt.p)
        if got != want or len(decompose(pair)) != mt.alpha:
            bad.append(m)
    dt = time.perf_counter() - t0
    return not bad and dt < 1, f"m=1..6 closed forms and staircase counts, failures {bad}, {dt:.3f}s"


def criterion_2():
    size = len(gen_example1(3).f1)
    bound = harmonic_bound(8)
    rep = report(gen_example1(3)).get("harmonic")
    ok = bound == 20 == size and rep.slack == 0
    return ok, f"harmonic_bound(8) = {bound}, |F1| = {size}, slack {rep.slack}"


def criterion_3():
    t0 = time.perf_counter()
    bad = []
    cases = [(k, m) for k in range(2, 5) for m in range(2 * k - 2, 7)]
    for k, m in cases:
        mt = gen_example2(k, m).metrics
        want = (2**m - 2**k + 1, 2**k - 1, 2**m + m * 2 ** (m - 1) + 2 ** (k - 1) - k * 2 ** (k - 1))
        holds = mt.size1 <= general_harmonic_bound(mt.alpha, mt.p) <= general_log_bound(mt.alpha, mt.p)
        if (mt.alpha, mt.p, mt.size1) != want or not holds:
            bad.append((k, m))
    dt = time.perf_counter() - t0
    return not bad and dt < 1, f"{len(cases)} (k,m) cases, failures {bad}, {dt:.3f}s"


def criterion_4():
    t0 = time.perf_counter()
    bad = []
    min_slack = math.inf
    for n in range(1, 7):
        for a in range(1, 6):
            pair = gen_example3(n, a)
            mt = pair.metrics
            want = (n * n + n * n * a - n * a, n * n + n * n * a + n * a, 2 * a)
            got = (mt.p, mt.size1, line_sum_error(pair.f1, pair.f2))
            bound = sqrt_bound(mt.alpha, mt.p)
            slack = bound - mt.size1
            min_slack = min(min_slack, slack)
            if got != want or not slack > REL * bound:
                bad.append((n, a))
    dt = time.perf_counter() - t0
    return not bad and dt < 1, f"N<=6, alpha<=5, failures {bad}, min slack {min_slack:.6f}, {dt:.3f}s"


def criterion_5():
    worst = 0.0
    for p in range(0, 10**4 + 1):
        want = p + 1 + math.sqrt(2 * p + 1)
        worst = max(worst, abs(sqrt_bound(1, p) - want) / want)
    return worst <= 1e-12, f"p=0..10^4, max relative deviation {worst:.2e}"


@lru_cache(maxsize=None)
def exhaustive_sweep():
    t0 = time.perf_counter()
    summary = verify_all(EnumSpec(5, (5, 5), Mode.GENERAL), workers=1)
    return summary, time.perf_counter() - t0


LEMMA_CHECKS = ("tau_step", "partition", "staircase_count", "endpoint_balance", "staircase_geometry")
BOUND_CHECKS = (
    "parity",
    "bound_harmonic",
    "bound_general_harmonic",
    "bound_sqrt",
    "bound_symmetric_log",
    "bound_symmetric_root",
    "bound_f1_lower",
)


def criterion_6():
    s, dt = exhaustive_sweep()
    missing = [c for c in LEMMA_CHECKS if s.checks[c] == 0]
    viol = sum(s.violations[c] for c in LEMMA_CHECKS)
    ok = not missing and viol == 0 and s.checks["staircase_count"] == s.instances and dt < 300
    return ok, f"{s.instances} instances, {viol} violations, missing {missing}, {dt:.1f}s single-threaded"


def criterion_7():
    s, _ = exhaustive_sweep()
    missing = [c for c in BOUND_CHECKS if s.checks[c] == 0]
    ok = not missing and s.total_violations == 0 and s.checks["parity"] == s.instances
    counts = ", ".join(f"{c} {s.checks[c]}" for c in BOUND_CHECKS)
    return ok, f"{s.total_violations} violations in total; checked {counts}"


def criterion_8():
    t0 = time.perf_counter()
    pairs = mismatches = 0
    for n in range(1, 9):
        for lam, mu in itertools.product(partitions(n), repeat=2):
            pr = Projections(lam, mu)
            pairs += 1
            if is_uniquely_determined(pr) != (count_realizations(pr) == 1):
                mismatches += 1
    dt = time.perf_counter() - t0
    return mismatches == 0 and dt < 60, f"{pairs} projection pairs, {mismatches} mismatches, {dt:.1f}s"


def criterion_9():
    spec = EnumSpec(4, (4, 4), Mode.UNEQUAL)
    total = sum(1 for _ in iter_instances(spec))
    stride = total // 1000
    summary = VerificationSummary(Mode.UNEQUAL)
    grow = 0
    for k, (rank, f1, f2) in enumerate(iter_instances(spec)):
        if k % stride or summary.instances == 1000:
            continue
        grow += len(f2) < len(f1)
        verify_one(f1, f2, Mode.UNEQUAL, summary, rank)
    ok = summary.instances == 1000 and summary.total_violations == 0 and summary.checks["equalize"] == 1000
    ok = ok and 0 < grow < 1000 and all(summary.checks[c] == 1000 for c in LEMMA_CHECKS)
    return ok, f"{summary.instances} instances ({grow} grow), {summary.total_violations} violations"


def _cli(args, seed, cwd):
    env = dict(os.environ, PYTHONHASHSEED=str(seed))
    res = subprocess.run([sys.executable, "-m", "tomostab", *args], capture_output=True, env=env, cwd=cwd)
    return res.returncode, res.stdout


def criterion_10(tmp):
    pair = os.path.join(tmp, "ex2.pair")
    outs = {}
    for seed in (0, 1, 12345):
        run = []
        run.append(_cli(["gen", "example2", "--k", "3", "--m", "4"], seed, tmp))
        with open(pair, "wb") as fh:
            fh.write(run[0][1])
        for args in (["analyze", pair], ["decompose", pair], ["render", pair], ["render", "--format", "pbm", pair]):
            run.append(_cli(args, seed, tmp))
        outs[seed] = run
    same_runs = len({repr(v) for v in outs.values()}) == 1 and all(code == 0 for code, _ in outs[0])
    verify = ["verify", "--max-cells", "4", "--box", "4x4"]
    serial = _cli(verify + ["--workers", "1"], 3, tmp)
    parallel = _cli(verify + ["--workers", "4"], 7, tmp)
    same_verify = serial == parallel and serial[0] == 0
    return same_runs and same_verify, f"CLI outputs identical across hash seeds: {same_runs}; serial == parallel verify: {same_verify}"


def _line(n, ok, detail):
    return f"criterion {n:>2}: {'PASS' if ok else 'FAIL'}  {detail}"


def _report(capsys, n, result):
    ok, detail = result
    with capsys.disabled():
        print("\n" + _line(n, ok, detail))
    assert ok, detail


class TestAcceptance:
    def test_criterion_01_example1(self, capsys):
        _report(capsys, 1, criterion_1())

    def test_criterion_02_tightness(self, capsys):
        _report(capsys, 2, criterion_2())

    def test_criterion_03_example2(self, capsys):
        _report(capsys, 3, criterion_3())

    def test_criterion_04_example3(self, capsys):
        _report(capsys, 4, criterion_4())

    def test_criterion_05_alpha1(self, capsys):
        _report(capsys, 5, criterion_5())

    @pytest.mark.slow
    def test_criterion_06_exhaustive_staircases(self, capsys):
        _report(capsys, 6, criterion_6())

    @pytest.mark.slow
    def test_criterion_07_exhaustive_bounds(self, capsys):
        _report(capsys, 7, criterion_7())

    def test_criterion_08_uniqueness_oracle(self, capsys):
        _report(capsys, 8, criterion_8())

    def test_criterion_09_unequal_sizes(self, capsys):
        _report(capsys, 9, criterion_9())

    def test_criterion_10_determinism(self, capsys, tmp_path):
        _report(capsys, 10, criterion_10(str(tmp_path)))


if __name__ == "__main__":
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        results = [criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
                   criterion_6(), criterion_7(), criterion_8(), criterion_9(), criterion_10(tmp)]
    for n, (ok, detail) in enumerate(results, 1):
        print(_line(n, ok, detail))
    sys.exit(0 if all(ok for ok, _ in results) else 1)

"""Text formats: pair files, staircase certificates, reports and renderings.

Pair file::

    tomo-pair 1
    # optional comments
    F1 1 1
    F2 1 2

Certificate file::

    tomo-cert 1
    alpha 1 p 0 u 1
    S 1: (1,1)/1 -> (1,2)/2

All writers sort their output, so equal inputs give byte-identical files.
"""

from __future__ import annotations

import re
from collections import Counter

from .core import InstancePair, Point, TomographyError

PAIR_HEADER = "tomo-pair 1"
CERT_HEADER = "tomo-cert 1"

_DATA = re.compile(r"^(F1|F2) ([1-9][0-9]*) ([1-9][0-9]*)$")
_CERT_POINT = re.compile(r"^\(([1-9][0-9]*),([1-9][0-9]*)\)/([12])$")


class ParseError(TomographyError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def render_pair(pair: InstancePair, comments=()) -> str:
    lines = [PAIR_HEADER]
    lines += [f"# {c}" for c in comments]
    lines += [f"F1 {r} {c}" for r, c in sorted(pair.f1)]
    lines += [f"F2 {r} {c}" for r, c in sorted(pair.f2)]
    return "\n".join(lines) + "\n"


def parse_pair(text: str) -> InstancePair:
    lines = text.splitlines()
    if not lines or lines[0].strip() != PAIR_HEADER:
        raise ParseError(1, f"expected header {PAIR_HEADER!r}")
    sets = {"F1": set(), "F2": set()}
    for n, line in enumerate(lines[1:], 2):
        if line.startswith("#"):
            continue
        if not line.strip():
            continue
        m = _DATA.match(line.rstrip("\r"))
        if not m:
            raise ParseError(n, f"malformed data line {line!r}")
        q = Point(int(m.group(2)), int(m.group(3)))
        if q in sets[m.group(1)]:
            raise ParseError(n, f"duplicate point {m.group(1)} {q.row} {q.col}")
        sets[m.group(1)].add(q)
    return InstancePair(frozenset(sets["F1"]), frozenset(sets["F2"]))


def render_certificate(decomposition) -> str:
    m = decomposition.source.metrics
    lines = [CERT_HEADER, f"alpha {m.alpha} p {m.p} u {m.u}"]
    for k, s in enumerate(decomposition.staircases, 1):
        chain = " -> ".join(f"({q.row},{q.col})/{int(lab)}" for q, lab in zip(s.points, s.labels))
        lines.append(f"S {k}: {chain}")
    return "\n".join(lines) + "\n"


def parse_certificate(text: str):
    """Return ``(header_metrics, chains)``; each chain is a list of ``(Point, label)``."""
    lines = text.splitlines()
    if not lines or lines[0] != CERT_HEADER:
        raise ParseError(1, f"expected header {CERT_HEADER!r}")
    if len(lines) < 2:
        raise ParseError(2, "missing metrics line")
    head = lines[1].split()
    if len(head) != 6 or head[0::2] != ["alpha", "p", "u"] or not all(x.isdigit() for x in head[1::2]):
        raise ParseError(2, "malformed metrics line")
    header = dict(zip(head[0::2], map(int, head[1::2])))
    chains = []
    for n, line in enumerate(lines[2:], 3):
        prefix = f"S {len(chains) + 1}: "
        if not line.startswith(prefix):
            raise ParseError(n, f"expected {prefix.strip()!r}")
        chain = []
        for tok in line[len(prefix):].split(" -> "):
            m = _CERT_POINT.match(tok)
            if not m:
                raise ParseError(n, f"malformed point {tok!r}")
            chain.append((Point(int(m.group(1)), int(m.group(2))), int(m.group(3))))
        chains.append(chain)
    return header, chains


def check_certificate(text: str, pair: InstancePair) -> list[str]:
    """Re-verify a certificate against a pair; returns a list of problems.

    Only the pair and the certificate are consulted: the line-sum error is
    recounted here and every chain is checked link by link.
    """
    header, chains = parse_certificate(text)
    problems = []
    r = Counter()
    c = Counter()
    for i, j in pair.f1:
        r[i] += 1
        c[j] += 1
    for i, j in pair.f2:
        r[i] -= 1
        c[j] -= 1
    err = sum(map(abs, r.values())) + sum(map(abs, c.values()))
    alpha = err // 2
    only1 = pair.f1 - pair.f2
    only2 = pair.f2 - pair.f1
    if header["alpha"] != alpha:
        problems.append(f"header alpha {header['alpha']} != recounted {alpha}")
    if len(chains) != alpha:
        problems.append(f"{len(chains)} staircases, expected {alpha}")
    seen = set()
    for k, chain in enumerate(chains, 1):
        for q, lab in chain:
            if q in seen:
                problems.append(f"S {k}: point {tuple(q)} used twice")
            seen.add(q)
            if (lab == 1 and q not in only1) or (lab == 2 and q not in only2):
                problems.append(f"S {k}: {tuple(q)} is not in F{lab} only")
        for (q, lq), (s, ls) in zip(chain, chain[1:]):
            if lq == ls:
                problems.append(f"S {k}: labels do not alternate at {tuple(q)}")
            elif lq == 1 and not (s.row == q.row and s.col > q.col):
                problems.append(f"S {k}: {tuple(q)} -> {tuple(s)} is not a rightward row link")
            elif lq == 2 and not (s.col == q.col and s.row < q.row):
                problems.append(f"S {k}: {tuple(q)} -> {tuple(s)} is not an upward column link")
    if seen != only1 | only2:
        problems.append("staircases do not cover F1 xor F2")
    return problems


def render_ascii(pair: InstancePair) -> str:
    """Grid with row 1 on top: '.' empty, 'o' F1 only, 'x' F2 only, '@' both."""
    pts = pair.f1 | pair.f2
    if not pts:
        return ""
    nr = max(r for r, _ in pts)
    nc = max(c for _, c in pts)
    glyph = {(False, False): ".", (True, False): "o", (False, True): "x", (True, True): "@"}
    rows = []
    for i in range(1, nr + 1):
        rows.append("".join(glyph[(Point(i, j) in pair.f1, Point(i, j) in pair.f2)] for j in range(1, nc + 1)))
    return "\n".join(rows) + "\n"


def render_pbm(pair: InstancePair) -> str:
    """Two plain PBM bitmaps (F1 then F2) over the common bounding box."""
    pts = pair.f1 | pair.f2
    if not pts:
        return ""
    nr = max(r for r, _ in pts)
    nc = max(c for _, c in pts)
    out = []
    for name, s in (("F1", pair.f1), ("F2", pair.f2)):
        out.append("P1")
        out.append(f"# {name}")
        out.append(f"{nc} {nr}")
        for i in range(1, nr + 1):
            out.append(" ".join("1" if Point(i, j) in s else "0" for j in range(1, nc + 1)))
    return "\n".join(out) + "\n"


def render_metrics(pair: InstancePair, unique: bool) -> str:
    m = pair.metrics
    lines = [
        f"alpha {m.alpha} p {m.p} u {m.u}",
        f"{'a':<8}{m.a}",
        f"{'b':<8}{m.b}",
        f"{'|F1|':<8}{m.size1}",
        f"{'|F2|':<8}{m.size2}",
        f"{'unique':<8}{'yes' if unique else 'no'}",
    ]
    return "\n".join(lines) + "\n"


def _num(x) -> str:
    if isinstance(x, int) or float(x).is_integer():
        return str(int(x))
    return f"{x:.6f}"


def render_report(rep) -> str:
    lines = []
    if rep.equalized:
        lines.append(f"equalized: bounds use alpha {rep.alpha} after adjusting |F2| to {rep.size2}")
    for e in rep.entries:
        rel = "<=" if e.kind == "upper" else ">="
        if e.conditional:
            status = "--"
        else:
            status = "OK" if e.holds else "VIOLATED"
        lines.append(f"{e.name:<18} {_num(e.measured)} {rel} {_num(e.bound)} {status} slack {_num(e.slack)}")
    return "\n".join(lines) + ("\n" if lines else "")

"""Canonical projective point-line models and incidence-structure checks.

Coordinates over GF(q) are plain integers in [0, q) with nim arithmetic
(FermatField), so a projective point is a tuple of ints whose first nonzero
entry is 1.  Incidence structures carry 1-based point indices throughout.
"""

from __future__ import annotations

import itertools
import time
from collections import namedtuple
from dataclasses import dataclass

from .errors import InvalidParameterError, PreconditionError, ResourceLimitError
from .nimber import FermatField, is_fermat_two_power
from .report import VerificationReport

DEFAULT_POINT_BOUND = 10_000
DEFAULT_NODE_BUDGET = 10_000_000

PgCounts = namedtuple("PgCounts", "v b r k d")


def expected_counts(n: int, q: int) -> PgCounts:
    """Point, line, and incidence counts of PG(n, q); d is the identified
    greedy row count (equal to b)."""
    if n < 1:
        raise InvalidParameterError(f"dimension n must be at least 1, got {n}")
    if not is_fermat_two_power(q):
        raise InvalidParameterError(f"field order must be a Fermat 2-power, got {q}")
    v = (q ** (n + 1) - 1) // (q - 1)
    r = (q ** n - 1) // (q - 1)
    k = q + 1
    assert v * r % k == 0
    b = v * r // k
    return PgCounts(v, b, r, k, b)


def normalize_point(gf: FermatField, coords) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1 (canonical representative)."""
    coords = tuple(coords)
    for c in coords:
        if c:
            if c == 1:
                return coords
            lam = gf.inv(c)
            return tuple(gf.mul(lam, x) for x in coords)
    raise InvalidParameterError("the zero vector is not a projective point")


# ---------------------------------------------------------------------------
# structures
# ---------------------------------------------------------------------------

@dataclass
class IncidenceStructure:
    """A finite list of lines (sorted point tuples) over points 1..point_window."""

    point_window: int
    lines: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        norm = []
        for line in self.lines:
            pts = tuple(sorted(line))
            if not pts:
                raise InvalidParameterError("empty lines are not allowed")
            if len(set(pts)) != len(pts):
                raise InvalidParameterError(f"line {pts} repeats a point")
            if pts[0] < 1 or pts[-1] > self.point_window:
                raise InvalidParameterError(
                    f"line {pts} leaves the point window [1, {self.point_window}]")
            norm.append(pts)
        if len(set(norm)) != len(norm):
            raise InvalidParameterError("repeated lines are not allowed")
        self.lines = tuple(norm)

    @property
    def num_lines(self) -> int:
        return len(self.lines)

    def point_degrees(self) -> list[int]:
        """Degree per point, 1-based (index 0 unused)."""
        deg = [0] * (self.point_window + 1)
        for line in self.lines:
            for p in line:
                deg[p] += 1
        return deg

    def pair_cover_counts(self) -> dict[tuple[int, int], int]:
        counts: dict[tuple[int, int], int] = {}
        for line in self.lines:
            for pair in itertools.combinations(line, 2):
                counts[pair] = counts.get(pair, 0) + 1
        return counts

    def line_masks(self) -> list[int]:
        masks = []
        for line in self.lines:
            m = 0
            for p in line:
                m |= 1 << p
            masks.append(m)
        return masks


@dataclass(frozen=True)
class CanonicalGeometry:
    """PG(n, q) built from normalized coordinate vectors over the nim field."""

    n: int
    q: int
    points: tuple[tuple[int, ...], ...]
    lines: tuple[tuple[int, ...], ...]  # 1-based indices into points

    @property
    def v(self) -> int:
        return len(self.points)

    @property
    def b(self) -> int:
        return len(self.lines)

    def as_incidence(self) -> IncidenceStructure:
        return IncidenceStructure(point_window=self.v, lines=self.lines)


def build_pg(n: int, q: int, point_bound: int = DEFAULT_POINT_BOUND) -> CanonicalGeometry:
    """Points and lines of PG(n, q) with nim-field coordinates.

    Points are enumerated canonically (leading zeros, then a 1, then free
    coordinates); the line through P and R is {P + lam*R : lam} plus R,
    normalized and deduplicated.
    """
    counts = expected_counts(n, q)
    gf = FermatField(q)
    if counts.v > point_bound:
        raise ResourceLimitError(
            f"PG({n},{q}) has {counts.v} points, above the bound {point_bound}")

    points: list[tuple[int, ...]] = []
    for lead in range(n + 1):
        head = (0,) * lead + (1,)
        for tail in itertools.product(range(q), repeat=n - lead):
            points.append(head + tail)
    assert len(points) == counts.v
    index = {p: i + 1 for i, p in enumerate(points)}

    lines: set[tuple[int, ...]] = set()
    pair_done: set[tuple[int, int]] = set()
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if (i + 1, j + 1) in pair_done:
                continue
            p, rp = points[i], points[j]
            members = {j + 1}
            for lam in range(q):
                coords = tuple(pc ^ gf.mul(lam, rc) for pc, rc in zip(p, rp))
                members.add(index[normalize_point(gf, coords)])
            line = tuple(sorted(members))
            lines.add(line)
            pair_done.update(itertools.combinations(line, 2))
    out = tuple(sorted(lines))
    if len(out) != counts.b or any(len(line) != counts.k for line in out):
        raise RuntimeError(f"PG({n},{q}) construction produced inconsistent counts")
    return CanonicalGeometry(n=n, q=q, points=tuple(points), lines=out)


def build_pg2_nim(n: int) -> IncidenceStructure:
    """All xor-closed triples {a, b, a^b} with 0 < a < b < a^b < 2^(n+1),
    sorted lexicographically; the nim model of the lines of PG(n, 2)."""
    if n < 1:
        raise InvalidParameterError(f"dimension n must be at least 1, got {n}")
    top = 1 << (n + 1)
    lines = []
    for a in range(1, top):
        for b in range(a + 1, top):
            c = a ^ b
            if c > b:
                lines.append((a, b, c))
    lines.sort()
    return IncidenceStructure(point_window=top - 1, lines=tuple(lines))


# ---------------------------------------------------------------------------
# design and Pasch checks
# ---------------------------------------------------------------------------

def check_design(s: IncidenceStructure, v: int, k: int, r: int, lam: int = 1,
                 subject: str | None = None) -> VerificationReport:
    """Verify the 2-(v, k, lam) conditions with per-point degree r.

    All conditions are evaluated (a failing count identity does not hide an
    uncovered pair); each failing check carries its smallest witness.
    """
    start = time.perf_counter()
    report = VerificationReport(subject=subject or f"design 2-({v},{k},{lam}) with r={r}")
    b = s.num_lines
    report.add("b*k = v*r", b * k == v * r, {"b": b, "k": k, "v": v, "r": r})

    bad_window = next((i for i, line in enumerate(s.lines) if line[-1] > v or line[0] < 1), None)
    report.add("lines stay within [1, v]", bad_window is None,
               None if bad_window is None else {"line": bad_window + 1,
                                                "points": list(s.lines[bad_window])})

    bad_size = next((i for i, line in enumerate(s.lines) if len(line) != k), None)
    report.add("every line has k points", bad_size is None,
               None if bad_size is None else {"line": bad_size + 1,
                                              "size": len(s.lines[bad_size])})

    deg = s.point_degrees()
    bad_deg = None
    for p in range(1, v + 1):
        d = deg[p] if p < len(deg) else 0
        if d != r:
            bad_deg = {"point": p, "degree": d}
            break
    report.add("every point has degree r", bad_deg is None, bad_deg)

    counts = s.pair_cover_counts()
    bad_pair = None
    for pair in itertools.combinations(range(1, v + 1), 2):
        if counts.get(pair, 0) != lam:
            bad_pair = {"pair": list(pair), "count": counts.get(pair, 0)}
            break
    report.add(f"every point pair is covered exactly {lam} time(s)", bad_pair is None, bad_pair)

    report.counts = {"v": v, "k": k, "r": r, "lambda": lam, "lines": b}
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def check_veblen_young(s: IncidenceStructure) -> VerificationReport:
    """Pasch closure: a line meeting two sides of a triangle away from its
    vertices must meet the third side.

    Requires a partial linear space (no pair on two lines).  If every pair
    of lines already meets, as in any projective plane, the axiom holds
    outright and the triangle scan is skipped.
    """
    start = time.perf_counter()
    v = s.point_window
    pair_to_line: dict[tuple[int, int], int] = {}
    for idx, line in enumerate(s.lines):
        for pair in itertools.combinations(line, 2):
            if pair in pair_to_line:
                raise PreconditionError(
                    f"pair {pair} lies on two lines; Pasch closure needs a partial linear space")
            pair_to_line[pair] = idx

    masks = s.line_masks()
    report = VerificationReport(subject="veblen-young (pasch closure)")

    all_meet = True
    for i in range(len(masks)):
        mi = masks[i]
        for j in range(i + 1, len(masks)):
            if not mi & masks[j]:
                all_meet = False
                break
        if not all_meet:
            break
    if all_meet:
        report.add("pasch closure", True)
        report.counts = {"points": v, "lines": s.num_lines, "triangles": 0,
                         "transversals": 0, "all_line_pairs_meet": 1}
        report.elapsed_ms = (time.perf_counter() - start) * 1000.0
        return report

    triangles = 0
    transversals = 0
    witness = None
    lines = s.lines
    for abc in itertools.combinations(range(1, v + 1), 3):
        pa, pb, pc = abc
        ab = pair_to_line.get((pa, pb))
        ac = pair_to_line.get((pa, pc))
        bc = pair_to_line.get((pb, pc))
        if ab is None or ac is None or bc is None:
            continue
        if (masks[ab] >> pc) & 1:  # collinear
            continue
        triangles += 1
        for apex, u, w, l1, l2, side in ((pa, pb, pc, ab, ac, bc),
                                         (pb, pa, pc, ab, bc, ac),
                                         (pc, pa, pb, ac, bc, ab)):
            side_mask = masks[side]
            for p in lines[l1]:
                if p == apex or p == u:
                    continue
                for qq in lines[l2]:
                    if qq == apex or qq == w:
                        continue
                    t = pair_to_line.get((p, qq) if p < qq else (qq, p))
                    if t is None:
                        continue
                    transversals += 1
                    if not masks[t] & side_mask:
                        witness = {"triangle": list(abc), "apex": apex,
                                   "meet_ab": p, "meet_ac": qq,
                                   "transversal": list(lines[t]),
                                   "side": list(lines[side])}
                        break
                if witness:
                    break
            if witness:
                break
        if witness:
            break

    report.add("pasch closure", witness is None, witness)
    report.counts = {"points": v, "lines": s.num_lines, "triangles": triangles,
                     "transversals": transversals, "all_line_pairs_meet": 0}
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

@dataclass
class IsomorphismResult:
    status: str  # "isomorphic" | "not_isomorphic" | "indeterminate"
    mapping: dict[int, int] | None = None
    nodes: int = 0
    reason: str | None = None


class _BudgetExceeded(Exception):
    pass


def _point_signatures(s: IncidenceStructure) -> dict[int, tuple]:
    sizes: dict[int, list[int]] = {p: [] for p in range(1, s.point_window + 1)}
    for line in s.lines:
        for p in line:
            sizes[p].append(len(line))
    return {p: (len(v), tuple(sorted(v))) for p, v in sizes.items()}


def isomorphic(s1: IncidenceStructure, s2: IncidenceStructure,
               node_budget: int = DEFAULT_NODE_BUDGET) -> IsomorphismResult:
    """Search for a point bijection carrying the lines of s1 onto those of s2.

    Candidates are refined by (degree, line-size multiset) point signatures,
    then extended one point at a time; every new assignment must preserve
    pair coverage, and any line with two mapped points is pinned to its
    image line (same size, injectively).  The search is complete, so a
    finished scan without a match is a definite "not_isomorphic"; running
    out of node budget is reported as indeterminate, never as a verdict.

    Both structures must be partial linear spaces (no pair on two lines);
    anything else raises PreconditionError, since pinning relies on the line
    through a pair being unique.
    """
    v = s1.point_window
    if v != s2.point_window or s1.num_lines != s2.num_lines:
        return IsomorphismResult("not_isomorphic", reason="point or line counts differ")
    if sorted(map(len, s1.lines)) != sorted(map(len, s2.lines)):
        return IsomorphismResult("not_isomorphic", reason="line-size multisets differ")

    sig1 = _point_signatures(s1)
    sig2 = _point_signatures(s2)
    hist1: dict[tuple, int] = {}
    hist2: dict[tuple, int] = {}
    for p in range(1, v + 1):
        hist1[sig1[p]] = hist1.get(sig1[p], 0) + 1
        hist2[sig2[p]] = hist2.get(sig2[p], 0) + 1
    if hist1 != hist2:
        return IsomorphismResult("not_isomorphic", reason="point signatures differ")

    def pair_index(s: IncidenceStructure) -> dict[tuple[int, int], int]:
        # pinning lines through point pairs is only sound when pairs are
        # covered at most once, which holds for everything built here
        out: dict[tuple[int, int], int] = {}
        for idx, line in enumerate(s.lines):
            for pair in itertools.combinations(line, 2):
                if pair in out:
                    raise PreconditionError(
                        f"pair {pair} lies on two lines; the isomorphism search "
                        "supports partial linear spaces only")
                out[pair] = idx
        return out

    pair1 = pair_index(s1)
    pair2 = pair_index(s2)

    # process points of s1 so each one touches as many assigned points as
    # possible; ties break toward rare signatures, then low index
    adj: dict[int, set[int]] = {p: set() for p in range(1, v + 1)}
    for line in s1.lines:
        for x, y in itertools.combinations(line, 2):
            adj[x].add(y)
            adj[y].add(x)
    remaining = set(range(1, v + 1))
    order: list[int] = []
    chosen: set[int] = set()
    while remaining:
        best = min(remaining,
                   key=lambda p: (-len(adj[p] & chosen), hist1[sig1[p]], p))
        order.append(best)
        chosen.add(best)
        remaining.remove(best)

    cands = {p: [x for x in range(1, v + 1) if sig2[x] == sig1[p]] for p in order}

    mapping: dict[int, int] = {}
    rev: dict[int, int] = {}
    pin12: dict[int, int] = {}
    pin21: dict[int, int] = {}
    nodes = 0

    def try_assign(x: int, y: int):
        new_pins = []
        for x2, y2 in mapping.items():
            l1 = pair1.get((x, x2) if x < x2 else (x2, x))
            l2 = pair2.get((y, y2) if y < y2 else (y2, y))
            if (l1 is None) != (l2 is None):
                break
            if l1 is None:
                continue
            cur = pin12.get(l1)
            if cur is not None:
                if cur != l2:
                    break
                continue
            if pin21.get(l2) is not None or len(s1.lines[l1]) != len(s2.lines[l2]):
                break
            pin12[l1] = l2
            pin21[l2] = l1
            new_pins.append((l1, l2))
        else:
            mapping[x] = y
            rev[y] = x
            return new_pins
        for l1, l2 in new_pins:
            del pin12[l1]
            del pin21[l2]
        return None

    def undo(x: int, y: int, pins) -> None:
        del mapping[x]
        del rev[y]
        for l1, l2 in pins:
            del pin12[l1]
            del pin21[l2]

    def search(i: int) -> bool:
        nonlocal nodes
        if i == len(order):
            return True
        x = order[i]
        for y in cands[x]:
            if y in rev:
                continue
            nodes += 1
            if nodes > node_budget:
                raise _BudgetExceeded
            pins = try_assign(x, y)
            if pins is not None:
                if search(i + 1):
                    return True
                undo(x, y, pins)
        return False

    try:
        found = search(0)
    except _BudgetExceeded:
        return IsomorphismResult("indeterminate", nodes=nodes,
                                 reason=f"node budget {node_budget} exceeded")
    if not found:
        return IsomorphismResult("not_isomorphic", nodes=nodes,
                                 reason="search exhausted without a match")

    # independent sanity pass: the mapped line set must be exactly s2's
    mapped = sorted(tuple(sorted(mapping[p] for p in line)) for line in s1.lines)
    if mapped != sorted(s2.lines):
        raise RuntimeError("isomorphism search returned an invalid mapping")
    return IsomorphismResult("isomorphic", mapping=dict(mapping), nodes=nodes)

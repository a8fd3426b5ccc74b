"""Projective models, design/Pasch checks, and the isomorphism search."""

import random
from itertools import combinations

import pytest

from naivemat.errors import (InvalidParameterError, PreconditionError,
                             ResourceLimitError)
from naivemat.geometry import (CanonicalGeometry, IncidenceStructure,
                               build_pg, build_pg2_nim, check_design,
                               check_veblen_young, expected_counts, isomorphic,
                               normalize_point)
from naivemat.nimber import FermatField

FANO_TRIPLES = ((1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6))


def count_2d_subspaces_gf2(dim):
    """Independent span enumeration over nonzero vectors of GF(2)^dim."""
    spans = set()
    for x in range(1, 1 << dim):
        for y in range(x + 1, 1 << dim):
            spans.add(frozenset((x, y, x ^ y)))
    return len(spans)


# ---------------------------------------------------------------------------
# counts and construction
# ---------------------------------------------------------------------------

def test_expected_counts():
    assert expected_counts(2, 2) == (7, 7, 3, 3, 7)
    assert expected_counts(5, 2).d == 63 * 31 // 3
    assert expected_counts(3, 4) == (85, 357, 21, 5, 357)
    assert expected_counts(2, 16) == (273, 273, 17, 17, 273)
    with pytest.raises(InvalidParameterError):
        expected_counts(0, 2)
    with pytest.raises(InvalidParameterError):
        expected_counts(2, 6)


def test_counts_identity():
    for n in range(1, 6):
        for q in (2, 4, 16):
            v, b, r, k, _ = expected_counts(n, q)
            assert b * k == v * r


def test_q2_line_count_equals_2d_subspace_count():
    for n in range(1, 5):
        assert expected_counts(n, 2).d == count_2d_subspaces_gf2(n + 1)


def test_normalize_point():
    gf = FermatField(4)
    assert normalize_point(gf, (0, 2, 3)) == (0, 1, gf.mul(gf.inv(2), 3))
    assert normalize_point(gf, (1, 2, 3)) == (1, 2, 3)
    with pytest.raises(InvalidParameterError):
        normalize_point(gf, (0, 0, 0))


def test_build_pg_small():
    g = build_pg(1, 2)
    assert g.v == 3 and g.b == 1 and g.lines == ((1, 2, 3),)
    g = build_pg(2, 2)
    assert g.v == 7 and g.b == 7
    g = build_pg(2, 4)
    assert g.v == 21 and g.b == 21
    assert all(len(line) == 5 for line in g.lines)


def test_build_pg_points_are_canonical():
    g = build_pg(2, 4)
    gf = FermatField(4)
    for p in g.points:
        assert normalize_point(gf, p) == p
    assert len(set(g.points)) == g.v


def test_build_pg_satisfies_design_and_pasch():
    for n, q in [(1, 2), (2, 2), (3, 2), (2, 4)]:
        g = build_pg(n, q)
        v, b, r, k, _ = expected_counts(n, q)
        s = g.as_incidence()
        assert check_design(s, v, k, r, 1).status == "pass"
        assert check_veblen_young(s).status == "pass"


def test_build_pg_errors():
    with pytest.raises(InvalidParameterError):
        build_pg(2, 6)
    with pytest.raises(ResourceLimitError):
        build_pg(2, 16, point_bound=100)


def test_build_pg2_nim():
    assert build_pg2_nim(1).lines == ((1, 2, 3),)
    fano = build_pg2_nim(2)
    assert fano.lines == FANO_TRIPLES
    assert build_pg2_nim(3).num_lines == 35
    assert build_pg2_nim(3).point_window == 15
    with pytest.raises(InvalidParameterError):
        build_pg2_nim(0)


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_pg2_models_isomorphic(n):
    res = isomorphic(build_pg(n, 2).as_incidence(), build_pg2_nim(n))
    assert res.status == "isomorphic"


def test_nim_model_lines_are_xor_closed():
    for n in (1, 2, 3, 4):
        for a, b, c in build_pg2_nim(n).lines:
            assert a < b < c and a ^ b ^ c == 0


def test_incidence_structure_validation():
    with pytest.raises(InvalidParameterError):
        IncidenceStructure(3, ((1, 2, 4),))          # outside window
    with pytest.raises(InvalidParameterError):
        IncidenceStructure(3, ((1, 2), (2, 1)))      # repeated line
    with pytest.raises(InvalidParameterError):
        IncidenceStructure(3, ((1, 1, 2),))          # repeated point
    s = IncidenceStructure(5, ((3, 1), (2, 4)))
    assert s.lines == ((1, 3), (2, 4))               # sorted on the way in


# ---------------------------------------------------------------------------
# design check
# ---------------------------------------------------------------------------

def test_check_design_fano_passes():
    s = IncidenceStructure(7, FANO_TRIPLES)
    rep = check_design(s, 7, 3, 3, 1)
    assert rep.status == "pass"
    assert rep.counts["lines"] == 7


def test_check_design_fano_minus_line_fails():
    s = IncidenceStructure(7, FANO_TRIPLES[:-1])
    rep = check_design(s, 7, 3, 3, 1)
    assert rep.status == "fail"
    by_name = {c.name: c for c in rep.checks}
    assert by_name["b*k = v*r"].status == "fail"
    pair_check = by_name["every point pair is covered exactly 1 time(s)"]
    assert pair_check.status == "fail"
    assert pair_check.witness == {"pair": [3, 5], "count": 0}
    # independent recount: dropping {3,5,6} uncovers exactly its 3 pairs
    covered = {p for line in FANO_TRIPLES[:-1] for p in combinations(line, 2)}
    missing = [p for p in combinations(range(1, 8), 2) if p not in covered]
    assert missing == [(3, 5), (3, 6), (5, 6)]


def test_check_design_single_line():
    s = IncidenceStructure(3, ((1, 2, 3),))
    assert check_design(s, 3, 3, 1, 1).status == "pass"


def test_check_design_wrong_line_size():
    s = IncidenceStructure(4, ((1, 2, 3), (1, 4)))
    rep = check_design(s, 4, 3, 2, 1)
    by_name = {c.name: c for c in rep.checks}
    assert by_name["every line has k points"].status == "fail"
    assert by_name["every line has k points"].witness == {"line": 2, "size": 2}


# ---------------------------------------------------------------------------
# Pasch closure
# ---------------------------------------------------------------------------

def test_veblen_young_fano_passes_by_line_pair_meet():
    rep = check_veblen_young(IncidenceStructure(7, FANO_TRIPLES))
    assert rep.status == "pass"
    assert rep.counts["all_line_pairs_meet"] == 1


def test_veblen_young_single_line_vacuous():
    assert check_veblen_young(IncidenceStructure(3, ((1, 2, 3),))).status == "pass"


def test_veblen_young_triangle_scan_on_pg32():
    rep = check_veblen_young(build_pg(3, 2).as_incidence())
    assert rep.status == "pass"
    assert rep.counts["all_line_pairs_meet"] == 0
    assert rep.counts["triangles"] > 0


def test_veblen_young_broken_fano_fails():
    # replacing {3,5,6} with {3,5} keeps pairs covered at most once but opens
    # a Pasch configuration; the first one in scan order was worked by hand
    broken = IncidenceStructure(7, FANO_TRIPLES[:-1] + ((3, 5),))
    rep = check_veblen_young(broken)
    assert rep.status == "fail"
    w = rep.checks[0].witness
    assert w == {"triangle": [1, 2, 4], "apex": 1, "meet_ab": 3, "meet_ac": 5,
                 "transversal": [3, 5], "side": [2, 4, 6]}
    # the witness is a genuine violation: transversal meets sides 1-2 and 1-4
    # away from the vertices yet misses the side through 2 and 4
    assert set(w["transversal"]) & set(w["side"]) == set()


def test_veblen_young_precondition():
    with pytest.raises(PreconditionError):
        check_veblen_young(IncidenceStructure(4, ((1, 2, 3), (1, 2, 4))))


# ---------------------------------------------------------------------------
# isomorphism
# ---------------------------------------------------------------------------

def test_isomorphic_identity():
    fano = IncidenceStructure(7, FANO_TRIPLES)
    res = isomorphic(fano, fano)
    assert res.status == "isomorphic"
    mapped = sorted(tuple(sorted(res.mapping[p] for p in line)) for line in fano.lines)
    assert mapped == sorted(fano.lines)


def test_isomorphic_recovers_relabelling():
    rng = random.Random(7)
    perm = list(range(1, 8))
    rng.shuffle(perm)
    relabel = {i + 1: perm[i] for i in range(7)}
    shuffled = IncidenceStructure(
        7, tuple(tuple(sorted(relabel[p] for p in line)) for line in FANO_TRIPLES))
    res = isomorphic(IncidenceStructure(7, FANO_TRIPLES), shuffled)
    assert res.status == "isomorphic"
    mapped = sorted(tuple(sorted(res.mapping[p] for p in line)) for line in FANO_TRIPLES)
    assert mapped == sorted(shuffled.lines)


def test_isomorphic_rejects_line_size_mismatch():
    other = IncidenceStructure(7, ((1, 2, 3, 4), (1, 5, 6), (2, 5, 7), (3, 6, 7),
                                   (4, 5, 6), (2, 4, 6), (3, 4, 5)))
    res = isomorphic(IncidenceStructure(7, FANO_TRIPLES), other)
    assert res.status == "not_isomorphic"
    assert res.reason == "line-size multisets differ"


def test_isomorphic_rejects_different_counts():
    res = isomorphic(IncidenceStructure(7, FANO_TRIPLES),
                     IncidenceStructure(7, FANO_TRIPLES[:-1]))
    assert res.status == "not_isomorphic"


def test_isomorphic_definite_negative_same_invariants():
    # two 2-regular pair systems on 6 points: a hexagon vs two triangles;
    # identical degree and line-size data, structurally different
    hexagon = IncidenceStructure(6, ((1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (1, 6)))
    tris = IncidenceStructure(6, ((1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)))
    res = isomorphic(hexagon, tris)
    assert res.status == "not_isomorphic"
    assert res.reason == "search exhausted without a match"


def test_isomorphic_budget_exceeded_is_indeterminate():
    res = isomorphic(IncidenceStructure(7, FANO_TRIPLES),
                     IncidenceStructure(7, FANO_TRIPLES), node_budget=1)
    assert res.status == "indeterminate"
    assert res.mapping is None


# ---------------------------------------------------------------------------
# a Steiner system that is not a projective space
# ---------------------------------------------------------------------------

def pasch_switched_sts15():
    """Trade one Pasch quad of PG(3,2) for its opposite: the four new triples
    cover the same twelve pairs, so the result is again a 2-(15,3,1) design,
    but classically a non-projective one."""
    pg = build_pg2_nim(3)
    old = {(1, 2, 3), (1, 4, 5), (2, 4, 6), (3, 5, 6)}
    new = ((1, 2, 4), (1, 3, 5), (2, 3, 6), (4, 5, 6))
    assert old <= set(pg.lines)
    return IncidenceStructure(15, tuple(l for l in pg.lines if l not in old) + new)


def test_pasch_switch_is_still_a_design():
    assert check_design(pasch_switched_sts15(), 15, 3, 7, 1).status == "pass"


def test_pasch_switch_fails_veblen_young():
    rep = check_veblen_young(pasch_switched_sts15())
    assert rep.status == "fail"
    w = rep.checks[0].witness
    # frozen first witness: line(1,2)={1,2,4} now, line(1,8)={1,8,9}, and the
    # transversal through 4 and 9 misses the side through 2 and 8
    assert w == {"triangle": [1, 2, 8], "apex": 1, "meet_ab": 4, "meet_ac": 9,
                 "transversal": [4, 9, 13], "side": [2, 8, 10]}
    assert set(w["transversal"]) & set(w["side"]) == set()


def test_pasch_switch_not_isomorphic_to_pg32():
    # identical point signatures force the search all the way to exhaustion
    res = isomorphic(build_pg2_nim(3), pasch_switched_sts15())
    assert res.status == "not_isomorphic"
    assert res.reason == "search exhausted without a match"


def test_pasch_switch_isomorphic_to_own_relabelling():
    base = pasch_switched_sts15()
    rng = random.Random(3)
    perm = list(range(1, 16))
    rng.shuffle(perm)
    relabel = {i + 1: perm[i] for i in range(15)}
    shuffled = IncidenceStructure(
        15, tuple(tuple(sorted(relabel[p] for p in l)) for l in base.lines))
    res = isomorphic(base, shuffled)
    assert res.status == "isomorphic"
    mapped = sorted(tuple(sorted(res.mapping[p] for p in l)) for l in base.lines)
    assert mapped == sorted(shuffled.lines)

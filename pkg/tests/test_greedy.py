"""Greedy generation: frozen row lists, family detection, state queries,
and the brute-force lexicographic-minimum oracle."""

from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from naivemat.errors import (InputRangeError, InvalidParameterError,
                             RowIncompleteError)
from naivemat.greedy import (GenParams, NaiveMatrixGenerator, Row,
                             derive_params, entry, generate)

# hand-executed from the three blocking conditions; first row is forced
FANO_ROWS = [(1, 2, 3), (1, 4, 5), (1, 6, 7), (2, 4, 6), (2, 5, 7), (3, 4, 7), (3, 5, 6)]


def lexmin_admissible_row(prev_rows, k, r, bound):
    """Smallest k-subset of [1, bound] in lexicographic order that keeps the
    pair-once and degree-at-most-r invariants.  Independent of the generator."""
    deg = {}
    covered = set()
    for row in prev_rows:
        for x in row:
            deg[x] = deg.get(x, 0) + 1
        covered.update(combinations(row, 2))
    for cand in combinations(range(1, bound + 1), k):
        if any(deg.get(x, 0) >= r for x in cand):
            continue
        if any(pair in covered for pair in combinations(cand, 2)):
            continue
        return cand
    return None


# ---------------------------------------------------------------------------
# parameters
# ---------------------------------------------------------------------------

def test_gen_params_validation():
    with pytest.raises(InvalidParameterError):
        GenParams(k=1, r=1, max_rows=1)
    with pytest.raises(InvalidParameterError):
        GenParams(k=3, r=0, max_rows=1)
    with pytest.raises(InvalidParameterError):
        GenParams(k=3, r=1, max_rows=0)
    with pytest.raises(InvalidParameterError):
        GenParams(k=3, r=1, max_rows=1, column_cap=2)


def test_derive_params_q2_family():
    d = derive_params(GenParams(k=3, r=3, max_rows=1))
    assert (d.family, d.n, d.d, d.s) == ("q2_theorem", 2, 7, 7)
    d = derive_params(GenParams(k=3, r=1, max_rows=1))
    assert (d.family, d.n, d.d, d.s) == ("q2_theorem", 1, 1, 3)
    d = derive_params(GenParams(k=3, r=7, max_rows=1))
    assert (d.family, d.n, d.d, d.s) == ("q2_theorem", 3, 35, 15)


def test_derive_params_general_family():
    d = derive_params(GenParams(k=5, r=5, max_rows=1))
    assert (d.family, d.q, d.n, d.v, d.b) == ("general_q", 4, 2, 21, 21)
    d = derive_params(GenParams(k=5, r=21, max_rows=1))
    assert (d.family, d.q, d.n, d.v, d.b) == ("general_q", 4, 3, 85, 357)
    d = derive_params(GenParams(k=17, r=17, max_rows=1))
    assert (d.family, d.q, d.n, d.v, d.b) == ("general_q", 16, 2, 273, 273)


def test_derive_params_none():
    assert derive_params(GenParams(k=4, r=2, max_rows=1)).family == "none"   # q=3
    assert derive_params(GenParams(k=9, r=73, max_rows=1)).family == "none"  # q=8
    assert derive_params(GenParams(k=3, r=2, max_rows=1)).family == "none"
    assert derive_params(GenParams(k=2, r=5, max_rows=1)).family == "none"
    # identity b*k = v*r holds whenever a family is detected
    for k, r in [(3, 1), (3, 3), (3, 7), (5, 5), (5, 21), (17, 17)]:
        d = derive_params(GenParams(k=k, r=r, max_rows=1))
        assert d.b * k == d.v * r


# ---------------------------------------------------------------------------
# generation
# ---------------------------------------------------------------------------

def test_fano_rows_exact():
    rows = generate(GenParams(k=3, r=3, max_rows=7))
    assert [row.points for row in rows] == FANO_ROWS
    assert [row.index for row in rows] == list(range(1, 8))


def test_matching_families():
    assert [r.points for r in generate(GenParams(3, 1, 3))] == [(1, 2, 3), (4, 5, 6), (7, 8, 9)]
    assert [r.points for r in generate(GenParams(2, 1, 2))] == [(1, 2), (3, 4)]


def test_next_row_mid_state():
    gen = NaiveMatrixGenerator(GenParams(k=3, r=3, max_rows=7))
    for want in FANO_ROWS[:4]:
        assert gen.next_row().points == want
    # j=5 pairs freely with 2; 6 is blocked by the pair (2,6); 7 is admissible
    assert gen.peek_next_row() == (2, 5, 7)
    assert gen.next_row().points == (2, 5, 7)


def test_peek_does_not_commit():
    gen = NaiveMatrixGenerator(GenParams(k=3, r=3, max_rows=7))
    assert gen.peek_next_row() == (1, 2, 3)
    assert gen.peek_next_row() == (1, 2, 3)
    assert gen.rows == []
    assert gen.next_row().points == (1, 2, 3)


def test_max_rows_is_enforced():
    gen = NaiveMatrixGenerator(GenParams(k=2, r=1, max_rows=1))
    gen.next_row()
    with pytest.raises(InvalidParameterError):
        gen.next_row()


def test_determinism():
    p = GenParams(k=4, r=3, max_rows=20)
    assert generate(p) == generate(p)


def test_column_cap_raises_row_incomplete():
    with pytest.raises(RowIncompleteError):
        generate(GenParams(k=3, r=1, max_rows=2, column_cap=3))


def test_entry():
    rows = generate(GenParams(k=3, r=3, max_rows=7))
    assert entry(rows, 1, 2) == 1
    assert entry(rows, 1, 4) == 0
    assert entry(rows, 4, 6) == 1
    assert entry(rows, 7, 100) == 0
    with pytest.raises(InputRangeError):
        entry(rows, 8, 1)
    with pytest.raises(InputRangeError):
        entry(rows, 0, 1)
    with pytest.raises(InputRangeError):
        entry(rows, 1, 0)


def test_is_complete_and_connectable():
    gen = NaiveMatrixGenerator(GenParams(k=3, r=3, max_rows=7))
    gen.next_row()  # {1,2,3}
    assert not gen.is_complete(1)
    assert gen.connectable(1, 2)
    assert not gen.connectable(1, 4)
    gen.next_row()  # {1,4,5}
    assert gen.connectable(4, 5)
    for _ in range(5):
        gen.next_row()
    assert gen.is_complete(1)      # rows 1, 2, 3 contain point 1
    assert not gen.is_complete(9)  # never used
    assert gen.connectable(4, 5)   # row 2 = {1,4,5}
    with pytest.raises(InvalidParameterError):
        gen.connectable(2, 2)
    with pytest.raises(InputRangeError):
        gen.connectable(0, 2)


def test_connectable_mask_matches_pairs():
    gen = NaiveMatrixGenerator(GenParams(k=3, r=3, max_rows=4))
    for _ in range(4):
        gen.next_row()
    for x in range(1, 8):
        mask = gen.connectable_mask(x)
        for y in range(1, 10):
            if y != x:
                assert bool((mask >> y) & 1) == gen.connectable(x, y)


# ---------------------------------------------------------------------------
# invariants and oracle equivalence
# ---------------------------------------------------------------------------

@settings(deadline=None, max_examples=60)
@given(st.integers(2, 5), st.integers(1, 5), st.integers(1, 15))
def test_linear_space_and_degree_invariants(k, r, n_rows):
    rows = [row.points for row in generate(GenParams(k, r, n_rows))]
    deg = {}
    for row in rows:
        assert len(row) == k
        assert list(row) == sorted(set(row))
        for x in row:
            deg[x] = deg.get(x, 0) + 1
    assert all(v <= r for v in deg.values())
    for i in range(len(rows)):
        for j in range(i + 1, len(rows)):
            assert len(set(rows[i]) & set(rows[j])) <= 1


@pytest.mark.parametrize("k,r", [(3, 1), (3, 2), (3, 3), (4, 2)])
def test_element_greedy_equals_lexmin_oracle(k, r):
    rows = [row.points for row in generate(GenParams(k, r, 10))]
    prev = []
    for row in rows:
        bound = max((p for rr in prev for p in rr), default=0) + k
        assert row == lexmin_admissible_row(prev, k, r, bound)
        prev.append(row)


def test_rows_strictly_lex_increasing():
    rows = [row.points for row in generate(GenParams(3, 7, 35))]
    assert rows == sorted(rows)


def test_window_growth_past_initial_bound():
    # r=1 consumes three fresh columns per row, crossing the 64-column
    # window mid-row around row 22
    rows = [row.points for row in generate(GenParams(3, 1, 30))]
    assert rows == [(3 * i + 1, 3 * i + 2, 3 * i + 3) for i in range(30)]
    rows = [row.points for row in generate(GenParams(5, 1, 20))]
    assert rows == [tuple(range(5 * i + 1, 5 * i + 6)) for i in range(20)]

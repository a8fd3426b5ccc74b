"""Entry-wise greedy generation of the unique 0/1 matrix with row weight k,
column weight r, and no column pair repeated across rows.

Columns and rows are 1-based on every public surface.  A column j joins the
row under construction exactly when (a) it is not already paired with a
column placed earlier in this row, (b) the row still has fewer than k
columns, and (c) j appears in fewer than r earlier rows.  Scanning columns
in ascending order makes each emitted row the lexicographically least
admissible k-set: an admissible partial row can always be finished with
fresh columns, which have degree zero and no pair history.

The generator keeps one bitmask per column recording its pair partners and
one global mask of non-saturated columns, so building a row costs a handful
of big-int operations instead of a column-by-column rescan.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InputRangeError, InvalidParameterError, RowIncompleteError
from .nimber import is_fermat_two_power

DEFAULT_COLUMN_CAP = 1 << 20
_INITIAL_WINDOW = 64


@dataclass(frozen=True)
class GenParams:
    """Generation request: row weight k, column weight r, row count, safety cap."""

    k: int
    r: int
    max_rows: int
    column_cap: int = DEFAULT_COLUMN_CAP

    def __post_init__(self):
        if self.k < 2:
            raise InvalidParameterError(f"k must be at least 2, got {self.k}")
        if self.r < 1:
            raise InvalidParameterError(f"r must be at least 1, got {self.r}")
        if self.max_rows < 1:
            raise InvalidParameterError(f"max_rows must be at least 1, got {self.max_rows}")
        if self.column_cap < self.k:
            raise InvalidParameterError(
                f"column_cap must be at least k={self.k}, got {self.column_cap}")


@dataclass(frozen=True)
class DerivedParams:
    """Projective family matched by (k, r), with its derived counts.

    family is "q2_theorem" when k=3 and r=2^n-1 (rows are nim triples),
    "general_q" when k=q+1 and r=(q^n-1)/(q-1) for a Fermat 2-power q > 2,
    and "none" otherwise.  d is the identified row count, s the width of the
    column window those rows use, v and b the point and line counts of the
    matching projective space.
    """

    family: str
    q: int | None = None
    n: int | None = None
    d: int | None = None
    s: int | None = None
    v: int | None = None
    b: int | None = None


def derive_params(params: GenParams) -> DerivedParams:
    """Match (k, r) against the projective families; "none" is not an error."""
    q = params.k - 1
    if not is_fermat_two_power(q):
        return DerivedParams("none")
    target = params.r * (q - 1) + 1  # equals q^n iff r = (q^n-1)/(q-1)
    n, power = 1, q
    while power < target:
        n += 1
        power *= q
    if power != target:
        return DerivedParams("none")
    v = (q ** (n + 1) - 1) // (q - 1)
    assert v * params.r % params.k == 0
    b = v * params.r // params.k
    family = "q2_theorem" if q == 2 else "general_q"
    return DerivedParams(family, q=q, n=n, d=b, s=v, v=v, b=b)


@dataclass(frozen=True)
class Row:
    """One emitted row: its 1-based index and strictly increasing column set."""

    index: int
    points: tuple[int, ...]


class NaiveMatrixGenerator:
    """Streams rows of the greedy matrix while tracking column state.

    State per column: its degree (rows containing it) and a bitmask of the
    columns it already shares a row with.  `_active` is the mask of columns
    whose degree is still below r; the window of materialised columns grows
    on demand and is capped by params.column_cap.
    """

    def __init__(self, params: GenParams):
        self.params = params
        self.rows: list[Row] = []
        self.max_used_column = 0
        w = min(max(_INITIAL_WINDOW, 2 * params.k), params.column_cap)
        self._window = w
        self._degree = [0] * (w + 1)
        self._pair = [0] * (w + 1)
        self._active = ((1 << w) - 1) << 1  # bits 1..w

    def _grow_window(self) -> None:
        cap = self.params.column_cap
        if self._window >= cap:
            raise RowIncompleteError(
                f"no admissible column below the cap {cap} while building row {len(self.rows) + 1}")
        new_w = min(2 * self._window, cap)
        grown = new_w - self._window
        self._active |= ((1 << grown) - 1) << (self._window + 1)
        self._degree.extend([0] * grown)
        self._pair.extend([0] * grown)
        self._window = new_w

    def _scan(self) -> tuple[int, ...]:
        k = self.params.k
        placed: list[int] = []
        cand = self._active
        while True:
            if cand == 0:
                before = self._window
                self._grow_window()  # raises RowIncompleteError at the cap
                cand |= self._active & (-1 << (before + 1))
                continue
            low = cand & -cand
            j = low.bit_length() - 1
            placed.append(j)
            if len(placed) == k:
                return tuple(placed)
            cand &= ~self._pair[j]
            cand &= -(low << 1)  # keep columns above j only

    def peek_next_row(self) -> tuple[int, ...]:
        """Columns the next row will use, without committing it.

        May enlarge the internal column window, which has no observable
        effect on generation.
        """
        if len(self.rows) >= self.params.max_rows:
            raise InvalidParameterError(f"all {self.params.max_rows} requested rows already emitted")
        return self._scan()

    def next_row(self) -> Row:
        points = self.peek_next_row()
        r = self.params.r
        for x in points:
            d = self._degree[x] + 1
            self._degree[x] = d
            if d == r:
                self._active &= ~(1 << x)
        pair = self._pair
        for i, x in enumerate(points):
            bx = 1 << x
            for y in points[i + 1:]:
                pair[x] |= 1 << y
                pair[y] |= bx
        row = Row(len(self.rows) + 1, points)
        self.rows.append(row)
        if points[-1] > self.max_used_column:
            self.max_used_column = points[-1]
        return row

    def column_degree(self, x: int) -> int:
        if x < 1:
            raise InputRangeError(f"columns are 1-based, got {x}")
        return self._degree[x] if x <= self._window else 0

    def is_complete(self, x: int) -> bool:
        """Whether column x has reached degree r in the emitted rows."""
        return self.column_degree(x) >= self.params.r

    def connectable(self, x: int, y: int) -> bool:
        """Whether some emitted row contains both x and y."""
        if x == y:
            raise InvalidParameterError("a column is not connectable to itself")
        if x < 1 or y < 1:
            raise InputRangeError("columns are 1-based")
        if x > self._window or y > self._window:
            return False
        return bool((self._pair[x] >> y) & 1)

    def connectable_mask(self, x: int) -> int:
        """Bitmask of all columns sharing an emitted row with x."""
        if x < 1:
            raise InputRangeError(f"columns are 1-based, got {x}")
        return self._pair[x] if x <= self._window else 0


def generate(params: GenParams) -> list[Row]:
    """The first params.max_rows rows; deterministic for fixed params."""
    gen = NaiveMatrixGenerator(params)
    for _ in range(params.max_rows):
        gen.next_row()
    return gen.rows


def entry(rows: list[Row], i: int, j: int) -> int:
    """Matrix entry in row i, column j (both 1-based) of the generated rows."""
    if not 1 <= i <= len(rows):
        raise InputRangeError(f"row {i} is outside the generated range 1..{len(rows)}")
    if j < 1:
        raise InputRangeError(f"columns are 1-based, got {j}")
    return 1 if j in rows[i - 1].points else 0

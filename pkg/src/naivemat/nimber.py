"""Nim arithmetic on plain integers.

Nim addition is the coefficientwise mod-2 sum of binary expansions, i.e.
bitwise xor.  Nim multiplication is Conway's recursive product

    a (x) b = mex { a' (x) b  ^  a (x) b'  ^  a' (x) b'  :  a' < a, b' < b }

which turns [0, 2^(2^a)) into a field for every Fermat 2-power 2^(2^a).
Two multipliers live here: a literal mex recursion kept as the trusted
reference (scalar form plus a vectorised bottom-up table), and the fast
splitting rule used everywhere else.  Values are capped at 63 bits so all
arithmetic stays in native machine words on typical builds.

Everything is a pure function once the memo tables are warm, so calls are
safe from concurrent readers.
"""

from __future__ import annotations

import functools
import random
import time

import numpy as np

from .errors import InputRangeError, InvalidParameterError, ResourceLimitError
from .report import VerificationReport

VALUE_BITS = 63
MEX_INPUT_BOUND = 1 << 12
EXHAUSTIVE_FIELD_CAP = 256


def _check_value(x: int, what: str = "value") -> int:
    if x < 0 or (x >> VALUE_BITS):
        raise InputRangeError(f"{what} must be a nonnegative {VALUE_BITS}-bit integer, got {x}")
    return x


def nim_add(a: int, b: int) -> int:
    """Nim sum: coefficientwise mod-2 addition of binary expansions (xor)."""
    return _check_value(a, "a") ^ _check_value(b, "b")


def nim_mul(a: int, b: int) -> int:
    """Nim product via the Fermat splitting rule (memoized)."""
    a = _check_value(a, "a")
    b = _check_value(b, "b")
    return _mul(a, b)


def _mul(x: int, y: int) -> int:
    return _nim_mul_split(x, y) if x <= y else _nim_mul_split(y, x)


@functools.cache
def _nim_mul_split(a: int, b: int) -> int:
    # a <= b.  Split both operands in base F = 2^half where F is the largest
    # Fermat 2-power not exceeding b; recombine Karatsuba-style using the
    # field identity F (x) F = F + F/2.
    if a < 2:
        return a * b
    h = 1
    while b >> (1 << h):
        h += 1
    half = 1 << (h - 1)
    f = 1 << half
    a_hi, a_lo = a >> half, a & (f - 1)
    b_hi, b_lo = b >> half, b & (f - 1)
    lo = _mul(a_lo, b_lo)
    hi = _mul(a_hi, b_hi)
    mid = _mul(a_lo ^ a_hi, b_lo ^ b_hi)
    return ((mid ^ lo) << half) ^ lo ^ _mul(hi, f >> 1)


def _pow(x: int, e: int) -> int:
    out = 1
    base = x
    while e:
        if e & 1:
            out = _mul(out, base)
        base = _mul(base, base)
        e >>= 1
    return out


# ---------------------------------------------------------------------------
# mex reference
# ---------------------------------------------------------------------------

_mex_table: list[list[int]] = []


def nim_mul_mex(a: int, b: int) -> int:
    """Nim product straight from the mex recursion.

    This is the reference implementation the fast multiplier is checked
    against.  Cost grows like the product of the inputs, so inputs are capped
    at 2^12; asking for more is a programming error, not a supported path.
    """
    a = _check_value(a, "a")
    b = _check_value(b, "b")
    if a >= MEX_INPUT_BOUND or b >= MEX_INPUT_BOUND:
        raise InputRangeError(f"mex reference accepts inputs below {MEX_INPUT_BOUND} only")
    need = max(a, b) + 1
    if need > len(_mex_table):
        _grow_mex_table(need)
    return _mex_table[a][b]


def _grow_mex_table(n: int) -> None:
    old = len(_mex_table)
    for row in _mex_table:
        row.extend(0 for _ in range(old, n))
    for _ in range(old, n):
        _mex_table.append([0] * n)
    t = _mex_table
    for a in range(n):
        row_a = t[a]
        start = old if a < old else 0
        for b in range(start, n):
            if a == 0 or b == 0:
                row_a[b] = 0
            elif a == 1:
                row_a[b] = b
            elif b == 1:
                row_a[b] = a
            else:
                seen = 0
                for a2 in range(a):
                    row_a2 = t[a2]
                    p = row_a2[b]
                    for b2 in range(b):
                        seen |= 1 << (p ^ row_a[b2] ^ row_a2[b2])
                # mex = lowest absent value = number of trailing set bits
                row_a[b] = (~seen & (seen + 1)).bit_length() - 1


@functools.lru_cache(maxsize=4)
def nim_mul_table(n: int) -> np.ndarray:
    """The n-by-n nim product table, filled bottom-up by the mex recursion.

    Vectorised form of nim_mul_mex for bulk cross-checks; the returned array
    is cached and read-only.
    """
    if n < 1 or n > MEX_INPUT_BOUND:
        raise InputRangeError(f"table size must be in [1, {MEX_INPUT_BOUND}], got {n}")
    t = np.zeros((n, n), dtype=np.int32)
    if n > 1:
        t[1, :] = np.arange(n)
        t[:, 1] = np.arange(n)
    for a in range(2, n):
        for b in range(a, n):
            options = t[:a, b, None] ^ t[a, :b][None, :] ^ t[:a, :b]
            counts = np.bincount(options.ravel(), minlength=a * b + 2)
            m = int(np.argmin(counts > 0))
            t[a, b] = m
            t[b, a] = m
    t.setflags(write=False)
    return t


# ---------------------------------------------------------------------------
# greediness of the nim sum
# ---------------------------------------------------------------------------

def greediness_lemma_holds(a: int, b: int, c: int) -> bool:
    """Whether c < a^b implies a^c < b or b^c < a (vacuously true otherwise)."""
    a = _check_value(a, "a")
    b = _check_value(b, "b")
    c = _check_value(c, "c")
    return c >= (a ^ b) or (a ^ c) < b or (b ^ c) < a


# ---------------------------------------------------------------------------
# Fermat fields
# ---------------------------------------------------------------------------

def is_fermat_two_power(q: int) -> bool:
    """True iff q = 2^(2^a) for some a >= 0, i.e. q in {2, 4, 16, 256, ...}."""
    if q < 2 or q & (q - 1):
        return False
    e = q.bit_length() - 1
    return e & (e - 1) == 0


class FermatField:
    """GF(q) for a Fermat 2-power q, realised on the integers [0, q).

    Addition is xor, multiplication is the nim product; [0, q) is closed
    under both, which field_check verifies independently.
    """

    def __init__(self, q: int):
        if not is_fermat_two_power(q):
            raise InvalidParameterError(f"field order must be 2^(2^a) (2, 4, 16, 256, ...), got {q}")
        if (q - 1) >> VALUE_BITS:
            raise InputRangeError(f"elements of GF({q}) exceed the {VALUE_BITS}-bit value domain")
        self.q = q
        self.a_exponent = (q.bit_length() - 1).bit_length() - 1
        self._inv: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"FermatField(q={self.q})"

    @property
    def elements(self) -> range:
        return range(self.q)

    def _check(self, x: int) -> int:
        if not 0 <= x < self.q:
            raise InputRangeError(f"element {x} outside [0, {self.q})")
        return x

    def add(self, x: int, y: int) -> int:
        return self._check(x) ^ self._check(y)

    def mul(self, x: int, y: int) -> int:
        return _mul(self._check(x), self._check(y))

    def inv(self, x: int) -> int:
        self._check(x)
        if x == 0:
            raise InputRangeError("0 has no multiplicative inverse")
        cached = self._inv.get(x)
        if cached is None:
            for y in range(1, self.q):
                if _mul(x, y) == 1:
                    cached = y
                    break
            self._inv[x] = cached
        return cached


# ---------------------------------------------------------------------------
# field structure check
# ---------------------------------------------------------------------------

def field_check(q: int, mode: str = "exhaustive", samples: int = 1_000_000,
                seed: int = 0) -> VerificationReport:
    """Verify that [0, q) under nim arithmetic behaves like a field.

    Exhaustive mode scans every triple and is capped at q <= 256; sampled
    mode draws `samples` pseudo-random triples.  Identity and inverse checks
    run exhaustively whenever q <= 256 because they are cheap there.
    """
    if not is_fermat_two_power(q):
        raise InvalidParameterError(f"field order must be a Fermat 2-power, got {q}")
    if (q - 1) >> VALUE_BITS:
        raise InputRangeError(f"elements of GF({q}) exceed the {VALUE_BITS}-bit value domain")
    if mode not in ("exhaustive", "sampled"):
        raise InvalidParameterError(f"mode must be 'exhaustive' or 'sampled', got {mode!r}")
    if mode == "exhaustive" and q > EXHAUSTIVE_FIELD_CAP:
        raise ResourceLimitError(f"exhaustive field check is capped at q <= {EXHAUSTIVE_FIELD_CAP}")

    start = time.perf_counter()
    report = VerificationReport(subject=f"nim field q={q}")
    if q <= EXHAUSTIVE_FIELD_CAP:
        _field_check_table(q, mode, samples, seed, report)
        triples = q ** 3 if mode == "exhaustive" else samples
    else:
        _field_check_scalar(q, samples, seed, report)
        triples = samples
    report.counts = {"q": q, "mode": mode, "triples": triples}
    report.elapsed_ms = (time.perf_counter() - start) * 1000.0
    return report


def _field_check_table(q: int, mode: str, samples: int, seed: int,
                       report: VerificationReport) -> None:
    t = np.zeros((q, q), dtype=np.int64)
    for a in range(q):
        for b in range(a, q):
            t[a, b] = t[b, a] = _mul(a, b)

    bad = np.argwhere(t >= q)
    report.add("closure of [0,q) under nim product", bad.size == 0,
               None if bad.size == 0 else {"pair": bad[0].tolist(), "product": int(t[tuple(bad[0])])})
    report.add("1 is the multiplicative identity", bool((t[1] == np.arange(q)).all()),
               {"element": int(np.argmax(t[1] != np.arange(q)))})
    report.add("commutativity", bool((t == t.T).all()), None)

    xs = np.arange(q)
    if mode == "exhaustive":
        assoc_bad = distrib_bad = None
        for a in range(q):
            ta = t[a]
            left = t[t[a], :]          # (a*b)*c
            right = ta[t]              # a*(b*c)
            if assoc_bad is None and not (left == right).all():
                b, c = np.argwhere(left != right)[0]
                assoc_bad = [a, int(b), int(c)]
            dl = ta[xs[:, None] ^ xs[None, :]]       # a*(b^c)
            dr = ta[xs][:, None] ^ ta[xs][None, :]   # (a*b)^(a*c)
            if distrib_bad is None and not (dl == dr).all():
                b, c = np.argwhere(dl != dr)[0]
                distrib_bad = [a, int(b), int(c)]
        report.add("associativity (exhaustive)", assoc_bad is None, {"triple": assoc_bad})
        report.add("distributivity (exhaustive)", distrib_bad is None, {"triple": distrib_bad})
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, q, size=(3, samples))

        def first_bad(ok: np.ndarray) -> dict:
            i = int(np.argmin(ok))
            return {"triple": [int(a[i]), int(b[i]), int(c[i])]}

        assoc = t[t[a, b], c] == t[a, t[b, c]]
        report.add(f"associativity ({samples} sampled triples)", bool(assoc.all()),
                   None if assoc.all() else first_bad(assoc))
        distrib = t[a, b ^ c] == (t[a, b] ^ t[a, c])
        report.add(f"distributivity ({samples} sampled triples)", bool(distrib.all()),
                   None if distrib.all() else first_bad(distrib))

    has_inv = (t[1:, :] == 1).any(axis=1)
    report.add("every nonzero element has an inverse", bool(has_inv.all()),
               {"element": int(np.argmin(has_inv)) + 1})


def _field_check_scalar(q: int, samples: int, seed: int,
                        report: VerificationReport) -> None:
    rng = random.Random(seed)
    witness = {"closure": None, "identity": None, "commutativity": None,
               "associativity": None, "distributivity": None, "inverse": None}
    for _ in range(samples):
        a, b, c = (rng.randrange(q) for _ in range(3))
        ab = _mul(a, b)
        if witness["closure"] is None and ab >= q:
            witness["closure"] = {"pair": [a, b], "product": ab}
        if witness["identity"] is None and _mul(1, a) != a:
            witness["identity"] = {"element": a}
        if witness["commutativity"] is None and ab != _mul(b, a):
            witness["commutativity"] = {"pair": [a, b]}
        if witness["associativity"] is None and _mul(ab, c) != _mul(a, _mul(b, c)):
            witness["associativity"] = {"triple": [a, b, c]}
        if witness["distributivity"] is None and _mul(a, b ^ c) != (ab ^ _mul(a, c)):
            witness["distributivity"] = {"triple": [a, b, c]}
        if witness["inverse"] is None and a != 0 and _mul(a, _pow(a, q - 2)) != 1:
            witness["inverse"] = {"element": a}
    for name, key in [
        ("closure of [0,q) under nim product", "closure"),
        ("1 is the multiplicative identity", "identity"),
        (f"commutativity ({samples} sampled)", "commutativity"),
        (f"associativity ({samples} sampled)", "associativity"),
        (f"distributivity ({samples} sampled)", "distributivity"),
        ("sampled nonzero elements have inverses", "inverse"),
    ]:
        report.add(name, witness[key] is None, witness[key])

"""Eulerian numbers refined by first letter.

A(d, i, j) counts permutations of [d] with i descents and first letter j.
Tables are indexed ``table[i, j]`` with 0 <= i <= d-1 and 1 <= j <= d;
out-of-range indices read as 0.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations

from .complex_core import Peaks, peak_positions

BRUTE_FORCE_MAX_D = 9


@dataclass(frozen=True)
class EulerianTable:
    d: int
    rows: tuple[tuple[int, ...], ...]  # rows[i][j-1] = A(d, i, j)

    def __getitem__(self, key: tuple[int, int]) -> int:
        i, j = key
        if 0 <= i < self.d and 1 <= j <= self.d:
            return self.rows[i][j - 1]
        return 0

    def row_sum(self, i: int) -> int:
        return sum(self.rows[i]) if 0 <= i < self.d else 0

    def to_json(self) -> dict:
        return {"d": self.d, "rows": [list(r) for r in self.rows]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["i"] + [f"j={j}" for j in range(1, self.d + 1)])
        for i, row in enumerate(self.rows):
            w.writerow([i, *row])
        return buf.getvalue()


def descent_count(sigma) -> int:
    """Number of positions k with sigma(k) > sigma(k+1); sigma in one-line notation on [d]."""
    sigma = tuple(sigma)
    if sorted(sigma) != list(range(1, len(sigma) + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{len(sigma)}")
    return sum(a > b for a, b in zip(sigma, sigma[1:]))


def a_table_bruteforce(d: int, budget: int = BRUTE_FORCE_MAX_D) -> EulerianTable:
    if d < 1:
        raise ValueError("d must be at least 1")
    if d > budget:
        raise ValueError(f"d={d} exceeds the enumeration budget {budget}")
    counts = [[0] * d for _ in range(d)]
    for sigma in permutations(range(1, d + 1)):
        des = 0
        for a, b in zip(sigma, sigma[1:]):
            if a > b:
                des += 1
        counts[des][sigma[0] - 1] += 1
    return EulerianTable(d, tuple(tuple(r) for r in counts))


@lru_cache(maxsize=None)
def a_table_recurrence(d: int) -> EulerianTable:
    """Build A(d, ., .) from A(d-1, ., .) without enumerating permutations.

    Moving the first letter from r to r+1 by the transposition (r, r+1)
    preserves descents except when the second letter is the swapped
    partner, giving

        A(n, i, r+1) = A(n, i, r) + A(n-1, i-1, r) - A(n-1, i, r).

    The first column is seeded by A(n, i, 1) = A(n, i+1, n), and the last
    column from A(n, i, n) = #{tau in S_(n-1) : des(tau) = i-1}.
    """
    if d < 1:
        raise ValueError("d must be at least 1")
    if d == 1:
        return EulerianTable(1, ((1,),))
    prev = a_table_recurrence(d - 1)
    n = d
    last = [prev.row_sum(i - 1) for i in range(n)]  # A(n, i, n)
    cols = [[last[i + 1] if i + 1 < n else 0 for i in range(n)]]  # A(n, i, 1)
    for r in range(1, n):
        cols.append([cols[-1][i] + prev[i - 1, r] - prev[i, r] for i in range(n)])
    if cols[-1] != last:
        raise AssertionError(f"recurrence inconsistent at d={d}")
    return EulerianTable(d, tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))


def sd_h_transform(h, d: int | None = None) -> tuple[int, ...]:
    """h-vector of sd(Δ) from the h-vector of a (d-1)-dimensional Δ."""
    h = tuple(h)
    if d is None:
        d = len(h) - 1
    if len(h) != d + 1:
        raise ValueError(f"h has length {len(h)}, expected {d + 1}")
    a = a_table_recurrence(d + 1)
    return tuple(sum(a[j, r + 1] * h[r] for r in range(d + 1)) for j in range(d + 1))


@dataclass(frozen=True)
class Check:
    name: str
    ok: bool
    counterexample: dict | None = None

    def __bool__(self):
        return self.ok

    def to_json(self) -> dict:
        out = {"name": self.name, "pass": self.ok}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        return out


def verify_symmetry(d: int, table: EulerianTable | None = None) -> Check:
    """A(d, i, j) == A(d, d-1-i, d+1-j) for every index pair."""
    a = table or a_table_recurrence(d)
    for i in range(d):
        for j in range(1, d + 1):
            if a[i, j] != a[d - 1 - i, d + 1 - j]:
                return Check("symmetry", False, {"i": i, "j": j})
    return Check("symmetry", True)


def _chain(values, increasing: bool) -> int | None:
    """Index of the first break in a monotone chain, or None."""
    for k in range(len(values) - 1):
        if (values[k] > values[k + 1]) if increasing else (values[k] < values[k + 1]):
            return k
    return None


@dataclass(frozen=True)
class InequalityReport:
    """Inequality families on A(d+1, ., .), where d is the dimension parameter."""

    d: int
    checks: tuple[Check, ...]
    middle_pair: tuple[dict, ...]  # odd d only; informational, never asserted

    @property
    def ok(self) -> bool:
        return all(self.checks)

    def to_json(self) -> dict:
        return {
            "d": self.d,
            "table": self.d + 1,
            "pass": self.ok,
            "checks": [c.to_json() for c in self.checks],
            "middle_pair_unasserted": list(self.middle_pair),
        }


def verify_inequalities(d: int, table: EulerianTable | None = None) -> InequalityReport:
    if d < 0:
        raise ValueError("d must be non-negative")
    n = d + 1
    a = table or a_table_recurrence(n)
    checks = []

    def record(name, bad):
        checks.append(Check(name, bad is None, bad))

    # descent count j against its mirror d-1-j, every first letter
    bad = None
    for j in range((d - 2) // 2 + 1):
        for r in range(1, n + 1):
            if a[j, r] > a[d - 1 - j, r]:
                bad = bad or {"j": j, "r": r}
    record("mirror_descents", bad)

    # increasing in the descent count up to the middle, from both ends
    lo_bad = hi_bad = None
    for r in range(1, d + 1):
        k = _chain([a[i, r + 1] for i in range(d // 2 + 1)], True)
        if k is not None and lo_bad is None:
            lo_bad = {"column": r + 1, "i": k}
        top = (d + 1) // 2
        k = _chain([a[i, r + 1] for i in range(d, top - 1, -1)], True)
        if k is not None and hi_bad is None:
            hi_bad = {"column": r + 1, "i": d - k}
    record("rising_to_middle_from_zero", lo_bad)
    record("rising_to_middle_from_top", hi_bad)

    # monotone in the first letter for fixed descent count
    bad = None
    for j in range((d + 2) // 2, d + 1):
        k = _chain([a[j, r] for r in range(1, n + 1)], True)
        if k is not None and bad is None:
            bad = {"j": j, "r": k + 1}
    record("first_letter_increasing", bad)
    bad = None
    for j in range((d - 1) // 2 + 1):
        k = _chain([a[j, r] for r in range(1, n + 1)], False)
        if k is not None and bad is None:
            bad = {"j": j, "r": k + 1}
    record("first_letter_decreasing", bad)

    bad = None
    if d % 2 == 0:
        row = [a[d // 2, r] for r in range(1, n + 1)]
        mid = d // 2  # position of r = d/2 + 1
        k = _chain(row[: mid + 1], True)
        if k is not None:
            bad = {"r": k + 1}
        k = _chain(row[mid:], False)
        if k is not None and bad is None:
            bad = {"r": mid + k + 1}
    record("even_middle_row_peaks_at_center", bad)

    bad = None
    for j in range(d):
        if a[j, 1] != a[j + 1, n]:
            bad = {"j": j}
            break
    record("first_column_is_shifted_last_column", bad)

    middle = ()
    if d % 2 == 1:
        lo, hi = d // 2, (d + 1) // 2
        middle = tuple(
            {"column": r + 1, "lower": a[lo, r + 1], "upper": a[hi, r + 1]} for r in range(1, d + 1)
        )
    return InequalityReport(d, tuple(checks), middle)


def flatten_A(d: int, table: EulerianTable | None = None) -> tuple[int, ...]:
    """A(d) as a vector: (i, j) before (i', j') iff i < i', or i == i' and j > j'."""
    a = table or a_table_recurrence(d)
    return tuple(a[i, j] for i in range(d) for j in range(d, 0, -1))


@dataclass(frozen=True)
class FlattenVerdict:
    sequence: tuple[int, ...]
    unimodal: bool
    symmetric: bool
    middle_peak: bool

    @property
    def ok(self) -> bool:
        return self.unimodal and self.symmetric and self.middle_peak


def flatten_and_check_A(d: int, table: EulerianTable | None = None) -> FlattenVerdict:
    seq = flatten_A(d, table)
    peaks = peak_positions(seq)
    n = len(seq)
    middle = {(n - 1) // 2, n // 2}
    return FlattenVerdict(seq, peaks.unimodal, seq == seq[::-1], bool(middle & peaks.positions))


def predict_peak(h, d: int | None = None) -> frozenset[int]:
    """Where the h-vector of the subdivision must peak, given h_i >= 0."""
    h = tuple(h)
    if d is None:
        d = len(h) - 1
    if any(x < 0 for x in h):
        raise ValueError("peak prediction needs a non-negative h-vector")
    if d % 2 == 0:
        return frozenset({d // 2})
    return frozenset({(d - 1) // 2, (d + 1) // 2})


def peak_matches_prediction(h, d: int | None = None) -> tuple[Peaks, frozenset[int], bool]:
    """Transform h, locate its peaks and test them against the prediction.

    For even d the predicted position must itself be a peak; for odd d one
    of the two middle positions must be.
    """
    h = tuple(h)
    d = len(h) - 1 if d is None else d
    predicted = predict_peak(h, d)
    actual = peak_positions(sd_h_transform(h, d))
    if d % 2 == 0:
        ok = actual.unimodal and predicted <= actual.positions
    else:
        ok = actual.unimodal and bool(predicted & actual.positions)
    return actual, predicted, ok


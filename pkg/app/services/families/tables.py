"""
Memoized integer triangles.

Every table is built by its defining recurrence, so everything stays in
ExactInteger with no rational intermediates. Rows are appended under a lock and
returned as tuples, so concurrent readers see a consistent table.
"""
import threading
from typing import Callable


class RowTable:
    """Rows of a triangle grown on demand from a one-step recurrence."""

    def __init__(self, first_row: tuple[int, ...], step: Callable[[int, tuple[int, ...]], tuple[int, ...]]):
        self._rows: list[tuple[int, ...]] = [first_row]
        self._step = step
        self._lock = threading.Lock()

    def row(self, n: int) -> tuple[int, ...]:
        if n < 0:
            raise IndexError(f"Negative row index {n}")
        if n < len(self._rows):
            return self._rows[n]
        with self._lock:
            while len(self._rows) <= n:
                m = len(self._rows)
                self._rows.append(self._step(m, self._rows[-1]))
            return self._rows[n]


def _pascal_step(n: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    return (1,) + tuple(prev[i] + prev[i + 1] for i in range(n - 1)) + (1,)


def _stirling2_step(n: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    # S(n,k) = k S(n-1,k) + S(n-1,k-1)
    padded = prev + (0,)
    return tuple(k * padded[k] + (padded[k - 1] if k else 0) for k in range(n + 1))


def _eulerian_step(n: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    # E(n,k) = (k+1) E(n-1,k) + (n-k) E(n-1,k-1), 0-indexed descents
    def at(k: int) -> int:
        return prev[k] if 0 <= k < len(prev) else 0

    return tuple((k + 1) * at(k) + (n - k) * at(k - 1) for k in range(n))


def _bell_step(n: int, prev: tuple[int, ...]) -> tuple[int, ...]:
    row = [prev[-1]]
    for value in prev:
        row.append(row[-1] + value)
    return tuple(row)


PASCAL = RowTable((1,), _pascal_step)
STIRLING2 = RowTable((1,), _stirling2_step)
EULERIAN = RowTable((1,), _eulerian_step)
BELL_TRIANGLE = RowTable((1,), _bell_step)


def binomial(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return PASCAL.row(n)[k]


def stirling2(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return STIRLING2.row(n)[k]


def eulerian(n: int, k: int) -> int:
    """0-indexed Eulerian number E(n,k): permutations of n with k descents."""
    row = EULERIAN.row(n) if n >= 0 else ()
    return row[k] if 0 <= k < len(row) else 0


def catalan_number(n: int) -> int:
    return binomial(2 * n, n) // (n + 1)


def narayana_number(n: int, k: int) -> int:
    """C(n,k) C(n,k-1) / n for 1 <= k <= n, with the row n = 0 equal to [1]."""
    if n == 0:
        return 1 if k == 0 else 0
    if not 1 <= k <= n:
        return 0
    return binomial(n, k) * binomial(n, k - 1) // n


def bell_number(n: int) -> int:
    """First entry of row n of the Bell (Aitken) triangle."""
    return BELL_TRIANGLE.row(n)[0]

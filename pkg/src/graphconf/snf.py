"""Exact Smith normal form over the integers.

Two-phase reduction built for the sparse boundary matrices of cube
complexes.  Phase one eliminates with unit (+-1) pivots chosen by Markowitz
cost, which clears almost everything without entry growth.  Phase two runs
a classical smallest-pivot reduction on the (tiny) dense residue with
unbounded Python integers, so intermediate growth can never overflow.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence


@dataclass(frozen=True)
class SnfResult:
    """Diagonal of the Smith normal form, zeros included.

    The diagonal has min(rows, cols) entries, is nonnegative, and every
    nonzero entry divides the next.
    """

    diagonal: tuple[int, ...]

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.diagonal if d > 1)


def snf(matrix) -> SnfResult:
    """Smith normal form diagonal of a dense integer matrix.

    Accepts any 2D sequence of ints (lists, tuples, numpy arrays).
    """
    rows = [list(map(int, row)) for row in matrix]
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    if any(len(r) != ncols for r in rows):
        raise ValueError("ragged matrix")
    data = {
        i: {j: v for j, v in enumerate(row) if v}
        for i, row in enumerate(rows)
        if any(row)
    }
    return _snf_core(data, nrows, ncols)


def snf_columns(columns: Iterable[Sequence[tuple[int, int]]], nrows: int) -> SnfResult:
    """Smith normal form from column-major sparse data.

    ``columns`` yields, per column, (row, value) entries.
    """
    data: dict[int, dict[int, int]] = {}
    ncols = 0
    for j, col in enumerate(columns):
        ncols = j + 1
        for r, v in col:
            if v:
                data.setdefault(r, {})[j] = int(v)
    return _snf_core(data, nrows, ncols)


def _snf_core(rows: dict[int, dict[int, int]], nrows: int, ncols: int) -> SnfResult:
    size = min(nrows, ncols)
    cols: dict[int, set[int]] = {}
    for r, row in rows.items():
        for c in row:
            cols.setdefault(c, set()).add(r)

    # phase one: unit pivots, cheapest fill first
    heap: list[tuple[int, int, int]] = []
    for r, row in rows.items():
        for c, v in row.items():
            if v in (1, -1):
                heap.append(((len(row) - 1) * (len(cols[c]) - 1), r, c))
    heapq.heapify(heap)
    units = 0
    while heap:
        cost, r, c = heapq.heappop(heap)
        row = rows.get(r)
        if row is None or row.get(c) not in (1, -1):
            continue
        now = (len(row) - 1) * (len(cols[c]) - 1)
        if now > cost:
            heapq.heappush(heap, (now, r, c))
            continue
        pivot_row = rows.pop(r)
        pivot = pivot_row[c]
        for cc in pivot_row:
            cols[cc].discard(r)
        for r2 in list(cols.get(c, ())):
            target = rows[r2]
            factor = target[c] // pivot  # exact: pivot is +-1
            for cc, pv in pivot_row.items():
                value = target.get(cc, 0) - factor * pv
                if value:
                    target[cc] = value
                    cols[cc].add(r2)
                    if value in (1, -1):
                        heapq.heappush(
                            heap, ((len(target) - 1) * (len(cols[cc]) - 1), r2, cc)
                        )
                else:
                    if cc in target:
                        del target[cc]
                        cols[cc].discard(r2)
            if not target:
                del rows[r2]
        cols.pop(c, None)
        units += 1

    # phase two: dense residue
    live_rows = sorted(rows)
    live_cols = sorted({c for row in rows.values() for c in row})
    dense = [[rows[r].get(c, 0) for c in live_cols] for r in live_rows]
    residue = _dense_snf(dense)

    diagonal = [1] * units + residue
    diagonal += [0] * (size - len(diagonal))
    return SnfResult(tuple(diagonal[:size]))


def _dense_snf(a: list[list[int]]) -> list[int]:
    """Nonzero Smith diagonal of a small dense matrix, divisibility-chained."""
    nrows = len(a)
    ncols = len(a[0]) if nrows else 0
    diag: list[int] = []
    t = 0
    while t < min(nrows, ncols):
        # locate the smallest nonzero entry in the active block
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                v = abs(a[i][j])
                if v and (best is None or v < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        a[t], a[bi] = a[bi], a[t]
        for row in a:
            row[t], row[bj] = row[bj], row[t]

        while True:
            if a[t][t] < 0:
                a[t] = [-v for v in a[t]]
            # clear the pivot column
            dirty = False
            for i in range(t + 1, nrows):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    a[i] = [x - q * y for x, y in zip(a[i], a[t])]
                    if a[i][t]:  # remainder is a smaller pivot
                        a[t], a[i] = a[i], a[t]
                        dirty = True
                        break
            if dirty:
                continue
            # clear the pivot row
            for j in range(t + 1, ncols):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for row in a:
                        row[j] -= q * row[t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        dirty = True
                        break
            if dirty:
                continue
            # pivot must divide the rest of the block
            offender = None
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            a[t] = [x + y for x, y in zip(a[t], a[offender])]
        diag.append(abs(a[t][t]))
        t += 1
    return diag

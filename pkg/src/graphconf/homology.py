"""Exact homology of cube complexes over Z and F2, plus F2 cochain tools.

Integer ranks and torsion come from the Smith normal form of the boundary
matrices.  Mod-2 ranks and coboundary solving use bit-packed Gaussian
elimination (rows as uint64 words), which keeps even the larger complexes
comfortably fast.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .complexes import CubeComplex, SparseColumns
from .snf import SnfResult, snf, snf_columns

__all__ = [
    "Cochain",
    "DegreeHomology",
    "HomologyResult",
    "euler_char",
    "homology_Z",
    "is_cocycle_F2",
    "snf",
    "snf_columns",
    "SnfResult",
    "solve_coboundary_F2",
]


@dataclass(frozen=True)
class DegreeHomology:
    degree: int
    betti: int
    torsion: tuple[int, ...]
    betti_mod2: int


@dataclass(frozen=True)
class HomologyResult:
    groups: tuple[DegreeHomology, ...]

    def degree(self, d: int) -> DegreeHomology:
        for grp in self.groups:
            if grp.degree == d:
                return grp
        return DegreeHomology(d, 0, (), 0)


@dataclass
class Cochain:
    """F2 cochain on the d-cells of a fixed complex."""

    degree: int
    values: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=np.uint8) & 1

    @staticmethod
    def zeros(c: CubeComplex, degree: int) -> "Cochain":
        return Cochain(degree, np.zeros(c.count(degree), dtype=np.uint8))


def euler_char(c: CubeComplex) -> int:
    return sum((-1) ** d * len(cs) for d, cs in enumerate(c.cells))


def homology_Z(c: CubeComplex) -> HomologyResult:
    """Betti numbers and torsion over Z, Betti numbers over F2, per degree."""
    top = max(c.top_dim, 0)
    snf_of: dict[int, SnfResult] = {}
    rank2: dict[int, int] = {}
    for d in range(1, top + 2):
        bd = c.boundary(d) if d < len(c.cells) else SparseColumns(c.count(d - 1), 0, ())
        if bd.ncols == 0 or bd.nrows == 0:
            snf_of[d] = SnfResult(())
            rank2[d] = 0
        else:
            snf_of[d] = snf_columns(bd.columns, bd.nrows)
            rank2[d] = _rank_F2(bd)
    groups = []
    for d in range(top + 1):
        below = snf_of[d].rank if d >= 1 else 0
        below2 = rank2[d] if d >= 1 else 0
        betti = c.count(d) - below - snf_of[d + 1].rank
        betti2 = c.count(d) - below2 - rank2[d + 1]
        groups.append(
            DegreeHomology(
                degree=d,
                betti=betti,
                torsion=snf_of[d + 1].torsion,
                betti_mod2=betti2,
            )
        )
    return HomologyResult(tuple(groups))


def is_cocycle_F2(c: CubeComplex, z: Cochain) -> bool:
    """True iff the coboundary of z vanishes mod 2."""
    d = z.degree
    if d < 0 or len(z.values) != c.count(d):
        raise ValueError("cochain does not match the complex")
    if c.count(d + 1) == 0:
        return True
    vals = z.values
    for col in c.boundary(d + 1).columns:
        s = 0
        for r, _v in col:
            s ^= int(vals[r])
        if s:
            return False
    return True


def solve_coboundary_F2(c: CubeComplex, z: Cochain) -> Cochain | None:
    """Some y with delta y = z over F2, or None when no such y exists.

    For a cocycle z this decides whether its class vanishes in mod-2
    cohomology.
    """
    d = z.degree
    if d < 1:
        raise ValueError("coboundaries live in degree >= 1")
    if len(z.values) != c.count(d):
        raise ValueError("cochain does not match the complex")
    ncols = c.count(d - 1)
    nrows = c.count(d)
    if nrows == 0:
        return Cochain(d - 1, np.zeros(ncols, dtype=np.uint8))
    # row i of the system is the d-cell i: its (d-1)-faces sum to z[i]
    bd = c.boundary(d)
    rows = _pack_rows(bd.columns, bd.nrows, bd.ncols, transpose=True)
    rhs = z.values.copy()
    pivots = _eliminate(rows, ncols, rhs)
    pivot_rows = {r for r, _c in pivots}
    for i in range(nrows):
        if rhs[i] and i not in pivot_rows:
            return None
    out = np.zeros(ncols, dtype=np.uint8)
    for r, col in pivots:
        out[col] = rhs[r]
    return Cochain(d - 1, out)


def _pack_rows(
    columns, nrows: int, ncols: int, *, transpose: bool = False
) -> np.ndarray:
    """Bit-packed row matrix from column entries (mod 2).

    With transpose=True the packed matrix is the transpose of the sparse
    input: input column j becomes row j of width nrows.
    """
    if transpose:
        height, width = ncols, nrows
    else:
        height, width = nrows, ncols
    words = max(1, (width + 63) // 64)
    m = np.zeros((height, words), dtype=np.uint64)
    for j, col in enumerate(columns):
        for r, v in col:
            if v % 2:
                i, b = (j, r) if transpose else (r, j)
                m[i, b >> 6] |= np.uint64(1 << (b & 63))
    return m


def _eliminate(m: np.ndarray, width: int, rhs: np.ndarray | None = None):
    """In-place Gauss-Jordan over F2; returns (row, column) pivots."""
    height = m.shape[0]
    used = np.zeros(height, dtype=bool)
    pivots: list[tuple[int, int]] = []
    for col in range(width):
        w, b = col >> 6, np.uint64(col & 63)
        bits = (m[:, w] >> b) & np.uint64(1)
        has = bits.astype(bool)
        candidates = has & ~used
        if not candidates.any():
            continue
        r = int(np.argmax(candidates))
        used[r] = True
        pivots.append((r, col))
        has[r] = False
        if has.any():
            m[has] ^= m[r]
            if rhs is not None and rhs[r]:
                rhs[has] ^= np.uint8(1)
    return pivots


def _rank_F2(bd: SparseColumns) -> int:
    if bd.ncols == 0 or bd.nrows == 0:
        return 0
    # eliminate along the smaller axis
    transpose = bd.ncols > bd.nrows
    m = _pack_rows(bd.columns, bd.nrows, bd.ncols, transpose=not transpose)
    width = bd.nrows if not transpose else bd.ncols
    width = bd.ncols if not transpose else bd.nrows
    return len(_eliminate(m, width))

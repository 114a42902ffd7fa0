"""Discrete configuration complexes of a graph.

For n particles on a simple graph, cells are collections of n occupants
(vertices or closed edges) with pairwise disjoint closures; the number of
edge occupants is the cell dimension.  The ordered complex keeps the
particles as an n-tuple, the unordered complex as a canonically sorted
set.  Both carry exact integer boundary operators: the boundary of a cube
replaces each of its edges, in slot order i with sign (-1)^i, by the head
minus the tail of that edge.

These are honest cube complexes: when the graph is sufficiently
subdivided for n, the unordered complex has the homotopy type of the
space of n unordered distinct points on the graph.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import cached_property

from .graphs import Graph, SufficiencyReport, is_sufficiently_subdivided


class BudgetExceededError(RuntimeError):
    """Cell enumeration passed the caller's cap."""


class InsufficientSubdivisionError(ValueError):
    """Graph fails the subdivision conditions for the requested n."""

    def __init__(self, report: SufficiencyReport):
        kinds = sorted({v.kind for v in report.violations})
        super().__init__(
            f"graph is not sufficiently subdivided for n={report.n}: "
            + ", ".join(kinds)
        )
        self.report = report


@dataclass(frozen=True, order=True)
class Occupant:
    """One particle position: a vertex or the closure of an edge.

    Ordering (vertices before edges, ids ascending) is the canonical
    occupant order used everywhere.
    """

    is_edge: bool
    id: int

    @property
    def kind(self) -> str:
        return "edge" if self.is_edge else "vertex"

    @staticmethod
    def vertex(v: int) -> "Occupant":
        return Occupant(False, v)

    @staticmethod
    def edge(e: int) -> "Occupant":
        return Occupant(True, e)


Cell = tuple[Occupant, ...]


@dataclass(frozen=True)
class SparseColumns:
    """Column-major sparse integer matrix; columns hold (row, value) pairs."""

    nrows: int
    ncols: int
    columns: tuple[tuple[tuple[int, int], ...], ...]

    def triplets(self) -> list[tuple[int, int, int]]:
        return [(r, c, v) for c, col in enumerate(self.columns) for r, v in col]

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.ncols for _ in range(self.nrows)]
        for r, c, v in self.triplets():
            out[r][c] = v
        return out


@dataclass(frozen=True, eq=False)
class CubeComplex:
    """Cells and boundary matrices of a configuration complex.

    ``cells[d]`` lists the d-cells in canonical order; ``boundary(d)``
    maps d-chains to (d-1)-chains.  Instances are immutable.
    """

    graph: Graph
    n: int
    ordered: bool
    cells: tuple[tuple[Cell, ...], ...]

    @property
    def counts(self) -> tuple[int, ...]:
        return tuple(len(cs) for cs in self.cells)

    @property
    def top_dim(self) -> int:
        top = -1
        for d, cs in enumerate(self.cells):
            if cs:
                top = d
        return top

    def count(self, d: int) -> int:
        if 0 <= d < len(self.cells):
            return len(self.cells[d])
        return 0

    def boundary(self, d: int) -> SparseColumns:
        """Integer boundary matrix from d-cells to (d-1)-cells, d >= 1."""
        if d < 1:
            raise ValueError("boundary defined for dimension >= 1")
        if d >= len(self.cells):
            return SparseColumns(self.count(d - 1), 0, ())
        return self._boundaries[d - 1]

    @cached_property
    def _boundaries(self) -> tuple[SparseColumns, ...]:
        out = []
        for d in range(1, len(self.cells)):
            index = self._index[d - 1]
            columns = []
            for cell in self.cells[d]:
                col: list[tuple[int, int]] = []
                edge_slots = [i for i, occ in enumerate(cell) if occ.is_edge]
                for i, slot in enumerate(edge_slots):
                    tail, head = self.graph.edges[cell[slot].id]
                    sign = -1 if i % 2 else 1
                    col.append((index[_face(cell, slot, head, self.ordered)], sign))
                    col.append((index[_face(cell, slot, tail, self.ordered)], -sign))
                col.sort()
                columns.append(tuple(col))
            out.append(SparseColumns(self.count(d - 1), self.count(d), tuple(columns)))
        return tuple(out)

    @cached_property
    def _index(self) -> tuple[dict[Cell, int], ...]:
        return tuple(
            {cell: i for i, cell in enumerate(cs)} for cs in self.cells
        )


def _face(cell: Cell, slot: int, vertex: int, ordered: bool) -> Cell:
    occ = Occupant.vertex(vertex)
    if ordered:
        return cell[:slot] + (occ,) + cell[slot + 1 :]
    return tuple(sorted(cell[:slot] + cell[slot + 1 :] + (occ,)))


def _closure_masks(g: Graph) -> list[int]:
    """Bitmask of closure vertices per occupant code (vertices then edges)."""
    masks = [1 << v for v in range(g.vertex_count)]
    masks.extend((1 << t) | (1 << h) for t, h in g.edges)
    return masks


def _enumerate_sets(g: Graph, n: int, max_cells: int | None) -> list[list[tuple[int, ...]]]:
    """All canonical occupant-code sets with pairwise disjoint closures."""
    nv = g.vertex_count
    codes = nv + g.edge_count
    masks = _closure_masks(g)
    by_dim: list[list[tuple[int, ...]]] = [[] for _ in range(n + 1)]
    total = 0
    chosen: list[int] = []

    def rec(start: int, used: int, dim: int):
        nonlocal total
        if len(chosen) == n:
            by_dim[dim].append(tuple(chosen))
            total += 1
            if max_cells is not None and total > max_cells:
                raise BudgetExceededError(f"more than {max_cells} cells")
            return
        need = n - len(chosen)
        for code in range(start, codes - need + 1):
            mask = masks[code]
            if mask & used:
                continue
            chosen.append(code)
            rec(code + 1, used | mask, dim + (1 if code >= nv else 0))
            chosen.pop()

    rec(0, 0, 0)
    return by_dim


def _decode(g: Graph, code: int) -> Occupant:
    if code < g.vertex_count:
        return Occupant.vertex(code)
    return Occupant.edge(code - g.vertex_count)


def _check_buildable(g: Graph, n: int, allow_insufficient: bool):
    if n < 1:
        raise ValueError("n must be at least 1")
    if not g.is_simple:
        raise ValueError("complex construction needs a simple graph; subdivide first")
    if not allow_insufficient:
        report = is_sufficiently_subdivided(g, n)
        if not report.ok:
            raise InsufficientSubdivisionError(report)


def build_unordered(
    g: Graph,
    n: int,
    *,
    allow_insufficient: bool = False,
    max_cells: int | None = None,
) -> CubeComplex:
    """Complex of unordered configurations: cells are canonical occupant sets."""
    _check_buildable(g, n, allow_insufficient)
    by_dim = _enumerate_sets(g, n, max_cells)
    cells = tuple(
        tuple(tuple(_decode(g, code) for code in cell) for cell in sorted(dim_cells))
        for dim_cells in by_dim
    )
    return CubeComplex(graph=g, n=n, ordered=False, cells=cells)


def build_ordered(
    g: Graph,
    n: int,
    *,
    allow_insufficient: bool = False,
    max_cells: int | None = None,
) -> CubeComplex:
    """Complex of ordered configurations: cells are occupant n-tuples."""
    _check_buildable(g, n, allow_insufficient)
    if max_cells is not None:
        max_cells //= math.factorial(n)
    by_dim = _enumerate_sets(g, n, max_cells)
    cells = []
    for dim_cells in by_dim:
        tuples: list[tuple[int, ...]] = []
        for cell in dim_cells:
            tuples.extend(itertools.permutations(cell))
        tuples.sort()
        cells.append(tuple(tuple(_decode(g, code) for code in t) for t in tuples))
    return CubeComplex(graph=g, n=n, ordered=True, cells=tuple(cells))


def cell_lookup(c: CubeComplex, cell: Cell) -> int | None:
    """Index of a canonical cell in its dimension list, or None."""
    if len(cell) != c.n:
        return None
    d = sum(1 for occ in cell if occ.is_edge)
    if d >= len(c.cells):
        return None
    return c._index[d].get(cell)


def complex_to_json(c: CubeComplex) -> dict:
    """Stable JSON form: cell lists per dimension plus boundary triplets."""
    return {
        "n": c.n,
        "ordered": c.ordered,
        "graph": {
            "vertex_count": c.graph.vertex_count,
            "edges": [list(e) for e in c.graph.edges],
        },
        "cells": [
            [[{"kind": occ.kind, "id": occ.id} for occ in cell] for cell in cs]
            for cs in c.cells
        ],
        "boundaries": [
            [list(t) for t in c.boundary(d).triplets()]
            for d in range(1, len(c.cells))
        ],
    }

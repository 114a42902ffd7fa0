"""Finite multigraphs and their homeomorphism-type analysis.

A graph here is a finite 1-complex: dense integer vertex ids, edges stored
as (tail, head) pairs whose position in the tuple is the edge id.  Self-loops
and parallel edges are legal at ingestion; the subdivision step removes them
before any cube complex is built.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

POINT = "point"
INTERVAL = "interval"
CIRCLE = "circle"
ESSENTIAL = "essential"


class GraphParseError(ValueError):
    """Malformed edge-list input; remembers the offending line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class Graph:
    """Immutable undirected multigraph.

    Vertices are 0..vertex_count-1.  Edge ids are positions in ``edges``;
    each edge is a (tail, head) pair.  A self-loop contributes 2 to the
    degree of its vertex.
    """

    vertex_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.vertex_count < 0:
            raise ValueError("vertex_count must be nonnegative")
        for eid, (tail, head) in enumerate(self.edges):
            if not (0 <= tail < self.vertex_count and 0 <= head < self.vertex_count):
                raise ValueError(f"edge {eid} endpoint out of range")

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        deg = [0] * self.vertex_count
        for tail, head in self.edges:
            deg[tail] += 1
            deg[head] += 1
        return tuple(deg)

    @cached_property
    def incidence(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per vertex: (edge id, opposite endpoint) slots, loops listed twice."""
        inc: list[list[tuple[int, int]]] = [[] for _ in range(self.vertex_count)]
        for eid, (tail, head) in enumerate(self.edges):
            inc[tail].append((eid, head))
            inc[head].append((eid, tail))
        return tuple(tuple(sorted(slots)) for slots in inc)

    @cached_property
    def is_simple(self) -> bool:
        seen = set()
        for tail, head in self.edges:
            if tail == head:
                return False
            key = (min(tail, head), max(tail, head))
            if key in seen:
                return False
            seen.add(key)
        return True

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Vertex sets of connected components, ordered by least vertex."""
        parent = list(range(self.vertex_count))

        def find(x: int) -> int:
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for tail, head in self.edges:
            a, b = find(tail), find(head)
            if a != b:
                parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for v in range(self.vertex_count):
            groups.setdefault(find(v), []).append(v)
        return tuple(tuple(groups[r]) for r in sorted(groups))


@dataclass(frozen=True)
class TopoClass:
    """Homeomorphism-type summary: one tag per connected component."""

    components: tuple[str, ...]
    in_L: bool
    is_single_circle: bool
    is_connected: bool


@dataclass(frozen=True)
class Violation:
    kind: str  # "short-path" | "short-loop" | "too-few-vertices"
    witness: tuple[int, ...]  # edge ids of the offending chain or cycle


@dataclass(frozen=True)
class SufficiencyReport:
    n: int
    ok: bool
    violations: tuple[Violation, ...]


def load_graph(text: str) -> Graph:
    """Parse an edge-list document.

    Format: optional first line ``V <count>``, then one ``<tail> <head>``
    pair of decimal ids per line.  ``#`` starts a comment; blank lines are
    skipped.  Without a header the vertex count is 1 + the largest id seen.
    """
    declared: int | None = None
    edges: list[tuple[int, int]] = []
    max_id = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "V":
            if declared is not None:
                raise GraphParseError(lineno, "duplicate V header")
            if edges:
                raise GraphParseError(lineno, "V header must precede edges")
            if len(tokens) != 2:
                raise GraphParseError(lineno, "header must be 'V <count>'")
            try:
                declared = int(tokens[1])
            except ValueError:
                raise GraphParseError(lineno, f"bad vertex count {tokens[1]!r}") from None
            if declared < 0:
                raise GraphParseError(lineno, "negative vertex count")
            continue
        if len(tokens) != 2:
            raise GraphParseError(lineno, f"expected '<tail> <head>', got {line!r}")
        try:
            tail, head = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError(lineno, f"non-integer vertex id in {line!r}") from None
        if tail < 0 or head < 0:
            raise GraphParseError(lineno, "negative vertex id")
        if declared is not None and (tail >= declared or head >= declared):
            raise GraphParseError(lineno, f"vertex id exceeds declared count {declared}")
        edges.append((tail, head))
        max_id = max(max_id, tail, head)
    count = declared if declared is not None else max_id + 1
    return Graph(count, tuple(edges))


def dump_graph(g: Graph) -> str:
    """Serialize in the edge-list format; inverse of load_graph."""
    lines = [f"V {g.vertex_count}"]
    lines.extend(f"{tail} {head}" for tail, head in g.edges)
    return "\n".join(lines) + "\n"


def degree(g: Graph, v: int) -> int:
    if not 0 <= v < g.vertex_count:
        raise ValueError(f"vertex {v} out of range")
    return g.degrees[v]


def classify_space(g: Graph) -> TopoClass:
    """Tag every component as point, interval, circle, or essential.

    point: isolated vertex.  interval: connected, acyclic, max degree 2,
    at least one edge.  circle: connected, all degrees 2, first Betti
    number 1.  essential: anything else.
    """
    comp_of = {}
    for ci, comp in enumerate(g.components):
        for v in comp:
            comp_of[v] = ci
    edge_counts = [0] * len(g.components)
    for tail, _head in g.edges:
        edge_counts[comp_of[tail]] += 1
    tags = []
    for comp, ecount in zip(g.components, edge_counts):
        degs = [g.degrees[v] for v in comp]
        if len(comp) == 1 and ecount == 0:
            tags.append(POINT)
        elif ecount == len(comp) - 1 and all(d <= 2 for d in degs):
            tags.append(INTERVAL)
        elif ecount == len(comp) and all(d == 2 for d in degs):
            tags.append(CIRCLE)
        else:
            tags.append(ESSENTIAL)
    tags = tuple(tags)
    connected = len(tags) == 1
    return TopoClass(
        components=tags,
        in_L=all(t in (POINT, INTERVAL) for t in tags),
        is_single_circle=connected and tags[0] == CIRCLE,
        is_connected=connected,
    )


def topo_reduce(g: Graph) -> Graph:
    """Smooth away degree-2 vertices, normalizing the homeomorphism type.

    Every degree-2 vertex whose two edge slots belong to distinct edges is
    removed and its edges merged.  A circle component therefore collapses
    to a single vertex with one self-loop (the smallest vertex id of the
    component survives).  Component count, essential-vertex degrees and
    E - V + C are preserved.
    """
    edges: dict[int, tuple[int, int]] = dict(enumerate(g.edges))
    slots: dict[int, list[int]] = {v: [] for v in range(g.vertex_count)}
    for eid, (tail, head) in edges.items():
        slots[tail].append(eid)
        slots[head].append(eid)

    def other_end(eid: int, v: int) -> int:
        tail, head = edges[eid]
        return head if tail == v else tail

    while True:
        victim = None
        for v in sorted(slots, reverse=True):
            sl = slots[v]
            if len(sl) == 2 and sl[0] != sl[1]:
                victim = v
                break
        if victim is None:
            break
        e1, e2 = sorted(slots[victim])
        a = other_end(e1, victim)
        b = other_end(e2, victim)
        edges[e1] = (a, b)
        del edges[e2]
        del slots[victim]
        slots[b] = [e1 if e == e2 else e for e in slots[b]]

    vmap = {v: i for i, v in enumerate(sorted(slots))}
    new_edges = tuple((vmap[t], vmap[h]) for _eid, (t, h) in sorted(edges.items()))
    return Graph(len(vmap), new_edges)


def _chains(g: Graph):
    """Maximal chains between distinct essential vertices.

    A chain starts and ends at vertices of degree != 2 and runs through
    degree-2 interior vertices only.  Closed chains (back to the start)
    are cycles and are left to the cycle check.  Yields edge-id tuples,
    each chain once.
    """
    seen = set()
    for u in range(g.vertex_count):
        if g.degrees[u] == 2:
            continue
        for eid, w in g.incidence[u]:
            path = [eid]
            came = eid
            cur = w
            while g.degrees[cur] == 2:
                came, cur = next(
                    (e, o) for e, o in g.incidence[cur] if e != came
                )
                path.append(came)
            if cur == u:
                continue  # loop based at an essential vertex
            key = min(tuple(path), tuple(reversed(path)))
            if key not in seen:
                seen.add(key)
                yield tuple(path)


def _short_embedded_cycles(g: Graph, max_len: int):
    """All embedded cycles with at most max_len edges, each reported once."""
    if max_len < 1:
        return
    for eid, (tail, head) in enumerate(g.edges):
        if tail == head:
            yield (eid,)
    for start in range(g.vertex_count):
        # cycles whose least vertex is `start`; larger intermediate vertices only
        stack = [(start, iter(g.incidence[start]))]
        on_path = {start}
        path_edges: list[int] = []
        while stack:
            cur, it = stack[-1]
            advanced = False
            for eid, w in it:
                if eid in path_edges:
                    continue
                if w == start and path_edges:
                    if path_edges[0] < eid and len(path_edges) + 1 <= max_len:
                        yield tuple(path_edges) + (eid,)
                    continue
                if w <= start or w in on_path or len(path_edges) + 2 > max_len:
                    continue
                path_edges.append(eid)
                on_path.add(w)
                stack.append((w, iter(g.incidence[w])))
                advanced = True
                break
            if not advanced:
                stack.pop()
                if path_edges:
                    path_edges.pop()
                if cur != start:
                    on_path.discard(cur)


def is_sufficiently_subdivided(g: Graph, n: int) -> SufficiencyReport:
    """Check the three subdivision conditions for n particles.

    ok iff (a) at least n vertices, (b) every chain between distinct
    essential vertices has >= n-1 edges, (c) every embedded cycle has
    >= n+1 edges.  Each failure carries a witness edge list.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    violations: list[Violation] = []
    if g.vertex_count < n:
        violations.append(Violation("too-few-vertices", ()))
    short_paths = sorted(path for path in _chains(g) if len(path) < n - 1)
    violations.extend(Violation("short-path", path) for path in short_paths)
    short_loops = sorted(_short_embedded_cycles(g, max_len=n))
    violations.extend(Violation("short-loop", cycle) for cycle in short_loops)
    return SufficiencyReport(n=n, ok=not violations, violations=tuple(violations))


def subdivide(g: Graph, n: int) -> Graph:
    """Subdivide until the n-particle sufficiency conditions hold.

    Returns g unchanged when it is already simple and sufficiently
    subdivided.  Otherwise every edge is split uniformly into n+1 segments
    (self-loops into at least 3), which satisfies all conditions whenever
    the graph has an edge and makes the result simple.  Edgeless graphs
    are returned unchanged: no subdivision can add vertices, and an
    edgeless graph with fewer than n vertices simply has an empty
    configuration space.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if g.edge_count == 0:
        return g
    if g.is_simple and is_sufficiently_subdivided(g, n).ok:
        return g
    next_vertex = g.vertex_count
    new_edges: list[tuple[int, int]] = []
    for tail, head in g.edges:
        parts = n + 1 if tail != head else max(n + 1, 3)
        chain = [tail] + list(range(next_vertex, next_vertex + parts - 1)) + [head]
        next_vertex += parts - 1
        new_edges.extend(zip(chain[:-1], chain[1:]))
    return Graph(next_vertex, tuple(new_edges))

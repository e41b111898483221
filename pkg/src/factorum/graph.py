"""Undirected simple graphs, edge subsets and the path primitives used by the
structural code.

Vertices and edges are dense integer ids.  Adjacency lists keep insertion
order so every traversal below is deterministic.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from .errors import UsageError


class Graph:
    """Immutable simple graph on vertices ``0..n-1``.

    >>> g = Graph(3, [(0, 1), (1, 2)])
    >>> g.degree(1)
    2
    """

    __slots__ = ("n", "edges", "adj", "_index")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise UsageError("vertex count must be nonnegative")
        self.n = n
        elist = []
        index: dict[tuple[int, int], int] = {}
        adj: list[list[tuple[int, int]]] = [[] for _ in range(n)]
        for a, b in edges:
            a, b = int(a), int(b)
            if not (0 <= a < n and 0 <= b < n):
                raise UsageError(f"edge ({a}, {b}) has an endpoint out of range")
            if a == b:
                raise UsageError(f"self-loop at vertex {a}")
            key = (a, b) if a < b else (b, a)
            if key in index:
                raise UsageError(f"parallel edge between {a} and {b}")
            eid = len(elist)
            index[key] = eid
            elist.append((a, b))
            adj[a].append((eid, b))
            adj[b].append((eid, a))
        self.edges: tuple[tuple[int, int], ...] = tuple(elist)
        self.adj: tuple[tuple[tuple[int, int], ...], ...] = tuple(tuple(x) for x in adj)
        self._index = index

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def other(self, eid: int, v: int) -> int:
        a, b = self.edges[eid]
        if v == a:
            return b
        if v == b:
            return a
        raise UsageError(f"vertex {v} is not an endpoint of edge {eid}")

    def edge_id(self, a: int, b: int) -> int | None:
        return self._index.get((a, b) if a < b else (b, a))

    def max_degree(self) -> int:
        return max((len(x) for x in self.adj), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def full(self) -> "EdgeSet":
        return EdgeSet(self, frozenset(range(self.m)))

    def empty(self) -> "EdgeSet":
        return EdgeSet(self, frozenset())

    def edge_set(self, ids: Iterable[int]) -> "EdgeSet":
        return EdgeSet(self, frozenset(ids))


@dataclass(frozen=True)
class EdgeSet:
    """A set of edge ids over a fixed graph.  The covered vertex set is derived."""

    graph: Graph
    members: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if not isinstance(self.members, frozenset):
            object.__setattr__(self, "members", frozenset(self.members))
        m = self.graph.m
        for e in self.members:
            if not (0 <= e < m):
                raise UsageError(f"edge id {e} out of range for graph with {m} edges")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __contains__(self, eid) -> bool:
        return eid in self.members

    def sorted(self) -> tuple[int, ...]:
        return tuple(sorted(self.members))

    def vertices(self) -> frozenset:
        out = set()
        for e in self.members:
            out.update(self.graph.edges[e])
        return frozenset(out)

    def degrees(self) -> list[int]:
        deg = [0] * self.graph.n
        for e in self.members:
            a, b = self.graph.edges[e]
            deg[a] += 1
            deg[b] += 1
        return deg

    def _check(self, other: "EdgeSet"):
        if self.graph is not other.graph and self.graph != other.graph:
            raise UsageError("edge sets live on different graphs")

    def __xor__(self, other: "EdgeSet") -> "EdgeSet":
        return sym_diff(self, other)

    def __or__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.graph, self.members | other.members)

    def __and__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.graph, self.members & other.members)

    def __sub__(self, other: "EdgeSet") -> "EdgeSet":
        self._check(other)
        return EdgeSet(self.graph, self.members - other.members)

    def __le__(self, other: "EdgeSet") -> bool:
        self._check(other)
        return self.members <= other.members


@dataclass(frozen=True)
class PathDescriptor:
    """A walk given by its vertices and the edges joining consecutive ones.

    A path with ``k`` edges lists ``k + 1`` vertices; a cycle repeats its first
    vertex at the end.
    """

    vertices: tuple
    edges: tuple

    @property
    def is_cycle(self) -> bool:
        return len(self.edges) > 0 and self.vertices[0] == self.vertices[-1]

    @property
    def ends(self) -> tuple[int, int]:
        return self.vertices[0], self.vertices[-1]

    def edge_set(self, g: Graph) -> EdgeSet:
        return EdgeSet(g, frozenset(self.edges))

    def is_valid(self, g: Graph) -> bool:
        if len(self.vertices) != len(self.edges) + 1:
            return False
        for i, e in enumerate(self.edges):
            a, b = g.edges[e]
            if {a, b} != {self.vertices[i], self.vertices[i + 1]}:
                return False
        inner = self.vertices[:-1] if self.is_cycle else self.vertices
        if len(set(inner)) != len(inner):
            return False
        if self.is_cycle and len(self.edges) < 3:
            return False
        return len(set(self.edges)) == len(self.edges)


def sym_diff(a: EdgeSet, b: EdgeSet) -> EdgeSet:
    a._check(b)
    return EdgeSet(a.graph, a.members ^ b.members)


def degree_in(s: EdgeSet, v: int) -> int:
    if not (0 <= v < s.graph.n):
        raise UsageError(f"vertex {v} out of range")
    return sum(1 for e, _ in s.graph.adj[v] if e in s.members)


def components(g: Graph, edge_ids: Iterable[int] | None = None) -> list[list[int]]:
    """Connected components as sorted vertex lists.

    With ``edge_ids`` given, only those edges are used and only vertices
    covered by them are reported (isolated vertices are not part of an edge
    subgraph).
    """
    allowed = None if edge_ids is None else set(edge_ids)
    if allowed is None:
        starts = range(g.n)
    else:
        starts = sorted({x for e in allowed for x in g.edges[e]})
    seen = set()
    out = []
    for s in starts:
        if s in seen:
            continue
        comp = [s]
        seen.add(s)
        stack = [s]
        while stack:
            x = stack.pop()
            for e, y in g.adj[x]:
                if allowed is not None and e not in allowed:
                    continue
                if y not in seen:
                    seen.add(y)
                    comp.append(y)
                    stack.append(y)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def bridges(g: Graph) -> list[int]:
    """Bridge edge ids in ascending order (iterative low-link DFS)."""
    disc = [-1] * g.n
    low = [0] * g.n
    out = []
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        # frames: (vertex, parent edge, adjacency cursor)
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, pe, i = frame
            if i < len(g.adj[v]):
                frame[2] += 1
                e, w = g.adj[v][i]
                if e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append([w, e, 0])
                elif disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    if low[v] < low[p]:
                        low[p] = low[v]
                    if low[v] > disc[p]:
                        out.append(pe)
    return sorted(out)


def articulation_points(g: Graph) -> list[int]:
    disc = [-1] * g.n
    low = [0] * g.n
    cut = set()
    t = 0
    for root in range(g.n):
        if disc[root] != -1:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        stack = [[root, -1, 0]]
        while stack:
            frame = stack[-1]
            v, pe, i = frame
            if i < len(g.adj[v]):
                frame[2] += 1
                e, w = g.adj[v][i]
                if e == pe:
                    continue
                if disc[w] == -1:
                    disc[w] = low[w] = t
                    t += 1
                    if v == root:
                        children += 1
                    stack.append([w, e, 0])
                elif disc[w] < low[v]:
                    low[v] = disc[w]
            else:
                stack.pop()
                if stack:
                    p = stack[-1][0]
                    low[p] = min(low[p], low[v])
                    if p != root and low[v] >= disc[p]:
                        cut.add(p)
        if children > 1:
            cut.add(root)
    return sorted(cut)


def is_two_connected(g: Graph) -> bool:
    return g.n > 2 and is_connected(g) and not articulation_points(g)


def bfs_path(
    g: Graph,
    source: int,
    targets,
    *,
    avoid: frozenset | set = frozenset(),
    allowed_edges=None,
    blocked_edges=frozenset(),
) -> PathDescriptor | None:
    """Shortest path from ``source`` to any vertex in ``targets``.

    Vertices in ``avoid`` are never entered (targets excepted).  Ties resolve
    by adjacency order.
    """
    targets = set(targets)
    if source in targets:
        return PathDescriptor((source,), ())
    prev = {source: None}
    q = deque([source])
    while q:
        x = q.popleft()
        for e, y in g.adj[x]:
            if y in prev or e in blocked_edges:
                continue
            if allowed_edges is not None and e not in allowed_edges:
                continue
            if y in targets:
                prev[y] = (x, e)
                return _unwind(prev, y)
            if y in avoid:
                continue
            prev[y] = (x, e)
            q.append(y)
    return None


def _unwind(prev, end) -> PathDescriptor:
    vs = [end]
    es = []
    while prev[vs[-1]] is not None:
        x, e = prev[vs[-1]]
        es.append(e)
        vs.append(x)
    vs.reverse()
    es.reverse()
    return PathDescriptor(tuple(vs), tuple(es))


def find_cycle_through(g: Graph, v: int) -> PathDescriptor | None:
    """Some simple cycle containing ``v`` or ``None``."""
    nbrs = g.adj[v]
    for i in range(len(nbrs)):
        e1, a = nbrs[i]
        for j in range(i + 1, len(nbrs)):
            e2, b = nbrs[j]
            p = bfs_path(g, a, {b}, avoid={v})
            if p is not None:
                return PathDescriptor((v,) + p.vertices + (v,), (e1,) + p.edges + (e2,))
    return None


def disjoint_paths(g: Graph, s: int, t: int, k: int = 2, allowed_edges=None) -> list[PathDescriptor] | None:
    """``k`` internally vertex-disjoint s-t paths, or None.

    Unit-capacity max-flow on the vertex-split digraph; each internal vertex
    carries one unit.
    """
    if s == t:
        raise UsageError("endpoints must differ")

    # node x -> (2x in, 2x+1 out); arcs stored as dict residual capacities
    cap: dict[tuple[int, int], int] = {}
    out_arcs: dict[int, list[int]] = {}

    def add(a, b, c):
        if (a, b) not in cap:
            out_arcs.setdefault(a, []).append(b)
            out_arcs.setdefault(b, []).append(a)
            cap[(a, b)] = 0
            cap.setdefault((b, a), 0)
        cap[(a, b)] += c

    for x in range(g.n):
        add(2 * x, 2 * x + 1, k if x in (s, t) else 1)
    for e, (a, b) in enumerate(g.edges):
        if allowed_edges is not None and e not in allowed_edges:
            continue
        add(2 * a + 1, 2 * b, 1)
        add(2 * b + 1, 2 * a, 1)
    src, snk = 2 * s, 2 * t + 1
    flow = 0
    while flow < k:
        prev = {src: None}
        q = deque([src])
        while q and snk not in prev:
            x = q.popleft()
            for y in out_arcs.get(x, ()):
                if y not in prev and cap[(x, y)] > 0:
                    prev[y] = x
                    q.append(y)
        if snk not in prev:
            return None
        y = snk
        while prev[y] is not None:
            x = prev[y]
            cap[(x, y)] -= 1
            cap[(y, x)] += 1
            y = x
        flow += 1
    # read paths off the saturated original edges
    used = {}
    for e, (a, b) in enumerate(g.edges):
        if allowed_edges is not None and e not in allowed_edges:
            continue
        fab = cap[(2 * b, 2 * a + 1)] > 0 and cap[(2 * a + 1, 2 * b)] == 0
        fba = cap[(2 * a, 2 * b + 1)] > 0 and cap[(2 * b + 1, 2 * a)] == 0
        if fab and not fba:
            used.setdefault(a, []).append((e, b))
        elif fba and not fab:
            used.setdefault(b, []).append((e, a))
    paths = []
    for e0, y0 in sorted(used.get(s, [])):
        vs, es = [s, y0], [e0]
        while vs[-1] != t:
            e1, y1 = used[vs[-1]][0]
            vs.append(y1)
            es.append(e1)
        paths.append(PathDescriptor(tuple(vs), tuple(es)))
    return paths


def find_cycle_through_pair(g: Graph, a: int, b: int) -> PathDescriptor | None:
    """A simple cycle containing both ``a`` and ``b``, or None."""
    ps = disjoint_paths(g, a, b, 2)
    if ps is None:
        return None
    p, q = ps
    return PathDescriptor(p.vertices + tuple(reversed(q.vertices[:-1])), p.edges + tuple(reversed(q.edges)))


def find_escape_path(g: Graph, h: EdgeSet, u: int) -> PathDescriptor:
    """Path from ``u`` leaving ``h`` by u's third edge and returning to h's
    vertex set at another vertex, with no internal vertex on ``h``."""
    if degree_in(h, u) != 2 or g.degree(u) != 3:
        raise UsageError("need deg_h(u) = 2 and deg_g(u) = 3")
    if not is_two_connected(g):
        raise UsageError("graph must be 2-connected")
    hv = h.vertices()
    (e0, x), = [(e, y) for e, y in g.adj[u] if e not in h.members]
    if x in hv:
        return PathDescriptor((u, x), (e0,))
    p = bfs_path(g, x, hv - {u}, avoid=hv)
    if p is None:
        raise UsageError("no escape path; graph is not 2-connected")
    return PathDescriptor((u,) + p.vertices, (e0,) + p.edges)


def simple_paths(
    g: Graph, s: int, t: int, *, allowed_edges=None, avoid=frozenset()
) -> Iterator[PathDescriptor]:
    """All simple s-t paths by DFS, in adjacency order."""
    if s == t:
        yield PathDescriptor((s,), ())
        return
    vs = [s]
    es = []
    on = {s}

    def rec(x):
        for e, y in g.adj[x]:
            if allowed_edges is not None and e not in allowed_edges:
                continue
            if y in on or y in avoid:
                continue
            vs.append(y)
            es.append(e)
            if y == t:
                yield PathDescriptor(tuple(vs), tuple(es))
            else:
                on.add(y)
                yield from rec(y)
                on.discard(y)
            vs.pop()
            es.pop()

    yield from rec(s)


def induced_by_edges(g: Graph, edge_ids: Iterable[int]) -> tuple[Graph, list[int], list[int]]:
    """Subgraph formed by ``edge_ids``, relabelled densely.

    Returns ``(sub, vmap, emap)`` where ``vmap[i]`` / ``emap[j]`` give the
    original ids of the new vertex ``i`` / edge ``j``.
    """
    emap = sorted(set(edge_ids))
    vmap = sorted({x for e in emap for x in g.edges[e]})
    pos = {v: i for i, v in enumerate(vmap)}
    sub = Graph(len(vmap), [(pos[g.edges[e][0]], pos[g.edges[e][1]]) for e in emap])
    return sub, vmap, emap


def subdivide(n: int, edges: Sequence[tuple[int, int]]) -> tuple[Graph, list[list[int]]]:
    """Build a simple graph from a multigraph edge list.

    Loops get two new vertices, repeated edges get one; each returned list
    holds the new-graph edge ids that replace the corresponding input edge.
    """
    out: list[tuple[int, int]] = []
    seen = set()
    parts: list[list[int]] = []
    nxt = n
    for a, b in edges:
        key = (min(a, b), max(a, b))
        if a == b:
            x, y = nxt, nxt + 1
            nxt += 2
            base = len(out)
            out += [(a, x), (x, y), (y, a)]
            parts.append([base, base + 1, base + 2])
        elif key in seen:
            x = nxt
            nxt += 1
            base = len(out)
            out += [(a, x), (x, b)]
            parts.append([base, base + 1])
        else:
            seen.add(key)
            parts.append([len(out)])
            out.append((a, b))
    return Graph(nxt, out), parts

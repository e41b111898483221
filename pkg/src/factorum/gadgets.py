"""Matching gadgets for interval and parity-interval constraints, and the
composition of a whole instance into one perfect-matching problem.

Gadget vertex numbering: stubs are ``0..d-1``, their partners ``d..2d-1``
(all required), then the absorber layer.  A stub is "in W" when the
matching uses its stub edge.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .constraints import DegreeConstraint, classify
from .errors import UsageError
from .graph import EdgeSet, Graph
from .instance import Factor, Instance
from .matching import Matching, MatchingProblem


@dataclass(frozen=True)
class GadgetBlueprint:
    n_stubs: int
    n_internal: int
    required: frozenset  # internal vertex ids that must be covered
    edges: tuple
    constraint: DegreeConstraint
    kind: str = "interval"

    @property
    def stubs(self) -> range:
        return range(self.n_stubs)

    @property
    def internal(self) -> range:
        return range(self.n_stubs, self.n_stubs + self.n_internal)

    @property
    def optional(self) -> frozenset:
        return frozenset(v for v in self.internal if v not in self.required)

    @property
    def n_vertices(self) -> int:
        return self.n_stubs + self.n_internal

    def graph(self) -> Graph:
        return Graph(self.n_vertices, self.edges)

    def check(self) -> None:
        """Structural rules: stubs are leaves hanging off internal vertices."""
        deg = [0] * self.n_vertices
        for a, b in self.edges:
            if a < self.n_stubs and b < self.n_stubs:
                raise UsageError("stub-stub edge in gadget")
            deg[a] += 1
            deg[b] += 1
        for s in self.stubs:
            if deg[s] != 1:
                raise UsageError(f"stub {s} has internal degree {deg[s]}")


def _layers(d: int, absorb: int):
    v1 = list(range(d, 2 * d))
    v2 = list(range(2 * d, 2 * d + absorb))
    edges = [(i, d + i) for i in range(d)]
    edges += [(a, b) for a in v1 for b in v2]
    return v1, v2, edges


def build_interval_gadget(g: int, f: int, d: int) -> GadgetBlueprint:
    """Gadget realizing ``{g..f}`` of arity ``d``.

    Partners of unused stubs must be absorbed by the second layer, whose
    ``d - f`` required members force at least that many absorptions and
    whose size ``d - g`` caps them.
    """
    if not (0 <= g <= f <= d):
        raise UsageError(f"need 0 <= g <= f <= d, got {g}, {f}, {d}")
    v1, v2, edges = _layers(d, d - g)
    required = set(v1) | set(v2[f - g:])
    return GadgetBlueprint(d, d + (d - g), frozenset(required), tuple(edges),
                           DegreeConstraint.interval(g, f, d), "interval")


def build_parity_gadget(g: int, f: int, d: int) -> GadgetBlueprint:
    """Gadget realizing ``{g, g+2, .., f}``: an all-required absorber layer
    of size ``d - g`` with ``(f - g) / 2`` disjoint slack edges inside it."""
    if not (0 <= g <= f <= d):
        raise UsageError(f"need 0 <= g <= f <= d, got {g}, {f}, {d}")
    if (f - g) % 2:
        raise UsageError("parity gadget bounds must have equal parity")
    v1, v2, edges = _layers(d, d - g)
    edges += [(v2[2 * i], v2[2 * i + 1]) for i in range((f - g) // 2)]
    return GadgetBlueprint(d, d + (d - g), frozenset(v1) | frozenset(v2), tuple(edges),
                           DegreeConstraint.parity(g, f, d), "parity")


def matchgate(p: int, r: int, n: int) -> GadgetBlueprint:
    """The interval gadget for ``{p..p+r}`` of arity ``n``."""
    return build_interval_gadget(p, p + r, n)


def gadget_for(c: DegreeConstraint) -> GadgetBlueprint:
    cls = classify(c)
    if cls.is_interval:
        return build_interval_gadget(c.lo, c.hi, c.arity)
    if cls.is_parity_interval:
        return build_parity_gadget(c.lo, c.hi, c.arity)
    raise UsageError(f"no matching gadget for {c}")


@dataclass
class ReducedGraph:
    problem: MatchingProblem
    edge_map: dict  # original edge id -> composed edge id carrying its weight
    vertex_map: dict  # original vertex id -> composed vertex ids of its gadget
    stub_edges: dict = field(default_factory=dict)  # original edge -> gadget stub edges at both ends
    compact: bool = False

    def lift(self, m: Matching, inst: Instance) -> Factor:
        """Original edges whose weight-carrying composed edge is matched."""
        chosen = frozenset(e for e, ce in self.edge_map.items() if ce in m.edges.members)
        return Factor(EdgeSet(inst.graph, chosen), inst.weight_of(chosen))


def reduce_instance(inst: Instance, compact: bool = False) -> ReducedGraph:
    """Compose per-vertex gadgets into one weighted graph.

    Plain form: each original edge ``(x, y)`` becomes the path
    ``stub_x - c - c' - stub_y``; the middle edge carries the weight and is
    matched exactly when both stubs are absorbed by their own gadgets,
    i.e. when the edge is in the factor.  Compact form merges each stub, its
    partner and its connector vertex into one vertex, so the edge becomes a
    single composed edge between the two merged vertices.

    Optional gadget vertices left unused have to be covered too.  Within a
    gadget they form a clique, and each gadget with optional vertices gets
    one spill vertex adjacent to all of them that takes an odd leftover.
    Spill vertices of all gadgets form a clique, with one dummy added when
    the total vertex count is odd.
    """
    g = inst.graph
    edges: list[tuple[int, int]] = []
    weights: list = []
    vertex_map: dict[int, tuple] = {}
    # (x, position of e in adj[x]) -> composed vertex standing for that stub
    stub_vertex: dict[tuple[int, int], int] = {}
    stub_edge: dict[tuple[int, int], int] = {}
    spills: list[int] = []
    nxt = 0
    for x in range(g.n):
        c = inst.constraints[x]
        if c.arity != g.degree(x):
            raise UsageError(f"vertex {x}: arity does not match degree")
        gb = gadget_for(c)
        d = gb.n_stubs
        base = nxt
        if compact:
            # merged vertices take the partner ids d..2d-1; stubs vanish
            local = {v: base + v - d for v in range(d, gb.n_vertices)}
            nxt += gb.n_internal
            for i in range(d):
                stub_vertex[(x, i)] = local[d + i]
            for a, b in gb.edges:
                if a >= d and b >= d:
                    edges.append((local[a], local[b]))
                    weights.append(Fraction(0))
        else:
            local = {v: base + v for v in range(gb.n_vertices)}
            nxt += gb.n_vertices
            start = len(edges)
            for i in range(d):
                stub_vertex[(x, i)] = local[i]
                # builders list the stub edges first
                stub_edge[(x, i)] = start + i
            for a, b in gb.edges:
                edges.append((local[a], local[b]))
                weights.append(Fraction(0))
        ids = list(local.values())
        opt = [local[v] for v in sorted(gb.optional)]
        if opt:
            # leftover optional vertices pair up; an odd one goes to the spill
            for i in range(len(opt)):
                for j in range(i + 1, len(opt)):
                    edges.append((opt[i], opt[j]))
                    weights.append(Fraction(0))
            for v in opt:
                edges.append((v, nxt))
                weights.append(Fraction(0))
            spills.append(nxt)
            ids.append(nxt)
            nxt += 1
        vertex_map[x] = tuple(sorted(ids))
    pos = {}
    for x in range(g.n):
        for i, (e, _) in enumerate(g.adj[x]):
            pos[(x, e)] = i
    edge_map = {}
    stub_edges = {}
    for e, (x, y) in enumerate(g.edges):
        sx = stub_vertex[(x, pos[(x, e)])]
        sy = stub_vertex[(y, pos[(y, e)])]
        if compact:
            edge_map[e] = len(edges)
            edges.append((sx, sy))
            weights.append(inst.weights[e])
        else:
            c1, c2 = nxt, nxt + 1
            nxt += 2
            stub_edges[e] = (stub_edge[(x, pos[(x, e)])], stub_edge[(y, pos[(y, e)])])
            edges.append((sx, c1))
            weights.append(Fraction(0))
            edge_map[e] = len(edges)
            edges.append((c1, c2))
            weights.append(inst.weights[e])
            edges.append((c2, sy))
            weights.append(Fraction(0))
    # Unused spill vertices pair up among themselves.  Their number has the
    # parity of the whole vertex count, so one dummy fixes odd totals.
    if nxt % 2 and spills:
        spills.append(nxt)
        nxt += 1
    for i in range(len(spills)):
        for j in range(i + 1, len(spills)):
            edges.append((spills[i], spills[j]))
            weights.append(Fraction(0))
    prob = MatchingProblem(Graph(nxt, edges), tuple(weights))
    return ReducedGraph(prob, edge_map, vertex_map, stub_edges, compact)

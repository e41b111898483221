"""Key instances, basic factors and the normalization of a factor pair.

A key instance lives on a subcubic graph with labels forced by degree:
degree 1 gets ``{0,1}``, degree 2 gets ``{0,2}`` and degree 3 gets either
``{0,1,3}`` (type-1) or ``{0,2,3}`` (type-2).  Basic factors are the
connected factors shaped like a path, a cycle, a tadpole, a dumbbell or a
theta whose two branch vertices have different types.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .constraints import DegreeConstraint, classify, max_parity_subset, split
from .errors import CapacityError, InvariantError, PreconditionError, UsageError
from .graph import (
    EdgeSet,
    Graph,
    PathDescriptor,
    bfs_path,
    bridges,
    components,
    find_cycle_through,
    find_cycle_through_pair,
    find_escape_path,
    is_two_connected,
    simple_paths,
)
from .instance import Factor, Instance, is_factor, t_odd, t_set

ENUM_MAX_EDGES = 20

TYPE1 = (0, 1, 3)
TYPE2 = (0, 2, 3)


class Shape(enum.Enum):
    PATH = "path"
    CYCLE = "cycle"
    TADPOLE = "tadpole"
    DUMBBELL = "dumbbell"
    THETA = "theta"


@dataclass(frozen=True)
class BasicFactor:
    edges: EdgeSet
    shape: Shape
    distinguished: tuple  # path ends, or the degree-3 vertices
    weight: Fraction

    def sorted(self) -> tuple[int, ...]:
        return self.edges.sorted()


def vertex_type(inst: Instance, v: int) -> int | None:
    """1 or 2 for a degree-3 vertex of a key instance, else None."""
    c = inst.constraints[v]
    if c.arity != 3:
        return None
    if c.feasible == TYPE1:
        return 1
    if c.feasible == TYPE2:
        return 2
    return None


def is_key_instance(inst: Instance) -> bool:
    g = inst.graph
    for v in range(g.n):
        d = g.degree(v)
        c = inst.constraints[v]
        if c.arity != d:
            return False
        f = c.feasible
        if d == 0:
            if f != (0,):
                return False
        elif d == 1:
            if f != (0, 1):
                return False
        elif d == 2:
            if f != (0, 2):
                return False
        elif d == 3:
            if f not in (TYPE1, TYPE2):
                return False
        else:
            return False
    return True


def key_constraint(deg: int, vtype: int | None = None) -> DegreeConstraint:
    if deg == 1:
        return DegreeConstraint.of((0, 1), 1)
    if deg == 2:
        return DegreeConstraint.of((0, 2), 2)
    if deg == 3:
        if vtype not in (1, 2):
            raise UsageError("a degree-3 key vertex needs type 1 or 2")
        return DegreeConstraint.of(TYPE1 if vtype == 1 else TYPE2, 3)
    raise UsageError(f"key instances have no vertices of degree {deg}")


def make_key_instance(n: int, edges, types: dict, weights) -> Instance:
    """Key instance with labels derived from degrees; ``types`` maps each
    degree-3 vertex to 1 or 2."""
    g = Graph(n, edges)
    cons = []
    for v in range(n):
        d = g.degree(v)
        cons.append(DegreeConstraint.of((0,), 0) if d == 0 else key_constraint(d, types.get(v)))
    return Instance(g, tuple(cons), tuple(weights))


def _shape_from_degrees(g: Graph, members, deg, type_of) -> tuple[Shape, tuple] | None:
    if not members:
        return None
    if len(components(g, members)) != 1:
        return None
    verts = sorted({x for e in members for x in g.edges[e]})
    ones = [x for x in verts if deg[x] == 1]
    threes = [x for x in verts if deg[x] == 3]
    if any(deg[x] > 3 for x in verts):
        return None
    a, b = len(ones), len(threes)
    if a == 2 and b == 0:
        return Shape.PATH, tuple(ones)
    if a == 0 and b == 0:
        return Shape.CYCLE, ()
    if a == 1 and b == 1:
        return Shape.TADPOLE, (threes[0], ones[0])
    if a == 0 and b == 2:
        sub = Graph(g.n, [g.edges[e] for e in sorted(members)])
        if bridges(sub):
            return Shape.DUMBBELL, tuple(threes)
        if {type_of(threes[0]), type_of(threes[1])} == {1, 2}:
            return Shape.THETA, tuple(threes)
    return None


def classify_basic(key: Instance, s: EdgeSet) -> Shape | None:
    if not is_factor(key, s):
        raise UsageError("edge set is not a factor of the key instance")
    r = _shape_from_degrees(key.graph, s.members, s.degrees(), lambda x: vertex_type(key, x))
    return None if r is None else r[0]


def as_basic_factor(key: Instance, s: EdgeSet) -> BasicFactor | None:
    if not is_factor(key, s):
        return None
    r = _shape_from_degrees(key.graph, s.members, s.degrees(), lambda x: vertex_type(key, x))
    if r is None:
        return None
    return BasicFactor(s, r[0], r[1], key.weight_of(s.members))


# ---------------------------------------------------------------- enumeration


def enumerate_basic_factors(key: Instance, max_edges: int = ENUM_MAX_EDGES) -> Iterator[BasicFactor]:
    """Every basic factor once, in a fixed order.

    Chains through degree-2 vertices are all-or-nothing, so they are merged
    into super-edges first; only degree-3 vertices constrain the search, and
    no basic factor has more than two vertices of factor degree 1 or 3.
    """
    if not is_key_instance(key):
        raise UsageError("not a key instance")
    g = key.graph
    if g.m > max_edges:
        raise CapacityError(f"basic factor enumeration capped at {max_edges} edges, got {g.m}")
    parent = list(range(g.m))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in range(g.n):
        if g.degree(v) == 2:
            (e1, _), (e2, _) = g.adj[v]
            ra, rb = find(e1), find(e2)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[int]] = {}
    for e in range(g.m):
        groups.setdefault(find(e), []).append(e)
    supers = [groups[r] for r in sorted(groups)]
    # super-edge endpoints that matter: vertices of degree 1 or 3
    touch: list[dict[int, int]] = []
    for grp in supers:
        cnt: dict[int, int] = {}
        for e in grp:
            for x in g.edges[e]:
                if g.degree(x) != 2:
                    cnt[x] = cnt.get(x, 0) + 1
        touch.append(cnt)
    remaining = [g.degree(v) for v in range(g.n)]
    deg = [0] * g.n
    masks = [c.mask for c in key.constraints]
    odd_or_three = [0]
    chosen: list[int] = []

    def ok(x):
        cur, rem = deg[x], remaining[x]
        return bool((masks[x] >> cur) & ((1 << (rem + 1)) - 1))

    def rec(i):
        if i == len(supers):
            members = frozenset(e for j in chosen for e in supers[j])
            if not members:
                return
            s = EdgeSet(g, members)
            bf = as_basic_factor(key, s)
            if bf is not None:
                yield bf
            return
        cnt = touch[i]
        for include in (True, False):
            changed = []
            good = True
            for x, c in cnt.items():
                remaining[x] -= c
                if include:
                    deg[x] += c
                changed.append((x, c))
            for x, _ in changed:
                if not ok(x):
                    good = False
            if good:
                # count settled vertices with factor degree 1 or 3
                settled = sum(1 for x, _ in changed if remaining[x] == 0 and deg[x] in (1, 3))
                if odd_or_three[0] + settled <= 4:
                    odd_or_three[0] += settled
                    if include:
                        chosen.append(i)
                    yield from rec(i + 1)
                    if include:
                        chosen.pop()
                    odd_or_three[0] -= settled
            for x, c in changed:
                remaining[x] += c
                if include:
                    deg[x] -= c

    yield from rec(0)


# ------------------------------------------------------- constructive search


class _View:
    """A key instance held as edge dicts so vertices can be split."""

    __slots__ = ("ends", "w", "vtype", "nxt")

    def __init__(self, ends: dict, w: dict, vtype: dict, nxt: int):
        self.ends = ends
        self.w = w
        self.vtype = vtype
        self.nxt = nxt

    def degrees(self) -> dict:
        d: dict[int, int] = {}
        for a, b in self.ends.values():
            d[a] = d.get(a, 0) + 1
            d[b] = d.get(b, 0) + 1
        return d

    def weight(self, es) -> Fraction:
        return sum((self.w[e] for e in es), Fraction(0))

    def allowed(self, x, k, gdeg) -> bool:
        if k == 0:
            return True
        if gdeg == 1:
            return k == 1
        if gdeg == 2:
            return k == 2
        if self.vtype.get(x) == 1:
            return k in (1, 3)
        return k in (2, 3)

    def is_factor(self, es) -> bool:
        gd = self.degrees()
        d: dict[int, int] = {}
        for e in es:
            for x in self.ends[e]:
                d[x] = d.get(x, 0) + 1
        return all(self.allowed(x, k, gd[x]) for x, k in d.items())

    def induced(self, es) -> "_View":
        return _View({e: self.ends[e] for e in es}, {e: self.w[e] for e in es}, self.vtype, self.nxt)

    def graph(self):
        eids = sorted(self.ends)
        verts = sorted({x for e in eids for x in self.ends[e]})
        pos = {v: i for i, v in enumerate(verts)}
        g = Graph(len(verts), [(pos[self.ends[e][0]], pos[self.ends[e][1]]) for e in eids])
        return g, verts, eids

    def type_in(self, g: Graph, verts, x) -> int | None:
        return self.vtype.get(verts[x]) if g.degree(x) == 3 else None


def _cycle(p: PathDescriptor, back: PathDescriptor) -> PathDescriptor:
    """Join path ``p`` (a to b) with ``back`` (a to b) into a cycle at a."""
    return PathDescriptor(p.vertices + tuple(reversed(back.vertices[:-1])), p.edges + tuple(reversed(back.edges)))


def _is_basic_view(view: _View) -> bool:
    g, verts, _ = view.graph()
    deg = [g.degree(x) for x in range(g.n)]
    return _shape_from_degrees(g, range(g.m), deg, lambda x: view.type_in(g, verts, x)) is not None


def _split_cycle(view, g, verts, eids, cyc: PathDescriptor):
    """Cycle rule: for a cycle whose type-1 count and type-2 count both
    differ from one, return a lighter-edged positive factor."""
    vs = list(cyc.vertices[:-1])
    es = list(cyc.edges)
    typ = [view.type_in(g, verts, x) for x in vs]
    ones = [i for i, t in enumerate(typ) if t == 1]
    twos = [i for i, t in enumerate(typ) if t == 2]
    if len(ones) == 1 or len(twos) == 1:
        raise InvariantError("cycle rule needs type counts other than one")
    c_edges = [eids[e] for e in es]
    wc = view.weight(c_edges)
    everything = set(view.ends)

    def segments(cuts):
        n = len(es)
        for i, start in enumerate(cuts):
            stop = cuts[(i + 1) % len(cuts)]
            idx = []
            j = start
            while True:
                idx.append(j)
                j = (j + 1) % n
                if j == stop:
                    break
            yield [eids[es[k]] for k in idx]

    if wc > 0:
        if not ones:
            return frozenset(c_edges)
        for seg in segments(ones):
            if view.weight(seg) > 0:
                return frozenset(seg)
    else:
        if not twos:
            return frozenset(everything - set(c_edges))
        for seg in segments(twos):
            if view.weight(seg) <= 0:
                return frozenset(everything - set(seg))
    raise InvariantError("cycle rule found no segment")


def _two_connected(view, g, verts, eids):
    t = lambda x: view.type_in(g, verts, x)  # noqa: E731
    t1 = [x for x in range(g.n) if t(x) == 1]
    if not t1:
        cyc = find_cycle_through(g, 0)
        return _split_cycle(view, g, verts, eids, cyc)
    if len(t1) == 1:
        u = t1[0]
        c = find_cycle_through(g, u)
        p = find_escape_path(g, c.edge_set(g), u)
        h = set(c.edges) | set(p.edges)
        hs = EdgeSet(g, frozenset(h))
        hv = hs.vertices()
        s = next(x for x in sorted(hv) if any(e not in h for e, _ in g.adj[x]))
        p_sr = find_escape_path(g, hs, s)
        r = p_sr.vertices[-1]
        back = bfs_path(g, s, {r}, avoid={u}, allowed_edges=h)
        return _split_cycle(view, g, verts, eids, _cycle(p_sr, back))
    c = find_cycle_through_pair(g, t1[0], t1[1])
    twos = [x for x in c.vertices[:-1] if t(x) == 2]
    if len(twos) != 1:
        return _split_cycle(view, g, verts, eids, c)
    v = twos[0]
    cv = list(c.vertices[:-1])
    ce = list(c.edges)
    i = cv.index(v)
    cv = cv[i:] + cv[:i]
    ce = ce[i:] + ce[:i]
    p_vu = find_escape_path(g, c.edge_set(g), v)
    u = p_vu.vertices[-1]
    iu = cv.index(u)
    p1 = PathDescriptor(tuple(cv[: iu + 1]), tuple(ce[:iu]))
    p2 = PathDescriptor(tuple(cv[iu:] + [v]), tuple(ce[iu:]))
    w = min(x for x in cv if t(x) == 1 and x != u)
    if w not in p1.vertices:
        p1, p2 = PathDescriptor(tuple(reversed(p2.vertices)), tuple(reversed(p2.edges))), p1
    # p1 runs v..u and contains w
    if sum(1 for x in p_vu.vertices if t(x) == 2) >= 2:
        return _split_cycle(view, g, verts, eids, _cycle(p_vu, p1))
    h = set(c.edges) | set(p_vu.edges)
    hs = EdgeSet(g, frozenset(h))
    p_ws = find_escape_path(g, hs, w)
    s = p_ws.vertices[-1]
    if not any(t(x) == 2 for x in p_ws.vertices):
        back = bfs_path(g, w, {s}, avoid={v}, allowed_edges=h)
    else:
        back = next(p for p in simple_paths(g, w, s, allowed_edges=h) if v in p.vertices)
    return _split_cycle(view, g, verts, eids, _cycle(p_ws, back))


def _bridge_case(view, g, verts, eids):
    b0 = bridges(g)[0]
    path_edges = {b0}
    ends = []
    for start in g.edges[b0]:
        prev_e, x = b0, start
        while g.degree(x) == 2:
            (e1, y1), (e2, y2) = g.adj[x]
            e, y = (e2, y2) if e1 == prev_e else (e1, y1)
            path_edges.add(e)
            prev_e, x = e, y
        ends.append(x)

    def side(x):
        seen = {x}
        stack = [x]
        es = set()
        while stack:
            a = stack.pop()
            for e, b in g.adj[a]:
                if e in path_edges:
                    continue
                es.add(e)
                if b not in seen:
                    seen.add(b)
                    stack.append(b)
        return es, seen

    def trivial(es, vs):
        if not es:
            return True
        return all(sum(1 for e, _ in g.adj[a] if e in es) == 2 for a in vs)

    chosen = None
    for x in ends:
        es, vs = side(x)
        if not trivial(es, vs):
            chosen = (x, es)
            break
    if chosen is None:
        raise InvariantError("bridge case reached on a basic graph")
    u, gu = chosen
    if g.degree(u) != 3:
        raise InvariantError("long bridge ends at a vertex of degree other than three")
    u_id = verts[u]
    e1, e2 = sorted(eids[e] for e, _ in g.adj[u] if e in gu)
    gu_ids = {eids[e] for e in gu}
    rest = set(view.ends) - gu_ids
    w_rest = view.weight(rest)
    u1, u2 = view.nxt, view.nxt + 1
    new_ends = {}
    for e in gu_ids:
        a, b = view.ends[e]
        sub = u1 if e == e1 else (u2 if e == e2 else None)
        if sub is not None:
            a, b = (sub, b) if a == u_id else (a, sub)
        new_ends[e] = (a, b)
    new_w = {e: view.w[e] for e in gu_ids}
    new_w[e1] += w_rest
    inner = _View(new_ends, new_w, view.vtype, view.nxt + 2)
    f = _positive_basic(inner)
    has1, has2 = e1 in f, e2 in f
    ut = view.vtype.get(u_id)
    if not has1 and not has2:
        return f
    if has1 and not has2:
        if ut == 2:
            return f | rest
        return f if view.weight(f) > 0 else frozenset(rest)
    if has2 and not has1:
        if ut == 1:
            return f
        if view.weight(gu_ids) > 0:
            return frozenset(gu_ids)
        return f | rest
    return f | rest


def _shrink(view: _View) -> frozenset:
    g, verts, eids = view.graph()
    comps = components(g)
    if len(comps) > 1:
        for comp in comps:
            cs = set(comp)
            es = frozenset(eids[e] for e in range(g.m) if g.edges[e][0] in cs)
            if view.weight(es) > 0:
                return es
        raise InvariantError("no positive component")
    if is_two_connected(g):
        return _two_connected(view, g, verts, eids)
    return _bridge_case(view, g, verts, eids)


def _positive_basic(view: _View) -> frozenset:
    while True:
        if _is_basic_view(view):
            return frozenset(view.ends)
        f = _shrink(view)
        if not (f and len(f) < len(view.ends) and view.weight(f) > 0 and view.is_factor(f)):
            raise InvariantError("shrinking step produced an invalid factor")
        view = view.induced(f)


def _view_of(key: Instance) -> _View:
    g = key.graph
    ends = {e: g.edges[e] for e in range(g.m)}
    w = {e: key.weights[e] for e in range(g.m)}
    vtype = {v: vertex_type(key, v) for v in range(g.n) if g.degree(v) == 3}
    return _View(ends, w, vtype, g.n)


def find_positive_basic_factor(key: Instance) -> BasicFactor:
    """A basic factor of strictly positive weight, built by repeatedly
    passing to a lighter positive factor until the graph itself is basic."""
    if not is_key_instance(key):
        raise UsageError("not a key instance")
    total = key.weight_of(range(key.m))
    if total <= 0:
        raise UsageError("total weight must be positive")
    es = _positive_basic(_view_of(key))
    bf = as_basic_factor(key, EdgeSet(key.graph, es))
    if bf is None or bf.weight <= 0:
        raise InvariantError("constructed edge set is not a positive basic factor")
    return bf


def even_at_u_candidates(key: Instance, u: int, max_edges: int = ENUM_MAX_EDGES) -> list[BasicFactor]:
    """All positive basic factors with even degree at ``u``."""
    out = []
    for bf in enumerate_basic_factors(key, max_edges):
        if bf.weight > 0 and sum(1 for e, _ in key.graph.adj[u] if e in bf.edges.members) % 2 == 0:
            out.append(bf)
    return out


def find_even_at_u_basic_factor(key: Instance, u: int, max_edges: int = ENUM_MAX_EDGES,
                                basics=None) -> BasicFactor:
    """Heaviest positive basic factor with even degree at ``u``.

    The hypotheses are checked exhaustively: the whole graph must be
    positive and strictly heavier than every basic factor, and ``u`` must
    have degree 1 or be a type-2 vertex of degree 3.  ``basics`` may pass
    in a precomputed enumeration.
    """
    if not is_key_instance(key):
        raise UsageError("not a key instance")
    d = key.graph.degree(u)
    if not (d == 1 or (d == 3 and vertex_type(key, u) == 2)):
        raise PreconditionError(f"vertex {u} has degree {d} and is not a degree-1 or type-2 vertex")
    total = key.weight_of(range(key.m))
    if total <= 0:
        raise PreconditionError("total weight is not positive")
    all_bf = list(basics) if basics is not None else list(enumerate_basic_factors(key, max_edges))
    heavy = [bf for bf in all_bf if bf.weight >= total]
    if heavy:
        raise PreconditionError("some basic factor is at least as heavy as the whole graph")
    best = None
    for bf in all_bf:
        if bf.weight > 0 and sum(1 for e, _ in key.graph.adj[u] if e in bf.edges.members) % 2 == 0:
            if best is None or bf.weight > best.weight:
                best = bf
    if best is None:
        raise InvariantError("no even-at-u positive basic factor although the hypotheses hold")
    return best


# -------------------------------------------------------------- normalization


@dataclass(frozen=True)
class NormalizationResult:
    key: Instance  # its weights are the signed weights
    expansion: dict  # original vertex -> tuple of key vertices
    key_to_orig: tuple  # key edge id -> original edge id
    orig_to_key: dict
    inst: Instance
    f: EdgeSet
    fstar: EdgeSet

    @property
    def signed_weights(self) -> tuple:
        return self.key.weights

    def odd_vertex(self, v: int) -> int | None:
        """The key vertex of odd degree standing for ``v``, if any."""
        for x in self.expansion.get(v, ()):
            if self.key.graph.degree(x) % 2:
                return x
        return None


def _edges_of(x) -> EdgeSet:
    return x.edges if isinstance(x, Factor) else x


def normalize(inst: Instance, f, fstar) -> NormalizationResult:
    """Key instance on ``f`` xor ``fstar`` with signed weights.

    At each vertex, F-edges are paired with F*-edges (lowest ids first) and
    every pair is moved to a fresh ``{0,2}`` vertex.  The r leftover edges
    are then handled by the constraint family: dropped when r is 0, given
    r degree-1 vertices for an interval, r/2 degree-2 vertices (ascending
    ids paired) for a parity interval, and one degree-r vertex for a
    type-1/type-2 constraint, typed by the parity half containing
    ``deg_F(v)``.
    """
    fs, gs = _edges_of(f), _edges_of(fstar)
    if not is_factor(inst, fs) or not is_factor(inst, gs):
        raise UsageError("both arguments must be factors")
    g = inst.graph
    delta = sorted(fs.members ^ gs.members)
    orig_to_key = {e: i for i, e in enumerate(delta)}
    slot: dict[tuple[int, int], int] = {}  # (original edge, original endpoint) -> key vertex
    expansion: dict[int, list[int]] = {}
    kinds: list[tuple[int, int | None]] = []  # key vertex -> (degree, type)
    fdeg = fs.degrees()

    def fresh(v, deg, vt=None):
        kinds.append((deg, vt))
        x = len(kinds) - 1
        expansion.setdefault(v, []).append(x)
        return x

    in_delta = set(delta)
    for v in range(g.n):
        ev = sorted(e for e, _ in g.adj[v] if e in in_delta)
        if not ev:
            continue
        a = [e for e in ev if e in fs.members]
        b = [e for e in ev if e in gs.members]
        k = min(len(a), len(b))
        for i in range(k):
            x = fresh(v, 2)
            slot[(a[i], v)] = x
            slot[(b[i], v)] = x
        res = a[k:] + b[k:]
        r = len(res)
        if r == 0:
            continue
        c = inst.constraints[v]
        cls = classify(c)
        if cls.is_interval:
            for e in res:
                slot[(e, v)] = fresh(v, 1)
        elif cls.is_parity_interval:
            if r % 2:
                raise InvariantError("odd residue at a parity vertex")
            for i in range(0, r, 2):
                x = fresh(v, 2)
                slot[(res[i], v)] = x
                slot[(res[i + 1], v)] = x
        elif cls.in_t:
            if r > 3:
                raise InvariantError("residue above three at a type-1/type-2 vertex")
            vt = None
            if r == 3:
                d1 = split(c)[1]
                vt = 1 if max_parity_subset(c, fdeg[v]) == d1 else 2
            x = fresh(v, r, vt)
            for e in res:
                slot[(e, v)] = x
        else:
            raise UsageError(f"vertex {v}: constraint family not supported by normalization")
    kedges = [(slot[(e, g.edges[e][0])], slot[(e, g.edges[e][1])]) for e in delta]
    kw = [inst.weights[e] if e in gs.members else -inst.weights[e] for e in delta]
    types = {x: vt for x, (d, vt) in enumerate(kinds) if d == 3}
    key = make_key_instance(len(kinds), kedges, types, kw)
    return NormalizationResult(
        key=key,
        expansion={v: tuple(xs) for v, xs in expansion.items()},
        key_to_orig=tuple(delta),
        orig_to_key=orig_to_key,
        inst=inst,
        f=fs,
        fstar=gs,
    )


def is_augmenting(inst: Instance, f, h: EdgeSet) -> bool:
    fs = _edges_of(f)
    new = fs ^ h
    return is_factor(inst, new) and inst.weight_of(new.members) > inst.weight_of(fs.members)


def basic_subgraph_problems(inst: Instance, f, fstar, h: EdgeSet) -> list[str]:
    """Reasons why ``h`` fails to be an (F, F*)-basic subgraph (empty if it is one)."""
    fs, gs = _edges_of(f), _edges_of(fstar)
    out = []
    if not h.members <= (fs.members ^ gs.members):
        out.append("not contained in the symmetric difference")
    if not is_augmenting(inst, fs, h):
        out.append("not augmenting")
    deg = h.degrees()
    odd = [v for v in range(inst.n) if deg[v] % 2]
    if len(odd) > 2:
        out.append(f"{len(odd)} odd vertices")
    allowed = set(t_odd(inst, fs, gs))
    tt = set(t_set(inst))
    if any(v in tt and v not in allowed for v in odd):
        out.append("odd type-1/type-2 vertex outside the parity-differing set")
    return out


def lift_basic_subgraph(norm: NormalizationResult, bf: BasicFactor) -> EdgeSet:
    """Original edges of a basic factor of the normalized key instance,
    validated as an (F, F*)-basic subgraph."""
    if bf.edges.graph != norm.key.graph:
        raise UsageError("basic factor does not belong to this normalization")
    inst = norm.inst
    h = EdgeSet(inst.graph, frozenset(norm.key_to_orig[e] for e in bf.edges.members))
    problems = basic_subgraph_problems(inst, norm.f, norm.fstar, h)
    gain = inst.weight_of((norm.f ^ h).members) - inst.weight_of(norm.f.members)
    if gain != bf.weight:
        problems.append("weight gain differs from the signed weight")
    if problems:
        raise InvariantError("lifted subgraph invalid: " + "; ".join(problems))
    return h

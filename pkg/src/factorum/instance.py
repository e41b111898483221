"""Instances ``(G, pi, w)``, factors, sub-instances and the exhaustive
reference optimizer."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator

from .constraints import (
    DegreeConstraint,
    classify,
    complement_within,
    format_constraint,
    max_parity_subset,
    split,
)
from .errors import CapacityError, UsageError
from .graph import EdgeSet, Graph

BRUTE_FORCE_MAX_EDGES = 24


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        # go through repr so 0.1 means one tenth
        return Fraction(repr(x))
    return Fraction(x)


@dataclass(frozen=True)
class Instance:
    graph: Graph
    constraints: tuple
    weights: tuple

    def __post_init__(self):
        cons = tuple(self.constraints)
        ws = tuple(to_fraction(w) for w in self.weights)
        if len(cons) != self.graph.n:
            raise UsageError(f"need {self.graph.n} constraints, got {len(cons)}")
        if len(ws) != self.graph.m:
            raise UsageError(f"need {self.graph.m} weights, got {len(ws)}")
        for c in cons:
            if not isinstance(c, DegreeConstraint):
                raise UsageError("constraints must be DegreeConstraint values")
        object.__setattr__(self, "constraints", cons)
        object.__setattr__(self, "weights", ws)

    @classmethod
    def build(cls, n: int, edges, constraints, weights=None) -> "Instance":
        """Convenience constructor.

        ``constraints`` entries may be DegreeConstraint objects or plain
        iterables of feasible degrees (arity is taken from the graph).
        """
        g = Graph(n, edges)
        cons = []
        for v, c in enumerate(constraints):
            if isinstance(c, DegreeConstraint):
                cons.append(c)
            else:
                cons.append(DegreeConstraint.of(c, g.degree(v)))
        if weights is None:
            weights = [1] * g.m
        return cls(g, tuple(cons), tuple(weights))

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def m(self) -> int:
        return self.graph.m

    def with_constraints(self, changes: dict) -> "Instance":
        cons = list(self.constraints)
        for v, c in changes.items():
            cons[v] = c
        return Instance(self.graph, tuple(cons), self.weights)

    def weight_of(self, edges: Iterable[int]) -> Fraction:
        return sum((self.weights[e] for e in edges), Fraction(0))

    def factor(self, edges: Iterable[int]) -> "Factor":
        s = edges if isinstance(edges, EdgeSet) else EdgeSet(self.graph, frozenset(edges))
        if not is_factor(self, s):
            raise UsageError("edge set is not a factor of the instance")
        return Factor(s, self.weight_of(s.members))

    def validate(self) -> "ValidationReport":
        return validate(self)


@dataclass(frozen=True)
class Factor:
    edges: EdgeSet
    weight: Fraction

    def sorted(self) -> tuple[int, ...]:
        return self.edges.sorted()

    def degree(self, v: int) -> int:
        return sum(1 for e, _ in self.edges.graph.adj[v] if e in self.edges.members)


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    inadmissible: list = field(default_factory=list)
    wide_gaps: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    @property
    def admissible(self) -> bool:
        """Valid and every constraint is an interval, parity interval or type-1/2."""
        return self.ok and not self.inadmissible

    @property
    def brute_force_ok(self) -> bool:
        """Valid and every constraint has gaps of length at most one."""
        return self.ok and not self.wide_gaps


def validate(inst: Instance) -> ValidationReport:
    rep = ValidationReport()
    for v, c in enumerate(inst.constraints):
        d = inst.graph.degree(v)
        if c.arity != d:
            rep.violations.append(f"vertex {v}: arity {c.arity} differs from degree {d}")
        if c.hi > d:
            rep.violations.append(f"vertex {v}: feasible degree {c.hi} exceeds degree {d}")
        cls = classify(c)
        if not cls.admissible:
            rep.inadmissible.append(f"vertex {v}: {format_constraint(c)} is not in a supported family")
        if cls.max_gap > 1:
            rep.wide_gaps.append(f"vertex {v}: {format_constraint(c)} has a gap of length {cls.max_gap}")
    return rep


def is_factor(inst: Instance, s: EdgeSet | Iterable[int]) -> bool:
    members = s.members if isinstance(s, EdgeSet) else set(s)
    deg = [0] * inst.n
    for e in members:
        a, b = inst.graph.edges[e]
        deg[a] += 1
        deg[b] += 1
    return all(deg[v] in inst.constraints[v] for v in range(inst.n))


def violating_vertices(inst: Instance, s: Iterable[int]) -> list[int]:
    deg = [0] * inst.n
    for e in s:
        a, b = inst.graph.edges[e]
        deg[a] += 1
        deg[b] += 1
    return [v for v in range(inst.n) if deg[v] not in inst.constraints[v]]


def t_set(inst: Instance) -> list[int]:
    return [v for v, c in enumerate(inst.constraints) if classify(c).in_t]


def restrict_parity(inst: Instance, u: int, i: int) -> Instance:
    if i not in (0, 1):
        raise UsageError("branch index must be 0 or 1")
    c = inst.constraints[u]
    if not classify(c).in_t:
        raise UsageError(f"vertex {u} does not carry a type-1/type-2 constraint")
    return inst.with_constraints({u: split(c)[i]})


def slice_instance(inst: Instance, f: Factor | EdgeSet, w: Iterable[int]) -> Instance:
    """Sub-instance pinning T to the parity class of ``f``, flipped on ``w``."""
    s = f.edges if isinstance(f, Factor) else f
    if not is_factor(inst, s):
        raise UsageError("slice base is not a factor")
    w = set(w)
    tt = t_set(inst)
    if not w <= set(tt):
        raise UsageError("slice set must be a subset of the type-1/type-2 vertices")
    deg = s.degrees()
    changes = {}
    for v in tt:
        df = max_parity_subset(inst.constraints[v], deg[v])
        changes[v] = complement_within(inst.constraints[v], df) if v in w else df
    return inst.with_constraints(changes)


def t_odd(inst: Instance, f: Factor | EdgeSet, g: Factor | EdgeSet) -> list[int]:
    a = (f.edges if isinstance(f, Factor) else f).degrees()
    b = (g.edges if isinstance(g, Factor) else g).degrees()
    return [v for v in t_set(inst) if (a[v] - b[v]) % 2]


def _search_tables(inst: Instance):
    g = inst.graph
    m = g.m
    # remaining[v] counts undecided incident edges
    remaining = [g.degree(v) for v in range(inst.n)]
    masks = [c.mask for c in inst.constraints]
    ends = g.edges
    return m, remaining, masks, ends


def _ok(mask: int, cur: int, rem: int) -> bool:
    return bool((mask >> cur) & ((1 << (rem + 1)) - 1))


def enumerate_factors(inst: Instance, max_edges: int = BRUTE_FORCE_MAX_EDGES) -> Iterator[tuple[int, ...]]:
    """Every factor as a sorted edge-id tuple, with degree pruning."""
    m, remaining, masks, ends = _search_tables(inst)
    if m > max_edges:
        raise CapacityError(f"enumeration capped at {max_edges} edges, instance has {m}")
    if not all(_ok(masks[v], 0, remaining[v]) for v in range(inst.n)):
        return
    deg = [0] * inst.n
    chosen: list[int] = []

    def rec(e):
        if e == m:
            yield tuple(chosen)
            return
        a, b = ends[e]
        remaining[a] -= 1
        remaining[b] -= 1
        # include
        deg[a] += 1
        deg[b] += 1
        if _ok(masks[a], deg[a], remaining[a]) and _ok(masks[b], deg[b], remaining[b]):
            chosen.append(e)
            yield from rec(e + 1)
            chosen.pop()
        deg[a] -= 1
        deg[b] -= 1
        # exclude
        if _ok(masks[a], deg[a], remaining[a]) and _ok(masks[b], deg[b], remaining[b]):
            yield from rec(e + 1)
        remaining[a] += 1
        remaining[b] += 1

    yield from rec(0)


def brute_force_opt(inst: Instance, max_edges: int = BRUTE_FORCE_MAX_EDGES) -> Factor | None:
    """Exact optimum by branch and bound over edge subsets.

    Returns ``None`` when the instance has no factor.  Among optimal factors
    the one with the lexicographically smallest sorted edge tuple is
    returned.
    """
    m, remaining, masks, ends = _search_tables(inst)
    if m > max_edges:
        raise CapacityError(f"brute force capped at {max_edges} edges, instance has {m}")
    if not all(_ok(masks[v], 0, remaining[v]) for v in range(inst.n)):
        return None
    w = inst.weights
    suffix = [Fraction(0)] * (m + 1)
    for e in range(m - 1, -1, -1):
        suffix[e] = suffix[e + 1] + max(w[e], 0)
    deg = [0] * inst.n
    chosen: list[int] = []
    best: list = [None, None]  # weight, edge tuple

    def rec(e, cur):
        if best[0] is not None and cur + suffix[e] < best[0]:
            return
        if e == m:
            cand = tuple(chosen)
            if best[0] is None or cur > best[0] or (cur == best[0] and cand < best[1]):
                best[0], best[1] = cur, cand
            return
        a, b = ends[e]
        remaining[a] -= 1
        remaining[b] -= 1
        deg[a] += 1
        deg[b] += 1
        if _ok(masks[a], deg[a], remaining[a]) and _ok(masks[b], deg[b], remaining[b]):
            chosen.append(e)
            rec(e + 1, cur + w[e])
            chosen.pop()
        deg[a] -= 1
        deg[b] -= 1
        if _ok(masks[a], deg[a], remaining[a]) and _ok(masks[b], deg[b], remaining[b]):
            rec(e + 1, cur)
        remaining[a] += 1
        remaining[b] += 1

    rec(0, Fraction(0))
    if best[0] is None:
        return None
    return Factor(EdgeSet(inst.graph, frozenset(best[1])), best[0])


def factor_weight(inst: Instance, f: Factor | None):
    """Weight of ``f`` or ``None`` for the infeasible outcome."""
    return None if f is None else f.weight


def is_sub_instance(sub: Instance, inst: Instance) -> bool:
    """Same graph and weights with pointwise smaller feasible sets."""
    return (
        sub.graph == inst.graph
        and sub.weights == inst.weights
        and all(a.mask & ~b.mask == 0 for a, b in zip(sub.constraints, inst.constraints))
    )


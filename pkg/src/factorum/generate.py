"""Seeded random instances for tests, benchmarks and the ``gen`` command."""

from __future__ import annotations

import random
from fractions import Fraction

from .constraints import DegreeConstraint
from .errors import UsageError
from .instance import Instance
from .graph import Graph

CLASSES = ("interval", "parity", "type1", "type2")


def random_graph(rng: random.Random, n: int, m: int) -> Graph:
    pairs = [(a, b) for a in range(n) for b in range(a + 1, n)]
    if m > len(pairs):
        raise UsageError(f"a simple graph on {n} vertices has at most {len(pairs)} edges")
    chosen = rng.sample(pairs, m)
    return Graph(n, chosen)


def random_constraint(rng: random.Random, d: int, classes=CLASSES) -> DegreeConstraint:
    """A constraint of arity ``d`` from one of the requested families.

    Families that do not fit the arity are skipped; if none fits, an
    interval is used.
    """
    options = []
    for c in classes:
        if c in ("type1", "type2") and d < 3:
            continue
        options.append(c)
    kind = rng.choice(options) if options else "interval"
    if kind == "interval":
        g = rng.randint(0, d)
        f = rng.randint(g, d)
        return DegreeConstraint.interval(g, f, d)
    if kind == "parity":
        g = rng.randint(0, d)
        f = g + 2 * rng.randint(0, (d - g) // 2)
        return DegreeConstraint.parity(g, f, d)
    p = rng.randint(0, d - 3)
    if kind == "type1":
        return DegreeConstraint.of((p, p + 1, p + 3), d)
    if kind == "type2":
        return DegreeConstraint.of((p, p + 2, p + 3), d)
    raise UsageError(f"unknown constraint family {kind!r}")


def random_instance(
    rng: random.Random | int,
    n: int,
    m: int,
    classes=CLASSES,
    weight_range: tuple[int, int] = (-5, 5),
    rational: bool = False,
) -> Instance:
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    for c in classes:
        if c not in CLASSES:
            raise UsageError(f"unknown constraint family {c!r}")
    lo, hi = weight_range
    if lo > hi:
        raise UsageError("empty weight range")
    g = random_graph(rng, n, m)
    cons = tuple(random_constraint(rng, g.degree(v), classes) for v in range(n))
    if rational:
        ws = tuple(Fraction(rng.randint(lo, hi), rng.randint(1, 4)) for _ in range(m))
    else:
        ws = tuple(Fraction(rng.randint(lo, hi)) for _ in range(m))
    return Instance(g, cons, ws)


def small_admissible(rng: random.Random, max_n: int = 10, max_m: int = 16, classes=CLASSES,
                     weight_range=(-5, 5)) -> Instance:
    """Random size, random instance; used by the equivalence sweeps."""
    n = rng.randint(2, max_n)
    m = rng.randint(1, min(max_m, n * (n - 1) // 2))
    return random_instance(rng, n, m, classes, weight_range)


def scaling_instance(rng: random.Random | int, n: int, weight_range=(-5, 5)) -> Instance:
    """Sparse instance with ``n // 4`` type-2 vertices of degree three.

    Every constraint contains 0 and the even half of each type-2 split does
    too, so the first pinning tried by the split Decision is always
    feasible and Decision costs one optimization call.
    """
    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    if n < 8:
        raise UsageError("scaling family needs n >= 8")
    perm = list(range(n))
    rng.shuffle(perm)
    edges = {tuple(sorted((perm[i], perm[(i + 1) % n]))) for i in range(n)}
    deg = [2] * n
    tries = 0
    while sum(1 for x in deg if x == 3) < n // 2 and tries < 50 * n:
        tries += 1
        a, b = rng.sample(range(n), 2)
        key = (min(a, b), max(a, b))
        if deg[a] != 2 or deg[b] != 2 or key in edges:
            continue
        edges.add(key)
        deg[a] += 1
        deg[b] += 1
    g = Graph(n, sorted(edges))
    cubic = [v for v in range(n) if g.degree(v) == 3]
    tset = set(rng.sample(cubic, min(n // 4, len(cubic))))
    cons = []
    for v in range(n):
        d = g.degree(v)
        if v in tset:
            cons.append(DegreeConstraint.of((0, 2, 3), d))
        elif rng.random() < 0.5:
            cons.append(DegreeConstraint.interval(0, rng.randint(0, d), d))
        else:
            cons.append(DegreeConstraint.parity(0, 2 * rng.randint(0, d // 2), d))
    lo, hi = weight_range
    ws = tuple(Fraction(rng.randint(lo, hi)) for _ in range(g.m))
    return Instance(g, tuple(cons), ws)


def trap_key(u_type: int = 1):
    """Key instance with a type-1 ``u`` where no positive basic factor is
    even at ``u``.

    Vertices 0..3 are u, v, s, t.  Triangles hang off v and t, and the
    paths v-s, s-u (twice) and u-t are each subdivided once.  Triangle edges
    weigh 1/3 and path edges 1/2, so every triangle and path weighs 1 and
    the whole graph 6.  Returns ``(key, u)``.
    """
    from .structure import make_key_instance

    u, v, s, t = 0, 1, 2, 3
    edges, ws = [], []
    for hub, a, b in ((v, 4, 5), (t, 6, 7)):
        for e in ((hub, a), (a, b), (hub, b)):
            edges.append(e)
            ws.append(Fraction(1, 3))
    for mid, (a, b) in zip((8, 9, 10, 11), ((v, s), (s, u), (s, u), (u, t))):
        edges += [(a, mid), (mid, b)]
        ws += [Fraction(1, 2)] * 2
    types = {u: u_type, v: 1, s: 2, t: 1}
    return make_key_instance(12, edges, types, ws), u


def random_key_instance(rng: random.Random | int, n: int, weight_range=(-5, 5), tries: int = 4):
    """Random subcubic key instance with random vertex types."""
    from .structure import make_key_instance

    if not isinstance(rng, random.Random):
        rng = random.Random(rng)
    edges = set()
    deg = [0] * n
    for _ in range(tries * n):
        a, b = rng.sample(range(n), 2)
        key = (min(a, b), max(a, b))
        if deg[a] < 3 and deg[b] < 3 and key not in edges:
            edges.add(key)
            deg[a] += 1
            deg[b] += 1
    types = {v: rng.choice((1, 2)) for v in range(n) if deg[v] == 3}
    lo, hi = weight_range
    ws = [Fraction(rng.randint(lo, hi)) for _ in edges]
    return make_key_instance(n, sorted(edges), types, ws)

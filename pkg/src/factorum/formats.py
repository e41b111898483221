"""Line-oriented text formats.

Instance files::

    # comment
    vertices 3
    v 0 interval 0 1
    v 1 set 0,2
    v 2 parity 0 2
    e 0 1 3/2
    e 1 2 -0.25

Constraint arities are the final vertex degrees.  Factor files hold a
``weight`` line and one ``f a b`` line per edge, or the single word ``No``.
Terminal-backup files use ``t <id>`` for terminals and nonnegative costs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .constraints import DegreeConstraint, format_constraint, parse_constraint
from .errors import ParseError, UsageError
from .graph import Graph
from .instance import Factor, Instance


def parse_weight(tok: str, line: int | None = None) -> Fraction:
    try:
        w = Fraction(tok)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad weight {tok!r}", line) from None
    return w


def format_weight(w: Fraction) -> str:
    return str(Fraction(w))


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), 1):
        s = raw.split("#", 1)[0].strip()
        if s:
            yield no, s.split()


def _read_graph(text: str, vertex_kw: str):
    """Shared reader for the ``vertices`` / ``e`` skeleton.  Returns
    ``(n, vertex lines, edges, weights, edge line numbers)``; ``vertex lines``
    maps id -> (line, rest tokens) for ``vertex_kw`` lines."""
    n = None
    vlines: dict[int, tuple[int, list[str]]] = {}
    edges, weights, elines = [], [], []
    seen = set()
    for no, toks in _lines(text):
        kw = toks[0]
        if n is None:
            if kw != "vertices":
                raise ParseError("first line must be 'vertices <n>'", no)
            if len(toks) != 2 or not toks[1].isdigit():
                raise ParseError("expected 'vertices <n>'", no)
            n = int(toks[1])
            continue
        if kw == "vertices":
            raise ParseError("repeated 'vertices' line", no)
        if kw == vertex_kw:
            if len(toks) < 2 or not toks[1].isdigit():
                raise ParseError(f"expected '{vertex_kw} <id> ...'", no)
            v = int(toks[1])
            if v >= n:
                raise ParseError(f"vertex {v} out of range", no)
            if v in vlines:
                raise ParseError(f"vertex {v} declared twice", no)
            vlines[v] = (no, toks[2:])
        elif kw == "e":
            if len(toks) != 4:
                raise ParseError("expected 'e <a> <b> <weight>'", no)
            try:
                a, b = int(toks[1]), int(toks[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", no) from None
            if not (0 <= a < n and 0 <= b < n):
                raise ParseError(f"edge endpoint out of range 0..{n - 1}", no)
            if a == b:
                raise ParseError("loops are not allowed", no)
            key = (min(a, b), max(a, b))
            if key in seen:
                raise ParseError(f"duplicate edge {a} {b}", no)
            seen.add(key)
            edges.append((a, b))
            weights.append(parse_weight(toks[3], no))
            elines.append(no)
        else:
            raise ParseError(f"unknown keyword {kw!r}", no)
    if n is None:
        raise ParseError("missing 'vertices' line")
    return n, vlines, edges, weights, elines


def parse_edge_list(text: str):
    """``(n, edges, weights)`` of an instance file; ``v`` lines are optional
    and ignored."""
    n, _, edges, weights, _ = _read_graph(text, "v")
    return n, edges, weights


def parse_instance(text: str) -> Instance:
    n, vlines, edges, weights, elines = _read_graph(text, "v")
    for (a, b), no in zip(edges, elines):
        for x in (a, b):
            if x not in vlines or vlines[x][0] > no:
                raise ParseError(f"vertex {x} used before its 'v' line", no)
    missing = [v for v in range(n) if v not in vlines]
    if missing:
        raise ParseError(f"no 'v' line for vertex {missing[0]}")
    g = Graph(n, edges)
    cons = []
    for v in range(n):
        no, rest = vlines[v]
        try:
            cons.append(parse_constraint(" ".join(rest), g.degree(v)))
        except UsageError as exc:
            raise ParseError(f"vertex {v}: {exc}", no) from None
    return Instance(g, tuple(cons), tuple(weights))


def format_instance(inst: Instance) -> str:
    out = [f"vertices {inst.n}"]
    out += [f"v {v} {format_constraint(c)}" for v, c in enumerate(inst.constraints)]
    out += [f"e {a} {b} {format_weight(w)}" for (a, b), w in zip(inst.graph.edges, inst.weights)]
    return "\n".join(out) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


# ------------------------------------------------------------------ factors


@dataclass
class FactorFile:
    edges: tuple | None  # None means the file says No
    weight: Fraction | None = None


def format_factor(f: Factor | None, inst: Instance) -> str:
    if f is None:
        return "No\n"
    out = [f"weight {format_weight(f.weight)}"]
    out += ["f {} {}".format(*inst.graph.edges[e]) for e in f.sorted()]
    return "\n".join(out) + "\n"


def parse_factor(text: str, inst: Instance) -> FactorFile:
    weight = None
    ids = []
    saw_no = False
    for no, toks in _lines(text):
        kw = toks[0]
        if kw == "No" and len(toks) == 1:
            saw_no = True
        elif kw == "weight":
            if len(toks) != 2 or weight is not None:
                raise ParseError("expected a single 'weight <w>' line", no)
            weight = parse_weight(toks[1], no)
        elif kw == "f":
            if len(toks) != 3:
                raise ParseError("expected 'f <a> <b>'", no)
            try:
                a, b = int(toks[1]), int(toks[2])
            except ValueError:
                raise ParseError("edge endpoints must be integers", no) from None
            e = inst.graph.edge_id(a, b) if 0 <= a < inst.n and 0 <= b < inst.n else None
            if e is None:
                raise ParseError(f"no edge {a} {b} in the instance", no)
            if e in ids:
                raise ParseError(f"edge {a} {b} listed twice", no)
            ids.append(e)
        else:
            raise ParseError(f"unknown keyword {kw!r}", no)
    if saw_no:
        if ids or weight is not None:
            raise ParseError("'No' cannot be combined with edges or a weight")
        return FactorFile(None)
    return FactorFile(tuple(sorted(ids)), weight)


# ------------------------------------------------------------ terminal backup


@dataclass
class BackupInstance:
    graph: Graph
    terminals: frozenset
    costs: tuple

    def total_cost(self, edge_ids) -> Fraction:
        return sum((self.costs[e] for e in edge_ids), Fraction(0))


@dataclass
class BackupConversion:
    instance: Instance | None  # None when some terminal is isolated
    warnings: list = field(default_factory=list)


def parse_backup(text: str) -> BackupInstance:
    n, tlines, edges, costs, elines = _read_graph(text, "t")
    for no, rest in tlines.values():
        if rest:
            raise ParseError("expected 't <id>'", no)
    for c, no in zip(costs, elines):
        if c < 0:
            raise ParseError("costs must be nonnegative", no)
    return BackupInstance(Graph(n, edges), frozenset(tlines), tuple(costs))


def backup_to_instance(tb: BackupInstance) -> BackupConversion:
    """Terminals must have degree exactly one in the chosen subgraph, other
    vertices 0, 2 or 3, cut down to what their degree allows.  Costs are
    negated so the maximum-weight factor is the cheapest backup."""
    g = tb.graph
    warnings = []
    cons = []
    for v in range(g.n):
        d = g.degree(v)
        if v in tb.terminals:
            if d == 0:
                warnings.append(f"terminal {v} has no edges; the instance is infeasible")
                continue
            cons.append(DegreeConstraint.of((1,), d))
        elif d >= 3:
            cons.append(DegreeConstraint.of((0, 2, 3), d))
        elif d == 2:
            cons.append(DegreeConstraint.of((0, 2), 2))
        else:
            # a degree-1 non-terminal would be a dead end
            cons.append(DegreeConstraint.of((0,), d))
    if warnings:
        return BackupConversion(None, warnings)
    return BackupConversion(Instance(g, tuple(cons), tuple(-c for c in tb.costs)), warnings)


# ---------------------------------------------------------------------- dot


def to_dot(inst: Instance) -> str:
    out = ["graph factorum {"]
    for v, c in enumerate(inst.constraints):
        out.append(f'  {v} [label="{v}: {format_constraint(c)}"];')
    for (a, b), w in zip(inst.graph.edges, inst.weights):
        out.append(f'  {a} -- {b} [label="{format_weight(w)}"];')
    out.append("}")
    return "\n".join(out) + "\n"

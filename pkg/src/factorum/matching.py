"""Maximum-weight perfect matching on general graphs.

The engine is the primal-dual blossom method in its O(n^3) array form.
Rational weights are scaled to integers first, so the whole run is exact.
Vertex duals are kept doubled (slack of an edge is ``u_i + u_j - 2 w``),
which keeps them integral; a half-integral step can only appear when a
blossom-forming slack is odd, and then a Fraction is used.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import CapacityError, InvariantError
from .graph import EdgeSet, Graph


@dataclass(frozen=True)
class MatchingProblem:
    graph: Graph
    weights: tuple

    def __post_init__(self):
        ws = tuple(w if isinstance(w, Fraction) else Fraction(w) for w in self.weights)
        if len(ws) != self.graph.m:
            raise ValueError("one weight per edge required")
        object.__setattr__(self, "weights", ws)


@dataclass(frozen=True)
class Matching:
    edges: EdgeSet
    weight: Fraction


@dataclass
class BlossomState:
    """Final primal and dual data, kept for certificate checks."""

    mate: list
    dual: list
    parent: list
    nvertex: int
    int_edges: list
    half_steps: int = 0


def scale_to_int(weights) -> tuple[list[int], int]:
    den = 1
    for w in weights:
        den = math.lcm(den, Fraction(w).denominator)
    return [int(Fraction(w) * den) for w in weights], den


def _blossom(nvertex: int, edges: list[tuple[int, int, int]], warm: bool = True) -> BlossomState:
    """Maximum-weight maximum-cardinality matching; returns mates as vertex ids."""
    if warm:
        # doubled weights make every starting dual even, as a uniform start would
        edges = [(i, j, 2 * w) for i, j, w in edges]
    nedge = len(edges)
    maxweight = max([0] + [w for _, _, w in edges])
    endpoint = [edges[p >> 1][p & 1] for p in range(2 * nedge)]
    neighbend: list[list[int]] = [[] for _ in range(nvertex)]
    for k, (i, j, _) in enumerate(edges):
        neighbend[i].append(2 * k + 1)
        neighbend[j].append(2 * k)
    mate = [-1] * nvertex
    label = [0] * (2 * nvertex)
    labelend = [-1] * (2 * nvertex)
    inblossom = list(range(nvertex))
    blossomparent = [-1] * (2 * nvertex)
    blossomchilds: list = [None] * (2 * nvertex)
    blossombase = list(range(nvertex)) + [-1] * nvertex
    blossomendps: list = [None] * (2 * nvertex)
    bestedge = [-1] * (2 * nvertex)
    blossombestedges: list = [None] * (2 * nvertex)
    unusedblossoms = list(range(nvertex, 2 * nvertex))
    dualvar: list = [maxweight] * nvertex + [0] * nvertex
    allowedge = [False] * nedge
    queue: list[int] = []
    half_steps = 0
    if warm:
        # any duals with nonnegative slack will do; pick each vertex's
        # heaviest incident weight and greedily match the tight edges
        top = [None] * nvertex
        for i, j, w in edges:
            if top[i] is None or w > top[i]:
                top[i] = w
            if top[j] is None or w > top[j]:
                top[j] = w
        for v in range(nvertex):
            dualvar[v] = 0 if top[v] is None else top[v]
        for k, (i, j, w) in enumerate(edges):
            if mate[i] == -1 and mate[j] == -1 and top[i] == w and top[j] == w:
                mate[i] = 2 * k + 1
                mate[j] = 2 * k

    def slack(k):
        i, j, wt = edges[k]
        return dualvar[i] + dualvar[j] - 2 * wt

    def leaves(b):
        if b < nvertex:
            yield b
        else:
            for t in blossomchilds[b]:
                if t < nvertex:
                    yield t
                else:
                    yield from leaves(t)

    def assign_label(w, t, p):
        while True:
            b = inblossom[w]
            label[w] = label[b] = t
            labelend[w] = labelend[b] = p
            bestedge[w] = bestedge[b] = -1
            if t == 1:
                queue.extend(leaves(b))
                return
            base = blossombase[b]
            w, t, p = endpoint[mate[base]], 1, mate[base] ^ 1

    def scan_blossom(v, w):
        path = []
        base = -1
        while v != -1 or w != -1:
            b = inblossom[v]
            if label[b] & 4:
                base = blossombase[b]
                break
            path.append(b)
            label[b] = 5
            if labelend[b] == -1:
                v = -1
            else:
                v = endpoint[labelend[b]]
                b = inblossom[v]
                v = endpoint[labelend[b]]
            if w != -1:
                v, w = w, v
        for b in path:
            label[b] = 1
        return base

    def add_blossom(base, k):
        v, w, _ = edges[k]
        bb = inblossom[base]
        bv = inblossom[v]
        bw = inblossom[w]
        b = unusedblossoms.pop()
        blossombase[b] = base
        blossomparent[b] = -1
        blossomparent[bb] = b
        path = []
        endps = []
        blossomchilds[b] = path
        blossomendps[b] = endps
        while bv != bb:
            blossomparent[bv] = b
            path.append(bv)
            endps.append(labelend[bv])
            v = endpoint[labelend[bv]]
            bv = inblossom[v]
        path.append(bb)
        path.reverse()
        endps.reverse()
        endps.append(2 * k)
        while bw != bb:
            blossomparent[bw] = b
            path.append(bw)
            endps.append(labelend[bw] ^ 1)
            w = endpoint[labelend[bw]]
            bw = inblossom[w]
        label[b] = 1
        labelend[b] = labelend[bb]
        dualvar[b] = 0
        for x in leaves(b):
            if label[inblossom[x]] == 2:
                queue.append(x)
            inblossom[x] = b
        bestedgeto: dict[int, int] = {}
        for sub in path:
            if blossombestedges[sub] is None:
                nblists = [[p >> 1 for p in neighbend[x]] for x in leaves(sub)]
            else:
                nblists = [blossombestedges[sub]]
            for nblist in nblists:
                for kk in nblist:
                    i, j, _ = edges[kk]
                    if inblossom[j] == b:
                        i, j = j, i
                    bj = inblossom[j]
                    if bj != b and label[bj] == 1 and (
                        bj not in bestedgeto or slack(kk) < slack(bestedgeto[bj])
                    ):
                        bestedgeto[bj] = kk
            blossombestedges[sub] = None
            bestedge[sub] = -1
        blossombestedges[b] = [bestedgeto[x] for x in sorted(bestedgeto)]
        bestedge[b] = -1
        for kk in blossombestedges[b]:
            if bestedge[b] == -1 or slack(kk) < slack(bestedge[b]):
                bestedge[b] = kk

    def expand_blossom(b, endstage):
        for s in blossomchilds[b]:
            blossomparent[s] = -1
            if s < nvertex:
                inblossom[s] = s
            elif endstage and dualvar[s] == 0:
                expand_blossom(s, endstage)
            else:
                for x in leaves(s):
                    inblossom[x] = s
        if not endstage and label[b] == 2:
            entrychild = inblossom[endpoint[labelend[b] ^ 1]]
            j = blossomchilds[b].index(entrychild)
            if j & 1:
                j -= len(blossomchilds[b])
                jstep = 1
                endptrick = 0
            else:
                jstep = -1
                endptrick = 1
            p = labelend[b]
            while j != 0:
                label[endpoint[p ^ 1]] = 0
                label[endpoint[blossomendps[b][j - endptrick] ^ endptrick ^ 1]] = 0
                assign_label(endpoint[p ^ 1], 2, p)
                allowedge[blossomendps[b][j - endptrick] >> 1] = True
                j += jstep
                p = blossomendps[b][j - endptrick] ^ endptrick
                allowedge[p >> 1] = True
                j += jstep
            bv = blossomchilds[b][j]
            label[endpoint[p ^ 1]] = label[bv] = 2
            labelend[endpoint[p ^ 1]] = labelend[bv] = p
            bestedge[bv] = -1
            j += jstep
            while blossomchilds[b][j] != entrychild:
                bv = blossomchilds[b][j]
                if label[bv] == 1:
                    j += jstep
                    continue
                x = -1
                for x in leaves(bv):
                    if label[x] != 0:
                        break
                if label[x] != 0:
                    label[x] = 0
                    label[endpoint[mate[blossombase[bv]]]] = 0
                    assign_label(x, 2, labelend[x])
                j += jstep
        label[b] = labelend[b] = -1
        blossomchilds[b] = blossomendps[b] = None
        blossombase[b] = -1
        blossombestedges[b] = None
        bestedge[b] = -1
        unusedblossoms.append(b)

    def augment_blossom(b, v):
        t = v
        while blossomparent[t] != b:
            t = blossomparent[t]
        if t >= nvertex:
            augment_blossom(t, v)
        i = j = blossomchilds[b].index(t)
        if i & 1:
            j -= len(blossomchilds[b])
            jstep = 1
            endptrick = 0
        else:
            jstep = -1
            endptrick = 1
        while j != 0:
            j += jstep
            t = blossomchilds[b][j]
            p = blossomendps[b][j - endptrick] ^ endptrick
            if t >= nvertex:
                augment_blossom(t, endpoint[p])
            j += jstep
            t = blossomchilds[b][j]
            if t >= nvertex:
                augment_blossom(t, endpoint[p ^ 1])
            mate[endpoint[p]] = p ^ 1
            mate[endpoint[p ^ 1]] = p
        blossomchilds[b] = blossomchilds[b][i:] + blossomchilds[b][:i]
        blossomendps[b] = blossomendps[b][i:] + blossomendps[b][:i]
        blossombase[b] = blossombase[blossomchilds[b][0]]

    def augment_matching(k):
        v, w, _ = edges[k]
        for s, p in ((v, 2 * k + 1), (w, 2 * k)):
            while True:
                bs = inblossom[s]
                if bs >= nvertex:
                    augment_blossom(bs, s)
                mate[s] = p
                if labelend[bs] == -1:
                    break
                t = endpoint[labelend[bs]]
                bt = inblossom[t]
                s = endpoint[labelend[bt]]
                j = endpoint[labelend[bt] ^ 1]
                if bt >= nvertex:
                    augment_blossom(bt, j)
                mate[j] = labelend[bt]
                p = labelend[bt] ^ 1

    for _stage in range(nvertex):
        label[:] = [0] * (2 * nvertex)
        bestedge[:] = [-1] * (2 * nvertex)
        blossombestedges[nvertex:] = [None] * nvertex
        allowedge[:] = [False] * nedge
        queue[:] = []
        for v in range(nvertex):
            if mate[v] == -1 and label[inblossom[v]] == 0:
                assign_label(v, 1, -1)
        augmented = False
        while True:
            while queue and not augmented:
                v = queue.pop()
                for p in neighbend[v]:
                    k = p >> 1
                    w = endpoint[p]
                    if inblossom[v] == inblossom[w]:
                        continue
                    if not allowedge[k]:
                        kslack = slack(k)
                        if kslack <= 0:
                            allowedge[k] = True
                    if allowedge[k]:
                        if label[inblossom[w]] == 0:
                            assign_label(w, 2, p ^ 1)
                        elif label[inblossom[w]] == 1:
                            base = scan_blossom(v, w)
                            if base >= 0:
                                add_blossom(base, k)
                            else:
                                augment_matching(k)
                                augmented = True
                                break
                        elif label[w] == 0:
                            label[w] = 2
                            labelend[w] = p ^ 1
                    elif label[inblossom[w]] == 1:
                        b = inblossom[v]
                        if bestedge[b] == -1 or kslack < slack(bestedge[b]):
                            bestedge[b] = k
                    elif label[w] == 0:
                        if bestedge[w] == -1 or kslack < slack(bestedge[w]):
                            bestedge[w] = k
            if augmented:
                break
            deltatype = -1
            delta = deltaedge = deltablossom = None
            for v in range(nvertex):
                if label[inblossom[v]] == 0 and bestedge[v] != -1:
                    d = slack(bestedge[v])
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 2
                        deltaedge = bestedge[v]
            for b in range(2 * nvertex):
                if blossomparent[b] == -1 and label[b] == 1 and bestedge[b] != -1:
                    kslack = slack(bestedge[b])
                    if kslack % 2:
                        half_steps += 1
                        d = Fraction(kslack, 2)
                    else:
                        d = kslack // 2
                    if deltatype == -1 or d < delta:
                        delta = d
                        deltatype = 3
                        deltaedge = bestedge[b]
            for b in range(nvertex, 2 * nvertex):
                if (
                    blossombase[b] >= 0
                    and blossomparent[b] == -1
                    and label[b] == 2
                    and (deltatype == -1 or dualvar[b] < delta)
                ):
                    delta = dualvar[b]
                    deltatype = 4
                    deltablossom = b
            if deltatype == -1:
                # no further progress possible: the matching has maximum cardinality
                deltatype = 1
                delta = max(0, min(dualvar[:nvertex]))
            for v in range(nvertex):
                lb = label[inblossom[v]]
                if lb == 1:
                    dualvar[v] -= delta
                elif lb == 2:
                    dualvar[v] += delta
            for b in range(nvertex, 2 * nvertex):
                if blossombase[b] >= 0 and blossomparent[b] == -1:
                    if label[b] == 1:
                        dualvar[b] += delta
                    elif label[b] == 2:
                        dualvar[b] -= delta
            if deltatype == 1:
                break
            if deltatype == 2:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                if label[inblossom[i]] == 0:
                    i, j = j, i
                queue.append(i)
            elif deltatype == 3:
                allowedge[deltaedge] = True
                i, j, _ = edges[deltaedge]
                queue.append(i)
            else:
                expand_blossom(deltablossom, False)
        if not augmented:
            break
        for b in range(nvertex, 2 * nvertex):
            if blossomparent[b] == -1 and blossombase[b] >= 0 and label[b] == 1 and dualvar[b] == 0:
                expand_blossom(b, True)

    out = [endpoint[mate[v]] if mate[v] >= 0 else -1 for v in range(nvertex)]
    # blossomparent still describes the surviving nested blossoms
    parent = list(blossomparent)
    for b in range(nvertex, 2 * nvertex):
        if blossombase[b] < 0:
            parent[b] = -2
    return BlossomState(out, list(dualvar), parent, nvertex, edges, half_steps)


def check_certificate(state: BlossomState) -> bool:
    """Complementary slackness for the perfect-matching LP.

    Vertex duals are free, blossom duals nonnegative, every edge has
    nonnegative reduced cost, matched edges are tight, and every blossom
    with a positive dual is full.
    """
    n = state.nvertex
    parent = state.parent
    dual = state.dual
    if any(x < 0 for x in state.mate):
        return False

    def chain(v):
        out = []
        b = parent[v]
        while b >= 0:
            out.append(b)
            b = parent[b]
        return out

    chains = [set(chain(v)) for v in range(n)]
    members: dict[int, list[int]] = {}
    for v in range(n):
        for b in chains[v]:
            members.setdefault(b, []).append(v)
    for b, vs in members.items():
        if dual[b] < 0:
            return False
        if dual[b] > 0:
            inside = set(vs)
            matched = sum(1 for v in vs if state.mate[v] in inside)
            if matched != len(vs) - 1:
                return False
    for i, j, w in state.int_edges:
        s = dual[i] + dual[j] - 2 * w
        for b in chains[i] & chains[j]:
            s += 2 * dual[b]
        if s < 0:
            return False
        if state.mate[i] == j and s != 0:
            return False
    return True


def max_weight_perfect_matching(
    p: MatchingProblem, *, certify: bool = False, lexicographic: bool = False
) -> Matching | None:
    """Maximum-weight perfect matching, or ``None`` if none exists.

    ``lexicographic`` perturbs weights so that ties resolve to the
    lexicographically smallest sorted edge tuple.  ``certify`` re-checks
    the dual certificate and raises InvariantError if it fails.
    """
    g = p.graph
    n = g.n
    if n % 2:
        return None
    if n == 0:
        return Matching(EdgeSet(g, frozenset()), Fraction(0))
    ints, _ = scale_to_int(p.weights)
    if lexicographic:
        m = g.m
        ints = [(w << m) + (1 << (m - 1 - k)) for k, w in enumerate(ints)]
    edges = [(a, b, ints[k]) for k, (a, b) in enumerate(g.edges)]
    if not edges:
        return None
    state = _blossom(n, edges)
    if any(x < 0 for x in state.mate):
        return None
    if certify and not check_certificate(state):
        raise InvariantError("blossom dual certificate failed")
    chosen = []
    for k, (a, b) in enumerate(g.edges):
        if state.mate[a] == b:
            chosen.append(k)
    s = EdgeSet(g, frozenset(chosen))
    return Matching(s, sum((p.weights[k] for k in chosen), Fraction(0)))


def verify_matching(p: MatchingProblem, m: Matching) -> bool:
    """Disjoint, perfect and with the stated weight."""
    if m.edges.graph != p.graph:
        return False
    seen = set()
    for e in m.edges.members:
        a, b = p.graph.edges[e]
        if a in seen or b in seen:
            return False
        seen.update((a, b))
    if len(seen) != p.graph.n:
        return False
    return sum((p.weights[e] for e in m.edges.members), Fraction(0)) == m.weight


def perfect_matchings(g: Graph):
    """All perfect matchings as sorted edge tuples (exponential)."""
    n = g.n
    if n % 2:
        return
    mate = [-1] * n
    chosen: list[int] = []

    def rec():
        try:
            v = mate.index(-1)
        except ValueError:
            yield tuple(sorted(chosen))
            return
        for e, w in g.adj[v]:
            if mate[w] == -1 and w != v:
                mate[v], mate[w] = w, v
                chosen.append(e)
                yield from rec()
                chosen.pop()
                mate[v] = mate[w] = -1

    yield from rec()


def brute_force_perfect_matching(p: MatchingProblem, max_vertices: int = 16) -> Matching | None:
    """Exhaustive reference with the lexicographic tie-break."""
    if p.graph.n > max_vertices:
        raise CapacityError(f"exhaustive matching capped at {max_vertices} vertices")
    best = None
    for t in perfect_matchings(p.graph):
        w = sum((p.weights[e] for e in t), Fraction(0))
        if best is None or w > best[0] or (w == best[0] and t < best[1]):
            best = (w, t)
    if best is None:
        return None
    return Matching(EdgeSet(p.graph, frozenset(best[1])), best[0])


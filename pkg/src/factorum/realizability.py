"""Delta-matroids and matching realizability of degree constraints.

Everything here is exhaustive on purpose: a gadget realizes ``k`` only if
every stub subset of size ``k`` can be covered, so no sampling shortcut is
sound.  Sizes are capped accordingly.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import combinations
from math import comb

from .constraints import DegreeConstraint, classify
from .errors import CapacityError, InvariantError, UsageError
from .gadgets import GadgetBlueprint

MAX_GROUND = 20
DELTA_MATROID_MAX_GROUND = 16
REALIZE_MAX_VERTICES = 24


@dataclass(frozen=True)
class SetFamily:
    ground: int
    members: tuple  # sorted distinct bit masks

    def __post_init__(self):
        if self.ground > MAX_GROUND:
            raise CapacityError(f"ground set capped at {MAX_GROUND}")
        ms = tuple(sorted(set(self.members)))
        if any(x >> self.ground for x in ms):
            raise UsageError("member outside the ground set")
        object.__setattr__(self, "members", ms)

    def __contains__(self, x: int) -> bool:
        return x in self._set

    @cached_property
    def _set(self) -> frozenset:
        return frozenset(self.members)

    def __len__(self):
        return len(self.members)

    def is_symmetric(self) -> bool:
        sizes = {}
        for x in self.members:
            sizes[x.bit_count()] = sizes.get(x.bit_count(), 0) + 1
        return all(c == comb(self.ground, k) for k, c in sizes.items())


def constraint_family(d: DegreeConstraint) -> SetFamily:
    """All subsets of the arity whose size lies in ``d``."""
    return SetFamily(d.arity, tuple(x for x in range(1 << d.arity) if x.bit_count() in d))


def is_delta_matroid(fam: SetFamily) -> bool:
    """Exchange axiom: for X, Y in the family and u in X xor Y there is v in
    X xor Y (possibly u itself) with X xor {u, v} in the family."""
    if fam.ground > DELTA_MATROID_MAX_GROUND:
        raise CapacityError(f"delta-matroid check capped at ground size {DELTA_MATROID_MAX_GROUND}")
    members = fam._set
    for x in fam.members:
        for y in fam.members:
            diff = x ^ y
            bits = [1 << i for i in range(fam.ground) if diff >> i & 1]
            for u in bits:
                if not any((x ^ u ^ v if v != u else x ^ u) in members for v in bits):
                    return False
    return True


# ---------------------------------------------------------------- matchings


class _Searcher:
    """Backtracking search for a matching that covers a prescribed set of
    stubs, every required vertex, and no other stub."""

    def __init__(self, gb: GadgetBlueprint):
        if gb.n_vertices > REALIZE_MAX_VERTICES:
            raise CapacityError(f"realizability search capped at {REALIZE_MAX_VERTICES} vertices")
        self.gb = gb
        self.nbrs = [[] for _ in range(gb.n_vertices)]
        for i, (a, b) in enumerate(gb.edges):
            self.nbrs[a].append((b, i))
            self.nbrs[b].append((a, i))
        self.required = sorted(gb.required)

    def find(self, w: int):
        """Edge ids of a witnessing matching for stub mask ``w``, or None."""
        gb = self.gb
        must = [s for s in gb.stubs if w >> s & 1] + self.required
        banned = 0
        for s in gb.stubs:
            if not w >> s & 1:
                banned |= 1 << s

        @lru_cache(maxsize=None)
        def rec(used: int):
            for x in must:
                if not used >> x & 1:
                    break
            else:
                return ()
            for y, e in self.nbrs[x]:
                if (used | banned) >> y & 1:
                    continue
                r = rec(used | (1 << x) | (1 << y))
                if r is not None:
                    return (e,) + r
            return None

        return rec(0)


def feasible_family(gb: GadgetBlueprint) -> SetFamily:
    """Stub subsets W such that some matching covers exactly W among the stubs
    and all required vertices."""
    s = _Searcher(gb)
    return SetFamily(gb.n_stubs, tuple(w for w in range(1 << gb.n_stubs) if s.find(w) is not None))


def realized_set(gb: GadgetBlueprint) -> DegreeConstraint:
    """Sizes k such that every k-subset of the stubs has a covering matching."""
    s = _Searcher(gb)
    d = gb.n_stubs
    vals = []
    for k in range(d + 1):
        if all(s.find(sum(1 << i for i in c)) is not None for c in combinations(range(d), k)):
            vals.append(k)
    return DegreeConstraint.of(vals, d)


@dataclass(frozen=True)
class Partition:
    singles: tuple
    pairs: tuple

    @property
    def parts(self) -> tuple:
        return tuple((x,) for x in self.singles) + self.pairs


def partition_witness(gb: GadgetBlueprint, v1: int, v2: int) -> Partition:
    """Split ``v1 xor v2`` into singles and pairs such that flipping any union
    of parts keeps both ``v1`` and ``v2`` feasible.

    Read off the symmetric difference of two witnessing matchings: each
    path starting at a stub either ends at another stub (a pair) or at an
    optional vertex (a single).  Every union is then rechecked against the
    exhaustive feasible family.
    """
    s = _Searcher(gb)
    m1, m2 = s.find(v1), s.find(v2)
    if m1 is None or m2 is None:
        raise UsageError("both stub sets must be feasible for the gadget")
    sym = set(m1) ^ set(m2)
    inc: dict[int, list[int]] = {}
    for e in sym:
        for x in gb.edges[e]:
            inc.setdefault(x, []).append(e)
    singles, pairs, seen = [], [], set()
    for st in gb.stubs:
        if not (v1 ^ v2) >> st & 1 or st in seen:
            continue
        prev, x = None, st
        while True:
            nxt = [e for e in inc.get(x, ()) if e != prev]
            if not nxt:
                break
            prev = nxt[0]
            a, b = gb.edges[prev]
            x = b if a == x else a
        seen.add(st)
        if x < gb.n_stubs:
            seen.add(x)
            pairs.append((st, x))
        elif x in gb.required:
            raise UsageError("alternating path ended at a required vertex")
        else:
            singles.append(st)
    part = Partition(tuple(singles), tuple(pairs))
    fam = feasible_family(gb)
    parts = part.parts
    for r in range(len(parts) + 1):
        for combo in combinations(parts, r):
            p = sum(1 << x for q in combo for x in q)
            if (v1 ^ p) not in fam or (v2 ^ p) not in fam:
                raise InvariantError("partition union check failed")
    return part


class Obstruction(enum.Enum):
    REALIZABLE_CONSISTENT = "realizable-consistent"
    NOT_REALIZABLE = "not-realizable"


def obstruction_check(d: DegreeConstraint) -> Obstruction:
    """Flag the three-value pattern that no matching gadget can realize.

    If ``{p, p+1, p+3}`` lies in ``d`` without ``p+2`` then flipping a 3-set
    from size p to p+3 needs a single part in any partition, which would
    force p+2 into ``d``.  The mirrored pattern ``{p, p+2, p+3}`` works the
    same way from the top.
    """
    if classify(d).max_gap > 1:
        raise UsageError("constraint has a gap longer than one")
    vals = set(d.feasible)
    for p in vals:
        if p + 3 in vals and p + 2 not in vals and p + 1 in vals:
            return Obstruction.NOT_REALIZABLE
        if p + 3 in vals and p + 1 not in vals and p + 2 in vals:
            return Obstruction.NOT_REALIZABLE
    return Obstruction.REALIZABLE_CONSISTENT

"""The recursive solver for instances mixing interval, parity-interval,
type-1 and type-2 constraints.

At each level the least type-1/type-2 vertex ``u`` is split by parity.  If
the even-side sub-instance has no factor, the odd side is solved.
Otherwise its optimum ``F`` is computed recursively and then improved by
querying the slices of the instance around ``F`` flipped on ``{u, v}`` for
every type-1/type-2 vertex ``v``.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import InvariantError, UsageError
from .instance import (
    Factor,
    Instance,
    brute_force_opt,
    is_factor,
    restrict_parity,
    slice_instance,
    t_set,
    validate,
)
from .oracles import OracleHandle


@dataclass
class SolveStats:
    dec_calls: int = 0
    opt_calls: int = 0
    comparisons: int = 0
    recursion_depth: int = 0
    wall_time: float = 0.0
    inner_opt_calls: int = 0

    def bounds(self, n: int) -> dict:
        return {
            "dec_calls": n,
            "opt_calls": n * (n + 1) // 2 + 1,
            "comparisons": n * (n + 1) // 2,
            "recursion_depth": n,
        }

    def violations(self, n: int) -> list[str]:
        out = []
        for k, lim in self.bounds(n).items():
            if getattr(self, k) > lim:
                out.append(f"{k}={getattr(self, k)} exceeds {lim}")
        return out


@dataclass(frozen=True)
class TraceEvent:
    level: int
    u: int | None
    branch: str  # "opt", "odd", "even" or "improve"
    weight: Fraction | None


@dataclass
class SolveResult:
    outcome: Factor | None
    stats: SolveStats
    trace: list = field(default_factory=list)

    @property
    def feasible(self) -> bool:
        return self.outcome is not None

    @property
    def weight(self):
        return None if self.outcome is None else self.outcome.weight


class _Run:
    def __init__(self, oracles: OracleHandle, trace: bool):
        self.oracles = oracles
        self.stats = SolveStats()
        self.events: list[TraceEvent] | None = [] if trace else None

    def note(self, level, u, branch, weight):
        if self.events is not None:
            self.events.append(TraceEvent(level, u, branch, weight))

    def main(self, inst: Instance, level: int) -> Factor | None:
        self.stats.recursion_depth = max(self.stats.recursion_depth, level)
        tt = t_set(inst)
        if not tt:
            f = self.oracles.optimization(inst)
            self.note(level, None, "opt", None if f is None else f.weight)
            return f
        u = tt[0]
        even = restrict_parity(inst, u, 0)
        if self.oracles.decision(even) is None:
            self.note(level, u, "odd", None)
            return self.main(restrict_parity(inst, u, 1), level + 1)
        f = self.main(even, level + 1)
        if f is None:
            raise InvariantError("decision reported a factor but the recursion found none")
        self.note(level, u, "even", f.weight)
        best = self.improve(inst, u, f, tt)
        self.note(level, u, "improve", best.weight)
        return best

    def improve(self, inst: Instance, u: int, f: Factor, tt) -> Factor:
        best = f
        for v in tt:
            sub = slice_instance(inst, f, {u, v})
            cand = self.oracles.optimization(sub)
            if cand is None:
                continue
            self.stats.comparisons += 1
            if cand.weight > best.weight:
                best = cand
        return best


def main_solve(inst: Instance, oracles: OracleHandle | None = None, *, trace: bool = False,
               check_bounds: bool = True) -> SolveResult:
    """Maximum-weight factor of ``inst`` or ``None`` when there is none."""
    rep = validate(inst)
    if not rep.admissible:
        raise UsageError("; ".join(rep.violations + rep.inadmissible))
    oracles = oracles if oracles is not None else OracleHandle()
    d0, o0, i0 = oracles.dec_calls, oracles.opt_calls, oracles.inner_opt_calls
    run = _Run(oracles, trace)
    t = time.perf_counter()
    out = run.main(inst, 0)
    st = run.stats
    st.wall_time = time.perf_counter() - t
    st.dec_calls = oracles.dec_calls - d0
    st.opt_calls = oracles.opt_calls - o0
    st.inner_opt_calls = oracles.inner_opt_calls - i0
    if out is not None and not is_factor(inst, out.edges):
        raise InvariantError("solver returned an edge set that is not a factor")
    if check_bounds:
        bad = st.violations(inst.n)
        if bad:
            raise InvariantError("counting bounds violated: " + ", ".join(bad))
    return SolveResult(out, st, run.events or [])


def improvement_loop(inst: Instance, u: int, f: Factor, oracles: OracleHandle | None = None) -> Factor:
    """One round of slice queries around ``f`` with ``u`` in every slice set."""
    run = _Run(oracles if oracles is not None else OracleHandle(), False)
    return run.improve(inst, u, f, t_set(inst))


def check_optimality_criterion(inst: Instance, u: int, f: Factor, cand: Factor, opt=brute_force_opt) -> bool:
    """``cand`` beats ``f`` and every slice optimum around ``f`` whose flip
    set contains ``u`` and has at most two vertices."""
    if cand.weight < f.weight:
        return False
    for v in t_set(inst):
        best = opt(slice_instance(inst, f, {u, v}))
        if best is not None and best.weight > cand.weight:
            return False
    return True

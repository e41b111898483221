"""Decision and Optimization oracles behind a common handle.

Optimization works on instances whose constraints are all intervals or
parity intervals; the ``matching`` backend reduces them to perfect
matching.  Decision accepts type-1/type-2 constraints too and, for the
``split`` backend, tries every way of pinning those vertices to one half of
their parity split.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from itertools import product
from typing import Callable

from .constraints import classify, split
from .errors import CapacityError, UsageError
from .gadgets import reduce_instance
from .instance import Factor, Instance, brute_force_opt, t_set
from .matching import max_weight_perfect_matching

DEFAULT_T_CAP = 20


def _require_g(inst: Instance) -> None:
    for v, c in enumerate(inst.constraints):
        if not classify(c).in_g:
            raise UsageError(f"vertex {v}: optimization needs interval or parity-interval constraints")


def opt_matching_backend(inst: Instance, *, compact: bool = True, certify: bool = False) -> Factor | None:
    """Exact optimum via the gadget reduction, or None if there is no factor."""
    _require_g(inst)
    red = reduce_instance(inst, compact=compact)
    m = max_weight_perfect_matching(red.problem, certify=certify)
    if m is None:
        return None
    return red.lift(m, inst)


def opt_brute_backend(inst: Instance) -> Factor | None:
    return brute_force_opt(inst)


def split_instances(inst: Instance):
    """Every pinning of the type-1/type-2 vertices, half 0 before half 1,
    earlier vertices varying slowest."""
    tt = t_set(inst)
    halves = {v: split(inst.constraints[v]) for v in tt}
    for bits in product((0, 1), repeat=len(tt)):
        yield inst.with_constraints({v: halves[v][b] for v, b in zip(tt, bits)})


def decision_split_backend(
    inst: Instance,
    opt: Callable[[Instance], Factor | None] = opt_matching_backend,
    cap: int = DEFAULT_T_CAP,
) -> Factor | None:
    """Some factor of ``inst`` or None.  Exponential in the number of
    type-1/type-2 vertices only."""
    k = len(t_set(inst))
    if k > cap:
        raise CapacityError(f"split decision capped at {cap} type-1/type-2 vertices, got {k}")
    for sub in split_instances(inst):
        f = opt(sub)
        if f is not None:
            return f
    return None


def decision_brute_backend(inst: Instance) -> Factor | None:
    return brute_force_opt(inst)


OPT_BACKENDS = {"matching": opt_matching_backend, "brute": opt_brute_backend}


@dataclass
class OracleHandle:
    """Oracle pair plus call counters.

    Counters record the calls made by the solver itself; the optimization
    calls that the split Decision backend makes internally are tallied
    separately in ``inner_opt_calls``.
    """

    decision_backend: str = "split"
    optimization_backend: str = "matching"
    t_cap: int = DEFAULT_T_CAP
    cache: bool = True
    dec_calls: int = 0
    opt_calls: int = 0
    inner_opt_calls: int = 0
    _memo: dict = field(default_factory=dict, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)

    def __post_init__(self):
        if self.optimization_backend not in OPT_BACKENDS:
            raise UsageError(f"unknown optimization backend {self.optimization_backend!r}")
        if self.decision_backend not in ("split", "brute"):
            raise UsageError(f"unknown decision backend {self.decision_backend!r}")

    @classmethod
    def named(cls, name: str, **kw) -> "OracleHandle":
        """``matching`` or ``brute`` for both oracles."""
        if name == "matching":
            return cls("split", "matching", **kw)
        if name == "brute":
            return cls("brute", "brute", **kw)
        raise UsageError(f"unknown oracle {name!r}")

    def _opt(self, inst: Instance) -> Factor | None:
        if self.cache and inst in self._memo:
            return self._memo[inst]
        f = OPT_BACKENDS[self.optimization_backend](inst)
        if self.cache:
            self._memo[inst] = f
        return f

    def optimization(self, inst: Instance) -> Factor | None:
        with self._lock:
            self.opt_calls += 1
        return self._opt(inst)

    def decision(self, inst: Instance) -> Factor | None:
        with self._lock:
            self.dec_calls += 1
        if self.decision_backend == "brute":
            return decision_brute_backend(inst)

        def inner(sub):
            with self._lock:
                self.inner_opt_calls += 1
            return self._opt(sub)

        return decision_split_backend(inst, inner, self.t_cap)

    def reset(self) -> None:
        with self._lock:
            self.dec_calls = self.opt_calls = self.inner_opt_calls = 0
            self._memo.clear()

"""Seeded property sweeps shared by the ``verify`` command and the tests.

Every check returns a CheckResult listing the case seeds that failed, so a
counterexample can be replayed with the same seed.
"""

from __future__ import annotations

import math
import random
import statistics
import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .constraints import DegreeConstraint
from .errors import FactorumError, PreconditionError
from .gadgets import build_interval_gadget, build_parity_gadget
from .generate import (
    trap_key,
    random_instance,
    random_key_instance,
    scaling_instance,
    small_admissible,
)
from .graph import Graph
from .instance import brute_force_opt, enumerate_factors, restrict_parity, t_set
from .matching import MatchingProblem, brute_force_perfect_matching, max_weight_perfect_matching, verify_matching
from .oracles import OracleHandle, opt_matching_backend
from .realizability import (
    Obstruction,
    feasible_family,
    is_delta_matroid,
    obstruction_check,
    partition_witness,
    realized_set,
)
from .solver import check_optimality_criterion, main_solve
from .structure import (
    enumerate_basic_factors,
    even_at_u_candidates,
    find_even_at_u_basic_factor,
    find_positive_basic_factor,
    lift_basic_subgraph,
    normalize,
    vertex_type,
)


@dataclass
class CheckResult:
    name: str
    cases: int = 0
    failures: list = field(default_factory=list)  # (seed, message)
    elapsed: float = 0.0
    extra: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.failures and self.cases > 0

    def fail(self, seed, msg) -> None:
        self.failures.append((seed, msg))

    def line(self) -> str:
        tag = "PASS" if self.passed else "FAIL"
        s = f"{tag} {self.name}: {self.cases} cases, {len(self.failures)} failures, {self.elapsed:.2f}s"
        if self.extra:
            s += " " + " ".join(f"{k}={v}" for k, v in self.extra.items())
        if self.failures:
            s += " seeds=" + ",".join(str(sd) for sd, _ in self.failures[:10])
        return s

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "cases": self.cases,
            "failures": [{"seed": s, "message": m} for s, m in self.failures],
            "elapsed": round(self.elapsed, 4),
            "extra": {k: str(v) for k, v in self.extra.items()},
        }


def case_seeds(seed: int, count: int) -> list[int]:
    rng = random.Random(seed)
    return [rng.getrandbits(32) for _ in range(count)]


class _timed:
    def __init__(self, res: CheckResult):
        self.res = res

    def __enter__(self):
        self.t = time.perf_counter()
        return self.res

    def __exit__(self, *exc):
        self.res.elapsed = time.perf_counter() - self.t
        return False


# ------------------------------------------------------------------ solver


def check_oracle_equivalence(seed: int = 0, cases: int = 500) -> CheckResult:
    """main_solve against branch and bound on small mixed instances; the
    counting bounds are enforced on every solve."""
    res = CheckResult("oracle-equivalence")
    infeasible = 0
    with _timed(res):
        for sd in case_seeds(seed, cases):
            inst = small_admissible(random.Random(sd), max_n=10, max_m=16)
            res.cases += 1
            try:
                got = main_solve(inst).outcome
            except FactorumError as exc:
                res.fail(sd, f"solver raised {exc!r}")
                continue
            want = brute_force_opt(inst)
            if (got is None) != (want is None):
                res.fail(sd, f"feasibility differs: solver {got}, brute force {want}")
            elif got is not None and got.weight != want.weight:
                res.fail(sd, f"weight {got.weight} != {want.weight}")
            infeasible += want is None
    res.extra["infeasible"] = infeasible
    return res


def check_counting_bounds(seed: int = 0, cases: int = 500) -> CheckResult:
    res = CheckResult("counting-bounds")
    worst = {"dec_calls": 0.0, "opt_calls": 0.0, "comparisons": 0.0, "recursion_depth": 0.0}
    with _timed(res):
        for sd in case_seeds(seed, cases):
            inst = small_admissible(random.Random(sd), max_n=10, max_m=16)
            res.cases += 1
            st = main_solve(inst, check_bounds=False).stats
            bad = st.violations(inst.n)
            if bad:
                res.fail(sd, "; ".join(bad))
            for k, lim in st.bounds(inst.n).items():
                worst[k] = max(worst[k], getattr(st, k) / lim)
    res.extra.update({f"max_{k}_ratio": f"{v:.2f}" for k, v in worst.items()})
    return res


def check_matching_backend(seed: int = 0, cases: int = 500) -> CheckResult:
    """Gadget reduction plus blossom against branch and bound, both forms."""
    res = CheckResult("matching-backend")
    with _timed(res):
        for sd in case_seeds(seed, cases):
            rng = random.Random(sd)
            n = rng.randint(2, 9)
            m = rng.randint(1, min(14, n * (n - 1) // 2))
            inst = random_instance(rng, n, m, classes=("interval", "parity"))
            res.cases += 1
            want = brute_force_opt(inst)
            for compact in (True, False):
                got = opt_matching_backend(inst, compact=compact, certify=True)
                if (got is None) != (want is None) or (got is not None and got.weight != want.weight):
                    res.fail(sd, f"compact={compact}: {got} vs {want}")
                    break
    return res


def check_blossom(seed: int = 0, cases: int = 500) -> CheckResult:
    res = CheckResult("blossom-vs-exhaustive")
    with _timed(res):
        for sd in case_seeds(seed, cases):
            rng = random.Random(sd)
            n = rng.choice((2, 4, 6, 8, 10))
            dens = rng.choice((0.3, 0.5, 0.9))
            pairs = [(a, b) for a in range(n) for b in range(a + 1, n) if rng.random() < dens]
            g = Graph(n, pairs)
            if rng.random() < 0.2:
                ws = [Fraction(rng.randint(-9, 9), rng.randint(1, 4)) for _ in pairs]
            else:
                ws = [rng.randint(-9, 9) for _ in pairs]
            p = MatchingProblem(g, ws)
            res.cases += 1
            got = max_weight_perfect_matching(p, certify=True)
            want = brute_force_perfect_matching(p)
            if (got is None) != (want is None):
                res.fail(sd, "feasibility differs")
            elif got is not None and (got.weight != want.weight or not verify_matching(p, got)):
                res.fail(sd, f"weight {got.weight} != {want.weight}")
    return res


def _trap_instance():
    key, _ = trap_key()
    return key


def check_trap_solve() -> CheckResult:
    res = CheckResult("trap-solve")
    with _timed(res):
        inst = _trap_instance()
        t = time.perf_counter()
        out = main_solve(inst)
        dt = time.perf_counter() - t
        res.cases = 1
        f = out.outcome
        if f is None or f.weight != 6 or len(f.edges) != inst.m:
            res.fail(0, f"got {f}")
        if dt >= 1.0:
            res.fail(0, f"took {dt:.2f}s")
        res.extra["seconds"] = f"{dt:.3f}"
    return res


def check_optimality_sweep(seed: int = 0, cases: int = 100) -> CheckResult:
    """The slice criterion around an optimum of the even side of ``u``
    accepts exactly the globally optimal factors."""
    res = CheckResult("optimality-criterion")
    checked = 0
    with _timed(res):
        seeds = iter(case_seeds(seed, 50 * cases))
        while res.cases < cases:
            sd = next(seeds)
            rng = random.Random(sd)
            inst = small_admissible(rng, max_n=8, max_m=11)
            tt = t_set(inst)
            if not tt:
                continue
            u = rng.choice(tt)
            f = brute_force_opt(restrict_parity(inst, u, 0))
            if f is None:
                continue
            best = brute_force_opt(inst)
            opt = lru_cache(maxsize=None)(brute_force_opt)
            res.cases += 1
            for ids in enumerate_factors(inst):
                cand = inst.factor(ids)
                checked += 1
                if check_optimality_criterion(inst, u, f, cand, opt=opt) != (cand.weight == best.weight):
                    res.fail(sd, f"criterion disagrees on {ids}")
                    break
    res.extra["factors_checked"] = checked
    return res


def check_scaling(seed: int = 0, sizes=(20, 40, 80)) -> CheckResult:
    """Counting bounds and log-log growth of wall time on sparse instances
    with n/4 type-2 vertices."""
    res = CheckResult("scaling")
    times = []
    with _timed(res):
        for n in sizes:
            inst = scaling_instance(seed, n)
            res.cases += 1
            out = main_solve(inst, OracleHandle(), check_bounds=False)
            st = out.stats
            bad = st.violations(n)
            if bad:
                res.fail(seed, f"n={n}: " + "; ".join(bad))
            times.append(st.wall_time)
            res.extra[f"n{n}"] = f"{st.wall_time:.2f}s/dec{st.dec_calls}/opt{st.opt_calls}"
    if len(sizes) >= 2:
        slope = statistics.linear_regression([math.log(n) for n in sizes], [math.log(t) for t in times]).slope
        res.extra["slope"] = f"{slope:.2f}"
        if not slope < 7:
            res.fail(seed, f"log-log slope {slope:.2f}")
    return res


# -------------------------------------------------------------- structural


def _random_pair(rng: random.Random, strict: bool):
    """Instance and two factors, heavier second, or None."""
    inst = small_admissible(rng, max_n=9, max_m=14)
    fs = list(enumerate_factors(inst))
    if len(fs) < 2:
        return None
    a, b = rng.sample(fs, 2)
    f, g = inst.factor(a), inst.factor(b)
    if g.weight < f.weight:
        f, g = g, f
    if strict and g.weight == f.weight:
        return None
    return inst, f, g


def check_normalization(seed: int = 0, cases: int = 200) -> CheckResult:
    from .structure import is_key_instance

    res = CheckResult("normalization")
    with _timed(res):
        seeds = iter(case_seeds(seed, 50 * cases))
        while res.cases < cases:
            sd = next(seeds)
            trip = _random_pair(random.Random(sd), strict=False)
            if trip is None:
                continue
            inst, f, g = trip
            res.cases += 1
            nr = normalize(inst, f, g)
            delta = f.edges ^ g.edges
            if not is_key_instance(nr.key):
                res.fail(sd, "not a key instance")
            elif sum(nr.key.weights, Fraction(0)) != g.weight - f.weight:
                res.fail(sd, "signed weight identity")
            else:
                for v in range(inst.n):
                    got = sum(nr.key.graph.degree(x) for x in nr.expansion.get(v, ()))
                    if got != delta.degrees()[v]:
                        res.fail(sd, f"degree sum at {v}")
                        break
    return res


def check_positive_basic(seed: int = 0, cases: int = 200) -> CheckResult:
    """Positive basic factor of each normalization: found, listed by the
    enumerator with the same weight, and lifted to a valid augmentation."""
    res = CheckResult("positive-basic-factor")
    with _timed(res):
        seeds = iter(case_seeds(seed, 50 * cases))
        while res.cases < cases:
            sd = next(seeds)
            trip = _random_pair(random.Random(sd), strict=True)
            if trip is None:
                continue
            inst, f, g = trip
            res.cases += 1
            try:
                nr = normalize(inst, f, g)
                bf = find_positive_basic_factor(nr.key)
                if not any(x.edges == bf.edges and x.weight == bf.weight for x in enumerate_basic_factors(nr.key)):
                    res.fail(sd, "not in the enumeration")
                    continue
                h = lift_basic_subgraph(nr, bf)
                odd = sum(1 for d in h.degrees() if d % 2)
                new = inst.factor((f.edges ^ h).members)
                if odd > 2 or new.weight <= f.weight:
                    res.fail(sd, "lifted subgraph not augmenting")
            except FactorumError as exc:
                res.fail(sd, repr(exc))
    return res


def check_random_key_positive(seed: int = 0, cases: int = 300) -> CheckResult:
    """Constructive search on random key instances, many of them 2-connected."""
    res = CheckResult("positive-basic-random-keys")
    with _timed(res):
        seeds = iter(case_seeds(seed, 50 * cases))
        while res.cases < cases:
            sd = next(seeds)
            rng = random.Random(sd)
            key = random_key_instance(rng, rng.randint(3, 11))
            if key.m == 0 or sum(key.weights, Fraction(0)) <= 0:
                continue
            res.cases += 1
            try:
                bf = find_positive_basic_factor(key)
            except FactorumError as exc:
                res.fail(sd, repr(exc))
                continue
            if not any(x.edges == bf.edges for x in enumerate_basic_factors(key)):
                res.fail(sd, "not in the enumeration")
    return res


def check_even_at_u(seed: int = 0, cases: int = 200) -> CheckResult:
    """Whenever the hypotheses hold, a positive basic factor even at ``u``
    exists."""
    res = CheckResult("even-at-u")
    with _timed(res):
        seeds = iter(case_seeds(seed, 50 * cases))
        while res.cases < cases:
            sd = next(seeds)
            rng = random.Random(sd)
            key = random_key_instance(rng, rng.randint(4, 12), (-2, 5))
            if key.m == 0 or key.m > 20:
                continue
            basics = list(enumerate_basic_factors(key))
            for u in range(key.n):
                if not (key.graph.degree(u) == 1 or vertex_type(key, u) == 2):
                    continue
                try:
                    bf = find_even_at_u_basic_factor(key, u, basics=basics)
                except PreconditionError:
                    continue
                except FactorumError as exc:
                    res.cases += 1
                    res.fail(sd, f"u={u}: {exc!r}")
                    continue
                res.cases += 1
                deg_u = sum(1 for e, _ in key.graph.adj[u] if e in bf.edges.members)
                if bf.weight <= 0 or deg_u % 2:
                    res.fail(sd, f"u={u}: bad factor")
    return res


def check_trap_control() -> CheckResult:
    """The type-1 ``u`` of the trap instance: hypotheses otherwise hold,
    yet nothing positive is even at ``u``; making ``u`` type-2 restores it."""
    res = CheckResult("trap-negative-control")
    with _timed(res):
        key, u = trap_key()
        res.cases = 1
        basics = list(enumerate_basic_factors(key))
        total = sum(key.weights, Fraction(0))
        if total != 6 or not all(b.weight < total for b in basics):
            res.fail(0, "trap hypotheses do not hold")
        if even_at_u_candidates(key, u):
            res.fail(0, "found an even-at-u positive basic factor")
        try:
            find_even_at_u_basic_factor(key, u)
            res.fail(0, "type-1 u was not rejected")
        except PreconditionError:
            pass
        key2, _ = trap_key(u_type=2)
        try:
            find_even_at_u_basic_factor(key2, u)
        except FactorumError as exc:
            res.fail(0, f"type-2 variant failed: {exc!r}")
        res.extra["basic_factors"] = len(basics)
    return res


# ----------------------------------------------------------------- gadgets


def check_gadget_realizability(max_d: int = 6) -> CheckResult:
    res = CheckResult("gadget-realizability")
    with _timed(res):
        for d in range(max_d + 1):
            for g in range(d + 1):
                for f in range(g, d + 1):
                    res.cases += 1
                    if realized_set(build_interval_gadget(g, f, d)) != DegreeConstraint.interval(g, f, d):
                        res.fail((g, f, d), "interval gadget")
                    if (f - g) % 2 == 0:
                        res.cases += 1
                        if realized_set(build_parity_gadget(g, f, d)) != DegreeConstraint.parity(g, f, d):
                            res.fail((g, f, d), "parity gadget")
    return res


def check_gadget_families(max_d: int = 4) -> CheckResult:
    """Feasible stub families are symmetric delta-matroids, and every pair
    of members has a partition witness."""
    res = CheckResult("gadget-families")
    with _timed(res):
        for d in range(max_d + 1):
            for g in range(d + 1):
                for f in range(g, d + 1):
                    gbs = [build_interval_gadget(g, f, d)]
                    if (f - g) % 2 == 0:
                        gbs.append(build_parity_gadget(g, f, d))
                    for gb in gbs:
                        res.cases += 1
                        fam = feasible_family(gb)
                        if not (fam.is_symmetric() and is_delta_matroid(fam)):
                            res.fail((gb.kind, g, f, d), "family")
                            continue
                        try:
                            for a in fam.members:
                                for b in fam.members:
                                    partition_witness(gb, a, b)
                        except FactorumError as exc:
                            res.fail((gb.kind, g, f, d), repr(exc))
    return res


def check_obstruction(max_arity: int = 10) -> CheckResult:
    res = CheckResult("obstruction")
    with _timed(res):
        for n in range(max_arity + 1):
            for p in range(0, 4):
                for vals in ((p, p + 1, p + 3), (p, p + 2, p + 3)):
                    if vals[-1] > n:
                        continue
                    res.cases += 1
                    if obstruction_check(DegreeConstraint.of(vals, n)) is not Obstruction.NOT_REALIZABLE:
                        res.fail((vals, n), "type set not flagged")
            for g in range(n + 1):
                for f in range(g, n + 1):
                    res.cases += 1
                    if obstruction_check(DegreeConstraint.interval(g, f, n)) is not Obstruction.REALIZABLE_CONSISTENT:
                        res.fail((g, f, n), "interval flagged")
                    if (f - g) % 2 == 0:
                        res.cases += 1
                        if obstruction_check(DegreeConstraint.parity(g, f, n)) is not Obstruction.REALIZABLE_CONSISTENT:
                            res.fail((g, f, n), "parity flagged")
    return res


SUITES = {
    "solver": lambda seed, cases: [
        check_trap_solve(),
        check_oracle_equivalence(seed, cases),
        check_counting_bounds(seed, cases),
        check_matching_backend(seed, cases),
        check_blossom(seed, cases),
        check_optimality_sweep(seed, max(1, cases // 5)),
    ],
    "structural": lambda seed, cases: [
        check_trap_control(),
        check_normalization(seed, cases),
        check_positive_basic(seed, cases),
        check_random_key_positive(seed, cases),
        check_even_at_u(seed, cases),
    ],
    "gadgets": lambda seed, cases: [
        check_gadget_realizability(),
        check_gadget_families(),
        check_obstruction(),
    ],
}


def run_suite(name: str, seed: int = 0, cases: int = 200) -> list[CheckResult]:
    if name == "all":
        out = []
        for k in SUITES:
            out += SUITES[k](seed, cases)
        return out
    return SUITES[name](seed, cases)

"""Degree constraints: feasible-degree sets with an arity.

A constraint is stored as a bit mask over ``0..arity``.  The families the
solver understands are intervals ``{g..f}``, parity intervals
``{g, g+2, .., f}``, type-1 sets ``{p, p+1, p+3}`` and type-2 sets
``{p, p+2, p+3}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .errors import UsageError

MAX_ARITY = 64


@dataclass(frozen=True)
class DegreeConstraint:
    arity: int
    mask: int

    def __post_init__(self):
        if not (0 <= self.arity <= MAX_ARITY):
            raise UsageError(f"arity {self.arity} outside 0..{MAX_ARITY}")
        if self.mask <= 0:
            raise UsageError("a degree constraint needs at least one feasible degree")
        if self.mask >> (self.arity + 1):
            raise UsageError(f"feasible degree exceeds arity {self.arity}")

    @classmethod
    def of(cls, values: Iterable[int], arity: int) -> "DegreeConstraint":
        mask = 0
        for v in values:
            if v < 0:
                raise UsageError("degrees are nonnegative")
            if v > arity:
                raise UsageError(f"feasible degree {v} exceeds arity {arity}")
            mask |= 1 << v
        return cls(arity, mask)

    @classmethod
    def interval(cls, g: int, f: int, arity: int) -> "DegreeConstraint":
        if not 0 <= g <= f:
            raise UsageError(f"bad interval bounds {g}..{f}")
        return cls.of(range(g, f + 1), arity)

    @classmethod
    def parity(cls, g: int, f: int, arity: int) -> "DegreeConstraint":
        if not 0 <= g <= f or (f - g) % 2:
            raise UsageError(f"bad parity interval bounds {g}..{f}")
        return cls.of(range(g, f + 1, 2), arity)

    @property
    def feasible(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.arity + 1) if self.mask >> i & 1)

    def __contains__(self, k) -> bool:
        return 0 <= k <= self.arity and bool(self.mask >> k & 1)

    def __iter__(self):
        return iter(self.feasible)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    @property
    def lo(self) -> int:
        return (self.mask & -self.mask).bit_length() - 1

    @property
    def hi(self) -> int:
        return self.mask.bit_length() - 1

    def feasible_in_range(self, lo: int, hi: int) -> bool:
        """Whether some feasible degree lies in ``lo..hi``."""
        if hi < lo:
            return False
        return bool((self.mask >> lo) & ((1 << (hi - lo + 1)) - 1))

    def with_arity(self, arity: int) -> "DegreeConstraint":
        return DegreeConstraint(arity, self.mask)

    def classify(self) -> "ConstraintClass":
        return classify(self)

    def __str__(self) -> str:
        return format_constraint(self)


@dataclass(frozen=True)
class ConstraintClass:
    is_interval: bool
    is_parity_interval: bool
    is_type1: bool
    is_type2: bool
    max_gap: int

    @property
    def in_g(self) -> bool:
        return self.is_interval or self.is_parity_interval

    @property
    def in_t(self) -> bool:
        return self.is_type1 or self.is_type2

    @property
    def admissible(self) -> bool:
        """Whether the polynomial solver accepts the constraint."""
        return self.in_g or self.in_t


def gaps(d: DegreeConstraint) -> list[int]:
    """Lengths of the runs of missing values strictly inside ``d``."""
    vals = d.feasible
    return [b - a - 1 for a, b in zip(vals, vals[1:]) if b - a > 1]


def classify(d: DegreeConstraint) -> ConstraintClass:
    vals = d.feasible
    steps = {b - a for a, b in zip(vals, vals[1:])}
    p = vals[0]
    return ConstraintClass(
        is_interval=steps <= {1},
        is_parity_interval=steps <= {2},
        is_type1=vals == (p, p + 1, p + 3),
        is_type2=vals == (p, p + 2, p + 3),
        max_gap=max(gaps(d), default=0),
    )


def split(d: DegreeConstraint) -> tuple[DegreeConstraint, DegreeConstraint]:
    """The parity split ``(d0, d1)`` of a type-1 or type-2 constraint."""
    c = classify(d)
    p = d.lo
    if c.is_type1:
        return DegreeConstraint.of((p + 1, p + 3), d.arity), DegreeConstraint.of((p,), d.arity)
    if c.is_type2:
        return DegreeConstraint.of((p, p + 2), d.arity), DegreeConstraint.of((p + 3,), d.arity)
    raise UsageError(f"{format_constraint(d)} is neither type-1 nor type-2")


def max_parity_subset(d: DegreeConstraint, deg: int) -> DegreeConstraint:
    """The half of ``split(d)`` that contains ``deg``."""
    if deg not in d:
        raise UsageError(f"degree {deg} is not feasible for {format_constraint(d)}")
    d0, d1 = split(d)
    return d0 if deg in d0 else d1


def complement_within(d: DegreeConstraint, df: DegreeConstraint) -> DegreeConstraint:
    if df.mask & ~d.mask:
        raise UsageError("subset is not contained in the constraint")
    if df not in split(d):
        raise UsageError("subset is not one half of the parity split")
    return DegreeConstraint(d.arity, d.mask & ~df.mask)


def parse_constraint(text: str, arity: int) -> DegreeConstraint:
    """Parse ``interval g f``, ``parity g f`` or ``set a,b,c``."""
    parts = text.split(None, 1)
    if not parts:
        raise UsageError("empty constraint")
    kind = parts[0]
    rest = parts[1] if len(parts) > 1 else ""
    try:
        if kind in ("interval", "parity"):
            nums = [int(x) for x in rest.split()]
            if len(nums) != 2:
                raise UsageError(f"{kind} takes two bounds")
            g, f = nums
            if kind == "interval":
                return DegreeConstraint.interval(g, f, arity)
            return DegreeConstraint.parity(g, f, arity)
        if kind == "set":
            vals = [int(x) for x in rest.replace(" ", "").split(",") if x != ""]
            if not vals:
                raise UsageError("set needs at least one value")
            if len(set(vals)) != len(vals):
                raise UsageError("repeated value in set")
            return DegreeConstraint.of(vals, arity)
    except ValueError as exc:
        if isinstance(exc, UsageError):
            raise
        raise UsageError(f"bad number in constraint: {text!r}") from None
    raise UsageError(f"unknown constraint kind {kind!r}")


def format_constraint(d: DegreeConstraint) -> str:
    """Canonical text form; intervals win over parity for singletons."""
    c = classify(d)
    if c.is_interval:
        return f"interval {d.lo} {d.hi}"
    if c.is_parity_interval:
        return f"parity {d.lo} {d.hi}"
    return "set " + ",".join(map(str, d.feasible))

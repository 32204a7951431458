"""
Oscillating digit sets S({k_n}, a1, a2).

The set is a union of blocks.  Block n (n >= 1) lives in (k_{n-1}, k_n] and
holds the points k_{n-1} + floor(m / a) for m = 1 .. M_n - 1 together with
k_n itself, where a = a1 for odd n and a = a2 for even n, and
M_n = ceil(a * (k_n - k_{n-1})).  Nothing below k_0 belongs to the set.

Everything here is exact: parameters are Fractions and every floor is an
integer division, so membership never depends on rounding.
"""
from __future__ import annotations

import bisect
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .errors import (
    CapExceeded,
    DepthExceeded,
    GapConditionViolated,
    NonIncreasingSchedule,
    ParameterOutOfRange,
)

ENUMERATION_CAP = 10**6
BLOCK_CAP = 10**6


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and 'p/q' strings; floats are refused."""
    if isinstance(value, float):
        raise TypeError("parameters must be exact rationals, not floats")
    return Fraction(value)


def ceil_div(num: int, den: int) -> int:
    return -((-num) // den)


def floor_over(m: int, a: Fraction) -> int:
    """floor(m / a) for a = p/q, computed as m*q // p."""
    return m * a.denominator // a.numerator


@dataclass(frozen=True)
class Schedule:
    """Checkpoint sequence k_0 < k_1 < ...

    ``recurrence`` means k_{n+1} = (n + 2) * k_n, an infinite family whose
    ratios k_n / k_{n+1} = 1/(n+2) tend to 0.  ``explicit`` is a finite list
    and only certifies that ratio condition up to its own length.
    """

    kind: str
    k0: int
    values: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("recurrence", "explicit"):
            raise ValueError(f"unknown schedule kind {self.kind!r}")
        if self.kind == "explicit":
            if not self.values:
                raise NonIncreasingSchedule("explicit schedule is empty")
            if self.values[0] != self.k0:
                raise ValueError("k0 must equal the first explicit value")
        if self.k0 < 1:
            raise NonIncreasingSchedule(f"k0 must be >= 1, got {self.k0}")

    @classmethod
    def recurrence(cls, k0: int) -> "Schedule":
        return cls("recurrence", int(k0))

    @classmethod
    def explicit(cls, values: Sequence[int]) -> "Schedule":
        values = tuple(int(v) for v in values)
        if not values:
            raise NonIncreasingSchedule("explicit schedule is empty")
        for n in range(len(values) - 1):
            if values[n + 1] <= values[n]:
                raise NonIncreasingSchedule(
                    f"schedule not strictly increasing at n={n}: "
                    f"{values[n]} -> {values[n + 1]}"
                )
        return cls("explicit", values[0], values)

    @property
    def finite_horizon(self) -> bool:
        return self.kind == "explicit"

    @property
    def max_depth(self) -> Optional[int]:
        return len(self.values) - 1 if self.kind == "explicit" else None

    def prefix(self, depth: int) -> Tuple[int, ...]:
        """Return (k_0, ..., k_depth)."""
        if depth < 0:
            raise ValueError("depth must be non-negative")
        if self.kind == "explicit":
            if depth > self.max_depth:
                raise DepthExceeded(
                    f"explicit schedule has only {len(self.values)} entries; "
                    f"depth {depth} requested"
                )
            return self.values[: depth + 1]
        ks = [self.k0]
        for n in range(depth):
            ks.append((n + 2) * ks[-1])
        return tuple(ks)

    def depth_reaching(self, k: int) -> int:
        """Smallest depth whose last checkpoint is >= k."""
        if self.kind == "explicit":
            i = bisect.bisect_left(self.values, k)
            if i == len(self.values):
                raise DepthExceeded(f"k={k} lies beyond the explicit schedule")
            return max(i, 1)
        depth, kn = 0, self.k0
        while kn < k or depth < 1:
            depth += 1
            kn *= depth + 1
        return depth


def default_k0(*params) -> int:
    """Smallest admissible start for the recurrence schedule.

    The first gap of the recurrence equals k_0 and later gaps only grow, so
    the gap condition holds for every n once k_0 * min(params) > 1.
    """
    a_min = min(as_fraction(p) for p in params)
    return max(5, a_min.denominator // a_min.numerator + 1)


def default_schedule(*params) -> Schedule:
    return Schedule.recurrence(default_k0(*params))


@dataclass(frozen=True)
class DigitSetSpec:
    schedule: Schedule
    a1: Fraction
    a2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "a1", as_fraction(self.a1))
        object.__setattr__(self, "a2", as_fraction(self.a2))

    @classmethod
    def with_default_schedule(cls, a1, a2, *companions) -> "DigitSetSpec":
        return cls(default_schedule(a1, a2, *companions), a1, a2)

    def param(self, n: int) -> Fraction:
        """Density parameter governing block n (a1 on odd n, a2 on even n)."""
        return self.a1 if n % 2 == 1 else self.a2


@dataclass(frozen=True)
class BlockTable:
    """Per-block cardinalities M_n and cumulative counts C_n.

    Index 0 is a placeholder (no block below k_0), so ``sizes[n]`` is M_n and
    ``cumulative[n]`` is C_n = M_1 + ... + M_n.
    """

    depth: int
    ks: Tuple[int, ...]
    sizes: Tuple[int, ...]
    cumulative: Tuple[int, ...]


@dataclass(frozen=True)
class ValidatedSpec:
    spec: DigitSetSpec
    depth: int
    table: BlockTable = field(repr=False)

    @property
    def ks(self) -> Tuple[int, ...]:
        return self.table.ks

    @property
    def a1(self) -> Fraction:
        return self.spec.a1

    @property
    def a2(self) -> Fraction:
        return self.spec.a2

    @property
    def horizon(self) -> int:
        """Largest position whose membership is decided, k_depth."""
        return self.table.ks[-1]

    @property
    def finite_horizon(self) -> bool:
        return self.spec.schedule.finite_horizon

    def param(self, n: int) -> Fraction:
        return self.spec.param(n)

    def block_size(self, n: int) -> int:
        return self.table.sizes[n]

    def cumulative(self, n: int) -> int:
        return self.table.cumulative[n]


def validate_spec(spec: DigitSetSpec, depth: int) -> ValidatedSpec:
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    for name, a in (("a1", spec.a1), ("a2", spec.a2)):
        if not 0 < a < 1:
            raise ParameterOutOfRange(f"{name}={a} is not in (0, 1)")
    ks = spec.schedule.prefix(depth)
    for n in range(depth):
        if ks[n + 1] <= ks[n]:
            raise NonIncreasingSchedule(f"k_{n + 1}={ks[n + 1]} <= k_{n}={ks[n]}")
    a_min = min(spec.a1, spec.a2)
    for n in range(depth):
        gap = ks[n + 1] - ks[n]
        if gap * a_min <= 1:
            raise GapConditionViolated(n, gap, a_min)

    sizes = [0]
    cumulative = [0]
    for n in range(1, depth + 1):
        a = spec.param(n)
        gap = ks[n] - ks[n - 1]
        size = ceil_div(a.numerator * gap, a.denominator)
        # floor((M-1)/a) < gap keeps the last regular point below k_n
        assert floor_over(size - 1, a) < gap <= floor_over(size, a)
        sizes.append(size)
        cumulative.append(cumulative[-1] + size)
    table = BlockTable(depth, ks, tuple(sizes), tuple(cumulative))
    return ValidatedSpec(spec, depth, table)


def _check_position(vspec: ValidatedSpec, k: int) -> None:
    if k > vspec.horizon:
        raise DepthExceeded(
            f"k={k} is beyond k_{vspec.depth}={vspec.horizon}; raise the depth"
        )


def block_of(vspec: ValidatedSpec, k: int) -> int:
    """Index n with k_{n-1} < k <= k_n, or 0 when k <= k_0."""
    _check_position(vspec, k)
    return bisect.bisect_left(vspec.ks, k)


def block_elements(vspec: ValidatedSpec, n: int, cap: int = BLOCK_CAP) -> list:
    if not 1 <= n <= vspec.depth:
        raise DepthExceeded(f"block {n} outside 1..{vspec.depth}")
    size = vspec.block_size(n)
    if size > cap:
        raise CapExceeded(f"block {n} has {size} elements, cap is {cap}")
    a = vspec.param(n)
    start = vspec.ks[n - 1]
    elems = [start + floor_over(m, a) for m in range(1, size)]
    elems.append(vspec.ks[n])
    return elems


def membership(vspec: ValidatedSpec, k: int) -> bool:
    n = block_of(vspec, k)
    if n == 0:
        return False
    if k == vspec.ks[n]:
        return True
    a = vspec.param(n)
    t = k - vspec.ks[n - 1]
    # the only candidate is the smallest m with m / a >= t
    m = ceil_div(t * a.numerator, a.denominator)
    return 1 <= m < vspec.block_size(n) and floor_over(m, a) == t


def _members_up_to(vspec: ValidatedSpec, n: int, t: int) -> int:
    """#{m in [1, M_n - 1] : floor(m / a) <= t}."""
    a = vspec.param(n)
    size = vspec.block_size(n)
    m = min(size - 1, ceil_div(a.numerator * (t + 1), a.denominator) - 1)
    while m > 0 and floor_over(m, a) > t:
        m -= 1
    while m + 1 < size and floor_over(m + 1, a) <= t:
        m += 1
    return m


def count_prefix(vspec: ValidatedSpec, k: int) -> int:
    """#(S n {1..k}) from the block table, without enumerating."""
    if k < 1:
        return 0
    n = block_of(vspec, k)
    if n == 0:
        return 0
    if k == vspec.ks[n]:
        return vspec.cumulative(n)
    return vspec.cumulative(n - 1) + _members_up_to(vspec, n, k - vspec.ks[n - 1])


def enumerate_prefix(vspec: ValidatedSpec, k: int, cap: int = ENUMERATION_CAP) -> list:
    """Brute-force S n {1..k} by testing every integer."""
    if k > cap:
        raise CapExceeded(f"k={k} exceeds enumeration cap {cap}")
    _check_position(vspec, k)
    return [x for x in range(1, k + 1) if membership(vspec, x)]

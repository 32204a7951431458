"""
Exact density sequences d_k(S) = #(S n {1..k}) / k and their bounds.

Three kinds of bound live here:

* checkpoint brackets for d_{k_n}, which converge to the block parameter;
* envelopes sandwiching d_k between checkpoints, for a single set and for
  the sum d_k(S) + d_k(T) of two sets on one schedule;
* extremal (liminf / limsup) estimates taken over a window of checkpoints,
  each carrying a certified error bound.
"""
from __future__ import annotations

import bisect
import functools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .digit_sets import ValidatedSpec, ceil_div, count_prefix, floor_over
from .errors import DepthExceeded, OutOfEnvelopeRange, ScheduleMismatch


@dataclass(frozen=True)
class DensityEntry:
    k: int
    count: int
    density: Fraction


@dataclass(frozen=True)
class DensityProfile:
    spec: ValidatedSpec
    entries: Tuple[DensityEntry, ...]


@dataclass(frozen=True)
class Checkpoint:
    n: int
    k: int
    density: Fraction
    target: Fraction
    bound: Fraction

    @property
    def lower(self) -> Fraction:
        return self.target - self.bound

    @property
    def upper(self) -> Fraction:
        return self.target + self.bound


@dataclass(frozen=True)
class EnvelopePoint:
    k: int
    case: int
    j: int
    m: int
    lower: Fraction
    upper: Fraction


@dataclass(frozen=True)
class DensityLimitsReport:
    lower: Fraction
    upper: Fraction
    target_lower: Fraction
    target_upper: Fraction
    checkpoints: Tuple[Checkpoint, ...]
    certified_bound: Fraction
    n_burn: int
    n_max: int

    def lower_error(self) -> Fraction:
        return abs(self.lower - self.target_lower)

    def upper_error(self) -> Fraction:
        return abs(self.upper - self.target_upper)

    def certified(self) -> bool:
        """Both estimates sit within the certified bound of their targets."""
        return max(self.lower_error(), self.upper_error()) <= self.certified_bound


def density(vspec: ValidatedSpec, k: int) -> Fraction:
    if k < 1:
        raise ValueError("density is defined for k >= 1")
    return Fraction(count_prefix(vspec, k), k)


def density_profile(vspec: ValidatedSpec, ks) -> DensityProfile:
    entries = []
    for k in sorted(set(ks)):
        c = count_prefix(vspec, k)
        entries.append(DensityEntry(k, c, Fraction(c, k)))
    return DensityProfile(vspec, tuple(entries))


def _check_n_max(vspec: ValidatedSpec, n_max: int) -> None:
    if n_max > vspec.depth:
        raise DepthExceeded(f"n_max={n_max} exceeds generated depth {vspec.depth}")


def checkpoint_bracket(vspec: ValidatedSpec, n: int) -> Tuple[Fraction, Fraction]:
    """[a(1 - r), a + (1 - a) r + 1/k_n] with r = k_{n-1}/k_n."""
    a = vspec.param(n)
    kn = vspec.ks[n]
    r = Fraction(vspec.ks[n - 1], kn)
    return a * (1 - r), a + (1 - a) * r + Fraction(1, kn)


def checkpoint_densities(vspec: ValidatedSpec, n_max: int) -> List[Checkpoint]:
    _check_n_max(vspec, n_max)
    rows = []
    for n in range(1, n_max + 1):
        a = vspec.param(n)
        kn = vspec.ks[n]
        lo, hi = checkpoint_bracket(vspec, n)
        rows.append(
            Checkpoint(n, kn, Fraction(vspec.cumulative(n), kn), a, max(a - lo, hi - a))
        )
    return rows


def _offset(vspec: ValidatedSpec, n: int, k: int) -> int:
    """Largest m in [0, M_n - 1] with k_{n-1} + floor(m / a) <= k."""
    a = vspec.param(n)
    t = k - vspec.ks[n - 1]
    m = min(vspec.block_size(n) - 1, ceil_div(a.numerator * (t + 1), a.denominator) - 1)
    assert floor_over(m, a) <= t
    assert m == vspec.block_size(n) - 1 or t < floor_over(m + 1, a)
    return m


def _locate(vspec: ValidatedSpec, k: int) -> int:
    """Block n with k_{n-1} <= k < k_n; checkpoints open the next block."""
    ks = vspec.ks
    if len(ks) < 4 or k < ks[2]:
        raise OutOfEnvelopeRange(f"k={k} is below k_2; the envelopes need j >= 1")
    if k >= ks[-1]:
        raise OutOfEnvelopeRange(f"k={k} is not below k_{vspec.depth}={ks[-1]}")
    return bisect.bisect_right(ks, k)


def _case(n: int) -> Tuple[int, int]:
    """(case, j) for block n: n = 2j + 1 is Case 1, n = 2j + 2 is Case 2."""
    return (1, (n - 1) // 2) if n % 2 == 1 else (2, (n - 2) // 2)


def single_envelope(vspec: ValidatedSpec, n: int, m: int) -> Tuple[Fraction, Fraction]:
    """Lower/upper envelope for k inside block n at offset m.

    Odd n gives f_j, g_j (current parameter a1, previous a2); even n gives
    the tilde pair with the roles of a1 and a2 exchanged.
    """
    cur = vspec.param(n)
    prev = vspec.param(n - 1)
    k_prev2, k_prev = vspec.ks[n - 2], vspec.ks[n - 1]
    spread = k_prev - k_prev2
    # denominators cleared: one Fraction per bound keeps long sweeps cheap
    p, q = cur.numerator, cur.denominator
    pp, qp = prev.numerator, prev.denominator
    lower = Fraction(p * (pp * spread + qp * m), qp * (p * k_prev + q * (1 + m)))
    upper = Fraction(
        p * (qp * (k_prev2 + 1 + m) + pp * spread), qp * (p * k_prev - p + q * m)
    )
    return lower, upper


def pair_envelope(
    vs: ValidatedSpec, vt: ValidatedSpec, n: int, m: int
) -> Tuple[Fraction, Fraction]:
    """F_j, G_j (odd n) or their tilde versions (even n) at S-offset m.

    In the even case the denominator of the upper envelope carries the
    current parameter of S, matching the single-set bound it is built from.
    """
    (lo0, lo1, lo_den0, hi0, hi1, hi_den0, den1) = _pair_coefficients(
        vs.param(n), vs.param(n - 1), vt.param(n), vt.param(n - 1), vs.ks[n - 2], vs.ks[n - 1]
    )
    lower = Fraction(lo0 + lo1 * m, lo_den0 + den1 * m)
    upper = Fraction(hi0 + hi1 * m, hi_den0 + den1 * m)
    return lower, upper


@functools.lru_cache(maxsize=256)
def _pair_coefficients(a, a_prev, b, b_prev, k_prev2, k_prev):
    """Integer (c0, c1, d0) with bound = (c0 + c1 m) / (d0 + den1 m), per block.

    The factor a + b in front cancels the 1/(a + b) inside each bracket.
    """
    spread = k_prev - k_prev2
    carried = a * (a_prev + b_prev) * spread
    ab = a * b
    s = a + b
    lo_num = carried - a - ab
    hi_num = 2 * a * k_prev2 + carried + b + ab + 2 * a
    lo_den = a * k_prev + 1
    hi_den = a * k_prev - a
    scale = math.lcm(*(x.denominator for x in (lo_num, hi_num, lo_den, hi_den, s)))
    ints = [int(x * scale) for x in (lo_num, s, lo_den, hi_num, s, hi_den)]
    return (*ints, scale)


def envelope_bounds(vspec: ValidatedSpec, k: int) -> EnvelopePoint:
    n = _locate(vspec, k)
    m = _offset(vspec, n, k)
    lower, upper = single_envelope(vspec, n, m)
    case, j = _case(n)
    return EnvelopePoint(k, case, j, m, lower, upper)


def same_schedule(specs: Sequence[ValidatedSpec], n_max: Optional[int] = None) -> None:
    first = specs[0]
    for other in specs[1:]:
        depth = min(first.depth, other.depth) if n_max is None else n_max
        if first.ks[: depth + 1] != other.ks[: depth + 1]:
            raise ScheduleMismatch("factors do not share one checkpoint schedule")


def pair_envelope_bounds(vs: ValidatedSpec, vt: ValidatedSpec, k: int) -> EnvelopePoint:
    same_schedule([vs, vt])
    ref = vs if vs.depth <= vt.depth else vt
    n = _locate(ref, k)
    m = _offset(vs, n, k)
    lower, upper = pair_envelope(vs, vt, n, m)
    case, j = _case(n)
    return EnvelopePoint(k, case, j, m, lower, upper)


def _sum_bracket(specs: Sequence[ValidatedSpec], n: int) -> Tuple[Fraction, Fraction]:
    """Certified bracket for sum_i d_{k_n}(S_i).

    Beyond the first block the count splits as C_{n-2} + M_{n-1} + M_n with
    0 <= C_{n-2} <= k_{n-2}; that is never looser than the one-step bracket
    and tightens it from O(r) to O(|a - a'| r + k_{n-2}/k_n).
    """
    lo = hi = Fraction(0)
    ks = specs[0].ks
    kn = ks[n]
    r = Fraction(ks[n - 1], kn)
    s = Fraction(ks[n - 2], kn) if n >= 2 else Fraction(0)
    for v in specs:
        one_lo, one_hi = checkpoint_bracket(v, n)
        a = v.param(n)
        if n >= 2:
            a_prev = v.param(n - 1)
            two_lo = a * (1 - r) + a_prev * (r - s)
            two_hi = two_lo + s + Fraction(2, kn)
        else:
            two_lo, two_hi = a * (1 - r), a * (1 - r) + Fraction(1, kn)
        lo += max(one_lo, two_lo)
        hi += min(one_hi, two_hi)
    return lo, hi


def extremal_density_estimates(
    specs: Union[ValidatedSpec, Sequence[ValidatedSpec]],
    n_max: int,
    n_burn: Optional[int] = None,
) -> DensityLimitsReport:
    """Liminf/limsup estimates of sum_i d_k(S_i) over checkpoints n_burn..n_max.

    A single spec is treated as a one-element sum.  The certified bound is the
    largest bracket half-width in the window; since the window holds
    checkpoints of both parities, each estimate is within that bound of its
    target.
    """
    if isinstance(specs, ValidatedSpec):
        specs = [specs]
    specs = list(specs)
    if n_burn is None:
        n_burn = max(1, n_max // 2)
    if n_max < 2 or not 1 <= n_burn < n_max:
        raise DepthExceeded(
            f"need 1 <= n_burn < n_max with n_max >= 2, got n_burn={n_burn}, n_max={n_max}"
        )
    for v in specs:
        _check_n_max(v, n_max)
    same_schedule(specs, n_max)

    ks = specs[0].ks
    rows = []
    for n in range(n_burn, n_max + 1):
        kn = ks[n]
        value = Fraction(sum(v.cumulative(n) for v in specs), kn)
        target = sum((v.param(n) for v in specs), Fraction(0))
        lo, hi = _sum_bracket(specs, n)
        assert lo <= value <= hi
        rows.append(Checkpoint(n, kn, value, target, max(target - lo, hi - target)))

    odd = sum((v.a1 for v in specs), Fraction(0))
    even = sum((v.a2 for v in specs), Fraction(0))
    return DensityLimitsReport(
        lower=min(r.density for r in rows),
        upper=max(r.density for r in rows),
        target_lower=min(odd, even),
        target_upper=max(odd, even),
        checkpoints=tuple(rows),
        certified_bound=max(r.bound for r in rows),
        n_burn=n_burn,
        n_max=n_max,
    )

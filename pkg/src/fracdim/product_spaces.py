"""
Dyadic covering counts and dimension reports for products of E_S sets.

A k-level dyadic cube meets the product of E_{S_1}, ..., E_{S_d} exactly
when each coordinate's first k binary digits avoid positions outside S_i,
so the number of such cubes is 2^{E_k} with E_k = sum_i #(S_i n {1..k}).
Only the exponent is ever stored.
"""
from __future__ import annotations

import decimal
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Tuple

from .density_analysis import Checkpoint, extremal_density_estimates, same_schedule
from .digit_sets import ValidatedSpec, count_prefix
from .errors import DepthExceeded


@dataclass(frozen=True)
class ProductSpec:
    factors: Tuple[ValidatedSpec, ...]

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if not self.factors:
            raise ValueError("a product needs at least one factor")

    @classmethod
    def of(cls, *factors: ValidatedSpec) -> "ProductSpec":
        return cls(factors)

    @property
    def dimension(self) -> int:
        return len(self.factors)

    @property
    def horizon(self) -> int:
        return min(f.horizon for f in self.factors)

    @property
    def depth(self) -> int:
        return min(f.depth for f in self.factors)

    def permuted(self, order: Sequence[int]) -> "ProductSpec":
        return ProductSpec(tuple(self.factors[i] for i in order))


@dataclass(frozen=True)
class CoveringEntry:
    k: int
    exponent: int
    quotient: Fraction


@dataclass(frozen=True)
class DimensionReport:
    """Checkpoint estimates of the lower and upper dimensions of a product.

    ``lower`` estimates dim_H = lower box dimension and ``upper`` estimates
    dim_P = upper box dimension.  ``metric_correction`` is log2(sqrt(d)), the
    shift from cube side to cube diameter; it vanishes against k and is kept
    out of the estimates.
    """

    dimension: int
    lower: Fraction
    upper: Fraction
    target_lower: Fraction
    target_upper: Fraction
    certified_bound: Fraction
    checkpoints: Tuple[Checkpoint, ...]
    metric_correction: float

    def lower_error(self) -> Fraction:
        return abs(self.lower - self.target_lower)

    def upper_error(self) -> Fraction:
        return abs(self.upper - self.target_upper)


@dataclass(frozen=True)
class LocalDimension:
    exponent: int
    k: int
    dimension: int
    exact: Optional[Fraction]
    value: decimal.Decimal

    def render(self, digits: int = 12) -> str:
        return f"{float(self.value):.{digits}g}"


def covering_exponent(prod: ProductSpec, k: int) -> int:
    if k > prod.horizon:
        raise DepthExceeded(f"k={k} beyond the product horizon {prod.horizon}")
    return sum(count_prefix(f, k) for f in prod.factors)


def covering_profile(prod: ProductSpec, ks) -> Tuple[CoveringEntry, ...]:
    rows = []
    for k in sorted(set(ks)):
        e = covering_exponent(prod, k)
        rows.append(CoveringEntry(k, e, Fraction(e, k)))
    return tuple(rows)


def power_product(prod: ProductSpec, d: int) -> ProductSpec:
    """The d-fold product (prod)^d, factors repeated in order."""
    if d < 1:
        raise ValueError(f"power must be >= 1, got {d}")
    return ProductSpec(prod.factors * d)


def dimension_report(
    prod: ProductSpec, n_max: int, n_burn: Optional[int] = None
) -> DimensionReport:
    same_schedule(prod.factors, min(n_max, prod.depth))
    rep = extremal_density_estimates(prod.factors, n_max, n_burn)
    d = prod.dimension
    return DimensionReport(
        dimension=d,
        lower=rep.lower,
        upper=rep.upper,
        target_lower=rep.target_lower,
        target_upper=rep.target_upper,
        certified_bound=rep.certified_bound,
        checkpoints=rep.checkpoints,
        metric_correction=math.log2(d) / 2,
    )


def billingsley_local_dimension(prod: ProductSpec, k: int) -> LocalDimension:
    """log mu(I_k) / log |I_k| for a k-level cube meeting the product.

    mu(I_k) = 2^{-E_k} and |I_k| = sqrt(d) 2^{-k}, so the quotient is
    E_k / (k - log2(d)/2).  It is an exact rational whenever d is a power
    of two; otherwise only the decimal value is returned.
    """
    e = covering_exponent(prod, k)
    d = prod.dimension
    if e == 0:
        return LocalDimension(0, k, d, Fraction(0), decimal.Decimal(0))
    with decimal.localcontext() as ctx:
        ctx.prec = 60
        half_log = decimal.Decimal(d).ln() / decimal.Decimal(2).ln() / 2
        if k <= half_log:
            raise ValueError(f"cube diameter >= 1 at k={k}, d={d}; quotient undefined")
        value = decimal.Decimal(e) / (decimal.Decimal(k) - half_log)
    exact = None
    if d & (d - 1) == 0:
        power = d.bit_length() - 1
        exact = Fraction(2 * e, 2 * k - power)
    return LocalDimension(e, k, d, exact, value)

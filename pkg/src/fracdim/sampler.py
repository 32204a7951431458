"""
Finite point clouds of products of E_S sets, and empirical dyadic box counts.

Points are truncated at binary level K and stored as integer numerators
over 2^K.  The k-level cube holding a coordinate p is p >> (K - k), so cube
keys are exact digit prefixes and never touch floating point.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .digit_sets import enumerate_prefix
from .errors import CapExceeded, DepthExceeded, LevelExceedsTruncation
from .product_spaces import ProductSpec, covering_exponent

DEFAULT_CAP = 2**20


@dataclass(frozen=True)
class PointCloud:
    level: int
    dimension: int
    points: Tuple[Tuple[int, ...], ...]
    mode: str  # "full" or "sample"
    seed: Optional[int] = None

    def __len__(self):
        return len(self.points)

    def as_fractions(self) -> List[Tuple[Fraction, ...]]:
        den = 1 << self.level
        return [tuple(Fraction(p, den) for p in pt) for pt in self.points]

    def render(self, point) -> List[str]:
        return [f"{p}/2^{self.level}" for p in point]


def digit_positions(prod: ProductSpec, level: int) -> List[List[int]]:
    """Allowed binary digit positions 1..level for each factor."""
    if level > prod.horizon:
        raise DepthExceeded(f"truncation level {level} beyond horizon {prod.horizon}")
    return [enumerate_prefix(f, level) for f in prod.factors]


def _coordinate_values(positions, level) -> List[int]:
    weights = [1 << (level - i) for i in positions]
    values = [0]
    for w in weights:
        values = values + [v + w for v in values]
    return sorted(values)


def enumerate_points(prod: ProductSpec, level: int, cap: int = DEFAULT_CAP) -> PointCloud:
    positions = digit_positions(prod, level)
    total_bits = sum(len(p) for p in positions)
    if total_bits >= 64 or (1 << total_bits) > cap:
        raise CapExceeded(
            f"full enumeration needs 2^{total_bits} points (cap {cap}); use sample_points"
        )
    axes = [_coordinate_values(p, level) for p in positions]
    points = tuple(itertools.product(*axes))
    return PointCloud(level, prod.dimension, points, "full")


def sample_points(prod: ProductSpec, level: int, count: int, seed: int) -> PointCloud:
    """Points with independent fair digits on allowed positions."""
    if count < 1:
        raise ValueError("count must be >= 1")
    positions = digit_positions(prod, level)
    weights = [[1 << (level - i) for i in p] for p in positions]
    rng = random.Random(seed)
    points = []
    for _ in range(count):
        pt = []
        for ws in weights:
            bits = rng.getrandbits(len(ws)) if ws else 0
            pt.append(sum(w for b, w in enumerate(ws) if bits >> b & 1))
        points.append(tuple(pt))
    return PointCloud(level, prod.dimension, tuple(points), "sample", seed)


def cube_key(point, level: int, k: int) -> Tuple[int, ...]:
    shift = level - k
    return tuple(p >> shift for p in point)


def empirical_box_count(cloud: PointCloud, k: int) -> int:
    if not 0 <= k <= cloud.level:
        raise LevelExceedsTruncation(f"level {k} outside 0..{cloud.level}")
    return len({cube_key(pt, cloud.level, k) for pt in cloud.points})


def restrict(cloud: PointCloud, k0: int, key: Tuple[int, ...]) -> PointCloud:
    """Points of the cloud lying in the k0-level cube with the given key."""
    if not 0 <= k0 <= cloud.level:
        raise LevelExceedsTruncation(f"level {k0} outside 0..{cloud.level}")
    kept = tuple(pt for pt in cloud.points if cube_key(pt, cloud.level, k0) == key)
    return PointCloud(cloud.level, cloud.dimension, kept, cloud.mode, cloud.seed)


@dataclass(frozen=True)
class CrosscheckRow:
    k: int
    empirical: int
    analytic_exponent: int
    match: bool


@dataclass(frozen=True)
class CrosscheckReport:
    level: int
    mode: str
    rows: Tuple[CrosscheckRow, ...]

    @property
    def mismatches(self) -> List[CrosscheckRow]:
        return [r for r in self.rows if not r.match]

    @property
    def ok(self) -> bool:
        return not self.mismatches


def crosscheck(
    prod: ProductSpec,
    level: int,
    cap: int = DEFAULT_CAP,
    cloud: Optional[PointCloud] = None,
) -> CrosscheckReport:
    """Compare empirical cube counts with 2^{covering_exponent} at k = 1..level.

    Full clouds must match exactly; a sampled cloud can only miss cubes, so
    it is checked with <= instead.
    """
    if cloud is None:
        cloud = enumerate_points(prod, level, cap)
    rows = []
    for k in range(1, level + 1):
        emp = empirical_box_count(cloud, k)
        e = covering_exponent(prod, k)
        ok = emp == 1 << e if cloud.mode == "full" else emp <= 1 << e
        rows.append(CrosscheckRow(k, emp, e, ok))
    return CrosscheckReport(level, cloud.mode, tuple(rows))

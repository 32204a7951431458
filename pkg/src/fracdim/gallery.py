"""
Parameter constructions for the product-dimension theorems, with checks.

Each theorem instance is solved into a dimension d and two digit-set
parameter pairs.  E is the d-fold power of E_S and F the d-fold power of
E_T.  The instance is then verified twice: symbolically, through the
closed forms min/max of the parameters (and of their pairwise sums for
E x F) scaled by d, and numerically, through checkpoint dimension reports
on the actual product sets.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .digit_sets import DigitSetSpec, as_fraction, default_schedule, validate_spec
from .errors import ConstraintViolated, DegenerateLambda, DepthExceeded
from .product_spaces import (
    DimensionReport,
    ProductSpec,
    covering_exponent,
    dimension_report,
    power_product,
)

Pair = Tuple[Fraction, Fraction]

# which dimension each theorem prescribes: (label, set, "lower" | "upper")
CLAIMS = {
    1: (
        ("dim_H E", "E", "lower", "alpha"),
        ("dim_H F", "F", "lower", "beta"),
        ("dim_P F", "F", "upper", "gamma"),
        ("dim_H (E x F)", "ExF", "lower", "lambda"),
    ),
    2: (
        ("dim_H E", "E", "lower", "alpha"),
        ("dim_P F", "F", "upper", "beta"),
        ("dim_P E", "E", "upper", "gamma"),
        ("dim_P (E x F)", "ExF", "upper", "lambda"),
    ),
    3: (
        ("lower box dim E", "E", "lower", "alpha"),
        ("upper box dim F", "F", "upper", "beta"),
        ("upper box dim E", "E", "upper", "gamma"),
        ("upper box dim (E x F)", "ExF", "upper", "lambda"),
    ),
}


@dataclass(frozen=True)
class TheoremInstance:
    which: int
    alpha: Fraction
    beta: Fraction
    gamma: Fraction
    lam: Fraction
    d: int
    s_params: Pair
    t_params: Pair

    def target(self, name: str) -> Fraction:
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "lambda": self.lam}[name]

    def schedule(self):
        return default_schedule(*self.s_params, *self.t_params)


@dataclass(frozen=True)
class SymbolicCheck:
    name: str
    derived: Fraction
    claimed: Fraction

    @property
    def holds(self) -> bool:
        return self.derived == self.claimed


@dataclass(frozen=True)
class NumericCheck:
    name: str
    target: Fraction
    estimate: Fraction
    bound: Fraction
    tolerance: Fraction

    @property
    def error(self) -> Fraction:
        return abs(self.estimate - self.target)

    @property
    def status(self) -> str:
        if self.error > self.bound:
            return "fail"
        if self.bound > self.tolerance:
            return "inconclusive"
        return "pass"


@dataclass
class GalleryReport:
    title: str
    symbolic: List[SymbolicCheck] = field(default_factory=list)
    numeric: List[NumericCheck] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def status(self) -> str:
        if not all(c.holds for c in self.symbolic) or any(
            c.status == "fail" for c in self.numeric
        ):
            return "fail"
        if any(c.status == "inconclusive" for c in self.numeric):
            return "inconclusive at this depth"
        return "pass"

    @property
    def passed(self) -> bool:
        return self.status != "fail"

    def render(self) -> str:
        lines = [self.title, "=" * len(self.title), "", "symbolic (exact):"]
        for c in self.symbolic:
            mark = "ok" if c.holds else "FAILED"
            lines.append(f"  {c.name}: {c.derived} (claimed {c.claimed}) {mark}")
        if self.numeric:
            lines += ["", "numeric (checkpoint estimates, exact values rendered to 12 digits):"]
            for c in self.numeric:
                lines.append(
                    f"  {c.name}: estimate {float(c.estimate):.12g} target {c.target} "
                    f"|err| {float(c.error):.3g} certified bound {float(c.bound):.3g} "
                    f"tol {c.tolerance} -> {c.status}"
                )
        if self.notes:
            lines += [""] + [f"note: {n}" for n in self.notes]
        lines += ["", f"status: {self.status}", ""]
        return "\n".join(lines)


def _positive(**values):
    out = {}
    for name, v in values.items():
        v = as_fraction(v)
        if v <= 0:
            raise ConstraintViolated(f"{name}={v} must be positive")
        out[name] = v
    return out


def solve_theorem(which: int, alpha, beta, gamma, lam) -> TheoremInstance:
    if which not in (1, 2, 3):
        raise ConstraintViolated(f"unknown theorem {which}")
    v = _positive(alpha=alpha, beta=beta, gamma=gamma, lam=lam)
    alpha, beta, gamma, lam = v["alpha"], v["beta"], v["gamma"], v["lam"]

    if which == 1:
        if not beta <= gamma:
            raise ConstraintViolated(f"beta <= gamma fails: {beta} > {gamma}")
        if not alpha + beta <= lam:
            raise ConstraintViolated(f"alpha + beta <= lambda fails: {alpha + beta} > {lam}")
        if not lam <= alpha + gamma:
            raise ConstraintViolated(f"lambda <= alpha + gamma fails: {lam} > {alpha + gamma}")
    else:
        if not alpha <= gamma:
            raise ConstraintViolated(f"alpha <= gamma fails: {alpha} > {gamma}")
        if not alpha + beta <= lam:
            raise ConstraintViolated(f"alpha + beta <= lambda fails: {alpha + beta} > {lam}")
        if not lam <= gamma + beta:
            raise ConstraintViolated(f"lambda <= gamma + beta fails: {lam} > {gamma + beta}")
        if not lam > gamma:
            raise DegenerateLambda(
                f"lambda={lam} <= gamma={gamma}: the second set would need parameter "
                f"(lambda - gamma)/d <= 0, and E x {{y}} inside E x F already forces "
                f"dim_P(E x F) >= dim_P E = gamma"
            )

    d = int(max(alpha, beta, gamma, lam)) + 1
    if which == 1:
        s = ((lam - beta) / d, alpha / d)
        t = (beta / d, gamma / d)
    else:
        s = (alpha / d, gamma / d)
        t = (beta / d, (lam - gamma) / d)
    assert all(0 < x < 1 for x in s + t)
    return TheoremInstance(which, alpha, beta, gamma, lam, d, s, t)


def closed_forms(inst: TheoremInstance) -> Dict[str, Fraction]:
    """Limit dimensions of E = E_S^d, F = E_T^d and E x F from parameters."""
    (a1, a2), (b1, b2) = inst.s_params, inst.t_params
    d = inst.d
    return {
        ("E", "lower"): d * min(a1, a2),
        ("E", "upper"): d * max(a1, a2),
        ("F", "lower"): d * min(b1, b2),
        ("F", "upper"): d * max(b1, b2),
        ("ExF", "lower"): d * min(a1 + b1, a2 + b2),
        ("ExF", "upper"): d * max(a1 + b1, a2 + b2),
    }


def symbolic_checks(inst: TheoremInstance) -> List[SymbolicCheck]:
    forms = closed_forms(inst)
    return [
        SymbolicCheck(label, forms[(which_set, side)], inst.target(name))
        for label, which_set, side, name in CLAIMS[inst.which]
    ]


def build_sets(inst: TheoremInstance, depth: int) -> Dict[str, ProductSpec]:
    sched = inst.schedule()
    vs = validate_spec(DigitSetSpec(sched, *inst.s_params), depth)
    vt = validate_spec(DigitSetSpec(sched, *inst.t_params), depth)
    e = power_product(ProductSpec.of(vs), inst.d)
    f = power_product(ProductSpec.of(vt), inst.d)
    return {"E": e, "F": f, "ExF": ProductSpec(e.factors + f.factors)}


def theorem_report(
    inst: TheoremInstance,
    n_max: int = 60,
    n_burn: Optional[int] = None,
    tolerance: Fraction = Fraction(3, 100),
) -> GalleryReport:
    rep = GalleryReport(
        f"Theorem {inst.which}: alpha={inst.alpha} beta={inst.beta} "
        f"gamma={inst.gamma} lambda={inst.lam}"
    )
    rep.notes.append(
        f"d={inst.d}, S params {inst.s_params[0]}, {inst.s_params[1]}; "
        f"T params {inst.t_params[0]}, {inst.t_params[1]}; "
        f"schedule k0={inst.schedule().k0}, k_(n+1)=(n+2)k_n"
    )
    rep.symbolic.extend(symbolic_checks(inst))

    sets = build_sets(inst, n_max)
    reports: Dict[str, DimensionReport] = {
        name: dimension_report(prod, n_max, n_burn) for name, prod in sets.items()
    }
    for label, which_set, side, name in CLAIMS[inst.which]:
        r = reports[which_set]
        estimate = r.lower if side == "lower" else r.upper
        rep.numeric.append(
            NumericCheck(label, inst.target(name), estimate, r.certified_bound, tolerance)
        )

    # E^d x F^d and (E_S x E_T)^d differ only by a coordinate permutation
    pair_power = power_product(ProductSpec.of(sets["E"].factors[0], sets["F"].factors[0]), inst.d)
    ks = sets["E"].factors[0].ks
    for n in (1, n_max // 2, n_max):
        rep.symbolic.append(
            SymbolicCheck(
                f"exponent of E^d x F^d at k_{n} equals that of (E_S x E_T)^d",
                Fraction(covering_exponent(sets["ExF"], ks[n])),
                Fraction(covering_exponent(pair_power, ks[n])),
            )
        )
    if inst.which == 1:
        rep.notes.append(
            f"dim_P E is not prescribed; this construction realizes {closed_forms(inst)[('E', 'upper')]}"
        )
    return rep


REMARK_S = (Fraction(1, 2), Fraction(1, 4))
REMARK_T = (Fraction(1, 4), Fraction(1, 3))


def remark1_report(
    n_max: int = 60, n_burn: Optional[int] = None, tolerance: Fraction = Fraction(1, 50)
) -> GalleryReport:
    """Two sets of dimension 1/4 whose product has dimension 7/12 > 1/2."""
    if n_max < 2:
        raise DepthExceeded(f"n_max={n_max}: at least two checkpoints are needed")
    if n_burn is None:
        n_burn = max(1, n_max // 2)
    sched = default_schedule(*REMARK_S, *REMARK_T)
    vs = validate_spec(DigitSetSpec(sched, *REMARK_S), n_max)
    vt = validate_spec(DigitSetSpec(sched, *REMARK_T), n_max)
    rep = GalleryReport(f"Example: dim_H(E x E) > 2 dim_H E  (n_max={n_max}, n_burn={n_burn})")

    s_dim = min(REMARK_S)
    t_dim = min(REMARK_T)
    prod_h = min(REMARK_S[0] + REMARK_T[0], REMARK_S[1] + REMARK_T[1])
    prod_p = max(REMARK_S[0] + REMARK_T[0], REMARK_S[1] + REMARK_T[1])
    union_dim = max(s_dim, t_dim)
    rep.symbolic += [
        SymbolicCheck("dim_H E_S", s_dim, Fraction(1, 4)),
        SymbolicCheck("dim_H E_T", t_dim, Fraction(1, 4)),
        SymbolicCheck("dim_H (E_S x E_T)", prod_h, Fraction(7, 12)),
        SymbolicCheck("dim_H E for E = E_S u E_T (max over the union)", union_dim, Fraction(1, 4)),
        SymbolicCheck(
            "dim_H(E x E) >= dim_H(E_S x E_T) > 2 dim_H E",
            Fraction(prod_h > 2 * union_dim),
            Fraction(1),
        ),
    ]

    single_s = dimension_report(ProductSpec.of(vs), n_max, n_burn)
    single_t = dimension_report(ProductSpec.of(vt), n_max, n_burn)
    pair = dimension_report(ProductSpec.of(vs, vt), n_max, n_burn)
    rep.numeric += [
        NumericCheck("dim_H E_S", s_dim, single_s.lower, single_s.certified_bound, tolerance),
        NumericCheck("dim_H E_T", t_dim, single_t.lower, single_t.certified_bound, tolerance),
        NumericCheck("dim_H (E_S x E_T)", prod_h, pair.lower, pair.certified_bound, tolerance),
        NumericCheck("dim_P (E_S x E_T)", prod_p, pair.upper, pair.certified_bound, tolerance),
    ]
    rep.notes.append(
        f"S = S(k_n, 1/2, 1/4), T = S(k_n, 1/4, 1/3), schedule k0={sched.k0}, k_(n+1)=(n+2)k_n"
    )
    rep.notes.append("the union and monotonicity steps are exact consequences, not estimates")
    return rep


def _rational(rng: random.Random, low: Fraction, high: Fraction, max_den: int) -> Fraction:
    """Random p/q in (low, high] with q <= max_den (falls back to high)."""
    for _ in range(100):
        q = rng.randint(1, max_den)
        lo = int(low * q) + 1
        hi = int(high * q)
        if lo <= hi:
            return Fraction(rng.randint(lo, hi), q)
    return high


def sample_admissible(
    which: int,
    rng: random.Random,
    max_den: int = 20,
    ceiling: Fraction = Fraction(3, 2),
) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
    """Random (alpha, beta, gamma, lambda) satisfying the theorem's hypotheses.

    Targets other than lambda lie in (0, ceiling]; lambda is placed uniformly
    (on a grid of step <= 1/max_den of its range) inside its admissible
    interval, strictly above gamma for Theorems 2 and 3.
    """
    zero = Fraction(0)
    alpha = _rational(rng, zero, ceiling, max_den)
    x = _rational(rng, zero, ceiling, max_den)
    y = _rational(rng, zero, ceiling, max_den)
    if which == 1:
        beta, gamma = min(x, y), max(x, y)
        low, high = alpha + beta, alpha + gamma
        u = Fraction(rng.randint(0, max_den), max_den)
    else:
        gamma = max(alpha, x)
        alpha = min(alpha, x)
        beta = y
        low, high = max(alpha + beta, gamma), gamma + beta
        u = Fraction(rng.randint(1 if low == gamma else 0, max_den), max_den)
    lam = low + u * (high - low)
    return alpha, beta, gamma, lam

"""Exact-arithmetic dimension workbench for binary digit-restriction sets."""
from .digit_sets import (
    DigitSetSpec,
    Schedule,
    ValidatedSpec,
    block_elements,
    count_prefix,
    default_schedule,
    enumerate_prefix,
    membership,
    validate_spec,
)
from .density_analysis import (
    checkpoint_densities,
    density,
    envelope_bounds,
    extremal_density_estimates,
    pair_envelope_bounds,
)
from .product_spaces import (
    ProductSpec,
    billingsley_local_dimension,
    covering_exponent,
    dimension_report,
    power_product,
)
from .sampler import crosscheck, empirical_box_count, enumerate_points, sample_points
from .gallery import remark1_report, solve_theorem, theorem_report

__version__ = "0.1.0"

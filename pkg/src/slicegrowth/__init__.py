"""Slice analysis of several Clifford variables, verified numerically.

Clifford-algebra arithmetic, slice coordinates, stem-series evaluation,
the star-product algebra behind the extremal map families, two-slice
reconstruction, and growth-theorem checks on the unit ball and on gauged
slice domains, wired into a deterministic verification harness.
"""

from .algebra import (
    CliffordElement,
    in_quadratic_cone,
    in_sqrt_minus_one,
    slice_exp,
)
from .errors import (
    BasisError,
    ConeError,
    CriterionError,
    DimensionError,
    GaugeError,
    HypothesisViolationError,
    NonInvertibleError,
    RepresentationError,
    SamplingError,
    SliceAnalysisError,
    SliceMismatchError,
)
from .geometry import (
    ExtremalProfile,
    Gauge,
    ball_gauge,
    convex_criterion_1d,
    extremal_profile,
    gauge_rho,
    growth_check_ball,
    growth_check_domain,
    oracle_gauge,
    polydisc_gauge,
    starlike_criterion_slice,
    verify_extremal,
)
from .reports import Report
from .series import (
    StemSeries,
    UnivariateSeries,
    convex_test_map,
    cr_residual,
    identity_map,
    koebe_map,
    star_inverse,
    star_mul,
    tail_bound,
)
from .slicemaps import (
    RawSliceMap,
    SliceMap,
    representation_formula,
    split_components,
    two_slice_average,
)
from .slicespace import (
    SliceOrbit,
    SlicePoint,
    circle_rotate,
    decompose,
    embed,
    is_paravector_slice,
    make_orbit,
    make_point,
    orbit_point,
    point_norm,
    sample_S,
    vector_norm,
)
from .suites import RunConfig, run_suite

__version__ = "0.1.0"

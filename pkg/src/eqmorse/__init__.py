"""Equivariant holomorphic Morse series: exact fixed-point characters,
inequality certificates, and numerical checks of the harmonic-oscillator layer."""

from .character import (
    Character,
    TPoly,
    char_add,
    char_leq,
    char_mul,
    geometric_factor,
    tpoly_div_1_plus_t,
    tpoly_is_nonneg,
)
from .geometry import (
    CohomologyData,
    FixedPoint,
    ManifoldModel,
    Verdict,
    atiyah_bott_series,
    cp1_model,
    finite_T_series,
    orientation_index,
    point_model,
    product_cohomology,
    product_model,
    reverse_action,
    strong_series,
    verify_finite_T,
    verify_strong,
    verify_weak,
    weak_bound,
)
from .modelfile import dump_model, load_model, parse_model_file
from .oscillator import (
    OscillatorSpec,
    TraceValue,
    conjugation_trace_check,
    kernel_trace_quadrature,
    mehler_kernel,
    mehler_trace_factor,
    model_trace,
    spectral_trace_factor,
    strong_limit_term,
)

__version__ = "0.1.0"

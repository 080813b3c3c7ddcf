"""Rearrangements, Lorentz quasi-norms and sharp Hardy / Sobolev-Lorentz checks
for radial functions on R^n."""

from .errors import BreakpointError, DivergenceError, DomainError, ProfileFormatError
from .extremals import (
    epsilon_sweep,
    grad_norm_closed_form,
    grad_norm_display,
    make_psi,
    make_v_eps,
    non_attainment_evidence,
    psi_truncation,
    shifted_psi,
)
from .inequalities import (
    VerificationReport,
    gradient_norm,
    hardy_lhs,
    sharp_constant,
    sharp_constant_gamma_form,
    target_norm,
    verify_embedding,
    verify_hardy,
)
from .lorentz import (
    LorentzParams,
    QuadResult,
    equivalent_norm,
    hlp_majorization,
    lorentz_quasinorm,
    maximal_function,
    weak_norm,
)
from .profile import (
    Hint,
    PowerAffineSegment,
    RadialFunction,
    RadialProfile,
    ball_indicator,
    cap,
    compose_power,
    derivative_magnitude,
    evaluate,
    is_decreasing,
    single_power,
)
from .rearrange import (
    DimensionContext,
    FunctionOneDim,
    OneDimFunction,
    PiecewiseOneDim,
    SampledFunction,
    decreasing_rearrangement,
    distribution_function,
    rearrange_sampled,
    symmetric_rearrangement,
)
from .transforms import (
    TransformedPair,
    dilate,
    gamma_weighted_norm,
    hardy_auxiliary,
    pointwise_hardy_bound,
    power_transform,
)

__version__ = "0.1.0"

__all__ = [
    "ball_indicator",
    "BreakpointError",
    "cap",
    "compose_power",
    "decreasing_rearrangement",
    "derivative_magnitude",
    "dilate",
    "DimensionContext",
    "distribution_function",
    "DivergenceError",
    "DomainError",
    "epsilon_sweep",
    "equivalent_norm",
    "evaluate",
    "FunctionOneDim",
    "gamma_weighted_norm",
    "grad_norm_closed_form",
    "grad_norm_display",
    "gradient_norm",
    "hardy_auxiliary",
    "hardy_lhs",
    "Hint",
    "hlp_majorization",
    "is_decreasing",
    "lorentz_quasinorm",
    "LorentzParams",
    "make_psi",
    "make_v_eps",
    "maximal_function",
    "non_attainment_evidence",
    "OneDimFunction",
    "PiecewiseOneDim",
    "pointwise_hardy_bound",
    "power_transform",
    "PowerAffineSegment",
    "ProfileFormatError",
    "psi_truncation",
    "QuadResult",
    "RadialFunction",
    "RadialProfile",
    "rearrange_sampled",
    "SampledFunction",
    "sharp_constant",
    "sharp_constant_gamma_form",
    "shifted_psi",
    "single_power",
    "symmetric_rearrangement",
    "target_norm",
    "TransformedPair",
    "VerificationReport",
    "verify_embedding",
    "verify_hardy",
    "weak_norm",
]

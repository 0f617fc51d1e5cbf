"""Tail envelopes from MGF exponents (C++ core)."""

from ._tailinv import (
    AbsorptionFailed,
    Divergent,
    Domain,
    GeometryInvalid,
    InputError,
    NonInvertible,
    NotConverged,
    Oracle,
    OutOfDomain,
    PhiFunction,
    Side,
    TailEnvelope,
    TailinvError,
    UnboundedObjective,
    biconjugate,
    chernoff_envelope,
    closure_lower_envelope,
    conjugate,
    damped_integral,
    log_laplace_integral,
    m_surrogate_from_upper,
    optimized_compound_upper,
    pinched_lower_envelope,
    richter_sandwich,
    tauberian_check,
    unilateral_lower_envelope,
    validate_law,
    verify_regularity,
    weibull_recovery,
)

__version__ = "0.1.0"

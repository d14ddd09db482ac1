from ._core import (
    CurveSpec,
    Error,
    alignment_error,
    clifford_curve,
    closed_form_U,
    coefficients,
    genus,
    multiplier,
    parse_curve_spec,
    poles,
    potential,
    psi,
    reference_clifford,
    surface,
    willmore_closed_form,
    willmore_reconstructed,
)

__all__ = [
    "CurveSpec",
    "Error",
    "alignment_error",
    "clifford_curve",
    "closed_form_U",
    "coefficients",
    "genus",
    "multiplier",
    "parse_curve_spec",
    "poles",
    "potential",
    "psi",
    "reference_clifford",
    "surface",
    "willmore_closed_form",
    "willmore_reconstructed",
]

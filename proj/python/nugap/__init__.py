"""Nu-gap metric between delay-rational plants over H-infinity."""

from ._nugap import (
    EvaluationError,
    FactorizationError,
    InconclusiveError,
    Plant,
    WindingError,
    __version__,
    boundary_probe_points,
    closed_form_pole_uncertainty,
    closed_form_zero_uncertainty,
    lemma_positivity_check,
    ncf,
    nu_metric,
    residual_norm,
)

__all__ = [
    "EvaluationError",
    "FactorizationError",
    "InconclusiveError",
    "Plant",
    "WindingError",
    "__version__",
    "boundary_probe_points",
    "closed_form_pole_uncertainty",
    "closed_form_zero_uncertainty",
    "lemma_positivity_check",
    "ncf",
    "nu_metric",
    "residual_norm",
]

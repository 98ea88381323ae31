"""Planar random flights with non-isotropic displacements: simulation,
characteristic-function machinery, limit-law verification, and the
supporting special-function and Bessel-integral toolbox."""

from .distributions import RngStream
from .walk import (
    EnsembleSummary,
    Regime,
    StepParams,
    WalkConfig,
    WalkEndpoint,
    resolve_scaling,
    run_ensemble,
    run_walk,
)

__version__ = "0.1.0"

__all__ = [
    "EnsembleSummary",
    "Regime",
    "RngStream",
    "StepParams",
    "WalkConfig",
    "WalkEndpoint",
    "resolve_scaling",
    "run_ensemble",
    "run_walk",
    "__version__",
]

"""Late-time stationary ensembles of Trotterized XXZ quenches from the Neel state."""

from .params import (
    DerivedParams,
    ModelParams,
    Regime,
    RootOfUnityPoint,
    derive_params,
    detect_root_of_unity,
    tau_for_gamma,
    threshold_tau,
)

__all__ = [
    "DerivedParams",
    "ModelParams",
    "Regime",
    "RootOfUnityPoint",
    "derive_params",
    "detect_root_of_unity",
    "tau_for_gamma",
    "threshold_tau",
]

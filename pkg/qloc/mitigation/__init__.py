from qloc.circuit import ShotSet
from qloc.mitigation.estimators import (
    ESTIMATORS,
    BootstrapResult,
    bootstrap,
    ipr_from_distribution,
    mle_ipr,
    ps_distribution,
    ps_ipr,
    resolve_estimator,
    total_variation,
)
from qloc.mitigation.mle import MLEstimate, initial_guess, log_likelihood, mle_fit
from qloc.mitigation.noise import (
    BitFlipModel,
    corrupt,
    effective_epsilon,
    hamming_distance,
    postselect,
    survival_rate_exact,
    synthetic_shots,
)

__all__ = (
    "ESTIMATORS",
    "BitFlipModel",
    "BootstrapResult",
    "MLEstimate",
    "ShotSet",
    "bootstrap",
    "corrupt",
    "effective_epsilon",
    "hamming_distance",
    "initial_guess",
    "ipr_from_distribution",
    "log_likelihood",
    "mle_fit",
    "mle_ipr",
    "postselect",
    "ps_distribution",
    "ps_ipr",
    "resolve_estimator",
    "survival_rate_exact",
    "synthetic_shots",
    "total_variation",
)

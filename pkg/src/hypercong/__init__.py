"""Truncated hypergeometric congruences and their finite-field counterparts."""

from .padic import (
    PAdicApprox,
    PrimePowerModulus,
    Residue,
    alternating_harmonic,
    binomial_mod,
    fermat_quotient_gamma,
    inv,
    modulus,
)
from .sweep import SweepResult, run_sweep
from .truncsum import (
    HyperParams,
    TruncatedValue,
    alpha,
    check_lemma_split,
    check_symmetry,
    dwork_quotients,
    epsilon_p,
    g1_sum,
    truncated_sum,
    unit_root_limit,
)
from .zeta import ZetaFactor, compute_zeta, unit_root_of_zeta

__all__ = [
    "PAdicApprox",
    "PrimePowerModulus",
    "Residue",
    "alternating_harmonic",
    "binomial_mod",
    "fermat_quotient_gamma",
    "inv",
    "modulus",
    "HyperParams",
    "TruncatedValue",
    "alpha",
    "check_lemma_split",
    "check_symmetry",
    "dwork_quotients",
    "epsilon_p",
    "g1_sum",
    "truncated_sum",
    "unit_root_limit",
    "SweepResult",
    "run_sweep",
    "ZetaFactor",
    "compute_zeta",
    "unit_root_of_zeta",
]

__version__ = "0.1.0"

"""Hard spheres in a box: configuration-space analysis through the minimum of distances."""

from fractions import Fraction

from ._core import (
    AmbiguityError,
    DomainError,
    Error,
    InsufficientDataError,
    NonUniquenessError,
    ParameterError,
    active_set,
    ascend,
    betti_across_threshold,
    chain_configuration,
    classify,
    connectivity_experiment,
    in_conf,
    intersection_witness,
    k_multiplicity,
    poincare_conf,
    retract_chain,
    retract_level,
    sample_S_epsilon,
    sigma_membership,
    tau,
)
from ._core import harmonic as _harmonic


def harmonic(m):
    """Exact harmonic number H_m as a Fraction."""
    num, den = _harmonic(m)
    return Fraction(num, den)


__all__ = [
    "AmbiguityError",
    "DomainError",
    "Error",
    "InsufficientDataError",
    "NonUniquenessError",
    "ParameterError",
    "active_set",
    "ascend",
    "betti_across_threshold",
    "chain_configuration",
    "classify",
    "connectivity_experiment",
    "harmonic",
    "in_conf",
    "intersection_witness",
    "k_multiplicity",
    "poincare_conf",
    "retract_chain",
    "retract_level",
    "sample_S_epsilon",
    "sigma_membership",
    "tau",
]

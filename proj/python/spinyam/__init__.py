"""Python access to the spinyam phase-plane solvers."""

from ._spinyam import (
    BracketInvalid,
    KOutOfRange,
    NumericsError,
    boundary,
    clifford_matrices,
    clifford_ok,
    euclidean_dim,
    half_period,
    hamiltonian,
    homoclinic,
    homoclinic_profile,
    k0,
    orbit,
    rescale_error,
    rescaled_limit,
    shoot,
    solutions_count,
    sweep,
    turning_points,
    vector_field,
)

__all__ = [
    "BracketInvalid",
    "KOutOfRange",
    "NumericsError",
    "boundary",
    "clifford_matrices",
    "clifford_ok",
    "euclidean_dim",
    "half_period",
    "hamiltonian",
    "homoclinic",
    "homoclinic_profile",
    "k0",
    "orbit",
    "rescale_error",
    "rescaled_limit",
    "shoot",
    "solutions_count",
    "sweep",
    "turning_points",
    "vector_field",
]

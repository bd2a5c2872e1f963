"""Numerical analysis of the Markus-Wilson kinematic model.

Particles swim toward a focus F = (R, 0) with speed ``v`` while the medium
rotates about the origin with angular velocity ``omega``.  Every computation
runs in normalized units (``v = R = 1``) where the family collapses to the
single parameter ``omega * R / v``.
"""

from mwkit.errors import (
    DegenerateParameter,
    InvalidParameters,
    MWKitError,
    NoInteriorEquilibrium,
    NoSaddle,
    NonFiniteState,
    OutOfSpan,
    SingularAtFocus,
    StartAtFocus,
)
from mwkit.model import (
    CartesianState,
    NormalizedParams,
    Params,
    PolarState,
    Scale,
    normalize,
    radial_derivative,
    to_cartesian,
    to_polar,
    vector_field_cartesian,
    vector_field_polar,
)

__version__ = "0.1.0"

__all__ = [
    "CartesianState",
    "DegenerateParameter",
    "InvalidParameters",
    "MWKitError",
    "NoInteriorEquilibrium",
    "NoSaddle",
    "NonFiniteState",
    "NormalizedParams",
    "OutOfSpan",
    "Params",
    "PolarState",
    "Scale",
    "SingularAtFocus",
    "StartAtFocus",
    "normalize",
    "radial_derivative",
    "to_cartesian",
    "to_polar",
    "vector_field_cartesian",
    "vector_field_polar",
]

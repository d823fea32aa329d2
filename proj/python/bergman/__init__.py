"""Weighted Bergman spaces on the unit ball: geometry, sequences, interpolation.

Structured results are plain dicts shaped like the CLI's JSON reports.
"""

from ._bergman import (
    NumericalError,
    PreconditionError,
    apply_automorphism,
    density_verdict,
    generate_net,
    interpolate,
    inv_distance,
    k_value,
    kernel_norm,
    mills_partition,
    one_minus_dist_sq,
    random_values,
    seip_density,
    separation,
)

__all__ = [
    "NumericalError",
    "PreconditionError",
    "apply_automorphism",
    "density_verdict",
    "generate_net",
    "interpolate",
    "inv_distance",
    "k_value",
    "kernel_norm",
    "mills_partition",
    "one_minus_dist_sq",
    "random_values",
    "seip_density",
    "separation",
]

"""Euclidean association scheme toolkit.

Kloosterman sums and angles, scheme P/Q matrices, intersection numbers,
distance-t random walk return probabilities, and Sato-Tate equidistribution
diagnostics over finite vector spaces F_q^d, backed by the C++ core.
"""

from ._core import (  # noqa: F401
    angles,
    dense_adjacency,
    field_modulus,
    gauss_sum,
    generator,
    intersection_matrix,
    kloosterman,
    ks_distance,
    legendre,
    moments,
    planar_intersection,
    brute_force_intersection,
    return_probability,
    sato_tate_cdf,
    sato_tate_cos_power,
    scheme_matrices,
    simulate_walk,
    sphere_size,
    trace,
    twisted_kloosterman,
)

__all__ = [
    "angles",
    "dense_adjacency",
    "field_modulus",
    "gauss_sum",
    "generator",
    "intersection_matrix",
    "kloosterman",
    "ks_distance",
    "legendre",
    "moments",
    "planar_intersection",
    "brute_force_intersection",
    "return_probability",
    "sato_tate_cdf",
    "sato_tate_cos_power",
    "scheme_matrices",
    "simulate_walk",
    "sphere_size",
    "trace",
    "twisted_kloosterman",
]

"""Exact Hilbert-Schmidt volumes of quantum state spaces."""

from ._core import (
    BlochBasis,
    DomainError,
    ExactValue,
    ball_volume,
    c_norm,
    eigvalsh,
    gamma,
    geometry,
    hit_or_miss_expected,
    is_positive,
    log_c_norm,
    mc_hit_or_miss_fraction,
    mc_norm_constant,
    mc_purity,
    reference_gamma,
    reference_volume,
    sample,
    spectral_fit_test,
    sphere_volume,
    vol_edge,
    vol_mixed,
    volume,
)

__all__ = [
    "BlochBasis",
    "DomainError",
    "ExactValue",
    "ball_volume",
    "c_norm",
    "eigvalsh",
    "gamma",
    "geometry",
    "hit_or_miss_expected",
    "is_positive",
    "log_c_norm",
    "mc_hit_or_miss_fraction",
    "mc_norm_constant",
    "mc_purity",
    "reference_gamma",
    "reference_volume",
    "sample",
    "spectral_fit_test",
    "sphere_volume",
    "vol_edge",
    "vol_mixed",
    "volume",
]

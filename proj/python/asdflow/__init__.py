"""Axisymmetric surface diffusion flow on periodic profiles."""

from ._core import (
    ArgumentError,
    ClassificationError,
    DomainError,
    IoError,
    NoLiftError,
    NumericError,
    UnsupportedParameterError,
    classify,
    cylinder_spectrum,
    equivalent_cylinder_radius,
    g_divergence,
    g_quasilinear,
    leading_eigenvalue,
    mean_curvature,
    nodes,
    pitchfork,
    run_cli,
    simulate,
    surface_area,
    unduloid_H,
    unduloid_profile,
    volume,
)

__all__ = [
    "ArgumentError",
    "ClassificationError",
    "DomainError",
    "IoError",
    "NoLiftError",
    "NumericError",
    "UnsupportedParameterError",
    "classify",
    "cylinder_spectrum",
    "equivalent_cylinder_radius",
    "g_divergence",
    "g_quasilinear",
    "leading_eigenvalue",
    "mean_curvature",
    "nodes",
    "pitchfork",
    "run_cli",
    "simulate",
    "surface_area",
    "unduloid_H",
    "unduloid_profile",
    "volume",
]

"""Kicked dipole-coupled planar rotor pairs (quantum and classical)."""

from ._core import (
    Arrangement,
    ClassicalConfig,
    ConfigError,
    InvariantViolation,
    IoError,
    RotorPairConfig,
    analytic_isolated,
    classical_orientation,
    density,
    echo_config,
    focal_point,
    mathieu_eigenvalues,
    multi_pulse_config,
    orientation_trace,
    run,
    squeeze,
    validate,
)

__all__ = [
    "Arrangement",
    "ClassicalConfig",
    "ConfigError",
    "InvariantViolation",
    "IoError",
    "RotorPairConfig",
    "analytic_isolated",
    "classical_orientation",
    "density",
    "echo_config",
    "focal_point",
    "mathieu_eigenvalues",
    "multi_pulse_config",
    "orientation_trace",
    "run",
    "squeeze",
    "validate",
]

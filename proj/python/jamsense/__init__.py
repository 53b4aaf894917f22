# SPDX-License-Identifier: Apache-2.0
"""Jamming detection and channel estimation for beamspace MIMO beam training."""

from ._jamsense import (
    BeamSelection,
    ChiSquareMixture,
    Model,
    NumericalError,
    SystemConfig,
    ValidationError,
    db_to_linear,
    glrt_statistic,
    linear_to_db,
    nmse,
    preset_names,
    rephase_jammer,
    run_config,
    run_preset,
    threshold_for_pfa,
)

__all__ = [
    "BeamSelection",
    "ChiSquareMixture",
    "Model",
    "NumericalError",
    "SystemConfig",
    "ValidationError",
    "db_to_linear",
    "glrt_statistic",
    "linear_to_db",
    "nmse",
    "preset_names",
    "rephase_jammer",
    "run_config",
    "run_preset",
    "threshold_for_pfa",
]

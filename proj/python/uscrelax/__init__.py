"""Relaxation rates of two strongly coupled oscillators in finite reservoirs."""

from ._core import (
    AnalyticResult,
    DissipativeParams,
    ExceptionalPoint,
    PairParams,
    RatePair,
    ReservoirParams,
    TimeSeries,
    analytic_rates,
    envelope,
    estimate_modes,
    find_exceptional_point,
    mode_frequencies,
    revival_time,
    run_config,
    simulate_dissipative,
    simulate_pair,
    sweep_spectrum,
)

__all__ = [
    "AnalyticResult",
    "DissipativeParams",
    "ExceptionalPoint",
    "PairParams",
    "RatePair",
    "ReservoirParams",
    "TimeSeries",
    "analytic_rates",
    "envelope",
    "estimate_modes",
    "find_exceptional_point",
    "mode_frequencies",
    "revival_time",
    "run_config",
    "simulate_dissipative",
    "simulate_pair",
    "sweep_spectrum",
]

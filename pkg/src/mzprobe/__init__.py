"""Mach-Zehnder interferometry with a quantum which-way probe.

Simulates a two-path interferometer whose particle couples to an
arbitrary finite-dimensional probe, computes the complementarity
quantities of both subsystems (predictability, visibility,
distinguishability, concurrence, probe predictability and visibility),
verifies the duality identities relating them, and models a coherent
cavity field crossed by a two-level atom as a concrete probe.
"""

from .interferometer import (
    FringeScan,
    OverlapProbe,
    ParticleState,
    ProbeModel,
    beam_splitter,
    build_initial,
    canonical_probe,
    detector_intensity,
    evolve_mid,
    evolve_pre_detection,
    phase_shifter,
    probe_coupling,
    scan_fringes,
)
from .linalg import (
    CONSTRUCTION_TOL,
    IDENTITY_TOL,
    SchmidtPair,
    ValidationError,
    concurrence_from_reduced,
    kron,
    partial_trace_particle,
    partial_trace_probe,
    schmidt_coefficients,
)
from .measures import (
    ComplementarityReport,
    Regime,
    RegimeThresholds,
    classical_boundary,
    classify,
    concurrence_formula,
    crossing_point,
    distinguishability,
    duality_report,
    probe_predictability_formula,
    probe_predictability_state,
    probe_visibility,
    quality,
    report_from_distinguishability,
    thresholds,
)
from .ramsey import (
    CoherentField,
    RamseyConfig,
    RamseyResult,
    coherent_field,
    post_interaction_states,
    pulse_time,
    ramsey_report,
    relaxation_reset,
)

__version__ = "0.1.0"

__all__ = [
    "CONSTRUCTION_TOL",
    "IDENTITY_TOL",
    "ComplementarityReport",
    "CoherentField",
    "FringeScan",
    "OverlapProbe",
    "ParticleState",
    "ProbeModel",
    "RamseyConfig",
    "RamseyResult",
    "Regime",
    "RegimeThresholds",
    "SchmidtPair",
    "ValidationError",
    "beam_splitter",
    "build_initial",
    "canonical_probe",
    "classical_boundary",
    "classify",
    "coherent_field",
    "concurrence_formula",
    "concurrence_from_reduced",
    "crossing_point",
    "detector_intensity",
    "distinguishability",
    "duality_report",
    "evolve_mid",
    "evolve_pre_detection",
    "kron",
    "partial_trace_particle",
    "partial_trace_probe",
    "phase_shifter",
    "post_interaction_states",
    "probe_coupling",
    "probe_predictability_formula",
    "probe_predictability_state",
    "probe_visibility",
    "pulse_time",
    "quality",
    "ramsey_report",
    "relaxation_reset",
    "report_from_distinguishability",
    "scan_fringes",
    "schmidt_coefficients",
    "thresholds",
]

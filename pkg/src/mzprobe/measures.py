"""Scalar complementarity measures for the particle-probe pair.

Every quantity is available along two routes: a closed-form expression
in the mid-apparatus path bias ``p1`` and the probe distinguishability
``d``, and a state-level computation on the evolved joint state.
``duality_report`` runs the state route, carries the formula route
alongside for cross-checking, and classifies the probe regime.

The which-way projector averages come in a pair: one projector tracks
the preparation with positive path bias, the other its sign-flipped
twin.  ``probe_predictability_state`` returns the |bias|-canonical
branch (the larger of the two candidates), and ``duality_report``
verifies that the two branches, each evaluated on its own preparation,
agree.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .interferometer import (
    OverlapProbe,
    ParticleState,
    ProbeModel,
    build_initial,
    evolve_mid,
    evolve_pre_detection,
    scan_fringes,
)
from .linalg import (
    CONSTRUCTION_TOL,
    IDENTITY_TOL,
    SIGMA_Z,
    ValidationError,
    clamp01,
    concurrence_from_reduced,
    partial_trace_particle,
    partial_trace_probe,
)

GOOD_CUT = 1.0 / math.sqrt(2.0)

# Phase-shifter setting used when a single joint state is needed; every
# reported quantity is independent of it (only the fringe scan sweeps it).
_REFERENCE_PHI = 0.0

_DEFAULT_N_PHI = 32
_ASYMMETRY_TOL = 1e-6


class Regime(str, enum.Enum):
    """Probe classification by how corpuscular its record of the path is."""

    GOOD = "good"
    INTERMEDIATE = "intermediate"
    BAD = "bad"
    CLASSICAL = "classical"


def quality(gamma: complex) -> float:
    """Probe quality 1 - |gamma|^2: the probability that a probe
    measurement distinguishes the two paths."""
    g = abs(complex(gamma))
    if g > 1.0 + CONSTRUCTION_TOL:
        raise ValidationError("bad-overlap", f"|gamma| = {g!r} exceeds 1")
    g = min(g, 1.0)
    return 1.0 - g * g


def distinguishability(gamma: complex) -> float:
    """Distinguishability of the conditioned probe states, sqrt(1 - |gamma|^2)."""
    return math.sqrt(quality(gamma))


def concurrence_formula(v0: float, d: float) -> float:
    """Particle-probe concurrence from a-priori visibility and distinguishability."""
    return clamp01(v0, what="a-priori visibility") * clamp01(d, what="distinguishability")


def probe_predictability_formula(p1: float, d: float) -> float:
    """Corpuscular character of the probe: 1 - (1 - p1) d^2.

    Equals 1 when the probe is untouched (d = 0) or the path is certain
    (p1 = 1), and drops to p1 for a perfectly distinguishing probe.
    """
    p1 = clamp01(p1, what="particle predictability")
    d = clamp01(d, what="distinguishability")
    return clamp01(1.0 - (1.0 - p1) * d * d, what="probe predictability")


def probe_visibility(p1: float, d: float) -> float:
    """Wave-like character of the probe: (1 - p1) d sqrt(1 - d^2).

    Vanishes both for a perfect probe (d = 1) and an untouched one
    (d = 0); its maximum over d is 1/2, reached at d = 1/sqrt(2).
    """
    p1 = clamp01(p1, what="particle predictability")
    d = clamp01(d, what="distinguishability")
    return (1.0 - p1) * d * math.sqrt(max(1.0 - d * d, 0.0))


def probe_predictability_state(
    rho2: np.ndarray,
    m_plus: np.ndarray,
    m_minus: np.ndarray,
    *,
    asymmetry_tol: float = _ASYMMETRY_TOL,
) -> float:
    """Probe predictability |1 - 2 <P>| from the conditioned-state projectors.

    Evaluates both projector averages.  Each corresponds to one sign of
    the particle path bias; the larger candidate is the value for the
    |bias|-canonical preparation and is returned.  Any probe state
    produced by the pipeline obeys the sum rule
    ``<P_+> + <P_-> = 1 + |<m_-|m_+>|^2``; a violation means ``rho2`` is
    not such a state and is surfaced instead of silently ignored.
    """
    rho2 = np.asarray(rho2, dtype=complex)
    m_plus = np.asarray(m_plus, dtype=complex)
    m_minus = np.asarray(m_minus, dtype=complex)
    d = m_plus.size
    if rho2.shape != (d, d) or m_minus.size != d:
        raise ValidationError(
            "bad-dims", f"probe state {rho2.shape} does not match projector dimension {d}"
        )
    exp_plus = float(np.vdot(m_plus, rho2 @ m_plus).real)
    exp_minus = float(np.vdot(m_minus, rho2 @ m_minus).real)
    overlap2 = abs(np.vdot(m_minus, m_plus)) ** 2
    residual = abs(exp_plus + exp_minus - (1.0 + overlap2))
    if residual > asymmetry_tol:
        raise ValidationError(
            "projector-asymmetry",
            f"projector averages violate the sum rule by {residual!r}",
        )
    value = max(abs(1.0 - 2.0 * exp_plus), abs(1.0 - 2.0 * exp_minus))
    return clamp01(value, what="probe predictability")


@dataclass(frozen=True)
class RegimeThresholds:
    """Distinguishability cuts separating the probe regimes (bias-free particle)."""

    good_cut: float
    bad_cut: float
    classical_cut: float

    def __post_init__(self) -> None:
        if not 0.0 < self.classical_cut < self.bad_cut < self.good_cut < 1.0:
            raise ValidationError(
                "out-of-range",
                f"cuts must be ordered in (0, 1): {self.classical_cut}, {self.bad_cut}, {self.good_cut}",
            )

    @property
    def delta_v(self) -> float:
        """Particle-visibility drop across the classical region, 1 - sqrt(1 - cut^2)."""
        return 1.0 - math.sqrt(1.0 - self.classical_cut**2)


def classical_boundary() -> float:
    """Distinguishability below which corpuscular character dominates.

    Root of 1 - d^2 = d sqrt(1 - d^2) + d on (0, 1), i.e. where the
    probe predictability stops exceeding the sum of probe visibility and
    concurrence for a bias-free particle.  Solved by bisection on
    [0.3, 0.5] to an interval width of 1e-12.
    """

    def f(d: float) -> float:
        return 1.0 - d * d - d * math.sqrt(1.0 - d * d) - d

    lo, hi = 0.3, 0.5
    for _ in range(200):
        if hi - lo <= 1e-12:
            break
        mid = 0.5 * (lo + hi)
        if f(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def crossing_point() -> float:
    """Distinguishability where probe predictability equals concurrence.

    Positive root of d^2 + d - 1 = 0, i.e. (sqrt(5) - 1)/2.
    """
    return (math.sqrt(5.0) - 1.0) / 2.0


def thresholds() -> RegimeThresholds:
    """All regime cut points."""
    return RegimeThresholds(
        good_cut=GOOD_CUT,
        bad_cut=crossing_point(),
        classical_cut=classical_boundary(),
    )


def _classify_values(d: float, pp: float, pv: float, c: float) -> Regime:
    # Precedence fixes one label per configuration: classical, then bad,
    # then good, else intermediate.
    if pp >= pv + c:
        return Regime.CLASSICAL
    if pp > c:
        return Regime.BAD
    if d > GOOD_CUT:
        return Regime.GOOD
    return Regime.INTERMEDIATE


@dataclass(frozen=True)
class ComplementarityReport:
    """All scalar complementarity quantities for one configuration.

    Canonical values come from the state-level route where one exists;
    ``formula_route`` carries the closed-form counterparts of the four
    dual-route quantities for cross-checking.
    """

    predictability_particle: float
    visibility_particle: float
    a_priori_visibility: float
    a_priori_predictability: float
    quality: float
    distinguishability: float
    concurrence: float
    probe_predictability: float
    probe_visibility: float
    duality_particle: float
    duality_probe: float
    regime: Regime
    formula_route: dict[str, float] | None = field(default=None, repr=False, compare=False)

    def __post_init__(self) -> None:
        checks = {
            "particle duality + concurrence": self.duality_particle + self.concurrence**2 - 1.0,
            "probe duality + concurrence": self.duality_probe + self.concurrence**2 - 1.0,
            "probe duality decomposition": self.probe_predictability**2
            + self.probe_visibility**2
            - self.duality_probe,
        }
        for name, residual in checks.items():
            if abs(residual) > IDENTITY_TOL:
                raise ValidationError("report-inconsistent", f"{name} off by {residual!r}")

    def numeric_fields(self) -> dict[str, float]:
        """All scalar fields, keyed by name (regime excluded)."""
        return {
            "predictability_particle": self.predictability_particle,
            "visibility_particle": self.visibility_particle,
            "a_priori_visibility": self.a_priori_visibility,
            "a_priori_predictability": self.a_priori_predictability,
            "quality": self.quality,
            "distinguishability": self.distinguishability,
            "concurrence": self.concurrence,
            "probe_predictability": self.probe_predictability,
            "probe_visibility": self.probe_visibility,
            "duality_particle": self.duality_particle,
            "duality_probe": self.duality_probe,
        }


def classify(d: float, report: ComplementarityReport) -> Regime:
    """Regime label for a report at distinguishability ``d``.

    The classical and bad tests use the report's own probe quantities
    (valid for any path bias); the good cut is stated for the bias-free
    setting and is informational otherwise.
    """
    return _classify_values(
        d, report.probe_predictability, report.probe_visibility, report.concurrence
    )


def report_from_distinguishability(d: float, p0: float = 0.0) -> ComplementarityReport:
    """Analytic report for a probe of distinguishability ``d`` and a
    particle of path bias ``p0`` (formula route only)."""
    d = clamp01(d, what="distinguishability")
    p0 = clamp01(p0, what="path bias")
    v0 = math.sqrt(max(1.0 - p0 * p0, 0.0))
    p1 = p0
    v1 = v0 * math.sqrt(max(1.0 - d * d, 0.0))
    c = concurrence_formula(v0, d)
    pp = probe_predictability_formula(p1, d)
    pv = probe_visibility(p1, d)
    return ComplementarityReport(
        predictability_particle=p1,
        visibility_particle=v1,
        a_priori_visibility=v0,
        a_priori_predictability=p0,
        quality=d * d,
        distinguishability=d,
        concurrence=c,
        probe_predictability=pp,
        probe_visibility=pv,
        duality_particle=p1 * p1 + v1 * v1,
        duality_probe=pp * pp + pv * pv,
        regime=_classify_values(d, pp, pv, c),
    )


def duality_report(
    particle: ParticleState,
    probe: ProbeModel | OverlapProbe,
    *,
    n_phi: int = _DEFAULT_N_PHI,
    asymmetry_tol: float = _ASYMMETRY_TOL,
) -> ComplementarityReport:
    """Full complementarity report from the evolved joint state.

    The particle preparation is canonicalized to non-negative path bias;
    the probe-predictability projector branch of the sign-flipped twin
    preparation must agree with the canonical branch, otherwise a
    ``projector-asymmetry`` error is raised.
    """
    model = probe.to_probe_model() if isinstance(probe, OverlapProbe) else probe
    gamma = model.gamma
    q = quality(gamma)
    d = distinguishability(gamma)
    v0 = particle.v0
    p0 = particle.p0

    canonical = ParticleState(p0, particle.y0, particle.z0)
    rho0 = build_initial(canonical, model)

    # Particle route: path bias from the mid-apparatus state, fringe
    # visibility from the scanned output port.
    rho1_mid = partial_trace_probe(evolve_mid(rho0, model, _REFERENCE_PHI), model.d)
    p1 = clamp01(
        abs(float(np.trace(rho1_mid @ SIGMA_Z).real)),
        tol=10 * CONSTRUCTION_TOL,
        what="particle predictability",
    )
    v1 = scan_fringes(rho0, model, n_phi).visibility

    full = evolve_pre_detection(rho0, model, _REFERENCE_PHI)
    c_state = concurrence_from_reduced(partial_trace_probe(full, model.d))

    # Probe route, on both sign-canonical preparations.
    pp_canonical = probe_predictability_state(
        partial_trace_particle(full, model.d),
        model.m_plus,
        model.m_minus,
        asymmetry_tol=asymmetry_tol,
    )
    flipped = ParticleState(-p0, particle.y0, particle.z0)
    full_flipped = evolve_pre_detection(build_initial(flipped, model), model, _REFERENCE_PHI)
    pp_flipped = probe_predictability_state(
        partial_trace_particle(full_flipped, model.d),
        model.m_plus,
        model.m_minus,
        asymmetry_tol=asymmetry_tol,
    )
    if abs(pp_canonical - pp_flipped) > asymmetry_tol:
        raise ValidationError(
            "projector-asymmetry",
            f"projector branches disagree: {pp_canonical!r} vs {pp_flipped!r}",
        )
    pp = pp_flipped
    pv = probe_visibility(p1, d)

    return ComplementarityReport(
        predictability_particle=p1,
        visibility_particle=v1,
        a_priori_visibility=v0,
        a_priori_predictability=p0,
        quality=q,
        distinguishability=d,
        concurrence=c_state,
        probe_predictability=pp,
        probe_visibility=pv,
        duality_particle=p1 * p1 + v1 * v1,
        duality_probe=pp * pp + pv * pv,
        regime=_classify_values(d, pp, pv, c_state),
        formula_route={
            "predictability_particle": p0,
            "visibility_particle": v0 * math.sqrt(max(1.0 - d * d, 0.0)),
            "concurrence": concurrence_formula(v0, d),
            "probe_predictability": probe_predictability_formula(p0, d),
        },
    )

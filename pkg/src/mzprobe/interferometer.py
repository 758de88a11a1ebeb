"""Mach-Zehnder pipeline for a particle qubit coupled to a which-way probe.

The apparatus acts on the joint space C^2 (x) C^d in a fixed order:

    balanced splitter -> path-conditioned probe kick -> relative phase
    -> balanced splitter -> detectors on the two output ports

Each stage is an explicit unitary matrix and every downstream quantity
(fringe intensities, reduced states) is computed from matrix products.
Closed-form shortcuts exist for all of them, but they are used only as
oracles in the test suite; the library itself stays on the matrix path.

A probe enters the physics only through the overlap
``gamma = <m_-|m_+>`` of its two conditioned final states, so a probe
known by its overlap alone can be realized canonically in two
dimensions (``OverlapProbe.to_probe_model``).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field

import numpy as np

from .linalg import (
    CONSTRUCTION_TOL,
    IDENTITY_2,
    KET_UPPER,
    SIGMA_X,
    SIGMA_Y,
    SIGMA_Z,
    ValidationError,
    clamp01,
    dag,
    kron,
    partial_trace_probe,
    projector,
    require_normalized,
    require_unitary,
)

_SQRT2 = math.sqrt(2.0)

# Large abstract probes are out of scope; two levels cover overlap-only
# probes and ~30 cover a one-photon coherent field.
MAX_PROBE_DIM = 64


@dataclass(frozen=True)
class ParticleState:
    """Bloch vector (x0, y0, z0) of the particle entering the interferometer.

    Restricted to pure states, so the vector must have unit length.  The
    x component is the path bias that survives the first splitter; the
    (y, z) components feed the fringes.
    """

    x0: float
    y0: float
    z0: float

    def __post_init__(self) -> None:
        norm2 = self.x0 * self.x0 + self.y0 * self.y0 + self.z0 * self.z0
        if abs(norm2 - 1.0) > CONSTRUCTION_TOL:
            raise ValidationError("bloch-norm", f"Bloch vector has squared length {norm2!r}")

    @property
    def p0(self) -> float:
        """A-priori predictability |x0|."""
        return abs(self.x0)

    @property
    def v0(self) -> float:
        """A-priori visibility sqrt(y0^2 + z0^2)."""
        return math.hypot(self.y0, self.z0)

    def density(self) -> np.ndarray:
        """2x2 density matrix (1 + u.sigma)/2."""
        return (IDENTITY_2 + self.x0 * SIGMA_X + self.y0 * SIGMA_Y + self.z0 * SIGMA_Z) / 2.0


@dataclass(frozen=True)
class ProbeModel:
    """Initial probe vector plus the two path-conditioned unitaries.

    The upper arm applies ``u_plus``, the lower arm ``u_minus``; the
    conditioned final vectors are ``m_plus = u_plus @ m`` and
    ``m_minus = u_minus @ m``.
    """

    m: np.ndarray
    u_plus: np.ndarray
    u_minus: np.ndarray

    def __post_init__(self) -> None:
        m = np.asarray(self.m, dtype=complex)
        u_plus = np.asarray(self.u_plus, dtype=complex)
        u_minus = np.asarray(self.u_minus, dtype=complex)
        if m.ndim != 1 or not 1 <= m.size <= MAX_PROBE_DIM:
            raise ValidationError(
                "bad-dims", f"probe vector has shape {m.shape}; dimension must be in [1, {MAX_PROBE_DIM}]"
            )
        d = m.size
        if u_plus.shape != (d, d) or u_minus.shape != (d, d):
            raise ValidationError(
                "bad-dims", f"unitaries {u_plus.shape}/{u_minus.shape} do not match probe dimension {d}"
            )
        require_normalized(m, what="probe state")
        require_unitary(u_plus, what="upper-arm unitary")
        require_unitary(u_minus, what="lower-arm unitary")
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "u_plus", u_plus)
        object.__setattr__(self, "u_minus", u_minus)

    @property
    def d(self) -> int:
        return self.m.size

    @property
    def m_plus(self) -> np.ndarray:
        return self.u_plus @ self.m

    @property
    def m_minus(self) -> np.ndarray:
        return self.u_minus @ self.m

    @property
    def gamma(self) -> complex:
        """Overlap <m_-|m_+> of the conditioned probe states."""
        return complex(np.vdot(self.m_minus, self.m_plus))


def canonical_probe(gamma: complex) -> ProbeModel:
    """Two-dimensional probe realizing a given conditioned-state overlap.

    Uses m_+ = (1, 0) and m_- = (conj(gamma), sqrt(1 - |gamma|^2)), which
    reproduces <m_-|m_+> = gamma exactly.
    """
    g = complex(gamma)
    if abs(g) > 1.0 + CONSTRUCTION_TOL:
        raise ValidationError("bad-overlap", f"|gamma| = {abs(g)!r} exceeds 1")
    s = math.sqrt(max(1.0 - abs(g) ** 2, 0.0))
    u_minus = np.array([[g.conjugate(), -s], [s, g]], dtype=complex)
    return ProbeModel(m=KET_UPPER.copy(), u_plus=IDENTITY_2.copy(), u_minus=u_minus)


@dataclass(frozen=True)
class OverlapProbe:
    """Probe specified only through gamma = <m_-|m_+> (analytic mode)."""

    gamma: complex

    def __post_init__(self) -> None:
        g = complex(self.gamma)
        if abs(g) > 1.0 + CONSTRUCTION_TOL:
            raise ValidationError("bad-overlap", f"|gamma| = {abs(g)!r} exceeds 1")
        object.__setattr__(self, "gamma", g)

    def to_probe_model(self) -> ProbeModel:
        return canonical_probe(self.gamma)


@dataclass(frozen=True)
class FringeScan:
    """Fringe samples plus the first-harmonic fit of the intensity.

    ``i_max``/``i_min`` are the extrema of the fitted model
    ``a + Re(b e^{i phi})``, not of the raw grid, so that
    ``visibility = (i_max - i_min)/(i_max + i_min)`` holds without
    grid-resolution error.
    """

    phis: np.ndarray = field(repr=False)
    intensities: np.ndarray = field(repr=False)
    i_max: float
    i_min: float
    visibility: float


def build_initial(particle: ParticleState, probe: ProbeModel) -> np.ndarray:
    """Joint input state: particle density matrix tensor the pure probe."""
    return kron(particle.density(), projector(probe.m))


def beam_splitter(d: int) -> np.ndarray:
    """Balanced splitter (1 - i sigma_y)/sqrt(2) on the particle, identity on the probe."""
    if d < 1:
        raise ValidationError("bad-dims", f"probe dimension {d} < 1")
    return kron((IDENTITY_2 - 1j * SIGMA_Y) / _SQRT2, np.eye(d))


def probe_coupling(probe: ProbeModel) -> np.ndarray:
    """Which-way kick: |1><1| (x) u_plus + |0><0| (x) u_minus."""
    upper = np.array([[1.0, 0.0], [0.0, 0.0]], dtype=complex)
    lower = np.array([[0.0, 0.0], [0.0, 1.0]], dtype=complex)
    return kron(upper, probe.u_plus) + kron(lower, probe.u_minus)


def phase_shifter(phi: float, d: int) -> np.ndarray:
    """Relative phase on the upper arm: diag(e^{i phi}, 1) on the particle."""
    if d < 1:
        raise ValidationError("bad-dims", f"probe dimension {d} < 1")
    return kron(np.diag([cmath.exp(1j * phi), 1.0]), np.eye(d))


def _require_joint_density_dims(rho0: np.ndarray, d: int) -> np.ndarray:
    rho0 = np.asarray(rho0, dtype=complex)
    if rho0.shape != (2 * d, 2 * d):
        raise ValidationError("bad-dims", f"state shape {rho0.shape} does not match probe dimension {d}")
    return rho0


def evolve_mid(rho0: np.ndarray, probe: ProbeModel, phi: float) -> np.ndarray:
    """Joint state after splitter, probe kick and phase, before the second splitter."""
    rho0 = _require_joint_density_dims(rho0, probe.d)
    u = phase_shifter(phi, probe.d) @ probe_coupling(probe) @ beam_splitter(probe.d)
    return u @ rho0 @ dag(u)


def evolve_pre_detection(rho0: np.ndarray, probe: ProbeModel, phi: float) -> np.ndarray:
    """Joint state after the full apparatus, immediately before the detectors."""
    b = beam_splitter(probe.d)
    return b @ evolve_mid(rho0, probe, phi) @ dag(b)


def detector_intensity(rho0: np.ndarray, probe: ProbeModel, phi: float) -> float:
    """Population of the lower output port, <0|rho_particle|0>, in [0, 1]."""
    rho1 = partial_trace_probe(evolve_pre_detection(rho0, probe, phi), probe.d)
    return float(rho1[1, 1].real)


def scan_fringes(rho0: np.ndarray, probe: ProbeModel, n_points: int) -> FringeScan:
    """Sample the lower-port intensity on a uniform phase grid and fit it.

    The intensity of an ideal two-path fringe is ``a + Re(b e^{i phi})``;
    projecting the samples onto the first harmonic recovers (a, b)
    exactly on a uniform grid, so the reported visibility ``|b|/a``
    carries no grid-resolution error.
    """
    if n_points < 8:
        raise ValidationError("too-few-samples", f"need at least 8 phase samples, got {n_points}")
    d = probe.d
    rho0 = _require_joint_density_dims(rho0, d)
    pre = probe_coupling(probe) @ beam_splitter(d)
    rho_mid = pre @ rho0 @ dag(pre)
    b_out = beam_splitter(d)

    phis = np.linspace(0.0, 2.0 * math.pi, n_points, endpoint=False)
    intensities = np.empty(n_points)
    for k, phi in enumerate(phis):
        u = b_out @ phase_shifter(phi, d)
        rho_out = u @ rho_mid @ dag(u)
        intensities[k] = partial_trace_probe(rho_out, d)[1, 1].real

    mean = float(np.mean(intensities))
    harmonic = complex(2.0 * np.mean(intensities * np.exp(-1j * phis)))
    amp = abs(harmonic)
    if mean <= 0.0:
        visibility = 0.0
    else:
        visibility = clamp01(amp / mean, what="visibility")
    return FringeScan(
        phis=phis,
        intensities=intensities,
        i_max=mean + amp,
        i_min=max(mean - amp, 0.0),
        visibility=visibility,
    )

"""Coherent-field cavity crossing in a truncated number basis.

A two-level atom flies through a cavity holding a coherent field with
vacuum Rabi frequency ``rabi``.  The resonant interaction during the
crossing conditions the field on the atomic branch: after a balanced
(half-probability) pulse the joint state is

    (|upper> (x) |field_+>  +  |lower> (x) |field_->) / sqrt(2)

with the two conditioned field vectors built from cosine and sine
rotations of the number-state amplitudes.  The field then plays exactly
the role of a which-way probe, so the complementarity measures apply
with zero effective path bias: the balanced pulse splits the atomic
populations evenly.

All sums run in a number basis truncated so the lost tail probability is
below a configurable bound; the sine-rotated vector populates one extra
level, so conditioned vectors live in dimension ``cutoff + 2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import measures
from .linalg import (
    KET_LOWER,
    KET_UPPER,
    ValidationError,
    concurrence_from_reduced,
    kron,
    partial_trace_particle,
    partial_trace_probe,
    projector,
    require_normalized,
)

_MAX_MEAN_PHOTONS = 100.0
_DEFAULT_TAIL = 1e-12


@dataclass(frozen=True)
class CoherentField:
    """Number-basis amplitudes of a coherent state, truncated at ``cutoff``."""

    alpha: complex
    cutoff: int
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=complex)
        if coeffs.shape != (self.cutoff + 1,):
            raise ValidationError(
                "bad-dims", f"expected {self.cutoff + 1} amplitudes, got shape {coeffs.shape}"
            )
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "alpha", complex(self.alpha))

    @property
    def tail(self) -> float:
        """Probability lost to the truncation."""
        return max(1.0 - float(np.sum(np.abs(self.coeffs) ** 2)), 0.0)


def _cutoff_floor(mean_photons: float) -> int:
    # One extra margin decade over the field support; the sine-rotated
    # vector needs one level beyond it, provided separately.
    return math.ceil(10.0 * (1.0 + mean_photons))


def coherent_field(alpha: complex, eps: float = _DEFAULT_TAIL, *, cutoff: int | None = None) -> CoherentField:
    """Coherent-state amplitudes with tail probability at most ``eps``.

    Amplitudes follow the running product c_{n+1} = c_n alpha/sqrt(n+1)
    from c_0 = exp(-|alpha|^2/2); no factorials are formed.  The cutoff
    is the smallest truncation meeting the tail bound, floored at
    10 (1 + |alpha|^2); pass ``cutoff`` to override (e.g. to probe
    truncation robustness).
    """
    a = complex(alpha)
    mean = abs(a) ** 2
    if mean > _MAX_MEAN_PHOTONS:
        raise ValidationError("alpha-too-large", f"|alpha|^2 = {mean!r} exceeds {_MAX_MEAN_PHOTONS}")
    if eps <= 0.0:
        raise ValidationError("out-of-range", f"tail bound must be positive, got {eps!r}")

    coeffs = [complex(math.exp(-mean / 2.0))]
    weight = abs(coeffs[0]) ** 2
    if cutoff is None:
        n = 0
        floor = _cutoff_floor(mean)
        while 1.0 - weight > eps or n < floor:
            c = coeffs[-1] * a / math.sqrt(n + 1.0)
            coeffs.append(c)
            weight += abs(c) ** 2
            n += 1
        return CoherentField(alpha=a, cutoff=n, coeffs=np.array(coeffs))

    for n in range(cutoff):
        coeffs.append(coeffs[-1] * a / math.sqrt(n + 1.0))
    out = CoherentField(alpha=a, cutoff=cutoff, coeffs=np.array(coeffs))
    if out.tail > eps:
        raise ValidationError("cutoff-too-small", f"tail {out.tail!r} exceeds {eps!r} at cutoff {cutoff}")
    return out


@dataclass(frozen=True)
class RamseyConfig:
    """Coherent amplitude, vacuum Rabi frequency, and number-basis cutoff.

    Times are reported in units of 1/rabi.  A ``cutoff`` of None selects
    the default truncation of :func:`coherent_field`.
    """

    alpha: complex
    rabi: float = 1.0
    cutoff: int | None = None

    def __post_init__(self) -> None:
        a = complex(self.alpha)
        if abs(a) ** 2 > _MAX_MEAN_PHOTONS:
            raise ValidationError("alpha-too-large", f"|alpha|^2 = {abs(a) ** 2!r}")
        if self.rabi <= 0.0:
            raise ValidationError("out-of-range", f"Rabi frequency must be positive, got {self.rabi!r}")
        object.__setattr__(self, "alpha", a)
        if self.cutoff is None:
            object.__setattr__(self, "cutoff", coherent_field(a).cutoff)
        elif self.cutoff < _cutoff_floor(abs(a) ** 2):
            raise ValidationError(
                "cutoff-too-small",
                f"cutoff {self.cutoff} below the floor {_cutoff_floor(abs(a) ** 2)}",
            )


@dataclass(frozen=True)
class RamseyResult:
    """Pulse time, conditioned-state overlap, and the derived measures."""

    pulse_time: float
    overlap: complex
    distinguishability: float
    probe_predictability: float
    probe_visibility: float
    concurrence: float

    def __post_init__(self) -> None:
        r1 = self.distinguishability**2 + abs(self.overlap) ** 2 - 1.0
        r2 = (
            self.probe_predictability**2
            + self.probe_visibility**2
            + self.concurrence**2
            - 1.0
        )
        for name, residual in (("overlap", r1), ("duality", r2)):
            if abs(residual) > 1e-10:
                raise ValidationError("report-inconsistent", f"{name} identity off by {residual!r}")


def pulse_time(cfg: RamseyConfig) -> float:
    """Smallest interaction time that balances the atomic populations.

    Root of sum_n |c_n|^2 cos^2(rabi sqrt(n+1) t) = 1/2, located by a
    bracketing scan (step well under the fastest Rabi period) followed
    by bisection to relative width 1e-12.
    """
    fld = coherent_field(cfg.alpha, cutoff=cfg.cutoff)
    weights = np.abs(fld.coeffs) ** 2
    freqs = cfg.rabi * np.sqrt(np.arange(fld.cutoff + 1) + 1.0)

    def balance(t: float) -> float:
        return float(weights @ np.cos(freqs * t) ** 2 - 0.5)

    step = math.pi / (40.0 * cfg.rabi * math.sqrt(fld.cutoff + 1.0))
    t_max = 2.0 * math.pi / cfg.rabi
    lo = 0.0
    hi = step
    while balance(hi) > 0.0:
        lo = hi
        hi += step
        if hi > t_max:
            raise ValidationError("no-root", f"no balanced pulse found in (0, {t_max!r}]")
    while hi - lo > 1e-12 * hi:
        mid = 0.5 * (lo + hi)
        if balance(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def post_interaction_states(cfg: RamseyConfig, t: float) -> tuple[np.ndarray, np.ndarray]:
    """Field vectors conditioned on the atom leaving excited / de-excited.

    Both are returned in dimension cutoff + 2 (the sine branch shifts
    every number state up by one).  The sqrt(2) prefactor makes each
    vector unit norm exactly when ``t`` balances the populations; a
    deviation beyond 1e-6 is rejected.
    """
    if t <= 0.0:
        raise ValidationError("out-of-range", f"interaction time must be positive, got {t!r}")
    fld = coherent_field(cfg.alpha, cutoff=cfg.cutoff)
    n = fld.cutoff
    angles = cfg.rabi * np.sqrt(np.arange(n + 1) + 1.0) * t
    sqrt2 = math.sqrt(2.0)

    plus = np.zeros(n + 2, dtype=complex)
    plus[: n + 1] = sqrt2 * fld.coeffs * np.cos(angles)
    minus = np.zeros(n + 2, dtype=complex)
    minus[1:] = sqrt2 * fld.coeffs * np.sin(angles)

    for name, vec in (("cosine-branch", plus), ("sine-branch", minus)):
        norm = float(np.linalg.norm(vec))
        if abs(norm - 1.0) > 1e-6:
            raise ValidationError(
                "normalization-broken", f"{name} vector has norm {norm!r} at t = {t!r}"
            )
    return plus, minus


def ramsey_report(cfg: RamseyConfig) -> RamseyResult:
    """Pulse time, conditioned-state overlap, and complementarity measures.

    The probe predictability is computed from the projector averages on
    the reduced field state and must agree with the closed form at zero
    path bias; the concurrence comes from the reduced atomic state of
    the explicit joint vector.
    """
    t_i = pulse_time(cfg)
    plus, minus = post_interaction_states(cfg, t_i)
    overlap = complex(np.vdot(minus, plus))
    dist = measures.distinguishability(overlap)

    psi = (kron(KET_UPPER, plus) + kron(KET_LOWER, minus)) / math.sqrt(2.0)
    require_normalized(psi, tol=1e-10, what="joint atom-field state")
    rho = projector(psi)
    dim = plus.size
    c_state = concurrence_from_reduced(partial_trace_probe(rho, dim))

    pp_state = measures.probe_predictability_state(partial_trace_particle(rho, dim), plus, minus)
    pp_formula = measures.probe_predictability_formula(0.0, dist)
    if abs(pp_state - pp_formula) > 1e-9:
        raise ValidationError(
            "projector-asymmetry",
            f"projector route {pp_state!r} disagrees with the closed form {pp_formula!r}",
        )

    return RamseyResult(
        pulse_time=t_i,
        overlap=overlap,
        distinguishability=dist,
        probe_predictability=pp_state,
        probe_visibility=measures.probe_visibility(0.0, dist),
        concurrence=c_state,
    )


def relaxation_reset(
    result: RamseyResult | measures.ComplementarityReport,
) -> measures.ComplementarityReport:
    """Report after the cavity field is externally refreshed.

    Once dissipation and the feeding source restore the bare coherent
    field, the conditioned states coincide and the path record becomes
    inaccessible: distinguishability 0, probe predictability 1, no
    entanglement.  Models the refresh as an instantaneous overlap reset
    (no dissipative dynamics); idempotent, and accepts a prior reset
    report as input.
    """
    del result
    return measures.report_from_distinguishability(0.0, 0.0)

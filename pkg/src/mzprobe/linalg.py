"""Dense complex linear algebra for qubit (x) d-level pure states.

Conventions used across the package:

* the qubit (the interfering particle) is the slow, leftmost tensor
  factor: entry ``i*d + k`` of a joint vector on C^2 (x) C^d is the
  amplitude of qubit level ``i`` and probe level ``k``;
* ``|1> = (1, 0)`` labels the upper interferometer arm and
  ``|0> = (0, 1)`` the lower one, so ``SIGMA_Z |1> = +|1>``.

Only 2x2 spectral analysis is ever needed (the particle is a qubit), so
reduced-state eigenvalues come from the trace/determinant quadratic in
closed form rather than a general eigensolver.
"""

from __future__ import annotations

import math
from typing import NamedTuple

import numpy as np

# Structural checks (norms, unitarity, construction) are held to
# CONSTRUCTION_TOL; identities accumulated over several floating-point
# steps, and density-matrix checks, to the looser IDENTITY_TOL.
CONSTRUCTION_TOL = 1e-12
IDENTITY_TOL = 1e-10


class ValidationError(ValueError):
    """A value failed a structural check; ``code`` is a stable identifier."""

    def __init__(self, code: str, detail: str = ""):
        self.code = code
        super().__init__(f"{code}: {detail}" if detail else code)


KET_UPPER = np.array([1.0, 0.0], dtype=complex)  # |1>, upper arm
KET_LOWER = np.array([0.0, 1.0], dtype=complex)  # |0>, lower arm

IDENTITY_2 = np.eye(2, dtype=complex)
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]], dtype=complex)  # -i|1><0| + i|0><1|
SIGMA_Z = np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
SIGMA_MINUS = np.array([[0.0, 0.0], [1.0, 0.0]], dtype=complex)  # |0><1|


def dag(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return m.conj().T


def kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Kronecker product with the left factor as the slow index."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


def projector(psi: np.ndarray) -> np.ndarray:
    """Rank-one projector |psi><psi|."""
    psi = np.asarray(psi, dtype=complex)
    return np.outer(psi, psi.conj())


def clamp01(x: float, *, tol: float = CONSTRUCTION_TOL, what: str = "value") -> float:
    """Snap float noise within ``tol`` outside [0, 1]; larger excursions are bugs."""
    if -tol <= x < 0.0:
        return 0.0
    if 1.0 < x <= 1.0 + tol:
        return 1.0
    if x < 0.0 or x > 1.0:
        raise ValidationError("out-of-range", f"{what} = {x!r} outside [0, 1] beyond {tol}")
    return float(x)


def is_normalized(v: np.ndarray, tol: float = CONSTRUCTION_TOL) -> bool:
    v = np.asarray(v, dtype=complex)
    return abs(float(np.vdot(v, v).real) - 1.0) <= tol


def require_normalized(v: np.ndarray, tol: float = CONSTRUCTION_TOL, what: str = "state vector") -> None:
    if not is_normalized(v, tol):
        norm2 = float(np.vdot(v, v).real)
        raise ValidationError("not-normalized", f"{what} has squared norm {norm2!r}")


def is_unitary(m: np.ndarray, tol: float = CONSTRUCTION_TOL) -> bool:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return bool(np.max(np.abs(m @ dag(m) - np.eye(m.shape[0]))) <= tol)


def require_unitary(m: np.ndarray, tol: float = CONSTRUCTION_TOL, what: str = "matrix") -> None:
    if not is_unitary(m, tol):
        raise ValidationError("not-unitary", f"{what} is not unitary within {tol}")


def is_density(m: np.ndarray, tol: float = IDENTITY_TOL) -> bool:
    """Hermitian, unit trace and positive semidefinite within ``tol``."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    if np.max(np.abs(m - dag(m))) > tol:
        return False
    if abs(float(np.trace(m).real) - 1.0) > tol:
        return False
    return bool(np.min(np.linalg.eigvalsh((m + dag(m)) / 2)) >= -tol)


def require_density(m: np.ndarray, tol: float = IDENTITY_TOL, what: str = "matrix") -> None:
    if not is_density(m, tol):
        raise ValidationError("not-a-density", f"{what} is not a density matrix within {tol}")


def _require_joint_dims(rho: np.ndarray, d: int) -> None:
    if d < 1 or rho.ndim != 2 or rho.shape != (2 * d, 2 * d):
        raise ValidationError("bad-dims", f"expected a {2 * d}x{2 * d} operator, got shape {rho.shape}")


def partial_trace_probe(rho: np.ndarray, d: int) -> np.ndarray:
    """Trace the d-level probe out of a joint operator: 2d x 2d -> 2 x 2."""
    rho = np.asarray(rho, dtype=complex)
    _require_joint_dims(rho, d)
    return np.trace(rho.reshape(2, d, 2, d), axis1=1, axis2=3)


def partial_trace_particle(rho: np.ndarray, d: int) -> np.ndarray:
    """Trace the particle qubit out of a joint operator: 2d x 2d -> d x d."""
    rho = np.asarray(rho, dtype=complex)
    _require_joint_dims(rho, d)
    return np.trace(rho.reshape(2, d, 2, d), axis1=0, axis2=2)


def bloch_vector(rho: np.ndarray) -> np.ndarray:
    """Bloch components (x, y, z) of a 2x2 operator."""
    rho = np.asarray(rho, dtype=complex)
    return np.array(
        [
            float(np.trace(rho @ SIGMA_X).real),
            float(np.trace(rho @ SIGMA_Y).real),
            float(np.trace(rho @ SIGMA_Z).real),
        ]
    )


def _det2(m: np.ndarray) -> complex:
    return m[0, 0] * m[1, 1] - m[0, 1] * m[1, 0]


class SchmidtPair(NamedTuple):
    """Squared Schmidt coefficients of a qubit-probe pure state, largest first."""

    lambda1: float
    lambda2: float


def schmidt_coefficients(psi: np.ndarray) -> SchmidtPair:
    """Squared Schmidt coefficients of a pure state on C^2 (x) C^d.

    Computed from the 2x2 reduced state: its eigenvalues solve
    ``lam^2 - lam + det = 0`` because the trace is one.
    """
    psi = np.asarray(psi, dtype=complex)
    if psi.ndim != 1 or psi.size < 4 or psi.size % 2:
        raise ValidationError("bad-dims", f"expected a vector on C^2 (x) C^d, got shape {psi.shape}")
    require_normalized(psi)
    amps = psi.reshape(2, -1)
    rho1 = amps @ dag(amps)
    det = float(_det2(rho1).real)
    disc = math.sqrt(max(1.0 - 4.0 * det, 0.0))
    lam1 = clamp01(0.5 * (1.0 + disc), what="schmidt coefficient")
    return SchmidtPair(lam1, 1.0 - lam1)


def concurrence_from_reduced(rho1: np.ndarray) -> float:
    """Concurrence of a pure bipartite state from its 2x2 reduced state.

    For a pure joint state the concurrence squared is four times the
    determinant of either reduced state.  The caller is responsible for
    the purity of the joint state; mixed-state concurrence is out of
    scope here.
    """
    rho1 = np.asarray(rho1, dtype=complex)
    if rho1.shape != (2, 2):
        raise ValidationError("bad-dims", f"expected a 2x2 matrix, got shape {rho1.shape}")
    det = float(_det2(rho1).real)
    if det < -CONSTRUCTION_TOL:
        raise ValidationError("not-a-density", f"reduced state has determinant {det!r}")
    return clamp01(math.sqrt(max(4.0 * det, 0.0)), what="concurrence")

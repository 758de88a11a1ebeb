"""Shared random-state generators and independent oracles for the tests.

The oracles here deliberately avoid the library's own code paths:
partial traces are explicit index sums, the Kronecker product is a
double loop, and 2x2 eigenvalues come from scanning the characteristic
polynomial for sign changes.
"""

from __future__ import annotations

import numpy as np

from mzprobe.interferometer import ParticleState, ProbeModel


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary via QR with phase-fixed diagonal."""
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    phases = np.diagonal(r) / np.abs(np.diagonal(r))
    return q * phases


def random_state(rng: np.random.Generator, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def random_bloch(rng: np.random.Generator) -> ParticleState:
    v = rng.standard_normal(3)
    v = v / np.linalg.norm(v)
    return ParticleState(*v)


def random_probe(rng: np.random.Generator, d: int) -> ProbeModel:
    return ProbeModel(
        m=random_state(rng, d),
        u_plus=random_unitary(rng, d),
        u_minus=random_unitary(rng, d),
    )


def loop_kron(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Brute-force Kronecker product by the block index formula."""
    r1, c1 = a.shape
    r2, c2 = b.shape
    out = np.zeros((r1 * r2, c1 * c2), dtype=complex)
    for i1 in range(r1):
        for j1 in range(c1):
            for i2 in range(r2):
                for j2 in range(c2):
                    out[i1 * r2 + i2, j1 * c2 + j2] = a[i1, j1] * b[i2, j2]
    return out


def loop_trace_probe(rho: np.ndarray, d: int) -> np.ndarray:
    """Index-sum partial trace over the probe: rho1[i,j] = sum_k rho[(i,k),(j,k)]."""
    out = np.zeros((2, 2), dtype=complex)
    for i in range(2):
        for j in range(2):
            for k in range(d):
                out[i, j] += rho[i * d + k, j * d + k]
    return out


def loop_trace_particle(rho: np.ndarray, d: int) -> np.ndarray:
    """Index-sum partial trace over the particle: rho2[k,l] = sum_i rho[(i,k),(i,l)]."""
    out = np.zeros((d, d), dtype=complex)
    for k in range(d):
        for m in range(d):
            for i in range(2):
                out[k, m] += rho[i * d + k, i * d + m]
    return out


def charpoly_eigs_2x2(rho: np.ndarray, grid: int = 4001) -> list[float]:
    """Eigenvalues of a Hermitian 2x2 matrix by scanning det(rho - lam) for
    sign changes and bisecting each bracket."""

    def char(lam: float) -> float:
        shifted = rho - lam * np.eye(2)
        return float((shifted[0, 0] * shifted[1, 1] - shifted[0, 1] * shifted[1, 0]).real)

    lams = np.linspace(-0.25, 1.25, grid)
    vals = np.array([char(x) for x in lams])
    roots = []
    for k in range(grid - 1):
        if vals[k] == 0.0:
            roots.append(float(lams[k]))
        elif vals[k] * vals[k + 1] < 0.0:
            lo, hi = float(lams[k]), float(lams[k + 1])
            for _ in range(200):
                if hi - lo <= 1e-14:
                    break
                mid = 0.5 * (lo + hi)
                if char(lo) * char(mid) <= 0.0:
                    hi = mid
                else:
                    lo = mid
            roots.append(0.5 * (lo + hi))
    return sorted(roots, reverse=True)


def closed_form_intensity(particle: ParticleState, gamma: complex, phi: float) -> float:
    """Lower-port population from the two-path fringe law.

    Doubling it gives the textbook fringe expression
    1 + Re[(z0 - i y0) gamma e^{i phi}], which ranges over [0, 2].
    """
    modulation = ((particle.z0 - 1j * particle.y0) * gamma * np.exp(1j * phi)).real
    return 0.5 * (1.0 + modulation)

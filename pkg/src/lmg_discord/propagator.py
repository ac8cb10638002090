"""Diagonalisation of Hamiltonian blocks and their unitary propagators."""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .model import HamiltonianBlock

__all__ = [
    "BlockEigensystem",
    "BlockPropagator",
    "eigensystem",
    "analytic_eigensystem",
    "block_propagator",
    "propagator_series",
    "scalar_phase",
]

# relative gap below which eigenvalues count as degenerate
_DEGENERACY_TOL = 1e-8


@dataclass(frozen=True)
class BlockEigensystem:
    """Eigenpairs of a block; column ``j`` of ``vectors`` belongs to ``energies[j]``."""

    m_index: int
    energies: np.ndarray
    vectors: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.energies)


@dataclass(frozen=True)
class BlockPropagator:
    m_index: int
    time: float
    matrix: np.ndarray

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


def _fix_signs(vectors):
    # largest-magnitude component of every column made positive
    idx = np.argmax(np.abs(vectors), axis=0)
    signs = np.sign(vectors[idx, np.arange(vectors.shape[1])])
    signs[signs == 0] = 1.0
    return vectors * signs


def _eig2(a, b, x):
    mean, half_gap = 0.5 * (a + b), 0.5 * (a - b)
    rad = math.hypot(half_gap, x)
    energies = np.array([mean - rad, mean + rad])
    if x == 0.0:
        vecs = np.eye(2) if a <= b else np.array([[0.0, 1.0], [1.0, 0.0]])
        return energies, vecs
    # rotation angle of the symmetric 2x2 [[a, x], [x, b]]
    phi = 0.5 * math.atan2(2 * x, a - b)
    c, s = math.cos(phi), math.sin(phi)
    # (c, s) is the upper eigenvector, (-s, c) the lower
    vecs = np.array([[-s, c], [c, s]])
    return energies, vecs


def eigensystem(block: HamiltonianBlock) -> BlockEigensystem:
    """Eigenvalues (ascending) and orthonormal eigenvectors of ``block``.

    Closed form for 1x1 and 2x2 blocks, LAPACK ``eigh`` for 3x3. Both stay
    valid when eigenvalues are degenerate.
    """
    if block.dim == 1:
        energies, vecs = np.array([block.alpha]), np.ones((1, 1))
    elif block.dim == 2:
        energies, vecs = _eig2(block.alpha, block.beta, block.xi)
    else:
        energies, vecs = np.linalg.eigh(block.matrix)
    return BlockEigensystem(block.m_index, energies, _fix_signs(vecs))


def _cubic_roots(h):
    # trigonometric solution for the eigenvalues of a real symmetric 3x3
    q = np.trace(h) / 3
    shifted = h - q * np.eye(3)
    p = math.sqrt(np.sum(shifted ** 2) / 6)
    if p == 0.0:
        return np.full(3, q)
    r = np.linalg.det(shifted / p) / 2
    phi = math.acos(min(1.0, max(-1.0, r))) / 3
    e_hi = q + 2 * p * math.cos(phi)
    e_lo = q + 2 * p * math.cos(phi + 2 * math.pi / 3)
    return np.array([e_lo, 3 * q - e_hi - e_lo, e_hi])


def analytic_eigensystem(block: HamiltonianBlock) -> BlockEigensystem | None:
    """Eigensystem of a 3x3 block from the closed-form tridiagonal eigenvectors.

    Eigenvalues come from the trigonometric cubic solution. Each vector is
    ``(xi (E - gamma), (E - alpha)(E - gamma), kappa (E - alpha))``
    normalised. Returns ``None`` when two eigenvalues are closer than
    ``1e-8 * max|H|`` or a vector norm vanishes; the formula is undefined
    there.
    """
    if block.dim != 3:
        raise ValueError("analytic eigenvectors exist for 3x3 blocks only")
    h = block.matrix
    scale = max(1.0, np.max(np.abs(h)))
    energies = _cubic_roots(h)
    if np.min(np.diff(energies)) < _DEGENERACY_TOL * scale:
        return None
    a, g, x, k = block.alpha, block.gamma, block.xi, block.kappa
    cols = []
    for e in energies:
        v = np.array([x * (e - g), (e - a) * (e - g), k * (e - a)])
        norm = np.linalg.norm(v)
        if norm < _DEGENERACY_TOL * scale ** 2:
            return None
        cols.append(v / norm)
    return BlockEigensystem(block.m_index, energies, _fix_signs(np.column_stack(cols)))


def scalar_phase(energy: float, t: float) -> complex:
    """Evolution factor ``exp(-i E t)`` of a one-dimensional subspace."""
    return cmath.exp(-1j * energy * t)


def propagator_series(eig: BlockEigensystem, times) -> np.ndarray:
    """``U_M(t)`` for every entry of ``times``; shape ``(len(times), d, d)``."""
    times = np.asarray(times, dtype=float).reshape(-1)
    phases = np.exp(-1j * np.outer(times, eig.energies))
    v = eig.vectors
    return np.einsum("ij,tj,kj->tik", v, phases, v)


def block_propagator(eig: BlockEigensystem, t: float) -> BlockPropagator:
    """``U_M(t) = V diag(exp(-i E t)) V^T``."""
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t}")
    return BlockPropagator(eig.m_index, float(t), propagator_series(eig, [t])[0])

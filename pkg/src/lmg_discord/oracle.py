"""Brute-force reference calculations for small baths.

Nothing here uses the block decomposition or the closed-form discord: the
Hamiltonian is assembled from collective spin matrices on the full
``(N + 1) x 4`` space, and discord is minimised over a lattice of
projective measurements.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError
from .model import ModelParams, XState, ground_state_index

__all__ = [
    "MAX_ORACLE_SPINS",
    "DenseOperator",
    "MeasurementAngles",
    "dicke_operators",
    "dense_hamiltonian",
    "dense_evolve",
    "conditional_entropy",
    "discord_bruteforce",
]

MAX_ORACLE_SPINS = 64

# qubit ordering |uu>, |ud>, |du>, |dd>; single-qubit |u> = index 0
_SIGMA_PLUS = np.array([[0.0, 1.0], [0.0, 0.0]])
_SIGMA_Z = np.diag([1.0, -1.0])
_I2 = np.eye(2)


@dataclass(frozen=True)
class DenseOperator:
    """Matrix on ``span{|N/2,M>} x span{|uu>, |ud>, |du>, |dd>}``.

    Bath index runs over ``M = N/2, N/2 - 1, ..., -N/2``.
    """

    n_spins: int
    matrix: np.ndarray

    @property
    def dimension(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class MeasurementAngles:
    theta: float
    phi: float


def dicke_operators(n_spins: int):
    """``(S^+, S^z)`` for total spin ``N/2`` with M in descending order."""
    j = n_spins / 2
    m = j - np.arange(n_spins + 1)
    s_z = np.diag(m)
    # <M+1|S^+|M> = sqrt(j(j+1) - M(M+1)); row M+1 sits one above row M
    s_plus = np.diag(np.sqrt(j * (j + 1) - m[1:] * (m[1:] + 1)), k=1)
    return s_plus, s_z


def _qubit_collective():
    s_plus = np.kron(_SIGMA_PLUS, _I2) + np.kron(_I2, _SIGMA_PLUS)
    s_z = 0.5 * (np.kron(_SIGMA_Z, _I2) + np.kron(_I2, _SIGMA_Z))
    return s_plus, s_z


def _check_scale(n_spins):
    if n_spins > MAX_ORACLE_SPINS:
        raise InvalidParameterError(
            f"oracle is limited to N <= {MAX_ORACLE_SPINS}, got {n_spins}")


def dense_hamiltonian(params: ModelParams) -> DenseOperator:
    """Collective-spin Hamiltonian of bath plus qubits on the Dicke sector."""
    n = params.n_spins
    _check_scale(n)
    bp, bz = dicke_operators(n)
    bm = bp.T
    qp, qz = _qubit_collective()
    qm = qp.T
    eye_b, eye_q = np.eye(n + 1), np.eye(4)
    h_bath = -params.lam / n * (bp @ bm + bm @ bp - n * eye_b) - 2 * bz
    h = (np.kron(h_bath, eye_q)
         - 2 * params.lam_prime / n * (np.kron(bm, qp) + np.kron(bp, qm))
         - 2 * np.kron(eye_b, qz))
    return DenseOperator(n, h)


def dense_evolve(params: ModelParams, initial: XState, t, hamiltonian: DenseOperator | None = None):
    """Exact reduced qubit state from the full dense evolution.

    ``t`` may be a scalar (returns an :class:`XState`) or a sequence
    (returns a list). The bath starts in its ground Dicke state.
    """
    h = (hamiltonian or dense_hamiltonian(params)).matrix
    n = params.n_spins
    energies, vecs = np.linalg.eigh(h)
    bath0 = np.zeros(n + 1)
    bath0[params.half - ground_state_index(params.lam, n)] = 1.0
    rho0 = np.kron(np.outer(bath0, bath0), initial.computational_matrix())
    rho0_eig = vecs.conj().T @ rho0 @ vecs
    scalar = np.ndim(t) == 0
    out = []
    for tau in np.atleast_1d(t):
        ph = np.exp(-1j * energies * tau)
        rho = vecs @ (ph[:, None] * rho0_eig * ph.conj()[None, :]) @ vecs.conj().T
        red = np.einsum("aiaj->ij", rho.reshape(n + 1, 4, n + 1, 4))
        out.append(_to_xstate(red))
    return out[0] if scalar else out


def _to_xstate(rho):
    # computational basis |uu>, |ud>, |du>, |dd>
    return XState(
        a=rho[0, 0].real,
        b=0.5 * (rho[1, 1].real + rho[2, 2].real),
        c=rho[3, 3].real,
        y=rho[1, 2].real,
        z=rho[0, 3],
    )


def _entropy2(rho):
    # von Neumann entropy (bits) of stacked 2x2 Hermitian matrices, unnormalised
    # input of trace p is normalised first; returns p * S
    p = (rho[..., 0, 0] + rho[..., 1, 1]).real
    diff = (rho[..., 0, 0] - rho[..., 1, 1]).real
    rad = np.sqrt(diff ** 2 + 4 * np.abs(rho[..., 0, 1]) ** 2)
    out = np.zeros_like(p)
    for ev in (0.5 * (p + rad), 0.5 * (p - rad)):
        ev = np.clip(ev, 0.0, None)
        with np.errstate(divide="ignore", invalid="ignore"):
            term = np.where((ev > 0) & (p > 0), -ev * np.log2(ev / np.where(p > 0, p, 1)), 0.0)
        out += term
    return out


def conditional_entropy(rho4: np.ndarray, theta, phi):
    """``sum_i p_i S(rho_a^(i))`` after measuring qubit b along (theta, phi).

    ``rho4`` is a 4x4 density matrix in the computational basis; ``theta``
    and ``phi`` broadcast against each other.
    """
    theta, phi = np.broadcast_arrays(np.asarray(theta, float), np.asarray(phi, float))
    ket1 = np.stack([np.cos(theta), np.exp(1j * phi) * np.sin(theta)], axis=-1)
    ket2 = np.stack([np.exp(-1j * phi) * np.sin(theta), -np.cos(theta)], axis=-1)
    # blocks[(j, l)] = <., j| rho |., l> as a flat 2x2 over qubit a
    blocks = rho4.reshape(2, 2, 2, 2).transpose(1, 3, 0, 2).reshape(4, 4)
    total = 0.0
    for ket in (ket1, ket2):
        # unnormalised post-measurement state of qubit a
        weights = (ket.conj()[..., :, None] * ket[..., None, :]).reshape(*ket.shape[:-1], 4)
        sub = (weights @ blocks).reshape(*ket.shape[:-1], 2, 2)
        total = total + _entropy2(sub)
    return total


def _scalar_conditional(blocks, theta, phi):
    # same quantity as conditional_entropy for one angle pair, without numpy
    # dispatch overhead; blocks[j][l] is the 2x2 block <.,j| rho |.,l>
    c, s = math.cos(theta), math.sin(theta)
    e = cmath.exp(1j * phi)
    total = 0.0
    for ket in ((c, e * s), (s / e, -c)):
        k0, k1 = ket
        w = ((k0.conjugate() * k0, k0.conjugate() * k1),
             (k1.conjugate() * k0, k1.conjugate() * k1))
        m00 = m01 = m11 = 0j
        for j in range(2):
            for l in range(2):
                b = blocks[j][l]
                m00 += w[j][l] * b[0]
                m01 += w[j][l] * b[1]
                m11 += w[j][l] * b[3]
        p = (m00 + m11).real
        if p <= 0:
            continue
        rad = math.sqrt(((m00 - m11).real) ** 2 + 4 * abs(m01) ** 2)
        for ev in (0.5 * (p + rad), 0.5 * (p - rad)):
            if ev > 0:
                total -= ev * math.log2(ev / p)
    return total


def _vn_entropy(rho):
    ev = np.clip(np.linalg.eigvalsh(rho), 0.0, None)
    ev = ev[ev > 0]
    return float(-np.sum(ev * np.log2(ev)))


def _golden(f, lo, hi, tol):
    inv = (math.sqrt(5) - 1) / 2
    x1, x2 = hi - inv * (hi - lo), lo + inv * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > tol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - inv * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + inv * (hi - lo)
            f2 = f(x2)
    x = 0.5 * (lo + hi)
    return x, f(x)


def _minimise(rho4, coarse_grid, refine_iters):
    thetas = np.linspace(0.0, math.pi / 2, coarse_grid + 1)
    phis = np.linspace(0.0, 2 * math.pi, coarse_grid, endpoint=False)
    grid = conditional_entropy(rho4, thetas[:, None], phis[None, :])
    # argmin on the flattened (theta, phi) array picks the lexicographically first
    i, j = np.unravel_index(np.argmin(grid), grid.shape)
    best_t, best_p, best = thetas[i], phis[j], float(grid[i, j])
    coarse = best
    r = rho4.reshape(2, 2, 2, 2)
    blocks = [[tuple(complex(v) for v in r[:, j, :, l].reshape(-1)) for l in range(2)]
              for j in range(2)]
    h_t, h_p = thetas[1] - thetas[0], phis[1] - phis[0]
    for _ in range(refine_iters):
        lo, hi = max(0.0, best_t - h_t), min(math.pi / 2, best_t + h_t)
        t_new, f_new = _golden(lambda x: _scalar_conditional(blocks, x, best_p), lo, hi, 1e-10)
        if f_new < best:
            best_t, best = t_new, f_new
        p_new, f_new = _golden(lambda x: _scalar_conditional(blocks, best_t, x),
                               best_p - h_p, best_p + h_p, 1e-10)
        if f_new < best:
            best_p, best = p_new % (2 * math.pi), f_new
        h_t, h_p = 0.5 * h_t, 0.5 * h_p
    return coarse, best, MeasurementAngles(best_t, best_p)


def discord_bruteforce(state: XState, coarse_grid: int = 128, refine_iters: int = 20,
                       full: bool = False):
    """Discord ``S(rho_b) - S(rho_ab) + min sum_i p_i S(rho_a^(i))``.

    Scans a ``(coarse_grid + 1) x coarse_grid`` lattice over
    ``theta in [0, pi/2]``, ``phi in [0, 2 pi)`` and then refines with
    alternating golden-section line searches whose windows halve every
    round. With ``full=True`` returns ``(discord, coarse_discord, angles)``.
    """
    if coarse_grid < 64:
        raise InvalidParameterError("coarse_grid must be >= 64")
    rho = state.computational_matrix()
    r = rho.reshape(2, 2, 2, 2)
    rho_b = np.einsum("ijik->jk", r)
    base = _vn_entropy(rho_b) - _vn_entropy(rho)
    coarse, best, angles = _minimise(rho, coarse_grid, refine_iters)
    if full:
        return base + best, base + coarse, angles
    return base + best

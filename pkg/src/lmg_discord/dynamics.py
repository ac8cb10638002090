"""Reduced two-qubit dynamics with the bath starting in its ground state.

Each two-qubit triplet component of ``|G> = |N/2, M_G>`` lives in its own
invariant subspace: ``|M_G>|1,1>`` is the first basis vector of ``H_{M_G}``,
``|M_G>|1,0>`` the second of ``H_{M_G-1}`` and ``|M_G>|1,-1>`` the third of
``H_{M_G-2}``. The singlet only picks up a phase, so its population is
constant.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .errors import InvalidParameterError, PhaseDispatchError
from .model import (
    ModelParams,
    Phase,
    XState,
    bell_weights,
    build_block,
    ground_state_index,
    one_dim_energies,
)
from .propagator import BlockEigensystem, eigensystem, propagator_series

__all__ = [
    "EvolutionContext",
    "make_context",
    "reduced_state_symmetric",
    "reduced_state_broken",
    "reduced_state",
    "evolve",
    "heaviside",
]

log = logging.getLogger(__name__)


def heaviside(x) -> float:
    """Step function with ``heaviside(0) == 1``."""
    return 1.0 if x >= 0 else 0.0


@dataclass(frozen=True)
class EvolutionContext:
    """Time-independent data needed to evolve one parameter set.

    ``eigensystems`` maps M to the eigensystem of ``H_M`` for
    ``M in (M_G, M_G - 1, M_G - 2)``. The top subspace ``M = N/2`` is
    one-dimensional with energy ``-(N + 2)``.
    """

    params: ModelParams
    phase: Phase
    ground_index: int
    eigensystems: dict = field(repr=False)

    def dims(self) -> dict:
        return {m: eig.dim for m, eig in self.eigensystems.items()}

    def padded(self, m_index: int, times) -> np.ndarray:
        """Propagators of ``H_M`` embedded in the top-left of 3x3 zero arrays."""
        eig = self.eigensystems[m_index]
        u = propagator_series(eig, times)
        out = np.zeros((u.shape[0], 3, 3), dtype=complex)
        out[:, : eig.dim, : eig.dim] = u
        return out


def _subspace_eigensystem(params, m):
    if m == params.half:
        energy = one_dim_energies(params, "top")
        return BlockEigensystem(m, np.array([energy]), np.ones((1, 1)))
    return eigensystem(build_block(params, m))


def make_context(params: ModelParams) -> EvolutionContext:
    phase = params.phase
    m_g = ground_state_index(params.lam, params.n_spins)
    if m_g - 2 < -params.half:
        # I(lambda) >= 0 always, so this needs N < 4
        raise InvalidParameterError(f"ground state M={m_g} too close to -N/2")
    if phase is Phase.CRITICAL:
        log.warning("lambda = 1 is the critical point; using the "
                    "symmetry-broken ground state |N/2, N/2>")
    eigs = {m: _subspace_eigensystem(params, m) for m in (m_g, m_g - 1, m_g - 2)}
    return EvolutionContext(params, phase, m_g, eigs)


def _weights(params):
    # populations of |1,1>, |1,-1>, |1,0>, |0,0> and the |1,1><1,-1| coherence
    kx, ky, kz = params.kx, params.ky, params.kz
    singlet, psi_plus, _, _ = bell_weights(kx, ky, kz)
    return (1 + kz) / 4, psi_plus, singlet, (kx - ky) / 4


def _assemble(a, b, c, y, z):
    return [XState(*vals) for vals in zip(a, b, c, y, z)]


def _symmetric_arrays(ctx, times):
    p = ctx.params
    w_edge, w_zero, w_singlet, coh = _weights(p)
    m_g = ctx.ground_index
    u = ctx.padded(m_g, times)
    u1 = ctx.padded(m_g - 1, times)
    u2 = ctx.padded(m_g - 2, times)
    absq = lambda arr, i, j: np.abs(arr[:, i, j]) ** 2  # noqa: E731
    gate = heaviside(p.half - m_g - 1)
    a = w_edge * (absq(u, 0, 0) + absq(u2, 0, 2)) + w_zero * absq(u1, 0, 1)
    c = w_edge * (gate * absq(u, 0, 2) + absq(u2, 2, 2)) + w_zero * absq(u1, 1, 2)
    pop_triplet0 = w_edge * (absq(u, 0, 1) + absq(u2, 1, 2)) + w_zero * absq(u1, 1, 1)
    b = 0.5 * (pop_triplet0 + w_singlet)
    y = 0.5 * (pop_triplet0 - w_singlet)
    z = coh * u[:, 0, 0] * np.conj(u2[:, 2, 2])
    return a, b, c, y, z


def _broken_arrays(ctx, times):
    p = ctx.params
    w_edge, w_zero, w_singlet, coh = _weights(p)
    half = p.half
    times = np.asarray(times, dtype=float).reshape(-1)
    u1 = ctx.padded(half - 1, times)
    u2 = ctx.padded(half - 2, times)
    absq = lambda arr, i, j: np.abs(arr[:, i, j]) ** 2  # noqa: E731
    a = w_edge * (1 + absq(u2, 0, 2)) + w_zero * absq(u1, 0, 1)
    c = w_edge * absq(u2, 2, 2)
    pop_triplet0 = w_edge * absq(u2, 1, 2) + w_zero * absq(u1, 1, 1)
    b = 0.5 * (pop_triplet0 + w_singlet)
    y = 0.5 * (pop_triplet0 - w_singlet)
    z = coh * np.exp(1j * (p.n_spins + 2) * times) * np.conj(u2[:, 2, 2])
    return a, b, c, y, z


def reduced_state_symmetric(ctx: EvolutionContext, t: float) -> XState:
    """Reduced state for a bath in ``|N/2, I(lambda)>``, ``lambda > 1``.

    Missing matrix elements of lower-dimensional subspaces near the top of
    the Dicke ladder are zero, which covers ``I(lambda) >= N/2 - 1``.
    """
    if ctx.phase is not Phase.SYMMETRIC:
        raise PhaseDispatchError(f"symmetric-phase state requested for {ctx.phase.value} bath")
    return _assemble(*_symmetric_arrays(ctx, [t]))[0]


def reduced_state_broken(ctx: EvolutionContext, t: float) -> XState:
    """Reduced state for a bath in ``|N/2, N/2>``, ``lambda <= 1``."""
    if ctx.phase is Phase.SYMMETRIC:
        raise PhaseDispatchError("symmetry-broken state requested for symmetric bath")
    return _assemble(*_broken_arrays(ctx, [t]))[0]


def _arrays(ctx, times):
    if ctx.phase is Phase.SYMMETRIC:
        return _symmetric_arrays(ctx, times)
    return _broken_arrays(ctx, times)


def reduced_state(params: ModelParams, t: float, ctx: EvolutionContext | None = None) -> XState:
    """Reduced two-qubit state at time ``t``, dispatched on the bath phase."""
    ctx = ctx or make_context(params)
    if ctx.phase is Phase.SYMMETRIC:
        return reduced_state_symmetric(ctx, t)
    return reduced_state_broken(ctx, t)


def evolve(params: ModelParams, times, ctx: EvolutionContext | None = None) -> list[XState]:
    """Reduced states on a time grid (vectorised over ``times``)."""
    ctx = ctx or make_context(params)
    return _assemble(*_arrays(ctx, times))

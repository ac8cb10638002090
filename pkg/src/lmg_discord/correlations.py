"""Quantum discord, concurrence and entanglement of formation of X states.

All entropies are in bits.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, InvalidStateError
from .model import XState

__all__ = [
    "CorrelationRecord",
    "entropy",
    "binary_entropy",
    "discord_candidates",
    "discord_xstate",
    "concurrence",
    "eof_from_concurrence",
    "evaluate",
]

log = logging.getLogger(__name__)

# negative probabilities above -_DUST are roundoff and clamped to zero
_DUST = 1e-10
_SUM_TOL = 1e-9


def entropy(probabilities) -> float:
    """Shannon entropy ``-sum p log2 p`` with ``0 log 0 = 0``."""
    p = np.asarray(probabilities, dtype=float).reshape(-1)
    if p.size and p.min() < -_DUST:
        raise InvalidStateError(f"negative probability {p.min():.3g}")
    total = p.sum()
    if abs(total - 1) > _SUM_TOL:
        raise InvalidStateError(f"probabilities sum to {total!r}")
    p = p[p > 0]
    return float(-np.sum(p * np.log2(p)))


def binary_entropy(x: float) -> float:
    x = min(1.0, max(0.0, x))
    return entropy([x, 1 - x])


@dataclass(frozen=True)
class CorrelationRecord:
    time: float
    discord: float
    classical: float
    mutual_info: float
    concurrence: float
    eof: float
    purity: float


def discord_candidates(state: XState) -> tuple[float, float]:
    """The two candidate discords ``(D1, D2)``.

    ``D1`` corresponds to a sigma_z measurement on one qubit, ``D2`` to a
    measurement in the equatorial plane at the optimal azimuth.
    """
    a, b, c = state.a, state.b, state.c
    s_marg = entropy(state.marginal())
    s_joint = entropy(state.eigenvalues())
    base = s_marg - s_joint
    # conditional entropy of the z measurement: H(joint) - H(outcomes)
    d1 = base + entropy([a, b, b, c]) - entropy([a + b, b + c])
    theta = math.sqrt((a - c) ** 2 + 4 * (abs(state.y) + abs(state.z)) ** 2)
    theta = min(theta, 1.0)
    d2 = base + entropy([(1 - theta) / 2, (1 + theta) / 2])
    return d1, d2


def discord_xstate(state: XState) -> tuple[float, float, float]:
    """Return ``(discord, classical, mutual_info)``; discord is ``min(D1, D2)``."""
    s_marg = entropy(state.marginal())
    mutual = 2 * s_marg - entropy(state.eigenvalues())
    discord = min(discord_candidates(state))
    return discord, mutual - discord, mutual


def concurrence(state: XState) -> float:
    """Wootters concurrence ``2 max(0, |Y| - sqrt(AC), |Z| - B)``, clipped to [0, 1]."""
    val = 2 * max(0.0, abs(state.y) - math.sqrt(max(state.a * state.c, 0.0)),
                  abs(state.z) - state.b)
    return min(val, 1.0)


def eof_from_concurrence(zeta: float) -> float:
    """Entanglement of formation of a two-qubit state with concurrence ``zeta``."""
    if not -1e-12 <= zeta <= 1 + 1e-12:
        raise InvalidParameterError(f"concurrence must lie in [0, 1], got {zeta}")
    zeta = min(1.0, max(0.0, zeta))
    if zeta == 0.0:
        return 0.0
    lam = 0.5 * (1 + math.sqrt(1 - zeta * zeta))
    return binary_entropy(lam)


def evaluate(state: XState, t: float = 0.0) -> CorrelationRecord:
    """All correlation measures of ``state`` at time ``t``."""
    discord, classical, mutual = discord_xstate(state)
    zeta = concurrence(state)
    return CorrelationRecord(
        time=float(t),
        discord=discord,
        classical=classical,
        mutual_info=mutual,
        concurrence=zeta,
        eof=eof_from_concurrence(zeta),
        purity=state.purity(),
    )

"""Parameters, Hamiltonian blocks and initial states for two qubits in an
isotropic LMG bath.

Energies and times are dimensionless (hbar = 1). The two-qubit basis used
for reduced states is ``(|uu>, |dd>, |ud>, |du>)``; the bath is described by
Dicke states ``|N/2, M>``.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError, InvalidStateError

__all__ = [
    "ModelParams",
    "Phase",
    "HamiltonianBlock",
    "XState",
    "classify_phase",
    "nearest_integer",
    "ground_state_index",
    "build_block",
    "one_dim_energies",
    "bell_weights",
    "initial_xstate",
]

# tolerance on the Bell-diagonal weights of the initial state
_WEIGHT_TOL = 1e-12
# tolerance for XState trace/positivity
_STATE_TOL = 1e-10


def bell_weights(kx, ky, kz):
    """Eigenvalues of ``(I + sum_a k_a s_a x s_a) / 4``.

    Returned in the order (singlet, Psi+, Phi-, Phi+).
    """
    return (
        (1 - kx - ky - kz) / 4,
        (1 + kx + ky - kz) / 4,
        (1 + kx - ky + kz) / 4,
        (1 - kx + ky + kz) / 4,
    )


@dataclass(frozen=True)
class ModelParams:
    """Full experiment definition.

    Attributes
    ----------
    lam : float
        Bath spin-spin coupling, > 0.
    lam_prime : float
        Qubit-bath coupling, >= 0.
    n_spins : int
        Number of bath spins N, even and >= 4.
    kx, ky, kz : float
        Correlation coefficients of the initial two-qubit state.
    """

    lam: float
    lam_prime: float
    n_spins: int
    kx: float = 1.0
    ky: float = -1.0
    kz: float = 1.0

    def __post_init__(self):
        for name in ("lam", "lam_prime", "kx", "ky", "kz"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")
        if not self.lam > 0:
            raise InvalidParameterError(f"lambda must be > 0, got {self.lam}")
        if self.lam_prime < 0:
            raise InvalidParameterError(
                f"lambda_prime must be >= 0, got {self.lam_prime}")
        n = self.n_spins
        if isinstance(n, bool) or int(n) != n or n < 4 or n % 2:
            raise InvalidParameterError(
                f"n_spins must be an even integer >= 4, got {n}")
        object.__setattr__(self, "n_spins", int(n))
        for name in ("kx", "ky", "kz"):
            if abs(getattr(self, name)) > 1:
                raise InvalidParameterError(f"{name} must lie in [-1, 1]")
        _check_weights(self.kx, self.ky, self.kz)

    @property
    def half(self) -> int:
        """Total bath spin N/2."""
        return self.n_spins // 2

    @property
    def phase(self) -> "Phase":
        return classify_phase(self.lam)


class Phase(enum.Enum):
    SYMMETRY_BROKEN = "symmetry-broken"
    CRITICAL = "critical"
    SYMMETRIC = "symmetric"


def classify_phase(lam: float) -> Phase:
    """Bath phase for coupling ``lam``; the transition sits at ``lam == 1``."""
    if not lam > 0:
        raise InvalidParameterError(f"lambda must be > 0, got {lam}")
    if lam < 1:
        return Phase.SYMMETRY_BROKEN
    if lam > 1:
        return Phase.SYMMETRIC
    return Phase.CRITICAL


def nearest_integer(x: float) -> int:
    """Round to nearest integer, halves away from zero."""
    return int(math.copysign(math.floor(abs(x) + 0.5), x))


def ground_state_index(lam: float, n_spins: int) -> int:
    """Magnetic quantum number M of the bath ground state ``|N/2, M>``.

    ``N/2`` for ``0 < lam <= 1``; otherwise the integer nearest to
    ``N / (2 lam)``, clamped to ``[-N/2, N/2]``.
    """
    if not lam > 0:
        raise InvalidParameterError(f"lambda must be > 0, got {lam}")
    if int(n_spins) != n_spins or n_spins < 4 or n_spins % 2:
        raise InvalidParameterError(
            f"n_spins must be an even integer >= 4, got {n_spins}")
    half = int(n_spins) // 2
    if lam <= 1:
        return half
    return max(-half, min(half, nearest_integer(n_spins / (2 * lam))))


@dataclass(frozen=True)
class HamiltonianBlock:
    """Restriction of H to the invariant subspace H_M.

    The ordered basis is ``|N/2,M>|1,1>, |N/2,M+1>|1,0>, |N/2,M+2>|1,-1>``,
    truncated to the first ``dim`` vectors near the top of the Dicke ladder.
    ``gamma`` and ``kappa`` are 0 when ``dim < 3``; ``xi`` is 0 when
    ``dim == 1``.
    """

    m_index: int
    dim: int
    alpha: float
    beta: float = 0.0
    gamma: float = 0.0
    xi: float = 0.0
    kappa: float = 0.0

    @property
    def matrix(self) -> np.ndarray:
        a, b, g, x, k = self.alpha, self.beta, self.gamma, self.xi, self.kappa
        full = np.array([[a, x, 0.0], [x, b, k], [0.0, k, g]])
        return full[: self.dim, : self.dim]


def _exchange_energy(lam, n, m):
    # <N/2,M| H_B |N/2,M> without the field term -2M
    return -lam / (2 * n) * (n * n - 4 * m * m)


def _coupling(lam_prime, n, m):
    # <M+1|<1,0| H_I |M>|1,1>, equivalently <M+2|<1,-1| H_I |M+1>|1,0>
    # with m -> m+1
    return -lam_prime / n * math.sqrt(max(2 * n * (n + 2) - 8 * m * (m + 1), 0))


def build_block(params: ModelParams, m_index: int) -> HamiltonianBlock:
    """Hamiltonian block H_M for ``-N/2 <= M <= N/2 - 1``.

    Returns the 3x3 block for ``M <= N/2 - 2`` and the 2x2 block
    (``kappa = gamma = 0``) for ``M = N/2 - 1``.
    """
    n, half = params.n_spins, params.half
    if int(m_index) != m_index or not -half <= m_index <= half - 1:
        raise InvalidParameterError(
            f"m_index must be an integer in [{-half}, {half - 1}], got {m_index}")
    m = int(m_index)
    lam, lp = params.lam, params.lam_prime
    # total S_z is conserved, so the field term is shared by all three states
    zeeman = -2 * (m + 1)
    alpha = _exchange_energy(lam, n, m) + zeeman
    beta = _exchange_energy(lam, n, m + 1) + zeeman
    xi = _coupling(lp, n, m)
    if m == half - 1:
        return HamiltonianBlock(m, 2, alpha, beta, xi=xi)
    gamma = _exchange_energy(lam, n, m + 2) + zeeman
    kappa = _coupling(lp, n, m + 1)
    return HamiltonianBlock(m, 3, alpha, beta, gamma, xi, kappa)


def one_dim_energies(params: ModelParams, which: str, m_index: int | None = None) -> float:
    """Energy of a one-dimensional invariant subspace.

    ``which="top"`` gives the energy of ``|N/2,N/2>|1,1>``; ``which="singlet"``
    the energy of ``|N/2,M>|0,0>``, i.e. the bath energy of ``|N/2,M>``.
    """
    n = params.n_spins
    if which == "top":
        return -(n + 2.0)
    if which == "singlet":
        if m_index is None or int(m_index) != m_index or abs(m_index) > params.half:
            raise InvalidParameterError(
                f"singlet energy needs |m_index| <= {params.half}, got {m_index}")
        m = int(m_index)
        return _exchange_energy(params.lam, n, m) - 2 * m
    raise InvalidParameterError(f"unknown one-dimensional subspace {which!r}")


def _check_weights(kx, ky, kz):
    weights = bell_weights(kx, ky, kz)
    worst = min(weights)
    if worst < -_WEIGHT_TOL:
        raise InvalidStateError(
            f"(kx, ky, kz) = ({kx}, {ky}, {kz}) is not a density matrix: "
            f"eigenvalue {worst:.6g}")


@dataclass(frozen=True)
class XState:
    """Two-qubit X state ``[[A, Z], [Z*, C]] (+) [[B, Y], [Y, B]]``.

    The outer block acts on ``(|uu>, |dd>)``, the inner one on
    ``(|ud>, |du>)``.
    """

    a: float
    b: float
    c: float
    y: float
    z: complex

    def __post_init__(self):
        for name in "abcy":
            object.__setattr__(self, name, float(getattr(self, name)))
        object.__setattr__(self, "z", complex(self.z))
        trace = self.a + 2 * self.b + self.c
        if abs(trace - 1) > _STATE_TOL:
            raise InvalidStateError(f"X state trace is {trace!r}, expected 1")
        worst = min(self.eigenvalues())
        if worst < -_STATE_TOL:
            raise InvalidStateError(f"X state has negative eigenvalue {worst:.6g}")

    def eigenvalues(self) -> tuple[float, float, float, float]:
        """Spectrum in ascending order."""
        mean = 0.5 * (self.a + self.c)
        rad = math.hypot(0.5 * (self.a - self.c), abs(self.z))
        return tuple(sorted((mean - rad, mean + rad, self.b - self.y, self.b + self.y)))

    def matrix(self) -> np.ndarray:
        """4x4 density matrix in the basis ``(|uu>, |dd>, |ud>, |du>)``."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0], rho[1, 1] = self.a, self.c
        rho[0, 1], rho[1, 0] = self.z, self.z.conjugate()
        rho[2, 2] = rho[3, 3] = self.b
        rho[2, 3] = rho[3, 2] = self.y
        return rho

    def computational_matrix(self) -> np.ndarray:
        """4x4 density matrix in the basis ``(|uu>, |ud>, |du>, |dd>)``."""
        order = [0, 2, 3, 1]
        return self.matrix()[np.ix_(order, order)]

    def marginal(self) -> tuple[float, float]:
        """Diagonal of either single-qubit marginal, ``(A + B, B + C)``."""
        return self.a + self.b, self.b + self.c

    def purity(self) -> float:
        return (self.a ** 2 + self.c ** 2 + 2 * abs(self.z) ** 2
                + 2 * self.b ** 2 + 2 * self.y ** 2)


def initial_xstate(kx: float, ky: float, kz: float) -> XState:
    """Initial state ``(I + kx XX + ky YY + kz ZZ) / 4`` as an X state."""
    _check_weights(kx, ky, kz)
    return XState(
        a=(1 + kz) / 4,
        b=(1 - kz) / 4,
        c=(1 + kz) / 4,
        y=(kx + ky) / 4,
        z=(kx - ky) / 4,
    )

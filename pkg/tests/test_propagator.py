import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lmg_discord.model import HamiltonianBlock, ModelParams, build_block
from lmg_discord.propagator import (
    analytic_eigensystem,
    block_propagator,
    eigensystem,
    propagator_series,
    scalar_phase,
)


def _blocks():
    out = []
    for lam, lp, n in [(1.0, 1.0, 4), (0.75, 2.0, 20), (1.25, 5.0, 1000), (1.7, 0.3, 12)]:
        p = ModelParams(lam, lp, n)
        for m in sorted({-n // 2, -1, 0, n // 2 - 2, n // 2 - 1}):
            out.append(build_block(p, m))
    return out


BLOCKS = _blocks()

block_strategy = st.builds(
    lambda a, b, g, x, k: HamiltonianBlock(0, 3, a, b, g, x, k),
    *[st.floats(-20, 20, allow_nan=False)] * 5)


def test_diagonal_block():
    blk = HamiltonianBlock(0, 3, -1.0, 0.5, 2.0)
    eig = eigensystem(blk)
    np.testing.assert_array_equal(eig.energies, [-1.0, 0.5, 2.0])
    np.testing.assert_array_equal(eig.vectors, np.eye(3))
    t = 0.7
    u = block_propagator(eig, t).matrix
    np.testing.assert_allclose(u, np.diag(np.exp(-1j * np.array([-1.0, 0.5, 2.0]) * t)), atol=1e-15)


def test_hand_block_eigenvalues_match_characteristic_polynomial():
    blk = build_block(ModelParams(1.0, 1.0, 4), -2)
    # det(E - H) for [[2, -r2, 0], [-r2, 0.5, -r3], [0, -r3, 0]]
    # = E^3 - 2.5 E^2 - 4 E + 6
    roots = np.sort(np.roots([1.0, -2.5, -4.0, 6.0]).real)
    np.testing.assert_allclose(eigensystem(blk).energies, roots, atol=1e-12)
    np.testing.assert_allclose(roots, np.linalg.eigvalsh(blk.matrix), atol=1e-12)


@given(st.floats(-10, 10), st.floats(-10, 10), st.floats(-10, 10))
def test_two_by_two_closed_form(a, b, x):
    blk = HamiltonianBlock(0, 2, a, b, xi=x)
    eig = eigensystem(blk)
    rad = math.sqrt((a - b) ** 2 / 4 + x * x)
    np.testing.assert_allclose(eig.energies, [(a + b) / 2 - rad, (a + b) / 2 + rad],
                               atol=1e-12)
    _check_eigensystem(blk, eig)


def _check_eigensystem(blk, eig):
    v, h = eig.vectors, blk.matrix
    assert np.all(np.diff(eig.energies) >= 0)
    assert np.max(np.abs(v.T @ v - np.eye(blk.dim))) < 1e-12
    scale = max(1.0, np.max(np.abs(h)))
    assert np.max(np.abs(v @ np.diag(eig.energies) @ v.T - h)) < 1e-10 * scale


@pytest.mark.parametrize("blk", BLOCKS, ids=lambda b: f"M{b.m_index}d{b.dim}")
def test_eigensystem_invariants(blk):
    eig = eigensystem(blk)
    _check_eigensystem(blk, eig)
    # sign convention: dominant component positive
    dom = eig.vectors[np.argmax(np.abs(eig.vectors), axis=0), range(blk.dim)]
    assert np.all(dom > 0)


@given(block_strategy)
def test_eigensystem_degenerate_safe(blk):
    _check_eigensystem(blk, eigensystem(blk))


def test_eigensystem_exact_degeneracy():
    blk = HamiltonianBlock(0, 3, 1.0, 1.0, 1.0)
    eig = eigensystem(blk)
    _check_eigensystem(blk, eig)
    assert analytic_eigensystem(blk) is None


@pytest.mark.parametrize("blk", [b for b in BLOCKS if b.dim == 3], ids=lambda b: f"M{b.m_index}")
def test_analytic_vectors_agree(blk):
    ana = analytic_eigensystem(blk)
    if blk.m_index == -1:
        # alpha == gamma and xi == kappa: (1, 0, -1) has E = alpha = gamma,
        # where the closed-form vector is 0/0
        assert blk.alpha == pytest.approx(blk.gamma) and ana is None
        return
    num = eigensystem(blk)
    np.testing.assert_allclose(ana.energies, num.energies, atol=1e-9 * max(1, np.abs(blk.matrix).max()))
    # columns equal up to sign; after the shared sign convention, exactly
    np.testing.assert_allclose(np.abs(ana.vectors.T @ num.vectors), np.eye(3), atol=1e-8)
    for t in (0.1, 1.3, 4.0):
        np.testing.assert_allclose(block_propagator(ana, t).matrix,
                                   block_propagator(num, t).matrix, atol=1e-9)


@pytest.mark.parametrize("blk", BLOCKS, ids=lambda b: f"M{b.m_index}d{b.dim}")
def test_identity_at_zero(blk):
    u = block_propagator(eigensystem(blk), 0.0).matrix
    np.testing.assert_allclose(u, np.eye(blk.dim), atol=1e-12)


def test_taylor_small_time():
    blk = build_block(ModelParams(1.0, 1.0, 4), -2)
    h, t = blk.matrix, 1e-3
    u = block_propagator(eigensystem(blk), t).matrix
    taylor = np.eye(3) - 1j * h * t - 0.5 * (h @ h) * t * t
    # remaining error is |H|^3 t^3 / 6 ~ 1e-8
    bound = np.linalg.norm(h, 2) ** 3 * t ** 3 / 6
    assert np.max(np.abs(u - taylor)) < 1.01 * bound
    assert np.max(np.abs(u - (np.eye(3) - 1j * h * t))) > bound


@settings(max_examples=50)
@given(st.sampled_from(BLOCKS), st.floats(0, 10), st.floats(0, 10))
def test_unitary_symmetric_group(blk, t1, t2):
    eig = eigensystem(blk)
    u1 = block_propagator(eig, t1).matrix
    u2 = block_propagator(eig, t2).matrix
    u12 = block_propagator(eig, t1 + t2).matrix
    assert np.max(np.abs(u1 @ u1.conj().T - np.eye(blk.dim))) < 1e-10
    np.testing.assert_array_almost_equal(u1, u1.T, decimal=12)
    assert np.max(np.abs(u1 @ u2 - u12)) < 1e-9


def test_series_matches_single():
    eig = eigensystem(BLOCKS[3])
    times = np.linspace(0, 3, 7)
    series = propagator_series(eig, times)
    for t, u in zip(times, series):
        np.testing.assert_array_equal(u, block_propagator(eig, t).matrix)


def test_scalar_phase():
    assert scalar_phase(-6.0, 0.0) == 1
    assert scalar_phase(-6.0, math.pi / 6) == pytest.approx(-1.0, abs=1e-15)
    rng = np.random.default_rng(3)
    for e, t in rng.uniform(-100, 100, (20, 2)):
        assert abs(scalar_phase(e, t)) == pytest.approx(1.0, abs=1e-15)
        assert scalar_phase(e, t) == pytest.approx(cmath.exp(-1j * e * t))


def test_nonfinite_time():
    with pytest.raises(ValueError):
        block_propagator(eigensystem(BLOCKS[0]), float("inf"))

from __future__ import annotations

import json

import numpy as np
import pytest
from scipy import stats

from tensor_atoms.core import ValidationError
from tensor_atoms.rmt import (
    ConvergenceError,
    corner_top_eigs,
    corollary_experiment,
    haar_unitary,
    jacobi_eigh,
    ks_2samp,
    ks_critical_value,
    max_corner_sum,
    sample_invariant_hermitian,
)


def random_hermitian(rng, n, size):
    z = rng.standard_normal((size, n, n)) + 1j * rng.standard_normal((size, n, n))
    return (z + np.conj(np.swapaxes(z, 1, 2))) / 2


def test_haar_is_unitary():
    u = haar_unitary(4, np.random.default_rng(0), size=50)
    eye = np.eye(4)
    assert np.max(np.abs(np.conj(np.swapaxes(u, 1, 2)) @ u - eye)) < 1e-12


def test_haar_phase_moments():
    # E|u_11|^2 = 1/n and the phase of u_11 is uniform for Haar U
    u = haar_unitary(3, np.random.default_rng(1), size=40_000)
    assert abs(np.mean(np.abs(u[:, 0, 0]) ** 2) - 1 / 3) < 0.01
    phases = np.angle(u[:, 0, 0])
    assert stats.kstest((phases + np.pi) / (2 * np.pi), "uniform").pvalue > 1e-3


def test_invariant_sample_examples():
    rng = np.random.default_rng(2)
    m = sample_invariant_hermitian([1.5, 1.5, 1.5], rng)
    assert np.max(np.abs(m - 1.5 * np.eye(3))) < 1e-12
    assert sample_invariant_hermitian([3.0], rng).shape == (1, 1)
    assert abs(sample_invariant_hermitian([3.0], rng)[0, 0] - 3.0) < 1e-12
    m = sample_invariant_hermitian([1, 0, -1], rng, size=200)
    assert np.max(np.abs(m - np.conj(np.swapaxes(m, 1, 2)))) <= 1e-12
    assert np.max(np.abs(jacobi_eigh(m) - np.array([1, 0, -1]))) < 1e-9


def test_unitary_invariance_smoke():
    spec = np.array([2.0, 1.0, -1.0])
    a = sample_invariant_hermitian(spec, np.random.default_rng(3), size=20_000)[:, 0, 0].real
    u = haar_unitary(3, np.random.default_rng(4), size=20_000)
    b = (np.abs(u[:, :, 0]) ** 2) @ spec
    assert ks_2samp(a, b) <= ks_critical_value(a.size, b.size, 1e-3)


def test_jacobi_reconstruction_and_ordering():
    rng = np.random.default_rng(5)
    for n in (1, 2, 3, 5, 8):
        m = random_hermitian(rng, n, 50)
        w, v = jacobi_eigh(m, vectors=True)
        assert np.all(np.diff(w, axis=1) <= 0)
        rec = (v * w[:, None, :]) @ np.conj(np.swapaxes(v, 1, 2))
        assert np.max(np.abs(rec - m)) < 1e-9
        assert np.max(np.abs(w - np.linalg.eigvalsh(m)[:, ::-1])) < 1e-9


def test_jacobi_matches_characteristic_roots():
    rng = np.random.default_rng(6)
    for n in (2, 3):
        for m in random_hermitian(rng, n, 30):
            roots = np.sort(np.roots(np.poly(m)).real)[::-1]
            assert np.max(np.abs(jacobi_eigh(m) - roots)) < 1e-8


def test_jacobi_single_and_tiny_entries():
    m = np.array([[1.0, 1e-310j], [-1e-310j, 2.0]])
    assert np.allclose(jacobi_eigh(m), [2.0, 1.0])
    assert np.allclose(jacobi_eigh(np.diag([3.0, -1.0, 2.0])), [3.0, 2.0, -1.0])


def test_jacobi_sweep_cap():
    m = np.array([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ConvergenceError):
        jacobi_eigh(m, max_sweeps=0)


def test_corner_examples():
    assert np.allclose(corner_top_eigs(np.diag([1.0, 3.0, 2.0])), [1.0, 3.0, 3.0])
    assert np.allclose(corner_top_eigs(2.0 * np.eye(3)), [2.0, 2.0, 2.0])
    assert np.allclose(corner_top_eigs(np.array([[0.0, 1.0], [1.0, 0.0]])), [0.0, 1.0])


def test_cauchy_interlacing():
    m = sample_invariant_hermitian([2, 1, 0, -1], np.random.default_rng(7), size=2000)
    c = corner_top_eigs(m)
    assert np.all(np.diff(c, axis=1) >= -1e-12)


def test_max_corner_sum():
    a = np.array([1.0, 2.0, 3.0])
    b = np.array([0.0, 5.0, 6.0])
    # k + l = 4: a1+b3, a2+b2, a3+b1
    assert max_corner_sum(a, b) == 7.0


def test_ks_matches_scipy():
    rng = np.random.default_rng(8)
    x, y = rng.normal(size=700), rng.normal(0.1, size=500)
    assert abs(ks_2samp(x, y) - stats.ks_2samp(x, y).statistic) < 1e-12
    assert abs(ks_critical_value(100, 100, 0.05) - 1.3581 * np.sqrt(0.02)) < 1e-3


def test_experiment_trivial_cases():
    r = corollary_experiment([1.5], [2.0], 1000, seed=0)
    assert r.ks_statistic == 0 and r.passed
    r = corollary_experiment([2, 0, -1], [0.5, 0.5, 0.5], 2000, seed=1, keep_samples=True)
    assert r.passed
    # scalar B: both statistics are the top eigenvalue of A plus 0.5, here 2.5
    assert np.max(np.abs(r.sum_top - 2.5)) < 1e-9
    assert np.max(np.abs(r.corner_max - 2.5)) < 1e-9
    assert r.ks_statistic == 0


def test_experiment_errors():
    with pytest.raises(ValidationError):
        corollary_experiment([1, 0], [1, 0, 0], 1000, seed=0)
    with pytest.raises(ValidationError):
        corollary_experiment([1, 0], [1, 0], 999, seed=0)


def test_experiment_reproducible_and_serializable():
    a = corollary_experiment([1, 0], [1, 0], 3000, seed=42, keep_samples=True)
    b = corollary_experiment([1, 0], [1, 0], 3000, seed=42, keep_samples=True)
    assert a.ks_statistic == b.ks_statistic and np.array_equal(a.sum_top, b.sum_top)
    data = json.loads(a.dumps())
    assert {"samples", "ks_statistic", "critical_value", "passed", "seed", "stream_seeds"} <= set(data)
    assert a.samples_csv().splitlines()[0] == "index,sum_top,corner_max"
    assert len(a.samples_csv().splitlines()) == 3001
    assert a.passed

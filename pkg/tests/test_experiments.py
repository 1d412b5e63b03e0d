from itertools import combinations

import numpy as np
import pytest

from graphsampling.errors import (
    DecompositionFailuresError,
    OutOfRangeError,
    ScalingUnavailableError,
)
from graphsampling.experiments import (
    ErConfig,
    cyclic_downsample_demo,
    cyclic_shift,
    dft_decomposition,
    dft_sampling_check,
    frame_bound_check,
    gen_erdos_renyi,
    success_curve,
    success_rate,
)
from graphsampling.graph_core import spectral_decompose


def _cyclic_matrix(n):
    mat = np.zeros((n, n))
    mat[np.arange(n), np.arange(-1, n - 1)] = 1.0
    return mat


class TestErdosRenyi:
    def test_complete_graph_at_p_one(self):
        shift = gen_erdos_renyi(6, 1.0, seed=0)
        expected = np.ones((6, 6)) - np.eye(6)
        assert np.array_equal(shift.weights.real, expected)

    def test_empty_graph_at_p_zero(self):
        shift = gen_erdos_renyi(6, 0.0, seed=0)
        assert np.abs(shift.weights).max() == 0.0

    def test_edge_density_concentrates(self):
        # Oracle: binomial concentration of the realized edge density.
        n, p = 500, 0.2
        shift = gen_erdos_renyi(n, p, seed=123)
        density = shift.weights.real.sum() / (n * (n - 1))
        assert abs(density - p) <= 0.01

    def test_undirected_is_symmetric(self):
        w = gen_erdos_renyi(30, 0.4, seed=5).weights
        assert np.array_equal(w, w.T)

    def test_bad_p_rejected(self):
        with pytest.raises(ValueError):
            gen_erdos_renyi(5, 1.5, seed=0)
        with pytest.raises(ValueError):
            ErConfig(n=5, p=0.0, trials=1, k=2)


class TestSuccessRate:
    def test_rank_one_band_near_certain(self):
        cfg = ErConfig(n=40, p=0.5, trials=40, k=1, seed=11)
        assert success_rate(cfg) >= 0.95

    def test_dense_graphs_succeed(self):
        cfg = ErConfig(n=60, p=0.5, trials=30, k=5, seed=4)
        assert success_rate(cfg) >= 0.9

    def test_curve_shape_monotone_within_noise(self):
        curve = success_curve(n=50, k=8, p_values=[0.1, 0.3, 0.5], trials=25, seed=7)
        rates = [r for _, r in curve.points]
        assert all(b >= a - 0.05 for a, b in zip(rates, rates[1:]))
        assert all(0.0 <= r <= 1.0 for r in rates)

    def test_deterministic(self):
        cfg = ErConfig(n=30, p=0.3, trials=20, k=4, seed=99)
        assert success_rate(cfg) == success_rate(cfg)

    def test_defective_graphs_error_out(self):
        # Sparse directed graphs are frequently nilpotent at this scale.
        cfg = ErConfig(n=4, p=0.25, trials=40, k=2, seed=99, directed=True)
        with pytest.raises(DecompositionFailuresError):
            success_rate(cfg)


class TestFrameBound:
    def test_full_sampling_has_zero_deviation(self):
        shift = gen_erdos_renyi(40, 0.4, seed=3)
        decomp = spectral_decompose(shift)
        report = frame_bound_check(decomp, k=5, m=40, trials=3, seed=0)
        assert report.max_deviation <= 1e-9
        assert report.fraction_within_half == 1.0
        assert not report.used_conjugate

    def test_implied_bounds(self):
        shift = gen_erdos_renyi(60, 0.4, seed=9)
        decomp = spectral_decompose(shift)
        report = frame_bound_check(decomp, k=4, m=30, trials=10, seed=1)
        low, high = report.implied_bounds
        assert low == 30 * (1 - report.max_deviation)
        assert high == 30 * (1 + report.max_deviation)
        assert len(report.deviations) == 10

    def test_complex_unitary_uses_conjugate(self):
        report = frame_bound_check(dft_decomposition(16), k=3, m=16, trials=2, seed=0)
        assert report.used_conjugate
        assert report.max_deviation <= 1e-9

    def test_oblique_basis_rejected(self, fivenode_decomp):
        with pytest.raises(ScalingUnavailableError):
            frame_bound_check(fivenode_decomp, k=2, m=3, trials=2, seed=0)

    def test_small_sample_counts_can_deviate(self):
        # Recorded, not asserted: m = k draws may exceed 1/2.
        shift = gen_erdos_renyi(50, 0.15, seed=21)
        decomp = spectral_decompose(shift)
        report = frame_bound_check(decomp, k=5, m=5, trials=20, seed=2)
        assert np.all(report.deviations >= 0.0)


class TestCyclic:
    def test_two_node_swap(self):
        shift = cyclic_shift(2)
        assert np.array_equal(shift.weights.real, [[0, 1], [1, 0]])
        lam = np.sort(np.linalg.eigvals(shift.weights).real)
        assert np.allclose(lam, [-1, 1], atol=1e-12)

    def test_eight_node_roots_of_unity(self):
        lam = np.linalg.eigvals(cyclic_shift(8).weights)
        roots = np.exp(-2j * np.pi * np.arange(8) / 8)
        dist = np.abs(lam[:, None] - roots[None, :])
        assert dist.min(axis=1).max() <= 1e-10

    def test_shift_action_is_cyclic_delay(self):
        n = 7
        x = np.arange(n, dtype=float)
        shifted = cyclic_shift(n).weights.real @ x
        assert np.array_equal(shifted, np.roll(x, 1))

    def test_dft_decomposition_reconstructs_shift(self):
        n = 12
        decomp = dft_decomposition(n)
        rebuilt = decomp.vectors @ np.diag(decomp.eigenvalues) @ decomp.vectors_inv
        assert np.allclose(rebuilt, _cyclic_matrix(n), atol=1e-12)


class TestDftSamplingCheck:
    def test_reference_index_set(self):
        assert dft_sampling_check(8, 3, (0, 3, 5))

    def test_exhaustive_all_subsets(self):
        assert all(dft_sampling_check(8, 3, c) for c in combinations(range(8), 3))

    def test_too_few_samples(self):
        assert not dft_sampling_check(8, 3, (0, 5))

    def test_redundant_samples(self):
        assert dft_sampling_check(10, 3, (0, 2, 5, 7, 9))


class TestCyclicDownsample:
    def test_eight_to_four(self):
        sampled = cyclic_downsample_demo(8)
        assert np.abs(sampled.shift - _cyclic_matrix(4)).max() <= 1e-8

    def test_four_to_swap(self):
        sampled = cyclic_downsample_demo(4)
        assert np.abs(sampled.shift - np.array([[0, 1], [1, 0]])).max() <= 1e-8

    def test_composition_eight_four_two(self):
        # Oracle: the sampled shift is again a cyclic graph, so downsampling
        # it reproduces the direct construction one size down.
        first = cyclic_downsample_demo(8)
        assert np.abs(first.shift - _cyclic_matrix(4)).max() <= 1e-8
        second = cyclic_downsample_demo(4)
        assert np.abs(second.shift - _cyclic_matrix(2)).max() <= 1e-8

    def test_result_is_permutation_matrix(self):
        for n in (4, 6, 10):
            sampled = cyclic_downsample_demo(n)
            snapped = np.round(sampled.shift.real)
            assert np.abs(sampled.shift - snapped).max() <= 1e-8
            assert np.array_equal(snapped.sum(axis=0), np.ones(n // 2))
            assert np.array_equal(snapped.sum(axis=1), np.ones(n // 2))

    def test_odd_size_rejected(self):
        with pytest.raises(OutOfRangeError):
            cyclic_downsample_demo(7)

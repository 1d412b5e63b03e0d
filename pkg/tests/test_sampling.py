from itertools import combinations

import numpy as np
import pytest

from graphsampling import golden
from graphsampling.errors import (
    DimensionMismatchError,
    DuplicateIndexError,
    NotBandlimitedWarning,
    NotQualifiedError,
    OutOfRangeError,
    SampleCountMismatchError,
)
from graphsampling.experiments import dft_decomposition
from graphsampling.graph_core import (
    bandlimited_signal,
    build_shift,
    first_order_difference,
    gft,
    reorder_spectrum,
    spectral_decompose,
)
from graphsampling.sampler_design import greedy_optimal_sampler
from graphsampling.sampling import (
    apply_sampling,
    build_interpolator,
    difference_preservation_residual,
    interpolate,
    is_qualified,
    make_sampling_operator,
    sampled_graph_shift,
)


class TestSamplingOperator:
    def test_fivenode_selection_matrix(self):
        psi = make_sampling_operator((0, 1, 3), 5)
        mat = psi.matrix()
        expected = np.zeros((3, 5))
        expected[0, 0] = expected[1, 1] = expected[2, 3] = 1.0
        assert np.array_equal(mat, expected)

    def test_identity_selection(self):
        psi = make_sampling_operator(range(6), 6)
        assert np.array_equal(psi.matrix(), np.eye(6))

    def test_order_preserving_selection(self):
        psi = make_sampling_operator((4, 0), 5)
        x = np.arange(5.0) * 10
        assert np.array_equal(apply_sampling(psi, x), [40.0, 0.0])

    def test_duplicate_rejected(self):
        with pytest.raises(DuplicateIndexError):
            make_sampling_operator((1, 1), 5)

    def test_out_of_range_rejected(self):
        with pytest.raises(OutOfRangeError):
            make_sampling_operator((0, 5), 5)
        with pytest.raises(OutOfRangeError):
            make_sampling_operator((), 5)


class TestApplySampling:
    def test_fivenode_values(self):
        psi = make_sampling_operator((0, 1, 3), 5)
        assert np.allclose(apply_sampling(psi, golden.SIGNAL), golden.SAMPLED_VALUES, atol=5e-3)

    def test_zero_signal(self):
        psi = make_sampling_operator((2, 0), 4)
        assert np.array_equal(apply_sampling(psi, np.zeros(4)), np.zeros(2))

    def test_full_identity(self):
        psi = make_sampling_operator(range(5), 5)
        x = np.arange(5.0)
        assert np.array_equal(apply_sampling(psi, x), x)

    def test_length_mismatch(self):
        psi = make_sampling_operator((0,), 3)
        with pytest.raises(DimensionMismatchError):
            apply_sampling(psi, np.ones(4))


class TestQualification:
    def test_fivenode_all_three_subsets_qualified(self, fivenode_decomp):
        for subset in combinations(range(5), 3):
            psi = make_sampling_operator(subset, 5)
            assert is_qualified(psi, fivenode_decomp, 3)

    def test_fewer_samples_than_band_never_qualified(self, fivenode_decomp):
        psi = make_sampling_operator((0, 1), 5)
        assert not is_qualified(psi, fivenode_decomp, 3)

    def test_cyclic_all_subsets_qualified(self):
        # Oracle: any rows of the Fourier block are independent (Vandermonde).
        decomp = dft_decomposition(8)
        for subset in combinations(range(8), 3):
            psi = make_sampling_operator(subset, 8)
            assert is_qualified(psi, decomp, 3)

    def test_structural_zero_row_not_qualified(self):
        # Diagonal shift: the eigenbasis is the identity, so any vertex
        # outside the band contributes an all-zero row.
        decomp = spectral_decompose(build_shift(np.diag([2.0, 1.0, 0.5])))
        assert abs(decomp.vectors[2, 0]) < 1e-12
        psi_bad = make_sampling_operator((2,), 3)
        assert not is_qualified(psi_bad, decomp, 1)
        psi_good = make_sampling_operator((0,), 3)
        assert is_qualified(psi_good, decomp, 1)

    def test_exhaustive_lower_bound_small_graphs(self, shift_factory):
        # With fewer samples than the bandwidth no subset can qualify.
        rng = np.random.default_rng(0)
        for n in (4, 6, 8):
            decomp = spectral_decompose(shift_factory(rng, n))
            for k in range(2, 5):
                if k > n:
                    continue
                for subset in combinations(range(n), k - 1):
                    psi = make_sampling_operator(subset, n)
                    assert not is_qualified(psi, decomp, k)


class TestInterpolator:
    def test_fivenode_interpolation_matrix(self, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        interp = build_interpolator(psi, fivenode_decomp, 3)
        assert np.abs(interp.matrix.real - golden.INTERPOLATION_MATRIX).max() <= 5e-3
        ident = interp.to_spectrum @ fivenode_decomp.vectors[list(psi.indices), :3]
        assert np.linalg.norm(ident - np.eye(3), 2) <= 1e-8

    def test_full_sampling_identity_on_band(self, fivenode_decomp):
        psi = make_sampling_operator(range(5), 5)
        interp = build_interpolator(psi, fivenode_decomp, 5)
        x = bandlimited_signal(fivenode_decomp, np.array([0.4, -1.0, 2.0, 0.3, 0.9]))
        assert np.allclose(interp.matrix @ apply_sampling(psi, x), x, atol=1e-9)

    def test_redundant_samples_match_least_squares(self, shift_factory):
        # Oracle: direct least-squares solve for the band coefficients.
        rng = np.random.default_rng(21)
        decomp = spectral_decompose(shift_factory(rng, 12))
        k = 4
        psi = make_sampling_operator((0, 2, 3, 5, 8, 11), 12)  # m = k + 2
        assert is_qualified(psi, decomp, k)
        interp = build_interpolator(psi, decomp, k)
        x = bandlimited_signal(decomp, rng.standard_normal(k))
        x_m = apply_sampling(psi, x)
        recovered = interpolate(interp, x_m)
        assert np.linalg.norm(recovered - x) <= 1e-8 * np.linalg.norm(x)
        sub = decomp.vectors[list(psi.indices), :k]
        lsq = np.linalg.lstsq(sub, x_m, rcond=None)[0]
        assert np.allclose(interp.to_spectrum @ x_m, lsq, atol=1e-9)

    def test_not_qualified_raises(self):
        decomp = spectral_decompose(build_shift(np.diag([2.0, 1.0, 0.5])))
        psi = make_sampling_operator((2,), 3)
        with pytest.raises(NotQualifiedError):
            build_interpolator(psi, decomp, 1)

    def test_recovers_fivenode_signal(self, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        interp = build_interpolator(psi, fivenode_decomp, 3)
        recovered = interpolate(interp, golden.SAMPLED_VALUES)
        assert np.allclose(recovered.real, golden.SIGNAL, atol=2e-2)

    def test_zero_samples_zero_signal(self, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        interp = build_interpolator(psi, fivenode_decomp, 3)
        assert np.allclose(interpolate(interp, np.zeros(3)), np.zeros(5))

    def test_sample_count_mismatch(self, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        interp = build_interpolator(psi, fivenode_decomp, 3)
        with pytest.raises(DimensionMismatchError):
            interpolate(interp, np.zeros(4))

    def test_spectrum_chain(self, fivenode_decomp):
        # Samples built from band coefficients interpolate to the band signal.
        rng = np.random.default_rng(4)
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        interp = build_interpolator(psi, fivenode_decomp, 3)
        coeffs = rng.standard_normal(3)
        basis = fivenode_decomp.vectors[list(psi.indices), :3]
        samples = basis @ coeffs
        assert np.allclose(
            interpolate(interp, samples),
            fivenode_decomp.vectors[:, :3] @ coeffs,
            atol=1e-10,
        )


class TestSampledGraph:
    def test_fivenode_sampled_shift(self, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        sg = sampled_graph_shift(psi, fivenode_decomp, 3)
        assert np.abs(sg.shift.real - golden.SAMPLED_SHIFT).max() <= 5e-3
        assert np.abs(sg.basis.real - golden.SAMPLED_BASIS).max() <= 5e-3
        assert np.allclose(sg.eigenvalues.real, golden.SAMPLED_EIGENVALUES, atol=5e-3)

    def test_full_sampling_returns_original_shift(self, fivenode_decomp, fivenode_shift):
        psi = make_sampling_operator(range(5), 5)
        sg = sampled_graph_shift(psi, fivenode_decomp, 5)
        assert np.allclose(sg.shift, fivenode_shift.weights, atol=1e-10)

    def test_cyclic_even_first_downsample(self):
        decomp = dft_decomposition(8)
        reordered = reorder_spectrum(decomp, [0, 2, 4, 6, 1, 3, 5, 7])
        psi = make_sampling_operator(range(4), 8)
        sg = sampled_graph_shift(psi, reordered, 4)
        expected = np.zeros((4, 4))
        expected[np.arange(4), np.arange(-1, 3)] = 1.0
        assert np.abs(sg.shift - expected).max() <= 1e-8

    def test_reconstruction_invariant(self, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        sg = sampled_graph_shift(psi, fivenode_decomp, 3)
        rebuilt = sg.basis @ np.diag(sg.eigenvalues) @ np.linalg.inv(sg.basis)
        assert np.linalg.norm(rebuilt - sg.shift) <= 1e-8 * np.linalg.norm(sg.shift)

    def test_requires_sample_count_equal_band(self, fivenode_decomp):
        psi = make_sampling_operator((0, 1, 2, 3), 5)
        with pytest.raises(SampleCountMismatchError):
            sampled_graph_shift(psi, fivenode_decomp, 3)


class TestDifferencePreservation:
    def test_fivenode_residual(self, fivenode_shift, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        sg = sampled_graph_shift(psi, fivenode_decomp, 3)
        x = bandlimited_signal(fivenode_decomp, golden.SPECTRUM[:3])
        x_s = apply_sampling(psi, x)
        sampled_diff = x_s - sg.shift @ x_s
        assert np.allclose(sampled_diff.real, golden.SAMPLED_DIFFERENCE, atol=5e-3)
        residual = difference_preservation_residual(psi, fivenode_decomp, 3, fivenode_shift, x)
        assert residual <= 1e-8 * np.linalg.norm(x)

    def test_zero_signal(self, fivenode_shift, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        assert difference_preservation_residual(
            psi, fivenode_decomp, 3, fivenode_shift, np.zeros(5)
        ) == 0.0

    def test_random_bandlimited_property(self, shift_factory):
        # Oracle: both sides evaluated directly, 50 random instances.
        rng = np.random.default_rng(17)
        for _ in range(50):
            shift = shift_factory(rng, 20)
            decomp = spectral_decompose(shift)
            k = int(rng.integers(1, 21))
            design = greedy_optimal_sampler(decomp, k, k)
            psi = make_sampling_operator(design.indices, 20)
            x = bandlimited_signal(decomp, rng.standard_normal(k))
            residual = difference_preservation_residual(psi, decomp, k, shift, x)
            assert residual <= 1e-8 * np.linalg.norm(x)

    def test_full_band_signal_warns(self, fivenode_shift, fivenode_decomp):
        psi = make_sampling_operator(golden.SAMPLE_INDICES, 5)
        x = fivenode_decomp.vectors @ np.ones(5)
        with pytest.warns(NotBandlimitedWarning):
            difference_preservation_residual(psi, fivenode_decomp, 3, fivenode_shift, x)


class TestRecoveryProperties:
    def test_perfect_recovery_sweep(self, shift_factory):
        rng = np.random.default_rng(33)
        for _ in range(30):
            n = int(rng.integers(5, 26))
            k = int(rng.integers(1, n + 1))
            decomp = spectral_decompose(shift_factory(rng, n))
            design = greedy_optimal_sampler(decomp, k, k)
            psi = make_sampling_operator(design.indices, n)
            interp = build_interpolator(psi, decomp, k)
            x = bandlimited_signal(decomp, rng.standard_normal(k) + 1j * rng.standard_normal(k))
            recovered = interpolate(interp, apply_sampling(psi, x))
            assert np.linalg.norm(recovered - x) <= 1e-8 * np.linalg.norm(x)

    def test_fourier_pair_duality(self, shift_factory):
        rng = np.random.default_rng(41)
        decomp = spectral_decompose(shift_factory(rng, 14))
        k = 5
        design = greedy_optimal_sampler(decomp, k, k)
        psi = make_sampling_operator(design.indices, 14)
        interp = build_interpolator(psi, decomp, k)
        basis = decomp.vectors[list(psi.indices), :k]
        x = bandlimited_signal(decomp, rng.standard_normal(k))
        x_m = apply_sampling(psi, x)
        head = gft(decomp, x)[:k]
        assert np.linalg.norm(basis @ head - x_m) <= 1e-9 * np.linalg.norm(x_m)
        assert np.linalg.norm(interp.to_spectrum @ x_m - head) <= 1e-9 * np.linalg.norm(head)

    def test_noise_image_bound(self, shift_factory):
        rng = np.random.default_rng(55)
        decomp = spectral_decompose(shift_factory(rng, 16))
        k = 4
        design = greedy_optimal_sampler(decomp, k, k)
        psi = make_sampling_operator(design.indices, 16)
        interp = build_interpolator(psi, decomp, k)
        bound = np.linalg.norm(decomp.vectors[:, :k], 2) * np.linalg.norm(interp.to_spectrum, 2)
        for _ in range(20):
            e = rng.standard_normal(k)
            assert np.linalg.norm(interp.matrix @ e) <= bound * np.linalg.norm(e) + 1e-12

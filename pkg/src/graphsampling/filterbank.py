"""Graph filter banks: split, sample, and perfectly rebuild full-band signals.

A full-band signal is the sum of complementary bandlimited pieces, obtained
by projecting onto disjoint groups of spectral slots. Each piece is exactly
bandlimited in a reordered basis that moves its band to the front, so it can
be sampled with a qualified operator of matching size and recovered exactly.
Summing the per-channel recoveries reproduces the original signal for any
partition of the spectrum, even an uneven one.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BandError, BandsNotPartitionError, DimensionMismatchError, NoQualifiedOperatorError
from .graph_core import SpectralDecomposition, reorder_spectrum
from .sampler_design import derive_seed, greedy_optimal_sampler, random_sampler
from .sampling import (
    Interpolator,
    SampledGraph,
    SamplingOperator,
    apply_sampling,
    build_interpolator,
    interpolate,
    is_qualified,
    make_sampling_operator,
    sampled_graph_shift,
)

RANDOM_RETRY_BUDGET = 64


@dataclass(frozen=True)
class BandProjector:
    """Idempotent projector onto a group of spectral slots."""

    matrix: np.ndarray  # N x N
    band: tuple         # spectral slot indices


@dataclass(frozen=True)
class ChannelCodec:
    """Everything needed to encode and decode one spectral band.

    The stored permutation moved the band to the leading slots before the
    sampling operator and interpolator were built, and is kept so a channel
    can be reconstructed bit-for-bit.
    """

    psi: SamplingOperator
    interpolator: Interpolator
    sampled_graph: SampledGraph
    band: tuple
    projector: BandProjector
    permutation: tuple


def _band_indices(decomp: SpectralDecomposition, band) -> tuple:
    idx = tuple(int(i) for i in band)
    if len(idx) < 1:
        raise BandError("band must contain at least one spectral slot")
    if len(set(idx)) != len(idx):
        raise BandError(f"band {idx} has repeated slots")
    if any(i < 0 or i >= decomp.n for i in idx):
        raise BandError(f"band {idx} outside 0..{decomp.n - 1}")
    return idx


def projector_for_band(decomp: SpectralDecomposition, band) -> BandProjector:
    """Projector passing exactly the given spectral slots."""
    idx = _band_indices(decomp, band)
    mask = np.zeros(decomp.n)
    mask[list(idx)] = 1.0
    mat = decomp.vectors @ (mask[:, None] * decomp.vectors_inv)
    return BandProjector(matrix=mat, band=idx)


def band_projectors(decomp: SpectralDecomposition, k: int):
    """Complementary low/high pair: first k slots and the remaining N - k."""
    if k < 1 or k >= decomp.n:
        raise BandError(f"split point {k} not in 1..{decomp.n - 1}")
    low = projector_for_band(decomp, range(k))
    high = projector_for_band(decomp, range(k, decomp.n))
    return low, high


def make_channel(decomp: SpectralDecomposition, band, psi_policy="greedy", seed=0) -> ChannelCodec:
    """Build the codec for one band: reorder, pick a qualified operator, wire up.

    ``psi_policy`` is "greedy", "random-with-retry", or an explicit sequence
    of vertex indices of the band's width.
    """
    idx = _band_indices(decomp, band)
    width = len(idx)
    others = [i for i in range(decomp.n) if i not in set(idx)]
    perm = tuple(idx) + tuple(others)
    reordered = reorder_spectrum(decomp, perm)

    if isinstance(psi_policy, str):
        if psi_policy == "greedy":
            psi = make_sampling_operator(
                greedy_optimal_sampler(reordered, width, width).indices, decomp.n
            )
            if not is_qualified(psi, reordered, width):
                raise NoQualifiedOperatorError(f"greedy design failed for band {idx}")
        elif psi_policy == "random-with-retry":
            psi = None
            for attempt in range(RANDOM_RETRY_BUDGET):
                candidate = random_sampler(decomp.n, width, seed=derive_seed(seed, attempt))
                if is_qualified(candidate, reordered, width):
                    psi = candidate
                    break
            if psi is None:
                raise NoQualifiedOperatorError(
                    f"no qualified operator for band {idx} in {RANDOM_RETRY_BUDGET} draws"
                )
        else:
            raise ValueError(f"unknown sampling policy {psi_policy!r}")
    else:
        psi = make_sampling_operator(psi_policy, decomp.n)
        if not is_qualified(psi, reordered, width):
            raise NoQualifiedOperatorError(f"indices {psi.indices} not qualified for band {idx}")

    return ChannelCodec(
        psi=psi,
        interpolator=build_interpolator(psi, reordered, width),
        sampled_graph=sampled_graph_shift(psi, reordered, width),
        band=idx,
        projector=projector_for_band(decomp, idx),
        permutation=perm,
    )


def _check_partition(bank, n: int) -> None:
    slots = [i for codec in bank for i in codec.band]
    if sorted(slots) != list(range(n)):
        raise BandsNotPartitionError("channel bands do not partition the spectrum")


def analyze(bank, x) -> list:
    """Project the signal onto each channel's band and sample it there."""
    if not bank:
        raise BandsNotPartitionError("empty filter bank")
    n = bank[0].projector.matrix.shape[0]
    _check_partition(bank, n)
    vec = np.asarray(x, dtype=complex).reshape(-1)
    if vec.shape[0] != n:
        raise DimensionMismatchError(f"signal length {vec.shape[0]}, expected {n}")
    return [apply_sampling(codec.psi, codec.projector.matrix @ vec) for codec in bank]


def synthesize(bank, channel_samples) -> np.ndarray:
    """Recover each channel from its samples and sum the results."""
    if len(bank) != len(channel_samples):
        raise DimensionMismatchError(
            f"{len(channel_samples)} sample vectors for {len(bank)} channels"
        )
    out = None
    for codec, samples in zip(bank, channel_samples):
        piece = interpolate(codec.interpolator, samples)
        out = piece if out is None else out + piece
    return out


def channel_energy_report(bank, x, threshold: float = None):
    """Per-channel l2 energies of the sampled band content.

    Returns (energies, flags); flags mark channels above ``threshold`` and
    are all False when no threshold is given. Energies are of sampled-domain
    vectors and carry no fixed relation to the signal norm.
    """
    samples = analyze(bank, x)
    energies = np.array([float(np.linalg.norm(s)) for s in samples])
    if threshold is None:
        flags = np.zeros(len(bank), dtype=bool)
    else:
        flags = energies > threshold
    return energies, flags

"""Choosing where to sample: greedy design, brute force, and random baselines.

Recovery amplifies sample noise by at most the spectral norm of the
sample-to-spectrum map, which is minimized by maximizing the smallest
singular value of the sampled eigenvector block. The exact subset problem
is intractable, so the designed operator is built greedily: at each step
add the vertex whose row maximizes the smallest singular value of the
accumulated submatrix, breaking ties toward the smallest vertex index.

Partial subsets (fewer rows than the bandwidth) are scored by the smallest
singular value of the wide submatrix, which keeps the early greedy steps
discriminative. The public ``sigma_min_of_subset`` instead uses the k-th
singular value convention and reports 0 for such rank-deficient subsets.
"""

from dataclasses import dataclass
from itertools import combinations
from math import comb

import numpy as np

from .errors import BandError, OutOfRangeError, SubsetTooLargeError
from .graph_core import SpectralDecomposition, bandlimited_signal
from .sampling import (
    SamplingOperator,
    apply_sampling,
    build_interpolator,
    interpolate,
    make_sampling_operator,
)

BRUTE_FORCE_BUDGET = 10**6


def derive_seed(seed, *indices) -> list:
    """Flat seed material for one trial: master seed plus trial indices.

    Keeps per-trial generators independent of execution order while staying
    a plain list of ints, which every numpy version accepts.
    """
    if isinstance(seed, (int, np.integer)):
        base = [int(seed)]
    else:
        base = [int(s) for s in seed]
    return base + [int(i) for i in indices]


@dataclass(frozen=True)
class DesignResult:
    """Outcome of a sampling-set design.

    ``sigma_min`` is the smallest singular value of the final sampled block
    (k-th singular value convention). ``trace`` logs one (index, score) pair
    per greedy step; brute-force search leaves it empty.
    """

    indices: tuple
    sigma_min: float
    trace: tuple


def _validate_band(decomp: SpectralDecomposition, k: int) -> None:
    if k < 1 or k > decomp.n:
        raise BandError(f"bandwidth {k} not in 1..{decomp.n}")


def sigma_min_of_subset(decomp: SpectralDecomposition, k: int, indices) -> float:
    """k-th singular value of the selected rows of the leading eigenvector block.

    Subsets with fewer than k rows cannot have rank k and score 0.
    """
    _validate_band(decomp, k)
    idx = [int(i) for i in indices]
    if any(i < 0 or i >= decomp.n for i in idx):
        raise OutOfRangeError(f"indices {idx} outside 0..{decomp.n - 1}")
    if len(set(idx)) != len(idx):
        raise OutOfRangeError(f"duplicate indices in {idx}")
    if len(idx) < k:
        return 0.0
    sv = np.linalg.svd(decomp.vectors[idx, :k], compute_uv=False)
    return float(sv[k - 1])


def _partial_score(band: np.ndarray, idx: list) -> float:
    # Smallest singular value of the (possibly wide) selected submatrix.
    return float(np.linalg.svd(band[idx, :], compute_uv=False)[-1])


def greedy_optimal_sampler(decomp: SpectralDecomposition, k: int, m: int) -> DesignResult:
    """Greedy maximization of the smallest singular value of the sampled block.

    Grows the sample set one vertex at a time, scoring each candidate by the
    smallest singular value of the submatrix it would produce. Ties go to the
    smallest index, making the result deterministic. Once the set has at
    least k rows the score equals the qualification margin, so the result is
    qualified whenever any qualified m-subset exists.
    """
    _validate_band(decomp, k)
    if m < 1 or m > decomp.n:
        raise OutOfRangeError(f"sample count {m} not in 1..{decomp.n}")
    band = decomp.vectors[:, :k]
    chosen: list = []
    remaining = list(range(decomp.n))
    trace = []
    for _ in range(m):
        best_i = -1
        best_score = -1.0
        for i in remaining:
            score = _partial_score(band, chosen + [i])
            if score > best_score:
                best_i, best_score = i, score
        chosen.append(best_i)
        remaining.remove(best_i)
        trace.append((best_i, best_score))
    return DesignResult(
        indices=tuple(chosen),
        sigma_min=sigma_min_of_subset(decomp, k, chosen),
        trace=tuple(trace),
    )


def brute_force_optimal_sampler(decomp: SpectralDecomposition, k: int, m: int) -> DesignResult:
    """Exact subset search; feasible only while C(N, m) stays within budget.

    Intended as a test oracle for the greedy design. Ties resolve to the
    lexicographically smallest subset.
    """
    _validate_band(decomp, k)
    if m < 1 or m > decomp.n:
        raise OutOfRangeError(f"sample count {m} not in 1..{decomp.n}")
    total = comb(decomp.n, m)
    if total > BRUTE_FORCE_BUDGET:
        raise SubsetTooLargeError(
            f"C({decomp.n},{m}) = {total} exceeds budget {BRUTE_FORCE_BUDGET}"
        )
    best_set = None
    best_score = -1.0
    for subset in combinations(range(decomp.n), m):
        score = sigma_min_of_subset(decomp, k, subset)
        if score > best_score:
            best_set, best_score = subset, score
    return DesignResult(indices=best_set, sigma_min=best_score, trace=())


def random_sampler(n: int, m: int, seed) -> SamplingOperator:
    """Uniform random m-subset of vertices, deterministic for a given seed."""
    if m < 1 or m > n:
        raise OutOfRangeError(f"sample count {m} not in 1..{n}")
    rng = np.random.default_rng(seed)
    idx = rng.choice(n, size=m, replace=False)
    return make_sampling_operator(tuple(int(i) for i in idx), n)


def noise_recovery_trial(
    decomp: SpectralDecomposition,
    k: int,
    psi: SamplingOperator,
    noise_sigma: float,
    seed,
):
    """One sample-under-noise experiment.

    Draws a random bandlimited signal, adds i.i.d. Gaussian noise to its
    samples, recovers, and returns (recovered signal, l2 recovery error).
    The error equals the interpolated image of the noise alone.
    """
    interp = build_interpolator(psi, decomp, k)
    rng = np.random.default_rng(seed)
    x = bandlimited_signal(decomp, rng.standard_normal(k))
    noisy = apply_sampling(psi, x) + rng.normal(0.0, noise_sigma, psi.m)
    recovered = interpolate(interp, noisy)
    return recovered, float(np.linalg.norm(recovered - x))

"""Random-graph and cyclic-graph experiment harnesses.

Covers three studies: success rates of random sampling on Erdos-Renyi
graphs (how often a random vertex subset spans the leading band), empirical
frame bounds of the sampled eigenvector block under orthogonal scaling, and
the consistency of graph sampling with classical sampling on the cyclic
time graph, including downsampling a cyclic graph to half size.

Monte Carlo trials derive per-trial seeds from (master seed, trial index),
so results are independent of execution order.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    BandError,
    DecompositionFailuresError,
    DefectiveBasisError,
    OutOfRangeError,
    ScalingUnavailableError,
)
from .graph_core import (
    GraphShift,
    SpectralDecomposition,
    bandlimited_signal,
    build_shift,
    reorder_spectrum,
    spectral_decompose,
)
from .sampler_design import derive_seed
from .sampling import (
    SampledGraph,
    apply_sampling,
    build_interpolator,
    interpolate,
    is_qualified,
    make_sampling_operator,
    sampled_graph_shift,
)


@dataclass(frozen=True)
class ErConfig:
    """One point of a random-sampling success experiment.

    ``seed`` is any numpy seed material (an int or a flat sequence of
    ints); per-trial generators are derived from it and the trial index.
    """

    n: int
    p: float
    trials: int
    k: int
    seed: "int | tuple | list" = 0
    directed: bool = False

    def __post_init__(self):
        if not 0.0 < self.p <= 1.0:
            raise ValueError(f"connection probability {self.p} not in (0, 1]")
        if self.trials < 1:
            raise ValueError("need at least one trial")
        if self.k < 1 or self.k > self.n:
            raise BandError(f"bandwidth {self.k} not in 1..{self.n}")


@dataclass(frozen=True)
class SuccessCurve:
    """Success rate as a function of connection probability."""

    points: tuple  # (p, rate) pairs
    n: int
    k: int
    trials: int


@dataclass(frozen=True)
class FrameBoundReport:
    """Empirical deviation of the scaled sampled block from an exact frame.

    Deviation per trial is the spectral norm of (1/M) B*B - I for the
    sampled block B. A deviation d implies frame bounds M(1-d) and M(1+d);
    d <= 1/2 gives the M/2 and 3M/2 bounds. ``used_conjugate`` records that
    the products used the conjugate transpose because the basis is complex.
    """

    deviations: np.ndarray
    max_deviation: float
    fraction_within_half: float
    sample_count: int
    used_conjugate: bool

    @property
    def implied_bounds(self):
        return (
            self.sample_count * (1.0 - self.max_deviation),
            self.sample_count * (1.0 + self.max_deviation),
        )


def gen_erdos_renyi(n: int, p: float, seed, directed: bool = False, normalize: bool = False) -> GraphShift:
    """Erdos-Renyi graph shift: each edge present independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"connection probability {p} not in [0, 1]")
    if n < 1:
        raise OutOfRangeError("graph needs at least one vertex")
    rng = np.random.default_rng(seed)
    if directed:
        mat = (rng.random((n, n)) < p).astype(float)
        np.fill_diagonal(mat, 0.0)
    else:
        upper = np.triu((rng.random((n, n)) < p).astype(float), 1)
        mat = upper + upper.T
    return build_shift(mat, normalize=normalize)


def success_rate(cfg: ErConfig) -> float:
    """Fraction of trials where a uniform random K-subset spans the leading band.

    Each trial draws a fresh graph and a fresh subset. Trials whose graph has
    no usable eigenbasis count as failures; if more than 10% of trials are
    such, the whole experiment errors out.
    """
    successes = 0
    defective = 0
    for trial in range(cfg.trials):
        shift = gen_erdos_renyi(
            cfg.n, cfg.p, seed=derive_seed(cfg.seed, trial, 0), directed=cfg.directed
        )
        try:
            decomp = spectral_decompose(shift)
        except DefectiveBasisError:
            defective += 1
            continue
        rng = np.random.default_rng(derive_seed(cfg.seed, trial, 1))
        idx = rng.choice(cfg.n, size=cfg.k, replace=False)
        psi = make_sampling_operator(tuple(int(i) for i in idx), cfg.n)
        successes += is_qualified(psi, decomp, cfg.k)
    if defective > 0.1 * cfg.trials:
        raise DecompositionFailuresError(
            f"{defective}/{cfg.trials} trial graphs had no usable eigenbasis"
        )
    return successes / cfg.trials


def success_curve(n: int, k: int, p_values, trials: int, seed: int = 0, directed: bool = False) -> SuccessCurve:
    """Sweep the connection probability and collect one success rate per point."""
    points = []
    for i, p in enumerate(p_values):
        cfg = ErConfig(
            n=n, p=float(p), trials=trials, k=k, seed=derive_seed(seed, i), directed=directed
        )
        points.append((float(p), success_rate(cfg)))
    return SuccessCurve(points=tuple(points), n=n, k=k, trials=trials)


def frame_bound_check(
    decomp: SpectralDecomposition, k: int, m: int, trials: int, seed: int = 0
) -> FrameBoundReport:
    """Deviation of the scaled sampled block from an exact frame, over random draws.

    Columns are rescaled so the squared basis has norm N per column; the
    basis must be orthogonal (plain or conjugate transpose) for the scaling
    to make sense, otherwise ``ScalingUnavailableError`` is raised. Complex
    unitary bases are handled with the conjugate transpose and flagged.
    """
    n = decomp.n
    if k < 1 or k > n:
        raise BandError(f"bandwidth {k} not in 1..{n}")
    if m < 1 or m > n:
        raise OutOfRangeError(f"sample count {m} not in 1..{n}")
    norms = np.linalg.norm(decomp.vectors, axis=0)
    scaled = decomp.vectors / norms * np.sqrt(n)
    gram_t = scaled.T @ scaled
    gram_h = scaled.conj().T @ scaled
    eye = n * np.eye(n)
    if np.linalg.norm(gram_t - eye, 2) <= 1e-8 * n:
        used_conjugate = False
        block = scaled.real if np.abs(scaled.imag).max(initial=0.0) <= 1e-12 else scaled
    elif np.linalg.norm(gram_h - eye, 2) <= 1e-8 * n:
        used_conjugate = True
        block = scaled
    else:
        raise ScalingUnavailableError("eigenvector columns are not orthogonal")

    devs = np.empty(trials)
    for trial in range(trials):
        rng = np.random.default_rng(derive_seed(seed, trial))
        idx = rng.choice(n, size=m, replace=False)
        sub = block[idx, :k]
        left = sub.conj().T if used_conjugate else sub.T
        devs[trial] = np.linalg.norm(left @ sub / m - np.eye(k), 2)
    return FrameBoundReport(
        deviations=devs,
        max_deviation=float(devs.max()),
        fraction_within_half=float(np.mean(devs <= 0.5)),
        sample_count=m,
        used_conjugate=used_conjugate,
    )


def cyclic_shift(n: int) -> GraphShift:
    """Shift of the time graph: cyclic permutation delaying a signal by one step.

    Permutation matrices have spectral radius exactly 1, so the shift is
    marked normalized without rescaling.
    """
    if n < 2:
        raise OutOfRangeError("cyclic graph needs at least two vertices")
    mat = np.zeros((n, n), dtype=complex)
    mat[np.arange(n), np.arange(-1, n - 1)] = 1.0
    return GraphShift(weights=mat, normalized=True)


def dft_decomposition(n: int) -> SpectralDecomposition:
    """Closed-form eigenbasis of the cyclic shift.

    Columns are the conjugated unit-norm discrete Fourier vectors and the
    eigenvalues are the n-th roots of unity exp(-2 pi i k / n), in classical
    frequency order k = 0..n-1.
    """
    if n < 2:
        raise OutOfRangeError("cyclic graph needs at least two vertices")
    grid = np.outer(np.arange(n), np.arange(n))
    vec = np.exp(2j * np.pi * grid / n) / np.sqrt(n)
    return SpectralDecomposition(
        vectors=vec,
        vectors_inv=vec.conj().T,
        eigenvalues=np.exp(-2j * np.pi * np.arange(n) / n),
        order_tag="dft",
    )


def dft_sampling_check(n: int, k: int, indices, seed: int = 0) -> bool:
    """Whether the given vertex subset recovers bandlimited time signals.

    Checks the rank condition on the sampled Fourier block and verifies
    recovery of a random bandlimited signal to 1e-8 relative error. Fewer
    samples than the bandwidth can never qualify and returns False.
    """
    if len(tuple(indices)) < k:
        return False
    decomp = dft_decomposition(n)
    psi = make_sampling_operator(indices, n)
    if not is_qualified(psi, decomp, k):
        return False
    rng = np.random.default_rng(seed)
    x = bandlimited_signal(decomp, rng.standard_normal(k) + 1j * rng.standard_normal(k))
    recovered = interpolate(build_interpolator(psi, decomp, k), apply_sampling(psi, x))
    return bool(np.linalg.norm(recovered - x) <= 1e-8 * np.linalg.norm(x))


def cyclic_downsample_demo(n: int) -> SampledGraph:
    """Downsample the n-vertex cyclic graph to n/2 vertices.

    Reorders the spectrum to put even frequencies first, samples the first
    n/2 vertices, and returns the sampled graph, whose shift is exactly the
    n/2 cyclic permutation matrix.
    """
    if n % 2 != 0:
        raise OutOfRangeError(f"size {n} must be even")
    decomp = dft_decomposition(n)
    perm = tuple(range(0, n, 2)) + tuple(range(1, n, 2))
    reordered = reorder_spectrum(decomp, perm)
    psi = make_sampling_operator(range(n // 2), n)
    return sampled_graph_shift(psi, reordered, n // 2)

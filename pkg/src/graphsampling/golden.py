"""Bundled five-node directed graph with reference values for every stage.

The constants below are reference results for the complete pipeline on this
graph: decomposition, a bandwidth-3 signal, sampling at vertices (0, 1, 3),
recovery, and the 3-vertex sampled graph. They are rounded to two decimals,
so comparisons should use an absolute tolerance of 5e-3.

``walkthrough`` recomputes all of them with the library and is what the
``golden-example`` CLI command prints.
"""

import numpy as np

from .graph_core import (
    bandlimited_signal,
    build_shift,
    first_order_difference,
    gft,
    match_basis_scaling,
    real_if_close,
    spectral_decompose,
)
from .sampling import (
    apply_sampling,
    build_interpolator,
    interpolate,
    make_sampling_operator,
    sampled_graph_shift,
)

SHIFT = np.array([
    [0.0, 2 / 5, 2 / 5, 0.0, 1 / 5],
    [2 / 3, 0.0, 1 / 3, 0.0, 0.0],
    [1 / 2, 1 / 4, 0.0, 1 / 4, 0.0],
    [0.0, 0.0, 1 / 2, 0.0, 1 / 2],
    [1 / 2, 0.0, 0.0, 1 / 2, 0.0],
])

REFERENCE_BASIS = np.array([
    [0.45, 0.19, 0.25, 0.35, -0.40],
    [0.45, 0.40, 0.16, -0.74, 0.18],
    [0.45, 0.08, -0.56, 0.29, 0.36],
    [0.45, -0.66, -0.41, -0.47, -0.57],
    [0.45, -0.60, 0.66, 0.13, 0.59],
])

REFERENCE_EIGENVALUES = np.array([1.0, 0.39, -0.12, -0.44, -0.83])

BANDWIDTH = 3

SPECTRUM = np.array([0.5, 0.2, 0.1, 0.0, 0.0])

SIGNAL = np.array([0.29, 0.32, 0.185, 0.05, 0.17])

FIRST_DIFFERENCE = np.array([0.05, 0.07, -0.05, -0.13, 0.0002])

SAMPLE_INDICES = (0, 1, 3)

SAMPLED_VALUES = np.array([0.29, 0.32, 0.05])

INTERPOLATION_MATRIX = np.array([
    [1.0, 0.0, 0.0],
    [0.0, 1.0, 0.0],
    [-2.70, 2.87, 0.83],
    [0.0, 0.0, 1.0],
    [5.04, -3.98, -0.05],
])

SAMPLED_BASIS = np.array([
    [0.45, 0.19, 0.25],
    [0.45, 0.40, 0.16],
    [0.45, -0.66, -0.41],
])

SAMPLED_EIGENVALUES = np.array([1.0, 0.39, -0.12])

SAMPLED_SHIFT = np.array([
    [-0.07, 0.75, 0.32],
    [-0.23, 0.96, 0.28],
    [1.17, -0.56, 0.39],
])

SAMPLED_DIFFERENCE = np.array([0.05, 0.07, -0.13])

# Absolute tolerance matching the two-decimal reference precision.
TOLERANCE = 5e-3


def reference_values() -> dict:
    """All reference arrays keyed by walkthrough stage name."""
    return {
        "shift": SHIFT,
        "eigenvalues": REFERENCE_EIGENVALUES,
        "basis": REFERENCE_BASIS,
        "spectrum": SPECTRUM,
        "signal": SIGNAL,
        "first_difference": FIRST_DIFFERENCE,
        "sampled_values": SAMPLED_VALUES,
        "interpolation_matrix": INTERPOLATION_MATRIX,
        "sampled_basis": SAMPLED_BASIS,
        "sampled_eigenvalues": SAMPLED_EIGENVALUES,
        "sampled_shift": SAMPLED_SHIFT,
        "sampled_difference": SAMPLED_DIFFERENCE,
        "recovered": SIGNAL,
    }


def walkthrough() -> dict:
    """Run the full pipeline on the bundled graph and collect every stage.

    The eigenbasis is rescaled column-by-column against the reference basis
    (eigenvectors are unique only up to scale), so every downstream value is
    directly comparable to the reference constants.
    """
    shift = build_shift(SHIFT)
    decomp = spectral_decompose(shift)
    decomp = match_basis_scaling(decomp, REFERENCE_BASIS)

    signal = real_if_close(bandlimited_signal(decomp, SPECTRUM[:BANDWIDTH]))
    spectrum = real_if_close(gft(decomp, signal))
    difference = real_if_close(first_order_difference(shift, signal))

    psi = make_sampling_operator(SAMPLE_INDICES, shift.n)
    sampled_values = apply_sampling(psi, signal)
    interp = build_interpolator(psi, decomp, BANDWIDTH)
    recovered = real_if_close(interpolate(interp, sampled_values))
    sampled = sampled_graph_shift(psi, decomp, BANDWIDTH)
    sampled_difference = real_if_close(
        sampled_values - sampled.shift @ sampled_values
    )

    return {
        "shift": shift.weights.real,
        "eigenvalues": real_if_close(decomp.eigenvalues),
        "basis": real_if_close(decomp.vectors),
        "spectrum": spectrum,
        "signal": signal,
        "first_difference": difference,
        "sampling_matrix": psi.matrix(),
        "sampled_values": real_if_close(sampled_values),
        "interpolation_matrix": real_if_close(interp.matrix),
        "sampled_basis": real_if_close(sampled.basis),
        "sampled_eigenvalues": real_if_close(sampled.eigenvalues),
        "sampled_shift": real_if_close(sampled.shift),
        "sampled_difference": sampled_difference,
        "recovered": recovered,
    }


def verify(computed: dict | None = None, tolerance: float = TOLERANCE) -> dict:
    """Compare a walkthrough against the reference values.

    Returns a dict of stage name to maximum absolute deviation, for the
    stages that have reference constants.
    """
    computed = walkthrough() if computed is None else computed
    deviations = {}
    for name, expected in reference_values().items():
        got = np.asarray(computed[name])
        deviations[name] = float(np.abs(got - expected).max())
    return deviations

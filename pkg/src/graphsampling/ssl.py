"""Semi-supervised classification by sampling and interpolating label signals.

Labels living on a similarity graph are treated as a graph signal that is
approximately bandlimited, so classifying with few queries becomes a
sampling problem: pick query vertices with the greedy design, fit the
leading spectral coefficients of the label signal to the queried labels,
and read predicted labels off the interpolated signal.

The exact sign-matching objective is relaxed to a logistic loss and solved
per class by full-batch gradient descent with backtracking line search. No
regularization term is used. Complex eigenvector blocks enter the fit
through their real part, with a warning once the imaginary mass is above
tolerance.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    ComplexPartWarning,
    DegenerateFeaturesError,
    DimensionMismatchError,
    FitConvergenceWarning,
    NotQualifiedError,
    OutOfRangeError,
)
from .graph_core import GraphShift, SpectralDecomposition, spectral_decompose
from .sampler_design import greedy_optimal_sampler, random_sampler
from .sampling import SamplingOperator, is_qualified, make_sampling_operator

GRADIENT_TOL = 1e-6
MAX_ITERATIONS = 10_000


@dataclass(frozen=True)
class BandFit:
    """Fitted leading spectral coefficients of a label signal.

    ``coeffs`` is K x C (one column per class; C = 1 for binary labels).
    ``losses`` holds one loss trace per class, nonincreasing by construction.
    """

    coeffs: np.ndarray
    bandwidth: int
    losses: tuple
    converged: tuple


def knn_graph(features, k_neighbors: int) -> GraphShift:
    """Directed k-nearest-neighbor similarity graph, row-normalized.

    Edge weights are a Gaussian-like kernel of the Euclidean distance scaled
    by N^2 over the total pairwise distance, kept only toward each vertex's
    k nearest neighbors, then each row is normalized to sum to 1. The result
    is generally asymmetric and has spectral radius exactly 1.
    """
    feats = np.asarray(features, dtype=float)
    if feats.ndim != 2 or feats.shape[0] < 2:
        raise DimensionMismatchError("features must be an (N, d) array with N >= 2")
    n = feats.shape[0]
    if not 1 <= k_neighbors < n:
        raise OutOfRangeError(f"neighbor count {k_neighbors} not in 1..{n - 1}")
    diffs = feats[:, None, :] - feats[None, :, :]
    dist = np.linalg.norm(diffs, axis=2)
    total = float(dist.sum())
    if total == 0.0:
        raise DegenerateFeaturesError("all feature vectors are identical")
    kernel = np.exp(-(n * n) * dist / total)
    weights = np.zeros((n, n))
    for i in range(n):
        order = np.argsort(dist[i], kind="stable")
        neighbors = order[order != i][:k_neighbors]
        weights[i, neighbors] = kernel[i, neighbors]
    weights /= weights.sum(axis=1, keepdims=True)
    return GraphShift(weights=weights.astype(complex), normalized=True)


def _stable_expit(v: np.ndarray) -> np.ndarray:
    out = np.empty_like(v)
    pos = v >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-v[pos]))
    ev = np.exp(v[~pos])
    out[~pos] = ev / (1.0 + ev)
    return out


def logistic_loss(basis: np.ndarray, labels: np.ndarray, coeffs: np.ndarray) -> float:
    """Sum of log(1 + exp(-y * (B w))) over the samples."""
    margins = labels * (basis @ coeffs)
    return float(np.logaddexp(0.0, -margins).sum())


def logistic_gradient(basis: np.ndarray, labels: np.ndarray, coeffs: np.ndarray) -> np.ndarray:
    """Analytic gradient of ``logistic_loss`` with respect to the coefficients."""
    margins = labels * (basis @ coeffs)
    return -(basis.T @ (labels * _stable_expit(-margins)))


def _descend(basis, labels, tol, max_iter):
    w = np.zeros(basis.shape[1])
    loss = logistic_loss(basis, labels, w)
    losses = [loss]
    converged = False
    for _ in range(max_iter):
        grad = logistic_gradient(basis, labels, w)
        gnorm = float(np.linalg.norm(grad))
        if gnorm <= tol:
            converged = True
            break
        step = 1.0
        while step > 1e-14:
            w_try = w - step * grad
            loss_try = logistic_loss(basis, labels, w_try)
            if loss_try <= loss - 1e-4 * step * gnorm * gnorm:
                break
            step *= 0.5
        else:
            break  # line search stalled at machine precision
        w, loss = w_try, loss_try
        losses.append(loss)
    return w, np.array(losses), converged


def _real_basis(block: np.ndarray) -> np.ndarray:
    if np.iscomplexobj(block):
        scale = float(np.linalg.norm(block))
        if scale > 0 and float(np.linalg.norm(block.imag)) > 1e-6 * scale:
            warnings.warn(
                "eigenvector block has imaginary mass above 1e-6; fitting its real part",
                ComplexPartWarning,
            )
        return block.real.copy()
    return block


def fit_band_coefficients(
    psi: SamplingOperator,
    decomp: SpectralDecomposition,
    k: int,
    sampled_labels,
    tol: float = GRADIENT_TOL,
    max_iter: int = MAX_ITERATIONS,
    require_qualified: bool = True,
) -> BandFit:
    """Fit leading spectral coefficients to sampled +-1 labels, one class at a time.

    Minimizes the logistic relaxation of the sign-matching objective by
    gradient descent from zero, stopping at gradient norm ``tol`` or after
    ``max_iter`` iterations (the best iterate is returned and flagged with a
    warning if the tolerance was not reached).

    ``require_qualified=False`` skips the rank gate; the fit is still well
    defined, it just loses the exact-recovery guarantee. That is how random
    sampling operators are scored even when they fail to qualify.
    """
    if require_qualified and not is_qualified(psi, decomp, k):
        raise NotQualifiedError(
            f"indices {psi.indices} do not span the first {k} spectral slots"
        )
    labels = np.asarray(sampled_labels, dtype=float)
    if labels.ndim == 1:
        labels = labels[:, None]
    if labels.shape[0] != psi.m:
        raise DimensionMismatchError(
            f"{labels.shape[0]} label rows for {psi.m} samples"
        )
    if not np.all(np.abs(labels) == 1.0):
        raise ValueError("labels must be +1 or -1")
    basis = _real_basis(decomp.vectors[list(psi.indices), :k])
    coeffs = np.zeros((k, labels.shape[1]))
    losses = []
    converged = []
    for c in range(labels.shape[1]):
        w, trace, ok = _descend(basis, labels[:, c], tol, max_iter)
        coeffs[:, c] = w
        losses.append(trace)
        converged.append(ok)
    if not all(converged):
        warnings.warn(
            "gradient tolerance not reached for at least one class",
            FitConvergenceWarning,
        )
    return BandFit(
        coeffs=coeffs, bandwidth=k, losses=tuple(losses), converged=tuple(converged)
    )


def predict_labels(decomp: SpectralDecomposition, fit: BandFit) -> np.ndarray:
    """Predicted +-1 labels on every vertex.

    Binary fits return a length-N vector, the sign of the interpolated score
    with 0 mapped to +1. Multiclass fits return an N x C matrix with one +1
    per row at the largest score, ties resolved to the lowest class index.
    """
    if fit.coeffs.shape[0] != fit.bandwidth or fit.bandwidth > decomp.n:
        raise DimensionMismatchError("fit does not match this decomposition")
    scores = np.real(decomp.vectors[:, : fit.bandwidth] @ fit.coeffs)
    if fit.coeffs.shape[1] == 1:
        return np.where(scores[:, 0] >= 0.0, 1.0, -1.0)
    out = -np.ones_like(scores)
    out[np.arange(scores.shape[0]), np.argmax(scores, axis=1)] = 1.0
    return out


def label_targets(labels):
    """Normalize label input to (pm_matrix, class_targets, is_binary).

    Accepts a +-1 vector (binary), a vector of class values (multiclass), or
    an N x C +-1 membership matrix. ``class_targets`` is the +-1 vector for
    binary problems and the class-index vector otherwise.
    """
    arr = np.asarray(labels)
    if arr.ndim == 2:
        if not np.all(np.abs(arr) == 1):
            raise ValueError("label matrix entries must be +1 or -1")
        return arr.astype(float), np.argmax(arr, axis=1), False
    values = np.unique(arr)
    if set(values.tolist()) <= {-1, 1, -1.0, 1.0}:
        pm = arr.astype(float)
        return pm[:, None], pm, True
    classes = np.sort(values)
    pm = -np.ones((arr.shape[0], classes.shape[0]))
    for j, cls in enumerate(classes):
        pm[arr == cls, j] = 1.0
    return pm, np.searchsorted(classes, arr), False


def active_classification_pipeline(
    features,
    labels,
    m_samples: int,
    k_neighbors: int = 12,
    bandwidth: int = None,
    policy: str = "greedy",
    seed: int = 0,
):
    """Build the graph, pick query vertices, fit, predict, and score.

    ``bandwidth`` defaults to the number of queries. The greedy policy
    designs the query set from the graph alone; the random policy draws it
    uniformly, and is scored even when the draw is not qualified (the fit
    then simply degrades, it does not error). Returns (accuracy, indices).
    """
    shift = knn_graph(features, k_neighbors)
    decomp = spectral_decompose(shift)
    n = decomp.n
    k = m_samples if bandwidth is None else bandwidth
    if policy == "greedy":
        indices = greedy_optimal_sampler(decomp, k, m_samples).indices
        psi = make_sampling_operator(indices, n)
    elif policy == "random":
        psi = random_sampler(n, m_samples, seed)
    else:
        raise ValueError(f"unknown policy {policy!r}")
    pm, targets, binary = label_targets(labels)
    fit = fit_band_coefficients(
        psi, decomp, k, pm[list(psi.indices)], require_qualified=False
    )
    pred = predict_labels(decomp, fit)
    if binary:
        accuracy = float(np.mean(pred == targets))
    else:
        accuracy = float(np.mean(np.argmax(pred, axis=1) == targets))
    return accuracy, psi.indices

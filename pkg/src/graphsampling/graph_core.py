"""Graph shifts, spectral decomposition, and the graph Fourier transform.

The graph shift is the weighted adjacency matrix acting as the elementary
filtering operator. Its eigenbasis defines the graph Fourier transform:
forward transform by the inverse eigenvector matrix, inverse transform by
the eigenvector matrix itself. All arithmetic is complex internally; dense
storage is used throughout (intended scale is a few thousand vertices,
where the full eigendecomposition dominates cost anyway).

Signals and spectra are plain numpy vectors of length N.
"""

import warnings
from dataclasses import dataclass

import numpy as np

from .errors import (
    DefectiveBasisError,
    DimensionMismatchError,
    InvalidPermutationError,
    NonFiniteError,
    NonSquareError,
)

# Eigenvector matrices with condition number beyond this are treated as
# defective (Jordan-like) and rejected.
CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class GraphShift:
    """Weighted adjacency matrix of a directed or undirected graph.

    ``normalized`` records that the largest eigenvalue magnitude is 1
    (within 1e-9), the conventional scaling for a shift operator.
    """

    weights: np.ndarray  # N x N complex
    normalized: bool = False

    @property
    def n(self) -> int:
        return self.weights.shape[0]


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenbasis of a graph shift: the graph Fourier transform pair.

    Columns of ``vectors`` are eigenvectors; ``vectors_inv`` is its inverse
    (the forward transform matrix); ``eigenvalues[i]`` belongs to column i.
    ``order_tag`` describes the eigenvalue ordering that was applied.
    """

    vectors: np.ndarray       # N x N complex, eigenvectors as columns
    vectors_inv: np.ndarray   # N x N complex
    eigenvalues: np.ndarray   # length N complex
    order_tag: str

    @property
    def n(self) -> int:
        return self.vectors.shape[0]


def _as_complex_matrix(raw) -> np.ndarray:
    mat = np.array(raw, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise NonSquareError(f"expected a square matrix, got shape {mat.shape}")
    if mat.shape[0] < 1:
        raise NonSquareError("matrix must have at least one row")
    if not np.all(np.isfinite(mat.real)) or not np.all(np.isfinite(mat.imag)):
        raise NonFiniteError("matrix contains NaN or infinite entries")
    return mat


def _as_vector(x, n: int, what: str = "signal") -> np.ndarray:
    vec = np.asarray(x, dtype=complex).reshape(-1)
    if vec.shape[0] != n:
        raise DimensionMismatchError(f"{what} has length {vec.shape[0]}, expected {n}")
    return vec


def real_if_close(x: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Drop imaginary parts when their magnitude is below ``tol``."""
    x = np.asarray(x)
    if np.iscomplexobj(x) and np.abs(x.imag).max(initial=0.0) <= tol:
        return x.real.copy()
    return x


def build_shift(raw, normalize: bool = False) -> GraphShift:
    """Build a graph shift, optionally scaling the spectral radius to 1.

    A matrix with spectral radius 0 cannot be normalized; it is returned
    unchanged with ``normalized=False`` and a warning.
    """
    mat = _as_complex_matrix(raw)
    if not normalize:
        return GraphShift(weights=mat, normalized=False)
    radius = float(np.abs(np.linalg.eigvals(mat)).max())
    if radius == 0.0:
        warnings.warn("spectral radius is 0; shift left unnormalized")
        return GraphShift(weights=mat, normalized=False)
    return GraphShift(weights=mat / radius, normalized=True)


def _ordering_key(eigenvalues: np.ndarray, ordering: str) -> np.ndarray:
    n = eigenvalues.shape[0]
    if ordering == "none":
        return np.arange(n)
    if ordering == "descending":
        # Descending real part, ties by descending imaginary part, then by
        # original index so that the result is fully deterministic.
        return np.array(
            sorted(range(n), key=lambda i: (-eigenvalues[i].real, -eigenvalues[i].imag, i))
        )
    raise ValueError(f"unknown ordering policy {ordering!r}")


def spectral_decompose(shift: GraphShift, ordering: str = "descending") -> SpectralDecomposition:
    """Diagonalize a graph shift into its graph Fourier basis.

    Hermitian shifts use the symmetric eigensolver (orthonormal basis,
    inverse by conjugate transpose); general shifts use the nonsymmetric
    solver and an explicit inverse, rejected as defective when the
    eigenvector matrix has condition number above ``CONDITION_LIMIT``.
    """
    mat = shift.weights
    scale = max(1.0, float(np.abs(mat).max()))
    hermitian = np.allclose(mat, mat.conj().T, rtol=0.0, atol=1e-12 * scale)
    if hermitian:
        lam_r, vec = np.linalg.eigh(mat)
        lam = lam_r.astype(complex)
        inv = vec.conj().T
    else:
        lam, vec = np.linalg.eig(mat)
        cond = np.linalg.cond(vec)
        if not np.isfinite(cond) or cond > CONDITION_LIMIT:
            raise DefectiveBasisError(
                f"eigenvector matrix condition number {cond:.2e} exceeds {CONDITION_LIMIT:.0e}"
            )
        inv = np.linalg.inv(vec)
    order = _ordering_key(lam, ordering)
    return SpectralDecomposition(
        vectors=vec[:, order],
        vectors_inv=inv[order, :],
        eigenvalues=lam[order],
        order_tag=ordering,
    )


def gft(decomp: SpectralDecomposition, x) -> np.ndarray:
    """Forward graph Fourier transform: coefficients of x in the eigenbasis."""
    vec = _as_vector(x, decomp.n)
    return decomp.vectors_inv @ vec


def igft(decomp: SpectralDecomposition, coeffs) -> np.ndarray:
    """Inverse graph Fourier transform: signal from spectral coefficients."""
    vec = _as_vector(coeffs, decomp.n, what="spectrum")
    return decomp.vectors @ vec


def reorder_spectrum(decomp: SpectralDecomposition, perm) -> SpectralDecomposition:
    """Jointly permute eigenvalues and eigenvectors.

    The reconstruction of the shift is unchanged; this only moves which
    frequencies occupy the leading slots, so any band can be made to sit
    in the first K positions.
    """
    p = np.asarray(perm, dtype=int).reshape(-1)
    n = decomp.n
    if p.shape[0] != n or not np.array_equal(np.sort(p), np.arange(n)):
        raise InvalidPermutationError("not a permutation of 0..N-1")
    return SpectralDecomposition(
        vectors=decomp.vectors[:, p],
        vectors_inv=decomp.vectors_inv[p, :],
        eigenvalues=decomp.eigenvalues[p],
        order_tag=f"{decomp.order_tag}+perm",
    )


def match_basis_scaling(decomp: SpectralDecomposition, reference) -> SpectralDecomposition:
    """Rescale eigenvector columns to best match a reference basis.

    Eigenbases are unique only up to a nonzero scale per column. This picks
    the least-squares scale for each column against ``reference`` and applies
    the inverse scale to the corresponding row of the forward transform, so
    the decomposition still reconstructs the same shift.
    """
    ref = np.asarray(reference, dtype=complex)
    if ref.shape != decomp.vectors.shape:
        raise DimensionMismatchError(
            f"reference has shape {ref.shape}, expected {decomp.vectors.shape}"
        )
    vec = decomp.vectors.copy()
    inv = decomp.vectors_inv.copy()
    for j in range(decomp.n):
        col = vec[:, j]
        denom = np.vdot(col, col).real
        scale = np.vdot(col, ref[:, j]) / denom
        if abs(scale) < 1e-12:
            continue
        vec[:, j] = col * scale
        inv[j, :] = inv[j, :] / scale
    return SpectralDecomposition(
        vectors=vec,
        vectors_inv=inv,
        eigenvalues=decomp.eigenvalues.copy(),
        order_tag=decomp.order_tag,
    )


def bandlimited_signal(decomp: SpectralDecomposition, coeffs) -> np.ndarray:
    """Signal whose spectrum is ``coeffs`` on the first K slots and 0 beyond."""
    head = np.asarray(coeffs, dtype=complex).reshape(-1)
    if head.shape[0] > decomp.n:
        raise DimensionMismatchError(
            f"{head.shape[0]} coefficients exceed graph size {decomp.n}"
        )
    full = np.zeros(decomp.n, dtype=complex)
    full[: head.shape[0]] = head
    return decomp.vectors @ full


def spectral_tail_ratio(decomp: SpectralDecomposition, x, k: int) -> float:
    """Fraction of spectral energy beyond the first k slots (0 for zero input)."""
    coeffs = gft(decomp, x)
    total = float(np.linalg.norm(coeffs))
    if total == 0.0:
        return 0.0
    return float(np.linalg.norm(coeffs[k:])) / total


def first_order_difference(shift: GraphShift, x) -> np.ndarray:
    """Difference between a signal and its shifted version, x - A x."""
    vec = _as_vector(x, shift.n)
    return vec - shift.weights @ vec


def total_variation(shift: GraphShift, x, p: float = 1.0) -> float:
    """Graph total variation: the p-norm of x - A x raised to the p-th power."""
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    diff = first_order_difference(shift, x)
    return float(np.sum(np.abs(diff) ** p))

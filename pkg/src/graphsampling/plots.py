"""Figure rendering for CLI reports.

Each saver draws one figure to a file next to the delimited output. The Agg
backend is forced so rendering works headless.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np


def _finish(fig, path):
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_eigenvalues(path, eigenvalues) -> None:
    lam = np.asarray(eigenvalues, dtype=complex)
    fig, ax = plt.subplots(figsize=(5, 4.5))
    ax.axhline(0, color="0.8", lw=0.8)
    ax.axvline(0, color="0.8", lw=0.8)
    ax.scatter(lam.real, lam.imag, s=25, zorder=3)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_title("graph frequencies")
    ax.set_aspect("equal", adjustable="datalim")
    _finish(fig, path)


def save_curve(path, x, y, xlabel, ylabel, title="") -> None:
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(x, y, marker="o")
    ax.set_xlabel(xlabel)
    ax.set_ylabel(ylabel)
    if title:
        ax.set_title(title)
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_recovery(path, original, recovered) -> None:
    orig = np.real(np.asarray(original))
    rec = np.real(np.asarray(recovered))
    idx = np.arange(len(rec))
    fig, ax = plt.subplots(figsize=(6, 4))
    if orig.size:
        ax.plot(idx, orig, "o-", label="original", alpha=0.8)
    ax.plot(idx, rec, "s--", label="recovered", alpha=0.8)
    ax.set_xlabel("vertex")
    ax.set_ylabel("value")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_design_trace(path, trace) -> None:
    steps = np.arange(1, len(trace) + 1)
    scores = [score for _, score in trace]
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(steps, scores, marker="o")
    for step, (idx, score) in zip(steps, trace):
        ax.annotate(str(idx), (step, score), textcoords="offset points", xytext=(0, 6), fontsize=8)
    ax.set_xlabel("greedy step")
    ax.set_ylabel("smallest singular value")
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_deviations(path, deviations, threshold=0.5) -> None:
    devs = np.asarray(deviations)
    fig, ax = plt.subplots(figsize=(5.5, 4))
    ax.plot(np.arange(len(devs)), devs, marker=".", ls="none")
    ax.axhline(threshold, color="r", ls="--", label=f"threshold {threshold}")
    ax.set_xlabel("trial")
    ax.set_ylabel("frame deviation")
    ax.legend()
    ax.grid(True, alpha=0.3)
    _finish(fig, path)


def save_matrix(path, matrix, title="") -> None:
    mat = np.real(np.asarray(matrix))
    fig, ax = plt.subplots(figsize=(4.5, 4))
    im = ax.matshow(mat, cmap="coolwarm")
    fig.colorbar(im, ax=ax, shrink=0.85)
    if title:
        ax.set_title(title)
    _finish(fig, path)


def save_energies(path, energies, flags=None) -> None:
    vals = np.asarray(energies)
    colors = None
    if flags is not None:
        colors = ["tab:red" if f else "tab:blue" for f in flags]
    fig, ax = plt.subplots(figsize=(5, 4))
    ax.bar(np.arange(len(vals)), vals, color=colors)
    ax.set_xlabel("channel")
    ax.set_ylabel("sampled energy")
    _finish(fig, path)


def save_label_scatter(path, coords, labels, sampled=None) -> None:
    pts = np.real(np.asarray(coords))
    fig, ax = plt.subplots(figsize=(5.5, 4.5))
    ax.scatter(pts[:, 0], pts[:, 1], c=np.asarray(labels), cmap="coolwarm", s=18, alpha=0.8)
    if sampled is not None:
        ax.scatter(pts[list(sampled), 0], pts[list(sampled), 1], marker="*", s=220,
                   facecolor="k", label="queried")
        ax.legend()
    ax.set_xlabel("spectral coordinate 1")
    ax.set_ylabel("spectral coordinate 2")
    _finish(fig, path)

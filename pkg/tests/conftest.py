import numpy as np
import pytest

from graphsampling import golden
from graphsampling.graph_core import build_shift, match_basis_scaling, spectral_decompose


@pytest.fixture(scope="session")
def fivenode_shift():
    return build_shift(golden.SHIFT)


@pytest.fixture(scope="session")
def fivenode_decomp(fivenode_shift):
    decomp = spectral_decompose(fivenode_shift)
    return match_basis_scaling(decomp, golden.REFERENCE_BASIS)


def random_diagonalizable_shift(rng, n):
    """Dense random shift; i.i.d. Gaussian entries are diagonalizable a.s."""
    return build_shift(rng.standard_normal((n, n)) / np.sqrt(n))


@pytest.fixture
def shift_factory():
    return random_diagonalizable_shift

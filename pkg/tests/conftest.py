"""Shared independent oracles for the test suite.

Everything here recomputes quantities from first principles (explicit
index sums, raw eigendecompositions) so library results are checked
against a second, independent path.
"""

import math

import numpy as np
import pytest

from mubounds import QuantumState


def ginibre_density(rng, dim):
    """Full-rank random density matrix, G G^dag normalized."""
    g = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    m = g @ g.conj().T
    return m / np.real(np.trace(m))


def brute_partial_trace(rho, dims, keep_positions):
    """Partial trace by explicit index sums over computational labels."""
    n = len(dims)
    keep = sorted(keep_positions)
    drop = [i for i in range(n) if i not in keep]
    kept_dims = [dims[i] for i in keep]
    out_dim = int(np.prod(kept_dims)) if kept_dims else 1
    out = np.zeros((out_dim, out_dim), dtype=complex)

    def flat(multi):
        idx = 0
        for i in range(n):
            idx = idx * dims[i] + multi[i]
        return idx

    def flat_kept(multi):
        idx = 0
        for pos, i in enumerate(keep):
            idx = idx * kept_dims[pos] + multi[i]
        return idx

    for row in np.ndindex(*dims):
        for col in np.ndindex(*dims):
            if all(row[i] == col[i] for i in drop):
                out[flat_kept(row), flat_kept(col)] += rho[flat(row), flat(col)]
    return out


def spectrum_entropy(mat):
    """-sum lam log2 lam straight from numpy's eigenvalues."""
    lam = np.linalg.eigvalsh(np.asarray(mat, dtype=complex))
    lam = lam[lam > 1e-14]
    return float(-(lam * np.log2(lam)).sum())


def binary_entropy(p):
    if p <= 0.0 or p >= 1.0:
        return 0.0
    return -p * math.log2(p) - (1 - p) * math.log2(1 - p)


def permute_subsystems(state: QuantumState, new_order):
    """The same state with subsystems listed in a different order."""
    new_order = tuple(new_order)
    perm = [state.labels.index(l) for l in new_order]
    n = len(state.dims)
    arr = state.rho.reshape(state.dims + state.dims)
    arr = np.transpose(arr, perm + [p + n for p in perm])
    dims = tuple(state.dims[p] for p in perm)
    total = int(np.prod(dims))
    return QuantumState(labels=new_order, dims=dims, rho=arr.reshape(total, total))


@pytest.fixture
def rng():
    return np.random.default_rng(1234)

"""Dense complex algebra for multipartite density matrices.

Everything here works on full complex128 matrices.  All Hilbert spaces in
this package are at most a few dozen dimensions, so there is no sparse or
structured path; clarity and exactness win over scale.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .mub import OrthonormalBasis

HERMITICITY_TOL = 1e-10
TRACE_TOL = 1e-10
POSITIVITY_TOL = 1e-10
EIG_INPUT_TOL = 1e-8


def kron(a, b) -> np.ndarray:
    """Kronecker product; dimensions multiply, first factor is most significant."""
    return np.kron(np.asarray(a, dtype=complex), np.asarray(b, dtype=complex))


@dataclass(frozen=True)
class QuantumState:
    """A density matrix over an ordered list of labeled subsystems.

    Construction validates hermiticity, unit trace and positive
    semidefiniteness (all up to 1e-10) and rejects invalid input with a
    message naming the failed invariant.
    """

    labels: tuple[str, ...]
    dims: tuple[int, ...]
    rho: np.ndarray

    def __post_init__(self):
        labels = tuple(self.labels)
        dims = tuple(int(d) for d in self.dims)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dims", dims)
        if len(labels) != len(dims):
            raise ValidationError(
                f"subsystems: {len(labels)} labels but {len(dims)} dimensions"
            )
        if len(set(labels)) != len(labels):
            raise ValidationError(f"subsystems: duplicate labels in {labels}")
        if any(d < 2 for d in dims):
            raise ValidationError(f"subsystems: every dimension must be >= 2, got {dims}")
        total = math.prod(dims)
        rho = np.array(self.rho, dtype=complex)
        if rho.shape != (total, total):
            raise ValidationError(
                f"shape: matrix is {rho.shape}, subsystem dimensions give {total}x{total}"
            )
        herm_dev = float(np.max(np.abs(rho - rho.conj().T))) if total else 0.0
        if herm_dev > HERMITICITY_TOL:
            raise ValidationError(f"hermiticity: max |rho - rho^dagger| = {herm_dev:.3e} exceeds {HERMITICITY_TOL}")
        tr = complex(np.trace(rho))
        if abs(tr - 1.0) > TRACE_TOL:
            raise ValidationError(f"trace: tr(rho) = {tr:.12g} differs from 1 by more than {TRACE_TOL}")
        low = float(np.min(np.linalg.eigvalsh((rho + rho.conj().T) / 2.0)))
        if low < -POSITIVITY_TOL:
            raise ValidationError(f"positivity: smallest eigenvalue {low:.3e} is below -{POSITIVITY_TOL}")
        rho.setflags(write=False)
        object.__setattr__(self, "rho", rho)

    @property
    def dim(self) -> int:
        return math.prod(self.dims)

    def axis(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise ValidationError(f"unknown subsystem label {label!r}; state has {self.labels}") from None

    @classmethod
    def from_vector(cls, psi, dims, labels) -> "QuantumState":
        """Pure state |psi><psi| from an (already normalized) amplitude vector."""
        v = np.asarray(psi, dtype=complex).reshape(-1)
        return cls(labels=tuple(labels), dims=tuple(dims), rho=np.outer(v, v.conj()))


@dataclass(frozen=True)
class SpectralDecomposition:
    """Eigenvalues in ascending order plus unit eigenvectors as matrix columns."""

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def hermitian_eig(m) -> SpectralDecomposition:
    """Eigendecomposition of a Hermitian matrix.

    The input may carry up to 1e-8 of asymmetry; it is symmetrized as
    (m + m^dagger)/2 before decomposing so downstream entropies stay real.
    """
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValidationError(f"dimension: hermitian_eig needs a square matrix, got shape {a.shape}")
    dev = float(np.max(np.abs(a - a.conj().T))) if a.size else 0.0
    if dev > EIG_INPUT_TOL:
        raise ValidationError(f"hermiticity: input deviates from Hermitian by {dev:.3e} (> {EIG_INPUT_TOL})")
    vals, vecs = np.linalg.eigh((a + a.conj().T) / 2.0)
    return SpectralDecomposition(eigenvalues=vals, eigenvectors=vecs)


def partial_trace(state: QuantumState, keep) -> QuantumState:
    """Trace out every subsystem not in ``keep``, preserving label order.

    ``keep`` may be any iterable of labels (or a single label string);
    an empty ``keep`` reduces everything away and yields the trivial
    one-dimensional state [[1]].
    """
    keep_set = {keep} if isinstance(keep, str) else set(keep)
    unknown = keep_set - set(state.labels)
    if unknown:
        raise ValidationError(f"unknown subsystem label {sorted(unknown)[0]!r}; state has {state.labels}")
    kept_labels = tuple(l for l in state.labels if l in keep_set)
    if kept_labels == state.labels:
        return state
    drop = [i for i, l in enumerate(state.labels) if l not in keep_set]
    dims = list(state.dims)
    arr = state.rho.reshape(tuple(dims) + tuple(dims))
    for ax in sorted(drop, reverse=True):
        arr = np.trace(arr, axis1=ax, axis2=ax + len(dims))
        del dims[ax]
    total = math.prod(dims)
    return QuantumState(labels=kept_labels, dims=tuple(dims), rho=arr.reshape(total, total))


def post_measurement_state(state: QuantumState, basis: OrthonormalBasis, measured: str) -> QuantumState:
    """Dephase the measured subsystem in the given basis.

    Returns sum_i (P_i tensor I) rho (P_i tensor I) with P_i = |v_i><v_i|
    acting on the measured slot: the classical-quantum state that records
    the outcome alongside the untouched subsystems.  Subsystem order is
    preserved.
    """
    k = state.axis(measured)
    if basis.dim != state.dims[k]:
        raise ValidationError(
            f"dimension mismatch: basis is {basis.dim}-dimensional, subsystem "
            f"{measured!r} has dimension {state.dims[k]}"
        )
    before = math.prod(state.dims[:k])
    after = math.prod(state.dims[k + 1:])
    eye_b = np.eye(before)
    eye_a = np.eye(after)
    out = np.zeros_like(state.rho)
    for v in basis.vectors:
        proj = np.kron(np.kron(eye_b, np.outer(v, v.conj())), eye_a)
        out = out + proj @ state.rho @ proj
    return QuantumState(labels=state.labels, dims=state.dims, rho=out)


def with_subsystems(state: QuantumState, dims, labels) -> QuantumState:
    """Reinterpret the same matrix over a finer subsystem factorization.

    Index factoring is big-endian: the first new label is the most
    significant factor of the old row index, matching the kron convention.
    """
    dims = tuple(int(d) for d in dims)
    if math.prod(dims) != state.dim:
        raise ValidationError(
            f"shape: cannot factor dimension {state.dim} as {dims} (product {math.prod(dims)})"
        )
    return QuantumState(labels=tuple(labels), dims=dims, rho=state.rho)


def state_to_dict(state: QuantumState) -> dict:
    return {
        "labels": list(state.labels),
        "dims": list(state.dims),
        "re": state.rho.real.tolist(),
        "im": state.rho.imag.tolist(),
    }


def state_from_dict(payload: dict) -> QuantumState:
    for key in ("labels", "dims", "re", "im"):
        if key not in payload:
            raise ValidationError(f"state file: missing field {key!r}")
    re = np.array(payload["re"], dtype=float)
    im = np.array(payload["im"], dtype=float)
    if re.shape != im.shape or re.ndim != 2:
        raise ValidationError(f"state file: re/im must be equal-shape 2-d arrays, got {re.shape} and {im.shape}")
    return QuantumState(
        labels=tuple(payload["labels"]),
        dims=tuple(payload["dims"]),
        rho=re + 1j * im,
    )


def read_state_file(path) -> QuantumState:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            payload = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"state file: not valid JSON ({exc})") from exc
    return state_from_dict(payload)


def write_state_file(state: QuantumState, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(state_to_dict(state), fh)
        fh.write("\n")

"""Mutually unbiased bases for small dimensions.

Two orthonormal bases of C^d are mutually unbiased when every cross
overlap satisfies |<psi_j|phi_k>|^2 = 1/d.  For prime-power d there are
d+1 pairwise unbiased bases (a complete set).  This module hardcodes the
reference tables for d = 2, 3, 4 and generates complete sets for odd
prime d from a quadratic Gauss-sum construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError

GRAM_TOL = 1e-10
UNBIASED_TOL = 1e-9


@dataclass(frozen=True)
class OrthonormalBasis:
    """An orthonormal basis of C^dim; row k of ``vectors`` is the k-th ket."""

    dim: int
    vectors: np.ndarray

    def __post_init__(self):
        v = np.array(self.vectors, dtype=complex)
        if v.shape != (self.dim, self.dim):
            raise ValidationError(
                f"orthonormality: expected {self.dim} vectors of length {self.dim}, "
                f"got array of shape {v.shape}"
            )
        gram = v @ v.conj().T
        dev = float(np.max(np.abs(gram - np.eye(self.dim))))
        if dev > GRAM_TOL:
            raise ValidationError(f"orthonormality: Gram deviation {dev:.3e} exceeds {GRAM_TOL}")
        v.setflags(write=False)
        object.__setattr__(self, "vectors", v)


@dataclass(frozen=True)
class MubSet:
    """A complete set of d+1 pairwise mutually unbiased bases."""

    dim: int
    bases: tuple[OrthonormalBasis, ...]

    def __post_init__(self):
        object.__setattr__(self, "bases", tuple(self.bases))
        if len(self.bases) != self.dim + 1:
            raise ValidationError(
                f"completeness: need {self.dim + 1} bases for dimension {self.dim}, "
                f"got {len(self.bases)}"
            )
        for b in self.bases:
            if b.dim != self.dim:
                raise ValidationError(f"completeness: basis of dimension {b.dim} in a dim-{self.dim} set")
        dev = _max_unbiased_deviation(self.bases)
        if dev > UNBIASED_TOL:
            raise ValidationError(f"unbiasedness: overlap deviation {dev:.3e} exceeds {UNBIASED_TOL}")

    def __len__(self):
        return len(self.bases)

    def __iter__(self):
        return iter(self.bases)


def _basis(rows) -> OrthonormalBasis:
    v = np.array(rows, dtype=complex)
    return OrthonormalBasis(dim=v.shape[0], vectors=v)


def _max_unbiased_deviation(bases) -> float:
    """Largest |overlap^2 - 1/d| over all cross-basis vector pairs."""
    d = bases[0].dim
    worst = 0.0
    for a in range(len(bases)):
        for b in range(a + 1, len(bases)):
            ov = np.abs(bases[a].vectors.conj() @ bases[b].vectors.T) ** 2
            worst = max(worst, float(np.max(np.abs(ov - 1.0 / d))))
    return worst


def pauli_mubs() -> MubSet:
    """The qubit set: computational, then the sigma_x and sigma_y eigenbases."""
    s = 1.0 / np.sqrt(2.0)
    m1 = _basis([[1, 0], [0, 1]])
    m2 = _basis([[s, s], [s, -s]])
    m3 = _basis([[s, 1j * s], [s, -1j * s]])
    return MubSet(dim=2, bases=(m1, m2, m3))


def qutrit_mubs() -> MubSet:
    """The four-basis qutrit table built on the cube root of unity w = (-1+sqrt(3)i)/2."""
    w = (-1.0 + np.sqrt(3.0) * 1j) / 2.0
    w2 = w * w
    s = 1.0 / np.sqrt(3.0)
    m1 = _basis(np.eye(3))
    m2 = _basis([[s, s, s], [s, s * w, s * w2], [s, s * w2, s * w]])
    m3 = _basis([[s, s * w, s * w], [s, s * w2, s], [s, s, s * w2]])
    m4 = _basis([[s, s * w2, s * w2], [s, s * w, s], [s, s, s * w]])
    return MubSet(dim=3, bases=(m1, m2, m3, m4))


def ququart_mubs() -> MubSet:
    """The five-basis d=4 table with entries in {1, -1, i, -i}/2."""
    i = 1j
    m1 = _basis(np.eye(4))
    m2 = _basis(0.5 * np.array([
        [1, 1, 1, 1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
        [1, -1, 1, -1],
    ]))
    m3 = _basis(0.5 * np.array([
        [1, -1, -i, -i],
        [1, -1, i, i],
        [1, 1, i, -i],
        [1, 1, -i, i],
    ]))
    m4 = _basis(0.5 * np.array([
        [1, -i, -i, -1],
        [1, -i, i, 1],
        [1, i, i, -1],
        [1, i, -i, 1],
    ]))
    m5 = _basis(0.5 * np.array([
        [1, -i, -1, -i],
        [1, -i, 1, i],
        [1, i, -1, i],
        [1, i, 1, -i],
    ]))
    return MubSet(dim=4, bases=(m1, m2, m3, m4, m5))


def prime_mubs(d: int) -> MubSet:
    """Complete set for an odd prime d <= 31.

    Basis a (a = 0..d-1) has k-th vector with components
    w^(a*j^2 + k*j) / sqrt(d), w = exp(2*pi*i/d), plus the computational
    basis.  The quadratic Gauss sum makes distinct bases unbiased.
    """
    if not isinstance(d, (int, np.integer)) or d < 3 or d > 31 or d % 2 == 0 or not _is_prime(d):
        raise ValidationError(f"unsupported dimension: prime_mubs requires an odd prime <= 31, got {d!r}")
    j = np.arange(d)
    bases = [_basis(np.eye(d))]
    for a in range(d):
        rows = np.empty((d, d), dtype=complex)
        for k in range(d):
            phases = (a * j * j + k * j) % d
            rows[k] = np.exp(2j * np.pi * phases / d) / np.sqrt(d)
        bases.append(_basis(rows))
    return MubSet(dim=d, bases=tuple(bases))


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def mubs_for_dim(d: int) -> MubSet:
    """Reference table for d in {2,3,4}, generic construction for odd primes."""
    if d == 2:
        return pauli_mubs()
    if d == 3:
        return qutrit_mubs()
    if d == 4:
        return ququart_mubs()
    return prime_mubs(d)


@dataclass(frozen=True)
class MubCheck:
    """Result of verify_mub: worst deviations and pass flag at the given tolerance."""

    max_unbiased_deviation: float
    max_gram_deviation: float
    tol: float

    @property
    def passed(self) -> bool:
        return self.max_unbiased_deviation <= self.tol and self.max_gram_deviation <= self.tol


def verify_mub(bases, tol: float = UNBIASED_TOL) -> MubCheck:
    """Check pairwise unbiasedness and per-basis orthonormality of candidate bases.

    Accepts a MubSet or any sequence of OrthonormalBasis (completeness is
    not required here, only the overlap conditions).
    """
    if isinstance(bases, MubSet):
        bases = bases.bases
    bases = tuple(bases)
    gram_dev = 0.0
    for b in bases:
        gram = b.vectors @ b.vectors.conj().T
        gram_dev = max(gram_dev, float(np.max(np.abs(gram - np.eye(b.dim)))))
    return MubCheck(
        max_unbiased_deviation=_max_unbiased_deviation(bases) if len(bases) > 1 else 0.0,
        max_gram_deviation=gram_dev,
        tol=tol,
    )


def mubset_to_dict(mubs: MubSet) -> dict:
    """JSON-ready form: per basis a row-major re/im pair, rows are kets."""
    return {
        "dim": mubs.dim,
        "bases": [
            {"re": b.vectors.real.tolist(), "im": b.vectors.imag.tolist()}
            for b in mubs.bases
        ],
    }


def mubset_from_dict(payload: dict) -> MubSet:
    try:
        dim = int(payload["dim"])
        bases = tuple(
            OrthonormalBasis(
                dim=dim,
                vectors=np.array(b["re"], dtype=float) + 1j * np.array(b["im"], dtype=float),
            )
            for b in payload["bases"]
        )
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"mub file: missing or malformed field ({exc})") from exc
    return MubSet(dim=dim, bases=bases)

"""Entropic functionals: Shannon, von Neumann, conditional, mutual, Holevo.

All logarithms are base 2, so every quantity is in bits.
"""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .mub import OrthonormalBasis
from .qstate import QuantumState, hermitian_eig, partial_trace, post_measurement_state

PROB_FLOOR = -1e-12
PROB_SUM_TOL = 1e-9
EIG_FLOOR = -1e-10
IMAG_TOL = 1e-10


def _labels(arg) -> frozenset:
    return frozenset({arg} if isinstance(arg, str) else arg)


def _clean_probs(p) -> np.ndarray:
    """Validate a probability vector; tiny negatives are clamped to zero."""
    q = np.asarray(p, dtype=float).reshape(-1)
    if q.size and float(q.min()) < PROB_FLOOR:
        raise ValidationError(f"probability: entry {float(q.min()):.3e} below {PROB_FLOOR}")
    if abs(float(q.sum()) - 1.0) > PROB_SUM_TOL:
        raise ValidationError(f"probability: sum {float(q.sum()):.12g} differs from 1 by more than {PROB_SUM_TOL}")
    return np.clip(q, 0.0, None)


def shannon_entropy(p) -> float:
    """-sum p_i log2 p_i with 0 log 0 := 0."""
    q = _clean_probs(p)
    nz = q[q > 0.0]
    return max(float(-(nz * np.log2(nz)).sum()), 0.0)


def _spectrum_entropy(eigenvalues) -> float:
    lam = np.asarray(eigenvalues, dtype=float)
    if lam.size and float(lam.min()) < EIG_FLOOR:
        raise ValidationError(f"positivity: eigenvalue {float(lam.min()):.3e} below {EIG_FLOOR}")
    lam = lam[lam > 0.0]
    return max(float(-(lam * np.log2(lam)).sum()), 0.0)


def von_neumann_entropy(state: QuantumState) -> float:
    """-tr(rho log2 rho), evaluated on the spectrum."""
    return _spectrum_entropy(hermitian_eig(state.rho).eigenvalues)


def conditional_entropy(state: QuantumState, target, memory) -> float:
    """S(target|memory) = S(target+memory) - S(memory); negative values witness entanglement."""
    t, m = _labels(target), _labels(memory)
    if t & m:
        raise ValidationError(f"overlapping label sets: {sorted(t & m)} appear on both sides")
    joint = partial_trace(state, t | m)
    return von_neumann_entropy(joint) - von_neumann_entropy(partial_trace(joint, m))


def mutual_information(state: QuantumState, x, y) -> float:
    """S(x) + S(y) - S(xy)."""
    a, b = _labels(x), _labels(y)
    if a & b:
        raise ValidationError(f"overlapping label sets: {sorted(a & b)} appear on both sides")
    joint = partial_trace(state, a | b)
    return (
        von_neumann_entropy(partial_trace(joint, a))
        + von_neumann_entropy(partial_trace(joint, b))
        - von_neumann_entropy(joint)
    )


def measurement_probs(state: QuantumState, basis: OrthonormalBasis, measured: str) -> np.ndarray:
    """Outcome distribution p_i = <v_i| rho_measured |v_i> for a projective measurement."""
    reduced = partial_trace(state, {measured})
    if basis.dim != reduced.dim:
        raise ValidationError(
            f"dimension mismatch: basis is {basis.dim}-dimensional, subsystem "
            f"{measured!r} has dimension {reduced.dim}"
        )
    raw = np.array([v.conj() @ reduced.rho @ v for v in basis.vectors])
    worst_imag = float(np.max(np.abs(raw.imag)))
    if worst_imag > IMAG_TOL:
        raise ValidationError(f"probability: imaginary part {worst_imag:.3e} exceeds {IMAG_TOL}")
    return _clean_probs(raw.real)


def holevo_quantity(state: QuantumState, basis: OrthonormalBasis, measured: str, memory) -> float:
    """Accessible information about the outcome held by the memory.

    Mutual information between the dephased measured subsystem and the
    memory in the post-measurement classical-quantum state.
    """
    mem = _labels(memory)
    if measured in mem:
        raise ValidationError(f"overlapping label sets: [{measured!r}] appear on both sides")
    reduced = partial_trace(state, mem | {measured})
    dephased = post_measurement_state(reduced, basis, measured)
    return mutual_information(dephased, {measured}, mem)


def purity(state: QuantumState) -> float:
    """tr(rho^2), from 1/dim (maximally mixed) to 1 (pure)."""
    return float(np.real(np.trace(state.rho @ state.rho)))

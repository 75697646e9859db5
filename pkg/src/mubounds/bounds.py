"""Uncertainty bounds for projective measurements with quantum memories.

The left-hand side of every relation here is the total conditional
uncertainty of an uncertainty game,

    sum_t sum_{i in S_t} S(M_i | B_t),

where basis i is announced to the holder of memory B_t.  The module
evaluates the classic two-measurement bounds, the general m-measurement
bound built on pairwise overlaps (``zhang_bound``), the purity-based
Sanchez-Ruiz bounds on the memoryless entropy sum over a complete MUB
set, and the complete-MUB lower/upper bounds that combine all of them
(``cmub_lower_bound`` / ``cmub_upper_bound``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import InvariantViolation, ValidationError
from .entropy import (
    conditional_entropy,
    holevo_quantity,
    measurement_probs,
    mutual_information,
    purity,
    shannon_entropy,
    von_neumann_entropy,
)
from .mub import OrthonormalBasis
from .qstate import QuantumState, partial_trace, post_measurement_state
from .scenario import GameScenario

SANDWICH_TOL = 1e-7
LHS_CROSSCHECK_TOL = 1e-9
CMUB_OVERLAP_TOL = 1e-9
FLOOR_SNAP = 1e-12
PURITY_SLACK = 1e-9


def q_mu(b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    """Complementarity bound -log2 max_jk |<psi_j|phi_k>|^2 for two bases."""
    if b1.dim != b2.dim:
        raise ValidationError(f"dimension mismatch: bases have dimensions {b1.dim} and {b2.dim}")
    c = float(np.max(np.abs(b1.vectors.conj() @ b2.vectors.T) ** 2))
    return -math.log2(c)


def berta_bound(state: QuantumState, b1: OrthonormalBasis, b2: OrthonormalBasis) -> float:
    """Memory-assisted two-measurement lower bound q + S(A|B) on a bipartite state."""
    if len(state.labels) != 2:
        raise ValidationError(f"scenario: berta_bound needs a bipartite state, got labels {state.labels}")
    a, b = state.labels
    return q_mu(b1, b2) + conditional_entropy(state, a, b)


def tripartite_bounds(state: QuantumState, b1: OrthonormalBasis, b2: OrthonormalBasis) -> dict[str, float]:
    """Lower bounds on S(M1|B) + S(M2|C) for a three-party state.

    Measurements act on the first subsystem; the second holds memory for
    M1 and the third for M2.  Returns the plain complementarity bound
    ('renes') plus its two correction-term refinements ('ming', 'wu').
    """
    if len(state.labels) != 3:
        raise ValidationError(f"scenario: tripartite_bounds needs three subsystems, got labels {state.labels}")
    a, b, c = state.labels
    q = q_mu(b1, b2)
    s_a = von_neumann_entropy(partial_trace(state, {a}))
    h1 = shannon_entropy(measurement_probs(state, b1, a))
    h2 = shannon_entropy(measurement_probs(state, b2, a))
    i_ab = mutual_information(state, a, b)
    i_ac = mutual_information(state, a, c)
    i_m1_c = holevo_quantity(state, b1, a, {c})
    i_m2_b = holevo_quantity(state, b2, a, {b})
    i_m1_b = holevo_quantity(state, b1, a, {b})
    i_m2_c = holevo_quantity(state, b2, a, {c})
    delta1 = 2.0 * s_a + q - i_ab - i_ac + i_m2_b + i_m1_c - h1 - h2
    delta2 = 2.0 * s_a + q - i_m1_b - i_m2_c - h1 - h2
    return {
        "renes": q,
        "ming": q + max(0.0, delta1),
        "wu": q + max(0.0, delta2),
    }


def _check_purity(d: int, purity_a: float) -> float:
    if d < 2:
        raise ValidationError(f"dimension: need d >= 2, got {d}")
    lo = 1.0 / d
    if purity_a < lo - PURITY_SLACK or purity_a > 1.0 + PURITY_SLACK:
        raise ValidationError(f"purity {purity_a:.12g} outside [{lo:.12g}, 1]")
    return min(max(purity_a, lo), 1.0)


def sanchez_ruiz_lower(d: int, purity_a: float) -> float:
    """Purity-based lower bound on sum_i H(M_i) over a complete MUB set.

    With v = (d+1)/(purity+1) and f = floor(v),
    L = (d+1) [ log2(1+f) - (f/v)(1+f-v) log2(1+1/f) ].
    When v sits within 1e-12 of an integer the floor snaps to it; the
    expression is continuous there, the snap only removes float jitter.
    """
    p = _check_purity(d, purity_a)
    v = (d + 1.0) / (p + 1.0)
    f = round(v) if abs(v - round(v)) <= FLOOR_SNAP else math.floor(v)
    return (d + 1.0) * (math.log2(1.0 + f) - (f / v) * (1.0 + f - v) * math.log2(1.0 + 1.0 / f))


def sanchez_ruiz_upper(d: int, purity_a: float) -> float:
    """Purity-based upper bound on sum_i H(M_i) over a complete MUB set.

    For d > 2: (d+1) log2 d - (d-1) log2(d-1) (d*purity - 1) / (d(d-2));
    for d = 2 the coefficient carries a natural log: 3 - (2*purity-1)/(2 ln 2).
    """
    p = _check_purity(d, purity_a)
    base = (d + 1.0) * math.log2(d)
    if d == 2:
        return base - (d - 1.0) * (d * p - 1.0) / (d * math.log(2.0))
    return base - (d - 1.0) * math.log2(d - 1.0) * (d * p - 1.0) / (d * (d - 2.0))


@dataclass(frozen=True)
class MeasurementTerm:
    basis: int
    memory: str
    h_m: float
    s_m_given_b: float
    i_m_b: float

    def to_dict(self) -> dict:
        return {"basis": self.basis, "memory": self.memory, "h_m": self.h_m,
                "s_m_given_b": self.s_m_given_b, "i_m_b": self.i_m_b}


@dataclass(frozen=True)
class MemoryTerm:
    memory: str
    s_a_given_b: float
    i_a_b: float
    m_t: int

    def to_dict(self) -> dict:
        return {"memory": self.memory, "s_a_given_b": self.s_a_given_b,
                "i_a_b": self.i_a_b, "m_t": self.m_t}


@dataclass(frozen=True)
class BoundReport:
    """Every bound and intermediate quantity for one evaluated game."""

    lhs_uncertainty: float
    thm1_lower: float
    thm2_upper: float
    zhang_lower: float
    base_cmub_lower: float
    delta_cmub: float
    delta_zhang: float
    l_cmubs: float
    u_cmubs: float
    purity_a: float
    v: float
    s_a: float
    per_measurement: tuple[MeasurementTerm, ...] = field(default_factory=tuple)
    per_memory: tuple[MemoryTerm, ...] = field(default_factory=tuple)

    def check_invariants(self) -> list[str]:
        """Names of violated report invariants; empty when all hold."""
        bad = []
        if self.thm1_lower > self.lhs_uncertainty + SANDWICH_TOL:
            bad.append(
                f"thm1_lower <= lhs_uncertainty (got {self.thm1_lower:.12g} > {self.lhs_uncertainty:.12g})"
            )
        if self.lhs_uncertainty > self.thm2_upper + SANDWICH_TOL:
            bad.append(
                f"lhs_uncertainty <= thm2_upper (got {self.lhs_uncertainty:.12g} > {self.thm2_upper:.12g})"
            )
        if self.thm1_lower < self.base_cmub_lower - 1e-12:
            bad.append(
                f"thm1_lower >= base_cmub_lower (got {self.thm1_lower:.12g} < {self.base_cmub_lower:.12g})"
            )
        return bad

    def to_dict(self) -> dict:
        return {
            "lhs_uncertainty": self.lhs_uncertainty,
            "thm1_lower": self.thm1_lower,
            "thm2_upper": self.thm2_upper,
            "zhang_lower": self.zhang_lower,
            "base_cmub_lower": self.base_cmub_lower,
            "delta_cmub": self.delta_cmub,
            "delta_zhang": self.delta_zhang,
            "l_cmubs": self.l_cmubs,
            "u_cmubs": self.u_cmubs,
            "purity_a": self.purity_a,
            "v": self.v,
            "s_a": self.s_a,
            "per_measurement": [t.to_dict() for t in self.per_measurement],
            "per_memory": [t.to_dict() for t in self.per_memory],
        }


def _pairwise_overlap_log_sum(scenario: GameScenario) -> float:
    """sum over basis pairs of log2 c_ij, with c_ij from the actual vectors.

    The bases come from a verified complete MUB set, so each c_ij must sit
    at 1/d; anything else means the set was corrupted after validation.
    """
    bases = scenario.mubs.bases
    d = scenario.mubs.dim
    total = 0.0
    for i in range(len(bases)):
        for j in range(i + 1, len(bases)):
            c = float(np.max(np.abs(bases[i].vectors.conj() @ bases[j].vectors.T) ** 2))
            if abs(c - 1.0 / d) > CMUB_OVERLAP_TOL:
                raise InvariantViolation(
                    f"pairwise overlap c_{i + 1}{j + 1} = {c:.12g} deviates from 1/{d}"
                )
            total += math.log2(c)
    return total


def _analyze(scenario: GameScenario) -> BoundReport:
    d = scenario.mubs.dim
    m = len(scenario.mubs.bases)
    state = scenario.state
    measured = scenario.measured

    rho_a = partial_trace(state, {measured})
    s_a = von_neumann_entropy(rho_a)
    purity_a = purity(rho_a)
    v = (d + 1.0) / (purity_a + 1.0)
    l_val = sanchez_ruiz_lower(d, purity_a)
    u_val = sanchez_ruiz_upper(d, purity_a)

    groups = scenario.partition.groups()
    per_memory = []
    per_measurement = []
    lhs_direct = 0.0
    for mem in scenario.memories:
        indices = groups[mem]
        joint = partial_trace(state, {measured, mem})
        s_a_given_b = conditional_entropy(joint, measured, mem)
        i_a_b = mutual_information(joint, measured, mem)
        per_memory.append(MemoryTerm(memory=mem, s_a_given_b=s_a_given_b, i_a_b=i_a_b, m_t=len(indices)))
        for idx in indices:
            basis = scenario.mubs.bases[idx - 1]
            h_m = shannon_entropy(measurement_probs(rho_a, basis, measured))
            dephased = post_measurement_state(joint, basis, measured)
            i_m_b = mutual_information(dephased, measured, mem)
            s_m_given_b = conditional_entropy(dephased, measured, mem)
            lhs_direct += s_m_given_b
            per_measurement.append(
                MeasurementTerm(basis=idx, memory=mem, h_m=h_m, s_m_given_b=s_m_given_b, i_m_b=i_m_b)
            )
    per_measurement.sort(key=lambda t: t.basis)

    lhs = sum(t.h_m - t.i_m_b for t in per_measurement)
    if abs(lhs - lhs_direct) > LHS_CROSSCHECK_TOL:
        raise InvariantViolation(
            f"lhs cross-check: identity form {lhs:.12g} vs direct form {lhs_direct:.12g}"
        )

    sum_holevo = sum(t.i_m_b for t in per_measurement)
    base_term = ((d + 1.0) / 2.0) * math.log2(d)
    coef = {t.memory: t.m_t * (t.m_t - 1) / (2.0 * d) for t in per_memory}
    base = base_term + sum(coef[t.memory] * t.s_a_given_b for t in per_memory)
    delta_cmub = (
        l_val
        - base_term
        - sum(coef[t.memory] for t in per_memory) * s_a
        + sum(coef[t.memory] * t.i_a_b for t in per_memory)
        - sum_holevo
    )
    thm1 = base + max(0.0, delta_cmub)
    thm2 = u_val - sum_holevo

    zhang_first = -_pairwise_overlap_log_sum(scenario) / (m - 1.0)
    zcoef = {t.memory: t.m_t * (t.m_t - 1) / (2.0 * (m - 1.0)) for t in per_memory}
    zhang_cond = sum(zcoef[t.memory] * t.s_a_given_b for t in per_memory)
    sum_mt = sum(t.m_t * (t.m_t - 1) for t in per_memory)
    delta_zhang = (
        (m * (m - 1.0) - sum_mt) / (2.0 * (m - 1.0)) * s_a
        + sum(zcoef[t.memory] * t.i_a_b for t in per_memory)
        - sum_holevo
    )
    zhang = zhang_first + zhang_cond + max(0.0, delta_zhang)

    return BoundReport(
        lhs_uncertainty=lhs,
        thm1_lower=thm1,
        thm2_upper=thm2,
        zhang_lower=zhang,
        base_cmub_lower=base,
        delta_cmub=delta_cmub,
        delta_zhang=delta_zhang,
        l_cmubs=l_val,
        u_cmubs=u_val,
        purity_a=purity_a,
        v=v,
        s_a=s_a,
        per_measurement=tuple(per_measurement),
        per_memory=tuple(per_memory),
    )


def zhang_bound(scenario: GameScenario) -> float:
    """General m-measurement, n-memory lower bound from pairwise overlaps."""
    return _analyze(scenario).zhang_lower


def cmub_lower_bound(scenario: GameScenario) -> float:
    """Complete-MUB lower bound: overlap base term plus the purity correction.

    ((d+1)/2) log2 d + sum_t m_t(m_t-1)/(2d) S(A|B_t) + max{0, delta}, where
    delta trades the base term against the Sanchez-Ruiz lower bound and the
    memories' mutual-information and Holevo terms.
    """
    return _analyze(scenario).thm1_lower


def cmub_upper_bound(scenario: GameScenario) -> float:
    """Complete-MUB upper bound: Sanchez-Ruiz upper value minus summed Holevo terms."""
    return _analyze(scenario).thm2_upper


def evaluate_all(scenario: GameScenario) -> BoundReport:
    """Evaluate every bound on one game and return the full report.

    Raises InvariantViolation if the report breaks its own guarantees
    (lower <= uncertainty <= upper, lower >= its base term).
    """
    report = _analyze(scenario)
    bad = report.check_invariants()
    if bad:
        raise InvariantViolation("; ".join(bad))
    return report

"""Uncertainty-game setups: reference state families, partitions, random batches.

A game assigns each of the d+1 bases of a complete MUB set to one of n
memories.  Whoever holds memory B_t learns the basis choice whenever it
falls in their share and tries to guess the outcome; the game's total
uncertainty is the sum of the corresponding conditional entropies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator, Mapping

import numpy as np

from .errors import ValidationError
from .mub import MubSet, pauli_mubs, ququart_mubs, qutrit_mubs
from .qstate import QuantumState, hermitian_eig, with_subsystems


@dataclass(frozen=True)
class Partition:
    """Assignment of basis indices (1-based) to memory labels.

    Every basis index 1..k appears exactly once and every memory label
    receives at least one basis; ``n`` is the number of memories.
    """

    n: int
    assignment: Mapping[int, str]

    def __post_init__(self):
        assignment = dict(self.assignment)
        object.__setattr__(self, "assignment", assignment)
        k = len(assignment)
        if set(assignment) != set(range(1, k + 1)):
            missing = sorted(set(range(1, k + 1)) - set(assignment))
            raise ValidationError(f"partition: basis indices must be exactly 1..{k}, missing/extra near {missing}")
        labels = set(assignment.values())
        if self.n != len(labels):
            raise ValidationError(f"partition: n = {self.n} but assignment uses {len(labels)} memory labels")

    def groups(self) -> dict[str, tuple[int, ...]]:
        """Memory label -> sorted tuple of its basis indices."""
        out: dict[str, list[int]] = {}
        for idx in sorted(self.assignment):
            out.setdefault(self.assignment[idx], []).append(idx)
        return {label: tuple(ids) for label, ids in out.items()}


def single_memory_partition(basis_count: int, memory: str = "B") -> Partition:
    return Partition(n=1, assignment={i: memory for i in range(1, basis_count + 1)})


def singleton_partition(memories) -> Partition:
    """Basis i goes to the i-th memory; requires as many bases as memories."""
    memories = tuple(memories)
    return Partition(n=len(memories), assignment={i + 1: m for i, m in enumerate(memories)})


@dataclass(frozen=True)
class GameScenario:
    """A full game input: state, measured subsystem, memories, bases, partition."""

    state: QuantumState
    measured: str
    memories: tuple[str, ...]
    mubs: MubSet
    partition: Partition

    def __post_init__(self):
        object.__setattr__(self, "memories", tuple(self.memories))
        if self.measured not in self.state.labels:
            raise ValidationError(f"scenario: measured label {self.measured!r} not in state labels {self.state.labels}")
        if self.state.dims[self.state.axis(self.measured)] != self.mubs.dim:
            raise ValidationError(
                f"scenario: measured subsystem has dimension "
                f"{self.state.dims[self.state.axis(self.measured)]}, bases have {self.mubs.dim}"
            )
        extra = set(self.memories) - (set(self.state.labels) - {self.measured})
        if extra:
            raise ValidationError(f"scenario: memory labels {sorted(extra)} not available in the state")
        if len(set(self.memories)) != len(self.memories):
            raise ValidationError(f"scenario: duplicate memory labels {self.memories}")
        if len(self.partition.assignment) != len(self.mubs.bases):
            raise ValidationError(
                f"scenario: partition covers {len(self.partition.assignment)} bases, "
                f"set has {len(self.mubs.bases)}"
            )
        if set(self.partition.assignment.values()) != set(self.memories):
            raise ValidationError(
                f"scenario: partition memories {sorted(set(self.partition.assignment.values()))} "
                f"do not match scenario memories {sorted(self.memories)}"
            )


@dataclass(frozen=True)
class RandomStateSpec:
    """A seeded, reproducible batch of random density matrices."""

    dim: int
    kind: str
    seed: int
    count: int

    def __post_init__(self):
        if self.dim < 2:
            raise ValidationError(f"random spec: dim must be >= 2, got {self.dim}")
        if self.count < 1:
            raise ValidationError(f"random spec: count must be >= 1, got {self.count}")
        if self.kind not in ("pure", "mixed"):
            raise ValidationError(f"random spec: kind must be 'pure' or 'mixed', got {self.kind!r}")


def example1_state(theta: float) -> QuantumState:
    """Two-qubit pure state cos(theta)|00> + sin(theta)|11> on labels A, B."""
    psi = np.zeros(4, dtype=complex)
    psi[0] = np.cos(theta)
    psi[3] = np.sin(theta)
    return QuantumState.from_vector(psi, dims=(2, 2), labels=("A", "B"))


def example2_state(phi: float, theta: float) -> QuantumState:
    """Two-qutrit pure state sin(phi)cos(theta)|00> + sin(phi)sin(theta)|11> + cos(phi)|22>."""
    psi = np.zeros(9, dtype=complex)
    psi[0] = np.sin(phi) * np.cos(theta)
    psi[4] = np.sin(phi) * np.sin(theta)
    psi[8] = np.cos(phi)
    return QuantumState.from_vector(psi, dims=(3, 3), labels=("A", "B"))


def example4_w_state(phi: float, theta: float) -> QuantumState:
    """Generalized three-qubit W state on labels A, B1, B2 (A is the first qubit).

    sin(phi)cos(theta)|001> + sin(phi)sin(theta)|010> + cos(phi)|100>.
    """
    psi = np.zeros(8, dtype=complex)
    psi[0b001] = np.sin(phi) * np.cos(theta)
    psi[0b010] = np.sin(phi) * np.sin(theta)
    psi[0b100] = np.cos(phi)
    return QuantumState.from_vector(psi, dims=(2, 2, 2), labels=("A", "B1", "B2"))


def example5_ghz_state(theta: float) -> QuantumState:
    """Four-qubit pure state cos(theta)|0000> + sin(theta)|1111> on A, B1, B2, B3."""
    psi = np.zeros(16, dtype=complex)
    psi[0] = np.cos(theta)
    psi[15] = np.sin(theta)
    return QuantumState.from_vector(psi, dims=(2, 2, 2, 2), labels=("A", "B1", "B2", "B3"))


def _item_rng(seed: int, index: int) -> np.random.Generator:
    # One PCG64 substream per batch item: SeedSequence(seed, spawn_key=(index,)).
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence(entropy=seed, spawn_key=(index,))))


def random_mixed_states(spec: RandomStateSpec) -> Iterator[QuantumState]:
    """Seeded stream of mixed states from a multiplicative probability cascade.

    Per item, in this draw order: dim uniforms on [0,1] whose running
    product (after normalization) gives the spectrum, then dim^2 uniforms
    on [-1,1] filling a real matrix row-major.  The matrix's diagonal D,
    strict upper U and strict lower L parts combine into the Hermitian
    D + (U^T + U) + i(L - L^T), whose eigenvectors (ascending eigenvalue
    order) carry the cascade probabilities.
    """
    if spec.kind != "mixed":
        raise ValidationError(f"random spec: expected kind 'mixed', got {spec.kind!r}")
    d = spec.dim
    for index in range(spec.count):
        rng = _item_rng(spec.seed, index)
        cascade = np.cumprod(rng.random(d))
        probs = cascade / cascade.sum()
        r = rng.uniform(-1.0, 1.0, size=(d, d))
        upper = np.triu(r, 1)
        lower = np.tril(r, -1)
        herm = np.diag(np.diag(r)) + upper.T + upper + 1j * (lower - lower.T)
        vecs = hermitian_eig(herm).eigenvectors
        rho = (vecs * probs) @ vecs.conj().T
        yield QuantumState(labels=("S",), dims=(d,), rho=rho)


def random_pure_states(spec: RandomStateSpec) -> Iterator[QuantumState]:
    """Seeded stream of Haar-direction pure states.

    Per item: dim real then dim imaginary standard normal draws form the
    amplitude vector, normalized to unit length.
    """
    if spec.kind != "pure":
        raise ValidationError(f"random spec: expected kind 'pure', got {spec.kind!r}")
    d = spec.dim
    for index in range(spec.count):
        rng = _item_rng(spec.seed, index)
        psi = rng.standard_normal(d) + 1j * rng.standard_normal(d)
        psi /= np.linalg.norm(psi)
        yield QuantumState(labels=("S",), dims=(d,), rho=np.outer(psi, psi.conj()))


def random_states(spec: RandomStateSpec) -> Iterator[QuantumState]:
    return random_pure_states(spec) if spec.kind == "pure" else random_mixed_states(spec)


EXAMPLE_PARAMETERS = {
    "example1": ("theta",),
    "example2": ("phi", "theta"),
    "example3": ("seed", "kind", "index"),
    "example4": ("phi", "theta"),
    "example5": ("theta",),
    "example6": ("seed", "kind", "index"),
}


def scenario_from_state(example: str, state: QuantumState, partition: Partition | None = None) -> GameScenario:
    """Wrap a 16-dimensional random state into an example3 or example6 game."""
    if state.dim != 16:
        raise ValidationError(f"scenario: {example} needs a 16-dimensional state, got dimension {state.dim}")
    if example == "example3":
        st = state if state.dims == (4, 4) else with_subsystems(state, (4, 4), ("A", "B"))
        mubs = ququart_mubs()
        return GameScenario(
            state=st,
            measured="A",
            memories=("B",),
            mubs=mubs,
            partition=partition or single_memory_partition(len(mubs.bases), "B"),
        )
    if example == "example6":
        st = state if state.dims == (2, 2, 2, 2) else with_subsystems(state, (2, 2, 2, 2), ("A", "B1", "B2", "B3"))
        return GameScenario(
            state=st,
            measured="A",
            memories=("B1", "B2", "B3"),
            mubs=pauli_mubs(),
            partition=partition or singleton_partition(("B1", "B2", "B3")),
        )
    raise ValidationError(f"scenario: unknown random-state example {example!r}")


def build_scenario(example: str, params: Mapping[str, float], partition: Partition | None = None) -> GameScenario:
    """Assemble one of the six reference games with its default partition.

    example1/example2/example3 use a single memory; example4 sends basis 1
    to B1 and bases 2, 3 to B2; example5/example6 give basis i to B_i.
    """
    known = EXAMPLE_PARAMETERS.get(example)
    if known is None:
        raise ValidationError(f"scenario: unknown example {example!r}")
    extra = set(params) - set(known)
    if extra:
        raise ValidationError(f"scenario: {example} does not take parameters {sorted(extra)}")

    if example == "example1":
        state = example1_state(_require(params, "theta", example))
        mubs = pauli_mubs()
        return GameScenario(state=state, measured="A", memories=("B",), mubs=mubs,
                            partition=partition or single_memory_partition(len(mubs.bases), "B"))
    if example == "example2":
        state = example2_state(_require(params, "phi", example), _require(params, "theta", example))
        mubs = qutrit_mubs()
        return GameScenario(state=state, measured="A", memories=("B",), mubs=mubs,
                            partition=partition or single_memory_partition(len(mubs.bases), "B"))
    if example == "example4":
        state = example4_w_state(_require(params, "phi", example), _require(params, "theta", example))
        return GameScenario(state=state, measured="A", memories=("B1", "B2"), mubs=pauli_mubs(),
                            partition=partition or Partition(n=2, assignment={1: "B1", 2: "B2", 3: "B2"}))
    if example == "example5":
        state = example5_ghz_state(_require(params, "theta", example))
        return GameScenario(state=state, measured="A", memories=("B1", "B2", "B3"), mubs=pauli_mubs(),
                            partition=partition or singleton_partition(("B1", "B2", "B3")))

    # example3 / example6: one state drawn from the seeded stream
    seed = int(_require(params, "seed", example))
    kind = str(params.get("kind", "mixed"))
    index = int(params.get("index", 0))
    spec = RandomStateSpec(dim=16, kind=kind, seed=seed, count=index + 1)
    state = None
    for state in random_states(spec):
        pass
    return scenario_from_state(example, state, partition)


def _require(params: Mapping[str, float], name: str, example: str) -> float:
    if name not in params:
        raise ValidationError(f"scenario: {example} requires parameter {name!r}")
    return float(params[name])

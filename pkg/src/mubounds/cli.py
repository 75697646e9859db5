"""Command-line harness: sweeps, random batches, single-state reports, self-checks.

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 invariant
violation.  Angle-valued flags take radians and accept a trailing ``pi``
literal (``0.25pi``, ``pi``, ``-0.5pi``).
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Sequence

import numpy as np

from .errors import InvariantViolation, ValidationError
from .bounds import evaluate_all, sanchez_ruiz_lower, sanchez_ruiz_upper
from .entropy import (
    conditional_entropy,
    holevo_quantity,
    measurement_probs,
    purity,
    shannon_entropy,
)
from .mub import MubSet, mubs_for_dim, mubset_to_dict, pauli_mubs, prime_mubs, ququart_mubs, qutrit_mubs, verify_mub
from .qstate import post_measurement_state, read_state_file, with_subsystems
from .scenario import (
    EXAMPLE_PARAMETERS,
    GameScenario,
    Partition,
    RandomStateSpec,
    build_scenario,
    random_states,
    scenario_from_state,
)

USAGE_EXIT = 1
VALIDATION_EXIT = 2
INVARIANT_EXIT = 3

SWEEP_HEADER = "param,lhs,zhang_lower,thm1_lower,thm2_upper,delta_cmub,delta_zhang,purity_a"
RANDOM_HEADER = "index,lhs,zhang_lower,thm1_lower,thm2_upper"

_SWEEP_EXAMPLES = {k: v for k, v in EXAMPLE_PARAMETERS.items() if k in
                   ("example1", "example2", "example4", "example5")}
_MUB_ALIASES = {"pauli": 2, "qutrit": 3, "ququart": 4}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would sys.exit(2); map to our code 1
        raise _UsageError(message)


def parse_angle(text: str) -> float:
    """Radians, optionally as a multiple of pi: '0.25pi', 'pi', '-pi', '1.57'."""
    s = text.strip().lower()
    try:
        if s.endswith("pi"):
            head = s[:-2].strip()
            if head in ("", "+"):
                factor = 1.0
            elif head == "-":
                factor = -1.0
            else:
                factor = float(head)
            return factor * math.pi
        return float(s)
    except ValueError:
        raise _UsageError(f"cannot parse angle {text!r}") from None


def parse_fixed(pairs: Sequence[str] | None) -> dict[str, float]:
    fixed: dict[str, float] = {}
    for item in pairs or ():
        if "=" not in item:
            raise _UsageError(f"--fix expects name=value, got {item!r}")
        name, value = item.split("=", 1)
        fixed[name.strip()] = parse_angle(value)
    return fixed


def parse_partition(text: str, memories: Sequence[str]) -> Partition:
    """'1|2,3' assigns basis 1 to the first memory and bases 2, 3 to the second."""
    groups = text.split("|")
    parsed: list[list[int]] = []
    seen: set[int] = set()
    for group in groups:
        entries = [e.strip() for e in group.split(",") if e.strip()]
        if not entries:
            raise ValidationError("partition: every memory needs at least one basis")
        indices = []
        for entry in entries:
            try:
                idx = int(entry)
            except ValueError:
                raise ValidationError(f"partition: basis index {entry!r} is not an integer") from None
            if idx in seen:
                raise ValidationError(f"partition: basis {idx} assigned twice")
            seen.add(idx)
            indices.append(idx)
        parsed.append(indices)
    if len(parsed) != len(memories):
        raise ValidationError(
            f"partition: {len(parsed)} groups but the state provides {len(memories)} memories"
        )
    assignment = {idx: label for label, indices in zip(memories, parsed) for idx in indices}
    return Partition(n=len(memories), assignment=assignment)


def parse_mub_choice(text: str) -> MubSet:
    s = text.strip().lower()
    d = _MUB_ALIASES.get(s)
    if d is None:
        try:
            d = int(s)
        except ValueError:
            raise _UsageError(f"--mub expects a dimension or one of {sorted(_MUB_ALIASES)}, got {text!r}") from None
    return mubs_for_dim(d)


def format_value(x: float) -> str:
    """Shortest decimal at up to 12 significant digits; stable across runs."""
    if x == 0.0:
        x = 0.0  # normalize -0.0
    return format(float(x), ".12g")


def write_csv(path: str, header: str, rows) -> None:
    lines = [header]
    lines.extend(",".join(format_value(v) if isinstance(v, float) else str(v) for v in row) for row in rows)
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write("\n".join(lines) + "\n")


def cmd_sweep(args) -> int:
    params = _SWEEP_EXAMPLES.get(args.example)
    if params is None:
        raise _UsageError(f"--example must be one of {sorted(_SWEEP_EXAMPLES)} for sweep")
    if args.param not in params:
        raise _UsageError(f"{args.example} has parameters {params}, not {args.param!r}")
    if args.steps < 2:
        raise _UsageError(f"--steps must be >= 2, got {args.steps}")
    lo = parse_angle(args.from_)
    hi = parse_angle(args.to)
    if not lo < hi:
        raise _UsageError(f"--from must be below --to, got {lo} and {hi}")
    fixed = parse_fixed(args.fix)
    for name in fixed:
        if name not in params or name == args.param:
            raise _UsageError(f"--fix {name} is not a free parameter of {args.example}")
    missing = [p for p in params if p != args.param and p not in fixed]
    if missing:
        raise _UsageError(f"{args.example} needs --fix for {missing}")

    rows = []
    for value in np.linspace(lo, hi, args.steps):
        report = evaluate_all(build_scenario(args.example, {args.param: float(value), **fixed}))
        rows.append((
            float(value),
            report.lhs_uncertainty,
            report.zhang_lower,
            report.thm1_lower,
            report.thm2_upper,
            report.delta_cmub,
            report.delta_zhang,
            report.purity_a,
        ))
    write_csv(args.out, SWEEP_HEADER, rows)
    return 0


def cmd_random(args) -> int:
    if args.example not in ("example3", "example6"):
        raise _UsageError("--example must be example3 or example6 for random")
    if args.dim != 16:
        raise ValidationError(f"random batches use 16-dimensional states, got --dim {args.dim}")
    spec = RandomStateSpec(dim=args.dim, kind=args.kind, seed=args.seed, count=args.count)
    rows = []
    for index, state in enumerate(random_states(spec)):
        report = evaluate_all(scenario_from_state(args.example, state))
        rows.append((index, report.lhs_uncertainty, report.zhang_lower,
                     report.thm1_lower, report.thm2_upper))
    rows.sort(key=lambda r: (r[1], r[0]))
    write_csv(args.out, RANDOM_HEADER, rows)
    manifest = {"seed": spec.seed, "kind": spec.kind, "dim": spec.dim,
                "count": spec.count, "example": args.example}
    with open(Path(args.out).with_suffix(".manifest.json"), "w", encoding="utf-8") as fh:
        json.dump(manifest, fh)
        fh.write("\n")
    return 0


def cmd_bounds(args) -> int:
    state = read_state_file(args.state)
    mubs = parse_mub_choice(args.mub)
    if len(state.labels) < 2:
        raise ValidationError("bounds needs a state with at least two subsystems")
    measured = state.labels[0]
    memories = state.labels[1:]
    partition = parse_partition(args.partition, memories)
    scenario = GameScenario(state=state, measured=measured, memories=memories,
                            mubs=mubs, partition=partition)
    report = evaluate_all(scenario)
    print(json.dumps(report.to_dict(), indent=2))
    return 0


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def self_check(mub_tables: Mapping[str, object] | None = None) -> list[CheckResult]:
    """Built-in battery: MUB tables, the entropy identity, the purity
    sandwich on the memoryless entropy sum, and the 2-design identity."""
    tables = dict(mub_tables) if mub_tables is not None else {
        "d=2": pauli_mubs(),
        "d=3": qutrit_mubs(),
        "d=4": ququart_mubs(),
        "d=5": prime_mubs(5),
    }
    results = []
    for name, table in tables.items():
        check = verify_mub(table, tol=1e-9)
        results.append(CheckResult(
            name=f"mub {name}",
            passed=check.passed,
            detail=(f"max unbiasedness deviation {check.max_unbiased_deviation:.3e}, "
                    f"max Gram deviation {check.max_gram_deviation:.3e}"),
        ))

    eq8_worst = 0.0
    for d in (2, 3, 4):
        mubs = mubs_for_dim(d)
        spec = RandomStateSpec(dim=d * d, kind="mixed", seed=20240 + d, count=5)
        for state in random_states(spec):
            bip = with_subsystems(state, (d, d), ("A", "B"))
            for basis in mubs:
                h = shannon_entropy(measurement_probs(bip, basis, "A"))
                i_mb = holevo_quantity(bip, basis, "A", {"B"})
                direct = conditional_entropy(post_measurement_state(bip, basis, "A"), "A", "B")
                eq8_worst = max(eq8_worst, abs((h - i_mb) - direct))
    results.append(CheckResult(
        name="entropy identity H(M) - I(M:B) = S(MB) - S(B)",
        passed=eq8_worst <= 1e-9,
        detail=f"worst deviation {eq8_worst:.3e}",
    ))

    sandwich_ok = True
    sandwich_worst = 0.0
    for d in (2, 3, 4):
        mubs = mubs_for_dim(d)
        for state in random_states(RandomStateSpec(dim=d, kind="mixed", seed=515 + d, count=30)):
            total = sum(shannon_entropy(measurement_probs(state, b, "S")) for b in mubs)
            p = purity(state)
            lo, hi = sanchez_ruiz_lower(d, p), sanchez_ruiz_upper(d, p)
            sandwich_worst = max(sandwich_worst, lo - total, total - hi)
            if total < lo - 1e-9 or total > hi + 1e-9:
                sandwich_ok = False
    results.append(CheckResult(
        name="purity sandwich L <= sum H(M_i) <= U",
        passed=sandwich_ok,
        detail=f"worst margin violation {max(sandwich_worst, 0.0):.3e}",
    ))

    design_worst = 0.0
    for d in (2, 3, 4, 5):
        mubs = mubs_for_dim(d)
        for state in random_states(RandomStateSpec(dim=d, kind="mixed", seed=909 + d, count=25)):
            total = sum(float(np.sum(measurement_probs(state, b, "S") ** 2)) for b in mubs)
            design_worst = max(design_worst, abs(total - (purity(state) + 1.0)))
    results.append(CheckResult(
        name="2-design identity sum p^2 = purity + 1",
        passed=design_worst <= 1e-9,
        detail=f"worst deviation {design_worst:.3e}",
    ))
    return results


def cmd_verify(args) -> int:
    results = self_check()
    failed = False
    for res in results:
        tag = "PASS" if res.passed else "FAIL"
        print(f"{tag} {res.name}: {res.detail}")
        failed = failed or not res.passed
    return INVARIANT_EXIT if failed else 0


def cmd_export_mubs(args) -> int:
    mubs = parse_mub_choice(args.mub)
    with open(args.out, "w", encoding="utf-8") as fh:
        json.dump(mubset_to_dict(mubs), fh)
        fh.write("\n")
    return 0


def build_parser() -> _Parser:
    parser = _Parser(prog="mubounds",
                     description="Uncertainty bounds for complete MUB sets with quantum memories.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sweep", help="evaluate all bounds over a parameter grid, write CSV")
    p.add_argument("--example", required=True)
    p.add_argument("--param", required=True)
    p.add_argument("--from", dest="from_", required=True, help="grid start (radians, pi literal allowed)")
    p.add_argument("--to", required=True, help="grid end")
    p.add_argument("--steps", type=int, required=True, help="grid size, >= 2, endpoints included")
    p.add_argument("--fix", action="append", metavar="NAME=VALUE", help="pin a non-swept parameter")
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("random", help="evaluate all bounds over a seeded random batch, write CSV")
    p.add_argument("--example", required=True, help="example3 (one memory) or example6 (three memories)")
    p.add_argument("--kind", choices=("pure", "mixed"), required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--dim", type=int, default=16)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("bounds", help="full JSON report for a state file")
    p.add_argument("--state", required=True, help="JSON state file; first label is measured")
    p.add_argument("--mub", required=True, help="dimension (2/3/4/odd prime) or pauli/qutrit/ququart")
    p.add_argument("--partition", required=True, help="basis groups per memory, e.g. '1|2,3'")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="run the built-in self-check battery")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("export-mubs", help="write a MUB table as JSON")
    p.add_argument("--mub", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export_mubs)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE_EXIT
    except (ValidationError, OSError) as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return VALIDATION_EXIT
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return INVARIANT_EXIT


def run() -> None:
    raise SystemExit(main())

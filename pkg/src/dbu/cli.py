"""Command-line front end.

Subcommands: ``check`` (decide an instance file), ``params`` (parameter
vector), ``gen-tqbf`` (QBF -> instance file), ``harness`` (oracle
cross-validation), ``validate`` (invariants and frame class).

``check`` exits 0 for TRUE, 1 for FALSE, 2 on any error; ``validate`` and
``harness`` exit 0 on success, 1 on violations/disagreements, 2 on errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .engine import (
    NotApplicableError,
    ValidationError,
    extract_parameters,
    solve_dbu,
    validate_instance,
    world_count_bound,
)
from .formula import FormulaError
from .jsonio import SchemaError, dumps_canonical, instance_to_json, load_instance, write_harness_report
from .kripke import frame_report
from .reductions import (
    QbfSyntaxError,
    equivalence_harness,
    exhaustive_qbf_suite,
    parse_qbf,
    random_qbf_suite,
    reduce_tqbf_to_dbu,
)


def _fail(message: str) -> int:
    print(f"error: {message}", file=sys.stderr)
    return 2


def cmd_check(args: argparse.Namespace) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, SchemaError, FormulaError) as err:
        return _fail(str(err))
    params = extract_parameters(inst)
    initial_worlds = len(inst.initial.model.worlds)
    trace: list[dict] = []

    def on_step(i: int, state) -> None:
        trace.append(
            {
                "step": i,
                "worlds": len(state.model.worlds),
                "bound": world_count_bound(initial_worlds, params.e, i),
                "designated": sorted(state.designated),
            }
        )

    try:
        verdict = solve_dbu(inst, on_step=on_step)
    except ValidationError as err:
        return _fail("instance is invalid: " + str(err))
    except NotApplicableError as err:
        return _fail(str(err))

    if args.json:
        print(json.dumps({"verdict": verdict, "trace": trace if args.trace else None}))
    else:
        if args.trace:
            print(f"step 0: {initial_worlds} worlds, designated {sorted(inst.initial.designated)}")
            for entry in trace:
                print(
                    f"step {entry['step']}: {entry['worlds']} worlds"
                    f" (bound {entry['bound']}), designated {entry['designated']}"
                )
        print("TRUE" if verdict else "FALSE")
    return 0 if verdict else 1


def cmd_params(args: argparse.Namespace) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, SchemaError, FormulaError) as err:
        return _fail(str(err))
    violations = validate_instance(inst)
    if violations:
        return _fail("instance is invalid: " + "; ".join(violations))
    params = extract_parameters(inst)
    if args.json:
        print(json.dumps(params.as_dict(), sort_keys=True))
        return 0
    print(f"a={params.a} c={params.c} e={params.e} f={params.f} o={params.o} p={params.p} u={params.u}")
    if params.e < args.fpt_threshold and params.u < args.fpt_threshold:
        bound = world_count_bound(len(inst.initial.model.worlds), params.e, params.u)
        print(
            f"note: e={params.e} and u={params.u} are below {args.fpt_threshold}; "
            f"the explicit product stays small (final worlds <= |W0|*e^u = {bound})"
        )
    return 0


def cmd_gen_tqbf(args: argparse.Namespace) -> int:
    try:
        qbf = parse_qbf(args.qbf)
    except QbfSyntaxError as err:
        return _fail(str(err))
    inst = reduce_tqbf_to_dbu(qbf)
    payload = dumps_canonical(instance_to_json(inst))
    try:
        with open(args.out, "w", encoding="utf-8", newline="\n") as handle:
            handle.write(payload)
    except OSError as err:
        return _fail(str(err))
    params = extract_parameters(inst)
    print(f"wrote {args.out}: {len(inst.initial.model.worlds)} worlds, u={params.u}, a={params.a}")
    return 0


def cmd_harness(args: argparse.Namespace) -> int:
    if args.random is not None and args.seed is None:
        return _fail("--random requires an explicit --seed")
    try:
        if args.random is not None:
            suite = random_qbf_suite(
                args.random, max_m=args.max_m, max_clauses=args.max_clauses, seed=args.seed
            )
        else:
            suite = exhaustive_qbf_suite(args.max_m, max_clauses=args.max_clauses)
        report = equivalence_harness(suite)
    except ValueError as err:
        return _fail(str(err))
    if args.out is not None:
        try:
            write_harness_report(report, args.out)
        except OSError as err:
            return _fail(str(err))
    print(report.summary())
    return 0 if report.disagreements == 0 else 1


_FLAG_NAMES = ("serial", "transitive", "euclidean", "reflexive", "symmetric")


def _flag_words(flags) -> str:
    names = [name for name in _FLAG_NAMES if getattr(flags, name)]
    return " ".join(names) if names else "none"


def cmd_validate(args: argparse.Namespace) -> int:
    try:
        inst = load_instance(args.instance)
    except (OSError, SchemaError, FormulaError) as err:
        return _fail(str(err))
    violations = validate_instance(inst)
    reports = {"initial": frame_report(inst.initial.model)}
    for i, action in enumerate(inst.actions):
        reports[f"action {i}"] = frame_report(action.model)
    ranking = {"S5": 2, "KD45": 1, "K": 0}
    overall = min((r.classification for r in reports.values()), key=ranking.get)
    if args.json:
        print(
            json.dumps(
                {
                    "violations": violations,
                    "frame": overall,
                    "frames": {name: report.classification for name, report in reports.items()},
                },
                sort_keys=True,
            )
        )
        return 0 if not violations else 1
    for violation in violations:
        print(f"violation: {violation}")
    for name, report in reports.items():
        per_agent = "; ".join(
            f"{agent}: {_flag_words(flags)}" for agent, flags in sorted(report.per_agent.items())
        )
        print(f"frame[{name}]: {report.classification} ({per_agent})")
    if violations:
        print(f"{len(violations)} violations; frame: {overall}")
    else:
        print(f"OK; frame: {overall}")
    return 0 if not violations else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dbu", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    check = sub.add_parser("check", help="decide an instance file; prints TRUE or FALSE")
    check.add_argument("instance", help="path to an instance JSON file")
    check.add_argument("--trace", action="store_true", help="print per-step world counts")
    check.add_argument("--json", action="store_true", help="machine-readable verdict")
    check.set_defaults(func=cmd_check)

    params = sub.add_parser("params", help="print the instance's parameter vector")
    params.add_argument("instance")
    params.add_argument("--json", action="store_true")
    params.add_argument(
        "--fpt-threshold",
        type=int,
        default=10,
        help="print the small-e,u note when both are below this value",
    )
    params.set_defaults(func=cmd_params)

    gen = sub.add_parser("gen-tqbf", help="translate a QBF into an instance file")
    gen.add_argument("qbf", help="e.g. 'E x1 A x2 . (x1 | x2)'")
    gen.add_argument("out", help="output path for the instance JSON")
    gen.set_defaults(func=cmd_gen_tqbf)

    harness = sub.add_parser(
        "harness", help="cross-validate the solver against the brute-force oracle"
    )
    harness.add_argument("max_m", type=int, help="largest variable count in the suite")
    harness.add_argument("out", nargs="?", default=None, help="optional JSON-lines report path")
    harness.add_argument("--max-clauses", type=int, default=3)
    harness.add_argument("--random", type=int, default=None, metavar="N", help="use N random QBFs")
    harness.add_argument("--seed", type=int, default=None, help="seed for --random")
    harness.set_defaults(func=cmd_harness)

    validate = sub.add_parser("validate", help="report invariant violations and frame classes")
    validate.add_argument("instance")
    validate.add_argument("--json", action="store_true")
    validate.set_defaults(func=cmd_validate)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

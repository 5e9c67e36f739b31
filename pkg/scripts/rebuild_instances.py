#!/usr/bin/env python3
"""Regenerate the bundled instance files in instances/.

Output is canonical JSON, so rerunning this script must leave the files
byte-identical; the test suite relies on that.
"""

from __future__ import annotations

import sys
from pathlib import Path

from dbu import (
    Action,
    DbuInstance,
    EpistemicModel,
    EpistemicState,
    EventModel,
    Postcondition,
    identity_action,
    parse_formula,
    parse_qbf,
    reduce_tqbf_to_dbu,
    save_instance,
    solve_dbu,
)

INSTANCE_DIR = Path(__file__).resolve().parent.parent / "instances"


def tqbf_instances() -> dict[str, DbuInstance]:
    return {
        "tqbf_exists_forall.json": reduce_tqbf_to_dbu(parse_qbf("E x1 A x2 . (x1 | x2)")),
        "tqbf_forall_forall.json": reduce_tqbf_to_dbu(parse_qbf("A x1 A x2 . (x1 | x2)")),
    }


def identity_smoke() -> DbuInstance:
    """Three-world model updated by the do-nothing action; the query holds."""
    agents = ["a", "b"]
    props = ["p", "q"]
    model = EpistemicModel(
        worlds=["w0", "w1", "w2"],
        relations={
            "a": [("w0", "w0"), ("w0", "w1"), ("w1", "w0"), ("w1", "w1"), ("w2", "w2")],
            "b": [("w0", "w0"), ("w1", "w1"), ("w2", "w2")],
        },
        valuation={"w0": ["p"], "w1": ["p", "q"], "w2": ["q"]},
    )
    initial = EpistemicState(model, ["w0"])
    return DbuInstance(
        props,
        agents,
        initial,
        [identity_action(agents, props)],
        parse_formula("B[a] p & D[a] q & B[b] ~q", agents, props),
    )


def sally_anne() -> DbuInstance:
    """The classic false-belief setup: the marble moves while sally is away,
    so sally keeps believing it is in the basket while anne tracks the move.
    Illustrative asset only."""
    agents = ["anne", "sally"]
    props = ["marble_in_basket", "marble_in_box"]
    start = EpistemicState(
        EpistemicModel(
            worlds=["start"],
            relations={"anne": [("start", "start")], "sally": [("start", "start")]},
            valuation={"start": ["marble_in_basket"]},
        ),
        ["start"],
    )
    # While sally is out, anne moves the marble; sally only considers the
    # no-op possible, anne sees which event happened.
    move = Action(
        EventModel(
            events=["move", "noop"],
            relations={
                "anne": [("move", "move"), ("noop", "noop")],
                "sally": [("move", "noop"), ("noop", "noop")],
            },
            pre={
                "move": parse_formula("marble_in_basket", agents, props),
                "noop": parse_formula("T", agents, props),
            },
            post={
                "move": Postcondition({"marble_in_basket": False, "marble_in_box": True}),
                "noop": Postcondition(),
            },
        ),
        ["move"],
    )
    comes_back = identity_action(agents, props)
    query = parse_formula(
        "B[sally] marble_in_basket & B[anne] marble_in_box & ~B[sally] marble_in_box",
        agents,
        props,
    )
    return DbuInstance(props, agents, start, [move, comes_back], query)


def main() -> int:
    INSTANCE_DIR.mkdir(exist_ok=True)
    instances = tqbf_instances()
    instances["identity_smoke.json"] = identity_smoke()
    instances["sally_anne.json"] = sally_anne()
    for name, inst in sorted(instances.items()):
        verdict = solve_dbu(inst)
        save_instance(inst, INSTANCE_DIR / name)
        print(f"{name}: {'TRUE' if verdict else 'FALSE'}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

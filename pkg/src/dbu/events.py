"""Pointed event models (actions): preconditions, factual change, applicability.

Each event carries a precondition (any belief formula) and a postcondition,
which is a consistent conjunction of literals stored as a proposition->bool
map; the empty map is the trivial postcondition that changes nothing.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import Formula, validate_formula
from .kripke import EpistemicState, _IndexedModel

Edge = tuple[str, str]


@dataclass(frozen=True)
class Postcondition:
    """Literal-conjunction postcondition: props mapped to their forced value.

    ``bottom`` marks a postcondition requested as the contradiction in an
    input file; it carries no coherent update semantics and is rejected by
    validation.
    """

    assignments: Mapping[str, bool]
    bottom: bool = False

    def __init__(self, assignments: Mapping[str, bool] | None = None, bottom: bool = False):
        object.__setattr__(self, "assignments", dict(assignments or {}))
        object.__setattr__(self, "bottom", bottom)


@dataclass(frozen=True)
class EventModel:
    """Event structure (E, Q, pre, post) mirroring the epistemic model layout."""

    events: tuple[str, ...]
    relations: Mapping[str, frozenset[Edge]]
    pre: Mapping[str, Formula]
    post: Mapping[str, Postcondition]

    def __init__(
        self,
        events: Iterable[str],
        relations: Mapping[str, Iterable[Edge]],
        pre: Mapping[str, Formula],
        post: Mapping[str, Postcondition],
    ):
        object.__setattr__(self, "events", tuple(sorted(events)))
        object.__setattr__(
            self,
            "relations",
            {agent: frozenset((e, f) for e, f in pairs) for agent, pairs in relations.items()},
        )
        object.__setattr__(self, "pre", dict(pre))
        object.__setattr__(self, "post", dict(post))


@dataclass(frozen=True)
class Action:
    """Pointed event model: an event model plus its nonempty designated events."""

    model: EventModel
    designated: frozenset[str]

    def __init__(self, model: EventModel, designated: Iterable[str]):
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "designated", frozenset(designated))


def identity_action(agents: Iterable[str], props: Iterable[str]) -> Action:
    """Single trivial event, observed as-is by every agent; updating with it
    changes nothing (up to world renaming)."""
    from .formula import top

    agent_list = list(agents)
    model = EventModel(
        events=("e",),
        relations={agent: {("e", "e")} for agent in agent_list},
        pre={"e": top(props)},
        post={"e": Postcondition()},
    )
    return Action(model, {"e"})


# ---------- Validation ----------


def validate_action(a: Action, agents: Iterable[str], props: Iterable[str]) -> list[str]:
    """Check all event-model/action invariants against the instance's A and P."""
    agent_set = frozenset(agents)
    prop_set = frozenset(props)
    m = a.model
    violations: list[str] = []
    event_set = set(m.events)
    if not m.events:
        violations.append("event model has no events")
    if len(event_set) != len(m.events):
        seen: set[str] = set()
        for e in m.events:
            if e in seen:
                violations.append(f"duplicate event {e!r}")
            seen.add(e)
    for e in m.events:
        if not e:
            violations.append("empty event identifier")
    for agent in m.relations:
        if agent not in agent_set:
            violations.append(f"event relation for unknown agent {agent!r}")
    for agent in agent_set:
        if agent not in m.relations:
            violations.append(f"missing event relation for agent {agent!r}")
    for agent, pairs in m.relations.items():
        for e, f in pairs:
            if e not in event_set:
                violations.append(f"dangling event edge source {e!r} for agent {agent!r}")
            if f not in event_set:
                violations.append(f"dangling event edge target {f!r} for agent {agent!r}")
    for e in m.events:
        if e not in m.pre:
            violations.append(f"missing precondition for event {e!r}")
        if e not in m.post:
            violations.append(f"missing postcondition for event {e!r}")
    for e in m.pre:
        if e not in event_set:
            violations.append(f"precondition for unknown event {e!r}")
    for e in m.post:
        if e not in event_set:
            violations.append(f"postcondition for unknown event {e!r}")
    for e, pre in m.pre.items():
        for violation in validate_formula(pre, agent_set, prop_set):
            violations.append(f"precondition of event {e!r}: {violation}")
    for e, post in m.post.items():
        if post.bottom:
            violations.append(f"postcondition of event {e!r} is bottom, which is unsupported")
        for p in post.assignments:
            if p not in prop_set:
                violations.append(f"postcondition of event {e!r} sets unknown proposition {p!r}")
    if not a.designated:
        violations.append("designated event set is empty")
    for e in a.designated:
        if e not in event_set:
            violations.append(f"designated event {e!r} not in event model")
    return violations


# ---------- Applicability ----------


def is_applicable(s: EpistemicState, a: Action) -> bool:
    """True iff some designated event's precondition holds at some designated world."""
    idx = _IndexedModel(s.model)
    designated_indices = {idx.index[w] for w in s.designated}
    memo: dict[int, frozenset[int]] = {}
    for e in sorted(a.designated):
        if designated_indices & idx.sat(a.model.pre[e], memo):
            return True
    return False


def is_applicable_sequence(s: EpistemicState, actions: Iterable[Action]) -> bool:
    """Inductive applicability: every action applies in the state produced by
    the prefix before it.  The empty sequence is always applicable."""
    from .engine import product_update

    state = s
    for action in actions:
        if not is_applicable(state, action):
            return False
        state = product_update(state, action)
    return True

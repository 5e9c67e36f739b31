"""JSON file formats for states, actions, and whole problem instances.

Instance documents look like::

    {
      "props": ["p", "q"],
      "agents": ["a"],
      "initial": {"worlds": [...], "valuation": {world: [true props]},
                   "relations": {agent: [[w, v], ...]}, "designated": [...]},
      "actions": [{"events": [...], "relations": {agent: [[e, f], ...]},
                    "pre": {event: "<formula>"}, "post": {event: {prop: bool}},
                    "designated": [...]}],
      "query": "<formula>"
    }

Valuations are closed-world: propositions absent from a world's list are
false, and worlds may be omitted entirely.  A postcondition may be given as
``true`` (change nothing) or an assignment object; ``false`` requests the
contradictory postcondition, which loads but fails validation.  Serialization
is canonical (sorted keys and lists, two-space indent, LF) so identical data
produces identical bytes.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .engine import DbuInstance
from .events import Action, EventModel, Postcondition
from .formula import parse_formula, print_formula
from .kripke import EpistemicModel, EpistemicState
from .reductions import HarnessReport


class SchemaError(ValueError):
    """Malformed document: wrong shape, wrong type, or a bad identifier."""


def _require(doc: Any, key: str, kind: type, where: str) -> Any:
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected an object")
    if key not in doc:
        raise SchemaError(f"{where}: missing key {key!r}")
    value = doc[key]
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: key {key!r} must be a {kind.__name__}")
    return value


def _name_list(raw: Any, where: str) -> list[str]:
    if not isinstance(raw, list) or not all(isinstance(x, str) for x in raw):
        raise SchemaError(f"{where}: expected a list of strings")
    for name in raw:
        _check_identifier(name, where)
    return raw


def _check_identifier(name: str, where: str) -> None:
    # Commas are reserved: product worlds are named "(world,event)', and
    # comma-free inputs keep those names collision-free.
    if not name:
        raise SchemaError(f"{where}: empty identifier")
    if "," in name:
        raise SchemaError(f"{where}: identifier {name!r} contains a comma")


def _relations_from_json(raw: Any, agents: list[str], where: str) -> dict:
    if not isinstance(raw, dict):
        raise SchemaError(f"{where}: 'relations' must be an object")
    relations: dict[str, set[tuple[str, str]]] = {agent: set() for agent in agents}
    for agent, pairs in raw.items():
        if not isinstance(pairs, list):
            raise SchemaError(f"{where}: relation for {agent!r} must be a list of pairs")
        edges = set()
        for pair in pairs:
            if not (isinstance(pair, list) and len(pair) == 2 and all(isinstance(x, str) for x in pair)):
                raise SchemaError(f"{where}: relation for {agent!r} has a malformed pair {pair!r}")
            edges.add((pair[0], pair[1]))
        relations[agent] = edges
    return relations


def state_from_json(doc: Any, agents: list[str], where: str = "initial") -> EpistemicState:
    worlds = _name_list(_require(doc, "worlds", list, where), f"{where}.worlds")
    valuation_raw = _require(doc, "valuation", dict, where)
    valuation = {w: frozenset() for w in worlds}
    for w, props in valuation_raw.items():
        if not isinstance(props, list) or not all(isinstance(p, str) for p in props):
            raise SchemaError(f"{where}.valuation[{w!r}]: expected a list of proposition names")
        valuation[w] = frozenset(props)
    relations = _relations_from_json(doc.get("relations", {}), agents, where)
    designated = _name_list(_require(doc, "designated", list, where), f"{where}.designated")
    return EpistemicState(EpistemicModel(worlds, relations, valuation), designated)


def state_to_json(s: EpistemicState) -> dict:
    return {
        "worlds": sorted(s.model.worlds),
        "valuation": {
            w: sorted(props) for w, props in sorted(s.model.valuation.items()) if props
        },
        "relations": {
            agent: sorted([w, v] for w, v in pairs)
            for agent, pairs in sorted(s.model.relations.items())
        },
        "designated": sorted(s.designated),
    }


def action_from_json(doc: Any, agents: list[str], props: list[str], where: str) -> Action:
    events = _name_list(_require(doc, "events", list, where), f"{where}.events")
    relations = _relations_from_json(doc.get("relations", {}), agents, where)
    pre_raw = _require(doc, "pre", dict, where)
    pre = {}
    for e, text in pre_raw.items():
        if not isinstance(text, str):
            raise SchemaError(f"{where}.pre[{e!r}]: expected a formula string")
        pre[e] = parse_formula(text, agents, props)
    post_raw = _require(doc, "post", dict, where)
    post = {}
    for e, raw in post_raw.items():
        if raw is True:
            post[e] = Postcondition()
        elif raw is False:
            post[e] = Postcondition(bottom=True)
        elif isinstance(raw, dict) and all(isinstance(v, bool) for v in raw.values()):
            post[e] = Postcondition(raw)
        else:
            raise SchemaError(
                f"{where}.post[{e!r}]: expected true, false, or an object of booleans"
            )
    designated = _name_list(_require(doc, "designated", list, where), f"{where}.designated")
    return Action(EventModel(events, relations, pre, post), designated)


def action_to_json(a: Action) -> dict:
    post_json: dict[str, Any] = {}
    for e, post in sorted(a.model.post.items()):
        if post.bottom:
            post_json[e] = False
        else:
            post_json[e] = {p: value for p, value in sorted(post.assignments.items())}
    return {
        "events": sorted(a.model.events),
        "relations": {
            agent: sorted([e, f] for e, f in pairs)
            for agent, pairs in sorted(a.model.relations.items())
        },
        "pre": {e: print_formula(f) for e, f in sorted(a.model.pre.items())},
        "post": post_json,
        "designated": sorted(a.designated),
    }


def instance_from_json(doc: Any) -> DbuInstance:
    props = _name_list(_require(doc, "props", list, "instance"), "instance.props")
    agents = _name_list(_require(doc, "agents", list, "instance"), "instance.agents")
    if not props or not agents:
        raise SchemaError("instance: props and agents must be nonempty")
    initial = state_from_json(_require(doc, "initial", dict, "instance"), agents)
    actions_raw = _require(doc, "actions", list, "instance")
    actions = [
        action_from_json(raw, agents, props, f"actions[{i}]")
        for i, raw in enumerate(actions_raw)
    ]
    query_text = _require(doc, "query", str, "instance")
    query = parse_formula(query_text, agents, props)
    return DbuInstance(props, agents, initial, actions, query)


def instance_to_json(inst: DbuInstance) -> dict:
    return {
        "props": sorted(inst.props),
        "agents": sorted(inst.agents),
        "initial": state_to_json(inst.initial),
        "actions": [action_to_json(a) for a in inst.actions],
        "query": print_formula(inst.query),
    }


def dumps_canonical(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def load_instance(path: str | Path) -> DbuInstance:
    with open(path, encoding="utf-8") as handle:
        try:
            doc = json.load(handle)
        except json.JSONDecodeError as err:
            raise SchemaError(f"{path}: not valid JSON ({err})") from None
    return instance_from_json(doc)


def save_instance(inst: DbuInstance, path: str | Path) -> None:
    Path(path).write_text(dumps_canonical(instance_to_json(inst)), encoding="utf-8")


def write_harness_report(report: HarnessReport, path: str | Path) -> None:
    """One JSON object per line, one line per instance."""
    lines = []
    for record in report.records:
        lines.append(
            json.dumps(
                {
                    "qbf": record.qbf,
                    "oracle": record.oracle,
                    "dbu": record.dbu,
                    "params": record.params.as_dict(),
                    "worlds_final": record.worlds_final,
                    "bound": record.bound,
                    "agree": record.agree,
                },
                sort_keys=True,
            )
        )
    Path(path).write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")

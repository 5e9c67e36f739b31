"""Pointed epistemic models: truth evaluation and frame-property checks.

A model is a world set, one accessibility relation per agent, and a
closed-world valuation (each world lists the propositions true there;
anything unlisted is false).  A state adds a nonempty designated set.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping

from .formula import And, Believes, Formula, Not, Prop, UnknownAgentError

Edge = tuple[str, str]


class UnknownWorldError(ValueError):
    def __init__(self, world: str):
        super().__init__(f"unknown world {world!r}")
        self.world = world


def _normalize_relations(relations: Mapping[str, Iterable[Edge]]) -> dict[str, frozenset[Edge]]:
    return {agent: frozenset((w, v) for w, v in pairs) for agent, pairs in relations.items()}


@dataclass(frozen=True)
class EpistemicModel:
    """Kripke structure (W, R, V) with one relation per agent."""

    worlds: tuple[str, ...]
    relations: Mapping[str, frozenset[Edge]]
    valuation: Mapping[str, frozenset[str]]

    def __init__(
        self,
        worlds: Iterable[str],
        relations: Mapping[str, Iterable[Edge]],
        valuation: Mapping[str, Iterable[str]],
    ):
        # worlds are kept sorted so structurally equal models compare equal
        # regardless of input order
        object.__setattr__(self, "worlds", tuple(sorted(worlds)))
        object.__setattr__(self, "relations", _normalize_relations(relations))
        object.__setattr__(
            self, "valuation", {w: frozenset(props) for w, props in valuation.items()}
        )


@dataclass(frozen=True)
class EpistemicState:
    """Pointed epistemic model: a model plus its nonempty designated worlds."""

    model: EpistemicModel
    designated: frozenset[str]

    def __init__(self, model: EpistemicModel, designated: Iterable[str]):
        object.__setattr__(self, "model", model)
        object.__setattr__(self, "designated", frozenset(designated))

    @property
    def single_pointed(self) -> bool:
        return len(self.designated) == 1


# ---------- Evaluation ----------


class _IndexedModel:
    """Integer-indexed view of a model for fast bottom-up labelling.

    ``sat`` computes, for each subformula, the set of world indices where
    it holds; this is the memoized form of the usual truth recursion and
    returns identical results.
    """

    __slots__ = ("worlds", "index", "succ", "prop_worlds", "universe")

    def __init__(self, m: EpistemicModel):
        self.worlds = m.worlds
        self.index = {w: i for i, w in enumerate(m.worlds)}
        self.succ: dict[str, list[tuple[int, ...]]] = {}
        for agent, pairs in m.relations.items():
            adjacency: list[list[int]] = [[] for _ in m.worlds]
            for w, v in pairs:
                adjacency[self.index[w]].append(self.index[v])
            self.succ[agent] = [tuple(out) for out in adjacency]
        self.prop_worlds: dict[str, set[int]] = {}
        for w, props in m.valuation.items():
            i = self.index[w]
            for p in props:
                self.prop_worlds.setdefault(p, set()).add(i)
        self.universe = frozenset(range(len(m.worlds)))

    def sat(self, f: Formula, _memo: dict[int, frozenset[int]] | None = None) -> frozenset[int]:
        memo = _memo if _memo is not None else {}
        cached = memo.get(id(f))
        if cached is not None:
            return cached
        if isinstance(f, Prop):
            result = frozenset(self.prop_worlds.get(f.name, ()))
        elif isinstance(f, Not):
            result = self.universe - self.sat(f.child, memo)
        elif isinstance(f, And):
            result = self.sat(f.left, memo) & self.sat(f.right, memo)
        elif isinstance(f, Believes):
            succ = self.succ.get(f.agent)
            if succ is None:
                raise UnknownAgentError(f.agent)
            child = self.sat(f.child, memo)
            result = frozenset(
                i for i in range(len(self.worlds)) if all(j in child for j in succ[i])
            )
        else:
            raise TypeError(f"not a formula: {f!r}")
        memo[id(f)] = result
        return result


def satisfying_worlds(m: EpistemicModel, f: Formula) -> frozenset[str]:
    """All worlds of ``m`` where ``f`` holds."""
    idx = _IndexedModel(m)
    return frozenset(idx.worlds[i] for i in idx.sat(f))


def evaluate(m: EpistemicModel, w: str, f: Formula) -> bool:
    """Truth of ``f`` at world ``w``: the standard recursion with the belief
    operator quantifying universally over the agent's successors."""
    idx = _IndexedModel(m)
    if w not in idx.index:
        raise UnknownWorldError(w)
    return idx.index[w] in idx.sat(f)


def evaluate_pointed(s: EpistemicState, f: Formula) -> bool:
    """Truth in a pointed model: ``f`` must hold at every designated world."""
    idx = _IndexedModel(s.model)
    sat = idx.sat(f)
    for w in s.designated:
        if w not in idx.index:
            raise UnknownWorldError(w)
        if idx.index[w] not in sat:
            return False
    return True


# ---------- Frame properties ----------


@dataclass(frozen=True)
class AgentFrameFlags:
    serial: bool
    transitive: bool
    euclidean: bool
    reflexive: bool
    symmetric: bool


@dataclass(frozen=True)
class FrameReport:
    per_agent: Mapping[str, AgentFrameFlags]
    classification: str  # "K", "KD45", or "S5"

    @property
    def is_s5(self) -> bool:
        return self.classification == "S5"

    @property
    def is_kd45(self) -> bool:
        return self.classification in ("KD45", "S5")


def _agent_flags(worlds: tuple[str, ...], pairs: frozenset[Edge]) -> AgentFrameFlags:
    # tolerate dangling endpoints so the report stays available for invalid
    # models (validation flags them separately)
    succ: dict[str, set[str]] = {w: set() for w in worlds}
    for w, v in pairs:
        succ.setdefault(w, set()).add(v)
        succ.setdefault(v, set())
    serial = all(succ[w] for w in worlds)
    reflexive = all(w in succ[w] for w in worlds)
    symmetric = all(w in succ[v] for w, v in pairs)
    transitive = all(succ[v] <= succ[w] for w in succ for v in succ[w])
    euclidean = all(succ[w] <= succ[v] for w in succ for v in succ[w])
    return AgentFrameFlags(serial, transitive, euclidean, reflexive, symmetric)


def frame_report(m) -> FrameReport:
    """Definitional per-agent frame check and the K/KD45/S5 classification.

    S5 requires every relation reflexive, symmetric, and transitive; KD45
    requires serial, transitive, and Euclidean.  Anything else reports K.
    Accepts an epistemic model or an event model (checked over its events).
    """
    members = getattr(m, "worlds", None)
    if members is None:
        members = m.events
    per_agent = {agent: _agent_flags(members, pairs) for agent, pairs in m.relations.items()}
    flags = per_agent.values()
    if all(f.reflexive and f.symmetric and f.transitive for f in flags):
        classification = "S5"
    elif all(f.serial and f.transitive and f.euclidean for f in flags):
        classification = "KD45"
    else:
        classification = "K"
    return FrameReport(per_agent, classification)


# ---------- Validation ----------


def validate_state(s: EpistemicState, agents: Iterable[str], props: Iterable[str]) -> list[str]:
    """Check all model/state invariants against the instance's A and P.

    Violations are returned as data (human-readable strings naming the
    offending world/agent/proposition), not raised.
    """
    agent_set = frozenset(agents)
    prop_set = frozenset(props)
    m = s.model
    violations: list[str] = []
    world_set = set(m.worlds)
    if not m.worlds:
        violations.append("model has no worlds")
    if len(world_set) != len(m.worlds):
        seen: set[str] = set()
        for w in m.worlds:
            if w in seen:
                violations.append(f"duplicate world {w!r}")
            seen.add(w)
    for w in m.worlds:
        if not w:
            violations.append("empty world identifier")
    for agent in m.relations:
        if agent not in agent_set:
            violations.append(f"relation for unknown agent {agent!r}")
    for agent in agent_set:
        if agent not in m.relations:
            violations.append(f"missing relation for agent {agent!r}")
    for agent, pairs in m.relations.items():
        for w, v in pairs:
            if w not in world_set:
                violations.append(f"dangling edge source {w!r} for agent {agent!r}")
            if v not in world_set:
                violations.append(f"dangling edge target {v!r} for agent {agent!r}")
    for w in m.valuation:
        if w not in world_set:
            violations.append(f"valuation lists unknown world {w!r}")
    for w in m.worlds:
        if w not in m.valuation:
            violations.append(f"valuation missing world {w!r}")
    for w, listed in m.valuation.items():
        for p in listed:
            if p not in prop_set:
                violations.append(f"valuation of world {w!r} lists unknown proposition {p!r}")
    if not s.designated:
        violations.append("designated world set is empty")
    for w in s.designated:
        if w not in world_set:
            violations.append(f"designated world {w!r} not in model")
    return violations

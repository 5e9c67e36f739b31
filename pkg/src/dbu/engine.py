"""The decision procedure: product update, sequential application, and the
parameters that govern its cost.

The solver materializes the final updated model explicitly (world count grows
by at most a factor of the event count per update) and then model checks the
query in it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Sequence

from .events import Action, validate_action
from .formula import Formula, formula_size, modal_depth, validate_formula
from .kripke import EpistemicModel, EpistemicState, _IndexedModel, evaluate_pointed, validate_state


class ValidationError(ValueError):
    """An instance failed validation; carries the violation list."""

    def __init__(self, violations: list[str]):
        super().__init__("; ".join(violations))
        self.violations = violations


class NotApplicableError(ValueError):
    """An action's designated preconditions all fail at the designated worlds."""

    def __init__(self, index: int | None = None):
        at = "action is not applicable" if index is None else f"action {index} is not applicable"
        super().__init__(at)
        self.index = index


@dataclass(frozen=True)
class DbuInstance:
    """One decision-problem input: (P, A, initial state, actions, query)."""

    props: frozenset[str]
    agents: frozenset[str]
    initial: EpistemicState
    actions: tuple[Action, ...]
    query: Formula

    def __init__(
        self,
        props: Iterable[str],
        agents: Iterable[str],
        initial: EpistemicState,
        actions: Iterable[Action],
        query: Formula,
    ):
        object.__setattr__(self, "props", frozenset(props))
        object.__setattr__(self, "agents", frozenset(agents))
        object.__setattr__(self, "initial", initial)
        object.__setattr__(self, "actions", tuple(actions))
        object.__setattr__(self, "query", query)


@dataclass(frozen=True)
class ParameterVector:
    """The instance parameters: agent count, max precondition size, max event
    count, query size, query modal depth, proposition count, update count."""

    a: int
    c: int
    e: int
    f: int
    o: int
    p: int
    u: int

    def as_dict(self) -> dict[str, int]:
        return {"a": self.a, "c": self.c, "e": self.e, "f": self.f, "o": self.o, "p": self.p, "u": self.u}


@dataclass(frozen=True)
class SizeBoundReport:
    actual_final_worlds: int
    bound: int


# ---------- Instance validation ----------

def _name_violations(kind: str, names: Iterable[str]) -> list[str]:
    from .formula import RESERVED_NAMES, TOKEN_RE

    violations = []
    for name in sorted(names):
        if not TOKEN_RE.match(name):
            violations.append(f"{kind} {name!r} is not a plain token")
        elif kind == "proposition" and name in RESERVED_NAMES:
            violations.append(f"proposition {name!r} collides with a reserved formula constant")
    return violations


def validate_instance(inst: DbuInstance) -> list[str]:
    """All component validations against the instance's P and A, as data."""
    violations: list[str] = []
    if not inst.props:
        violations.append("proposition set is empty")
    if not inst.agents:
        violations.append("agent set is empty")
    violations += _name_violations("proposition", inst.props)
    violations += _name_violations("agent", inst.agents)
    violations += validate_state(inst.initial, inst.agents, inst.props)
    for i, action in enumerate(inst.actions):
        for violation in validate_action(action, inst.agents, inst.props):
            violations.append(f"action {i}: {violation}")
    for violation in validate_formula(inst.query, inst.agents, inst.props):
        violations.append(f"query: {violation}")
    return violations


# ---------- Product update ----------


def _product_name(world: str, event: str) -> str:
    return f"({world},{event})"


def product_update(s: EpistemicState, a: Action) -> EpistemicState:
    """Synchronous product of a state with an action.

    Surviving worlds are the (world, event) pairs whose precondition holds;
    relations require both components related; postconditions overwrite the
    listed propositions; designated pairs are designated-world x designated-
    event survivors.  Raises NotApplicableError when no designated pair
    survives, keeping the designated set of every produced state nonempty.
    """
    m, em = s.model, a.model
    idx = _IndexedModel(m)
    memo: dict[int, frozenset[int]] = {}
    pre_sat = {e: idx.sat(em.pre[e], memo) for e in em.events}

    designated_world_indices = {idx.index[w] for w in s.designated}
    if not any(designated_world_indices & pre_sat[e] for e in a.designated):
        raise NotApplicableError()

    pairs: list[tuple[str, str]] = []
    for e in em.events:
        sat = pre_sat[e]
        for i, w in enumerate(m.worlds):
            if i in sat:
                pairs.append((w, e))
    names = {pair: _product_name(*pair) for pair in pairs}
    if len(set(names.values())) != len(names):
        raise ValueError("product world naming collision; use comma-free identifiers")
    pair_set = set(pairs)

    world_succ = {
        agent: {w: tuple(idx.worlds[j] for j in out) for w, out in zip(idx.worlds, per_world)}
        for agent, per_world in idx.succ.items()
    }
    event_succ: dict[str, dict[str, list[str]]] = {}
    for agent, epairs in em.relations.items():
        out: dict[str, list[str]] = {e: [] for e in em.events}
        for e, f in epairs:
            out[e].append(f)
        event_succ[agent] = out

    relations: dict[str, frozenset[tuple[str, str]]] = {}
    for agent in m.relations:
        edges = []
        esucc = event_succ.get(agent, {})
        wsucc = world_succ[agent]
        for w, e in pairs:
            source = names[(w, e)]
            for f in esucc.get(e, ()):
                for v in wsucc[w]:
                    if (v, f) in pair_set:
                        edges.append((source, names[(v, f)]))
        relations[agent] = frozenset(edges)

    valuation = {}
    for w, e in pairs:
        assignments = em.post[e].assignments
        base = m.valuation[w]
        if assignments:
            true_props = {p for p in base if assignments.get(p) is not False}
            true_props.update(p for p, value in assignments.items() if value)
        else:
            true_props = base
        valuation[names[(w, e)]] = true_props

    designated = [
        names[(w, e)] for (w, e) in pairs if w in s.designated and e in a.designated
    ]
    model = EpistemicModel(sorted(names.values()), relations, valuation)
    return EpistemicState(model, designated)


def update_trace(s: EpistemicState, actions: Sequence[Action]) -> Iterator[EpistemicState]:
    """Yield the state after each update; raises NotApplicableError with the
    index of the first action whose preconditions fail."""
    state = s
    for i, action in enumerate(actions):
        try:
            state = product_update(state, action)
        except NotApplicableError:
            raise NotApplicableError(i) from None
        yield state


def apply_sequence(s: EpistemicState, actions: Sequence[Action]) -> EpistemicState:
    """Left fold of product updates; the empty sequence returns the state unchanged."""
    state = s
    for state in update_trace(s, actions):
        pass
    return state


# ---------- The decision procedure ----------


def solve_dbu(
    inst: DbuInstance,
    on_step: Callable[[int, EpistemicState], None] | None = None,
) -> bool:
    """Decide whether the initial state updated by all actions satisfies the query.

    ``on_step(i, state)`` is invoked with each intermediate state (1-based),
    for tracing; it does not affect the result.
    """
    violations = validate_instance(inst)
    if violations:
        raise ValidationError(violations)
    state = inst.initial
    for i, state in enumerate(update_trace(inst.initial, inst.actions), start=1):
        if on_step is not None:
            on_step(i, state)
    return evaluate_pointed(state, inst.query)


# ---------- Parameters and size bound ----------


def extract_parameters(inst: DbuInstance) -> ParameterVector:
    """The seven instance parameters; max-based ones are 0 for empty action lists."""
    c = 0
    e = 0
    for action in inst.actions:
        e = max(e, len(action.model.events))
        for pre in action.model.pre.values():
            c = max(c, formula_size(pre))
    return ParameterVector(
        a=len(inst.agents),
        c=c,
        e=e,
        f=formula_size(inst.query),
        o=modal_depth(inst.query),
        p=len(inst.props),
        u=len(inst.actions),
    )


def world_count_bound(initial_worlds: int, e: int, u: int) -> int:
    """Exact cap on the final world count: each update multiplies by at most e."""
    return initial_worlds * e**u


def size_bound_check(inst: DbuInstance) -> SizeBoundReport:
    """Run the updates and report the final world count against its cap."""
    params = extract_parameters(inst)
    final = apply_sequence(inst.initial, inst.actions)
    bound = world_count_bound(len(inst.initial.model.worlds), params.e, params.u)
    return SizeBoundReport(actual_final_worlds=len(final.model.worlds), bound=bound)

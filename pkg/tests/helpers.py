"""Shared generators and independent oracles for the test suite.

The oracles here deliberately re-derive results by a different route than
the package (direct recursion over the truth definition, table-driven metric
recursions) so the tests stay meaningful.
"""

from __future__ import annotations

import random

from hypothesis import strategies as st

from dbu import And, Believes, EpistemicModel, EpistemicState, Formula, Not, Prop

PROPS = ("p", "q", "r")
AGENTS = ("a", "b", "c")


# ---------- hypothesis strategies ----------


def formulas(props=PROPS, agents=AGENTS, max_leaves=25) -> st.SearchStrategy[Formula]:
    base = st.sampled_from([Prop(p) for p in props])
    return st.recursive(
        base,
        lambda children: st.one_of(
            children.map(Not),
            st.tuples(children, children).map(lambda pair: And(*pair)),
            st.tuples(st.sampled_from(list(agents)), children).map(
                lambda pair: Believes(*pair)
            ),
        ),
        max_leaves=max_leaves,
    )


@st.composite
def models(draw, max_worlds=6, max_agents=3, props=PROPS) -> EpistemicModel:
    n = draw(st.integers(1, max_worlds))
    worlds = tuple(f"w{i}" for i in range(n))
    agents = AGENTS[: draw(st.integers(1, max_agents))]
    pair = st.tuples(st.sampled_from(worlds), st.sampled_from(worlds))
    relations = {agent: draw(st.frozensets(pair)) for agent in agents}
    valuation = {w: draw(st.frozensets(st.sampled_from(props))) for w in worlds}
    return EpistemicModel(worlds, relations, valuation)


@st.composite
def states(draw, **kwargs) -> EpistemicState:
    model = draw(models(**kwargs))
    designated = draw(st.frozensets(st.sampled_from(model.worlds), min_size=1))
    return EpistemicState(model, designated)


@st.composite
def state_formula_pairs(draw, max_leaves=25, **kwargs):
    """A state plus a formula drawn over that state's own agent set."""
    s = draw(states(**kwargs))
    f = draw(formulas(agents=tuple(s.model.relations), max_leaves=max_leaves))
    return s, f


# ---------- seeded plain-random generators (for the big acceptance loops) ----------


def random_formula(rng: random.Random, depth: int, props=PROPS, agents=AGENTS) -> Formula:
    if depth == 0 or rng.random() < 0.25:
        return Prop(rng.choice(props))
    kind = rng.randrange(3)
    if kind == 0:
        return Not(random_formula(rng, depth - 1, props, agents))
    if kind == 1:
        return And(
            random_formula(rng, depth - 1, props, agents),
            random_formula(rng, depth - 1, props, agents),
        )
    return Believes(rng.choice(agents), random_formula(rng, depth - 1, props, agents))


def random_model(rng: random.Random, max_worlds=6, max_agents=3, props=PROPS) -> EpistemicModel:
    n = rng.randint(1, max_worlds)
    worlds = tuple(f"w{i}" for i in range(n))
    agents = AGENTS[: rng.randint(1, max_agents)]
    relations = {}
    for agent in agents:
        density = rng.random()
        relations[agent] = frozenset(
            (w, v) for w in worlds for v in worlds if rng.random() < density
        )
    valuation = {w: frozenset(p for p in props if rng.random() < 0.5) for w in worlds}
    return EpistemicModel(worlds, relations, valuation)


def random_state(rng: random.Random, **kwargs) -> EpistemicState:
    model = random_model(rng, **kwargs)
    designated = rng.sample(model.worlds, rng.randint(1, len(model.worlds)))
    return EpistemicState(model, designated)


# ---------- shared assertions ----------


def assert_isomorphic_via(original: EpistemicState, updated: EpistemicState, rename):
    """The updated state must be the original with worlds renamed by ``rename``."""
    mapping = {w: rename(w) for w in original.model.worlds}
    assert set(updated.model.worlds) == set(mapping.values())
    assert updated.designated == {mapping[w] for w in original.designated}
    for agent, pairs in original.model.relations.items():
        assert updated.model.relations[agent] == {(mapping[w], mapping[v]) for w, v in pairs}
    for w in original.model.worlds:
        assert updated.model.valuation[mapping[w]] == original.model.valuation[w]


# ---------- independent oracles ----------


def naive_evaluate(m: EpistemicModel, w: str, f: Formula) -> bool:
    """Direct recursion over the truth definition, no indexing, no memo."""
    if isinstance(f, Prop):
        return f.name in m.valuation[w]
    if isinstance(f, Not):
        return not naive_evaluate(m, w, f.child)
    if isinstance(f, And):
        return naive_evaluate(m, w, f.left) and naive_evaluate(m, w, f.right)
    if isinstance(f, Believes):
        return all(
            naive_evaluate(m, v, f.child) for (u, v) in m.relations[f.agent] if u == w
        )
    raise TypeError(f)


_DEPTH_TABLE = {
    Prop: lambda f, rec: 0,
    Not: lambda f, rec: rec(f.child),
    And: lambda f, rec: max(rec(f.left), rec(f.right)),
    Believes: lambda f, rec: 1 + rec(f.child),
}

_SIZE_TABLE = {
    Prop: lambda f, rec: 1,
    Not: lambda f, rec: 1 + rec(f.child),
    And: lambda f, rec: 1 + rec(f.left) + rec(f.right),
    Believes: lambda f, rec: 1 + rec(f.child),
}


def depth_oracle(f: Formula) -> int:
    return _DEPTH_TABLE[type(f)](f, depth_oracle)


def size_oracle(f: Formula) -> int:
    return _SIZE_TABLE[type(f)](f, size_oracle)


def count_nodes(f: Formula) -> int:
    """Exhaustive node count; equals the size metric on the core AST."""
    total = 0
    stack = [f]
    while stack:
        node = stack.pop()
        total += 1
        if isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, And):
            stack.extend((node.left, node.right))
        elif isinstance(node, Believes):
            stack.append(node.child)
    return total

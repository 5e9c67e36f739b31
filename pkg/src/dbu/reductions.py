"""Quantified Boolean formulas, a brute-force oracle, and the reduction that
turns a QBF into an equivalent belief-update instance.

The reduction encodes each truth assignment as a cluster of worlds fully
connected for a dedicated agent ``a``; one auxiliary agent per variable
carries an edge to a marker world iff the variable is true in that cluster.
Quantifiers become belief operators over the jump relations between
clusters, so the QBF is true iff the translated query holds in the final
updated model.  Running the brute-force oracle against the solver on the
same QBFs cross-validates the whole pipeline end to end.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from enum import Enum
from itertools import combinations, product
from typing import Iterable, Sequence

from .engine import DbuInstance, ParameterVector, extract_parameters, solve_dbu, world_count_bound
from .events import Action, EventModel, Postcondition
from .formula import And, Believes, Formula, Not, Prop, diamond, or_, print_formula, top
from .kripke import EpistemicModel, EpistemicState

MARKER_PROP = "y"
CLUSTER_AGENT = "a"


class QbfSyntaxError(ValueError):
    pass


class Quantifier(Enum):
    FORALL = "A"
    EXISTS = "E"


@dataclass(frozen=True)
class Qbf:
    """Prenex QBF: quantifiers over x1..xm in order, matrix in core form.

    The matrix is stored desugared (negation/conjunction only); variables
    are the propositions ``x1`` .. ``xm`` and each must be bound by the
    prefix.
    """

    prefix: tuple[tuple[Quantifier, int], ...]
    matrix: Formula

    def __post_init__(self):
        if not self.prefix:
            raise ValueError("prefix must bind at least one variable")
        indices = [i for _, i in self.prefix]
        if indices != list(range(1, len(indices) + 1)):
            raise ValueError("prefix must bind x1..xm contiguously and in order")
        bound = {f"x{i}" for i in indices}
        for name in _matrix_vars(self.matrix):
            if name not in bound:
                raise ValueError(f"matrix variable {name!r} is not bound by the prefix")

    @property
    def num_vars(self) -> int:
        return len(self.prefix)


def _matrix_vars(matrix: Formula) -> set[str]:
    names: set[str] = set()
    stack = [matrix]
    while stack:
        node = stack.pop()
        if isinstance(node, Prop):
            names.add(node.name)
        elif isinstance(node, Not):
            stack.append(node.child)
        elif isinstance(node, And):
            stack.append(node.left)
            stack.append(node.right)
        else:
            raise ValueError(f"matrix must be propositional, found {type(node).__name__}")
    return names


# ---------- QBF concrete syntax ----------

_QBF_TOKEN = re.compile(r"\s*(?:([~&|().])|([A-Za-z0-9_]+))")
_VAR_NAME = re.compile(r"x([0-9]+)\Z")


def _tokenize_qbf(text: str) -> list[str]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _QBF_TOKEN.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            raise QbfSyntaxError(f"unexpected character {stripped[0]!r}")
        tokens.append(match.group(1) or match.group(2))
        pos = match.end()
    tokens.append("")
    return tokens


class _QbfParser:
    """Parses ``(<E|A> <var>)+ . <matrix>`` with ``&`` binding tighter than ``|``."""

    def __init__(self, text: str):
        self.tokens = _tokenize_qbf(text)
        self.pos = 0

    def _peek(self) -> str:
        return self.tokens[self.pos]

    def _advance(self) -> str:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def parse(self) -> Qbf:
        prefix: list[tuple[Quantifier, int]] = []
        seen: set[int] = set()
        while self._peek() in ("E", "A"):
            quantifier = Quantifier.EXISTS if self._advance() == "E" else Quantifier.FORALL
            index = self._var_index(self._advance())
            if index in seen:
                raise QbfSyntaxError(f"duplicate variable x{index} in prefix")
            seen.add(index)
            prefix.append((quantifier, index))
        if not prefix:
            raise QbfSyntaxError("expected a quantifier prefix like 'E x1'")
        if self._advance() != ".":
            raise QbfSyntaxError("expected '.' between prefix and matrix")
        matrix = self._or()
        if self._peek() != "":
            raise QbfSyntaxError(f"unexpected trailing token {self._peek()!r}")
        try:
            return Qbf(tuple(prefix), matrix)
        except ValueError as err:
            raise QbfSyntaxError(str(err)) from None

    def _var_index(self, token: str) -> int:
        match = _VAR_NAME.match(token)
        if not match:
            raise QbfSyntaxError(f"expected a variable like 'x1', found {token!r}")
        return int(match.group(1))

    def _or(self) -> Formula:
        left = self._and()
        while self._peek() == "|":
            self._advance()
            left = or_(left, self._and())
        return left

    def _and(self) -> Formula:
        left = self._unary()
        while self._peek() == "&":
            self._advance()
            left = And(left, self._unary())
        return left

    def _unary(self) -> Formula:
        token = self._peek()
        if token == "~":
            self._advance()
            return Not(self._unary())
        if token == "(":
            self._advance()
            inner = self._or()
            if self._advance() != ")":
                raise QbfSyntaxError("expected ')'")
            return inner
        if token in ("", ".", ")", "&", "|"):
            raise QbfSyntaxError(f"expected a matrix term, found {token or 'end of input'!r}")
        index = self._var_index(self._advance())
        return Prop(f"x{index}")


def parse_qbf(text: str) -> Qbf:
    return _QbfParser(text).parse()


def format_qbf(q: Qbf) -> str:
    """Concrete syntax that parses back to an equal Qbf."""
    prefix = " ".join(f"{quantifier.value} x{i}" for quantifier, i in q.prefix)
    return f"{prefix} . {print_formula(q.matrix)}"


# ---------- Brute-force oracle ----------

BRUTE_FORCE_VAR_LIMIT = 20


def _eval_matrix(matrix: Formula, assignment: dict[str, bool]) -> bool:
    if isinstance(matrix, Prop):
        return assignment[matrix.name]
    if isinstance(matrix, Not):
        return not _eval_matrix(matrix.child, assignment)
    if isinstance(matrix, And):
        return _eval_matrix(matrix.left, assignment) and _eval_matrix(matrix.right, assignment)
    raise ValueError(f"matrix must be propositional, found {type(matrix).__name__}")


def qbf_brute_force(q: Qbf) -> bool:
    """Decide a QBF by direct recursion over the prefix: conjunction for
    universal quantifiers, disjunction for existential ones."""
    if q.num_vars > BRUTE_FORCE_VAR_LIMIT:
        raise ValueError(
            f"{q.num_vars} variables exceeds the brute-force limit of {BRUTE_FORCE_VAR_LIMIT}"
        )
    assignment: dict[str, bool] = {}

    def recurse(level: int) -> bool:
        if level == len(q.prefix):
            return _eval_matrix(q.matrix, assignment)
        quantifier, index = q.prefix[level]
        combine = all if quantifier is Quantifier.FORALL else any
        results = []
        for value in (False, True):
            assignment[f"x{index}"] = value
            results.append(recurse(level + 1))
        del assignment[f"x{index}"]
        return combine(results)

    return recurse(0)


# ---------- The reduction ----------


def equivalence_closure(worlds: Iterable[str], edges: Iterable[tuple[str, str]]) -> frozenset[tuple[str, str]]:
    """Smallest equivalence relation over ``worlds`` containing ``edges``:
    all ordered pairs within each connected component (so every world gets
    its reflexive loop)."""
    parent = {w: w for w in worlds}

    def find(w: str) -> str:
        root = w
        while parent[root] != root:
            root = parent[root]
        while parent[w] != root:
            parent[w], w = root, parent[w]
        return root

    for w, v in edges:
        parent[find(w)] = find(v)
    components: dict[str, list[str]] = {}
    for w in parent:
        components.setdefault(find(w), []).append(w)
    return frozenset(
        (w, v) for members in components.values() for w in members for v in members
    )


def _translate_matrix(matrix: Formula) -> Formula:
    """Replace each variable with: the cluster agent can reach a bottom world
    whose variable agent sees the marker."""
    if isinstance(matrix, Prop):
        index = matrix.name[1:]
        return diamond(CLUSTER_AGENT, diamond(index, Prop(MARKER_PROP)))
    if isinstance(matrix, Not):
        return Not(_translate_matrix(matrix.child))
    if isinstance(matrix, And):
        return And(_translate_matrix(matrix.left), _translate_matrix(matrix.right))
    raise ValueError(f"matrix must be propositional, found {type(matrix).__name__}")


def translate_query(q: Qbf) -> Formula:
    """Map universal quantifiers to belief, existential ones to its dual,
    applied outside-in around the translated matrix."""
    body = _translate_matrix(q.matrix)
    for quantifier, index in reversed(q.prefix):
        if quantifier is Quantifier.FORALL:
            body = Believes(str(index), body)
        else:
            body = diamond(str(index), body)
    return body


def initial_state(m: int) -> EpistemicState:
    """Chain of bottom worlds w0..wm fully connected for the cluster agent,
    with a marker satellite vi attached to wi for each variable agent i."""
    bottoms = [f"w{j}" for j in range(m + 1)]
    satellites = [f"v{i}" for i in range(1, m + 1)]
    worlds = bottoms + satellites
    relations = {
        CLUSTER_AGENT: equivalence_closure(worlds, zip(bottoms, bottoms[1:])),
    }
    for i in range(1, m + 1):
        relations[str(i)] = equivalence_closure(worlds, [(f"w{i}", f"v{i}")])
    valuation: dict[str, frozenset[str]] = {w: frozenset() for w in bottoms}
    valuation.update({v: frozenset({MARKER_PROP}) for v in satellites})
    return EpistemicState(EpistemicModel(worlds, relations, valuation), {"w0"})


def variable_action(i: int, m: int) -> Action:
    """Two-event gadget for variable i: the designated trivial event keeps the
    variable true, the alternative strips agent i's marker access (unless the
    marker already holds), and only agent i tells them apart."""
    events = ("e1", "e2")
    relations = {CLUSTER_AGENT: equivalence_closure(events, [])}
    for j in range(1, m + 1):
        drawn = [("e1", "e2")] if j == i else []
        relations[str(j)] = equivalence_closure(events, drawn)
    pre = {
        "e1": top({MARKER_PROP}),
        "e2": or_(Not(diamond(str(i), Prop(MARKER_PROP))), Prop(MARKER_PROP)),
    }
    post = {"e1": Postcondition(), "e2": Postcondition()}
    return Action(EventModel(events, relations, pre, post), {"e1"})


def reduce_tqbf_to_dbu(q: Qbf) -> DbuInstance:
    """Build the belief-update instance whose answer equals the QBF's truth."""
    m = q.num_vars
    agents = {CLUSTER_AGENT} | {str(i) for i in range(1, m + 1)}
    return DbuInstance(
        props={MARKER_PROP},
        agents=agents,
        initial=initial_state(m),
        actions=[variable_action(i, m) for i in range(1, m + 1)],
        query=translate_query(q),
    )


# ---------- Suites and the cross-validation harness ----------


def _clause_universe(m: int, clause_width: int) -> list[tuple[tuple[int, bool], ...]]:
    """All clauses (as literal tuples) of 1..clause_width distinct literals,
    in a fixed deterministic order."""
    literals = [(i, polarity) for i in range(1, m + 1) for polarity in (True, False)]
    clauses: list[tuple[tuple[int, bool], ...]] = []
    for width in range(1, clause_width + 1):
        clauses.extend(combinations(literals, width))
    return clauses


def _clause_formula(clause: Sequence[tuple[int, bool]]) -> Formula:
    literals = [
        Prop(f"x{i}") if polarity else Not(Prop(f"x{i}")) for i, polarity in clause
    ]
    formula = literals[0]
    for literal in literals[1:]:
        formula = or_(formula, literal)
    return formula


def _matrix_formula(clauses: Sequence[tuple[tuple[int, bool], ...]]) -> Formula:
    formula = _clause_formula(clauses[0])
    for clause in clauses[1:]:
        formula = And(formula, _clause_formula(clause))
    return formula


def exhaustive_qbf_suite(max_m: int, max_clauses: int = 3, clause_width: int = 2) -> list[Qbf]:
    """Every QBF with 1..max_m variables, every quantifier pattern, and every
    matrix of 1..max_clauses distinct clauses; deterministic order."""
    suite: list[Qbf] = []
    for m in range(1, max_m + 1):
        universe = _clause_universe(m, clause_width)
        quantifier_patterns = list(product((Quantifier.FORALL, Quantifier.EXISTS), repeat=m))
        for count in range(1, max_clauses + 1):
            for combo in combinations(universe, count):
                matrix = _matrix_formula(combo)
                for pattern in quantifier_patterns:
                    prefix = tuple((quantifier, i + 1) for i, quantifier in enumerate(pattern))
                    suite.append(Qbf(prefix, matrix))
    return suite


def random_qbf_suite(
    count: int,
    max_m: int = 8,
    max_clauses: int = 5,
    clause_width: int = 2,
    seed: int = 0,
) -> list[Qbf]:
    """Seeded random QBFs: variable count 1..max_m, clause count 1..max_clauses."""
    rng = random.Random(seed)
    suite = []
    for _ in range(count):
        m = rng.randint(1, max_m)
        universe = _clause_universe(m, clause_width)
        clauses = rng.sample(universe, rng.randint(1, min(max_clauses, len(universe))))
        prefix = tuple(
            (rng.choice((Quantifier.FORALL, Quantifier.EXISTS)), i) for i in range(1, m + 1)
        )
        suite.append(Qbf(prefix, _matrix_formula(clauses)))
    return suite


@dataclass(frozen=True)
class HarnessRecord:
    qbf: str
    oracle: bool
    dbu: bool
    agree: bool
    params: ParameterVector
    worlds_final: int
    bound: int
    world_counts: tuple[int, ...]  # per-update world counts, initial state excluded

    def bound_ok(self) -> bool:
        return self.worlds_final <= self.bound


@dataclass(frozen=True)
class HarnessReport:
    records: tuple[HarnessRecord, ...]

    @property
    def disagreements(self) -> int:
        return sum(1 for record in self.records if not record.agree)

    def summary(self) -> str:
        return f"{len(self.records)} instances, {self.disagreements} disagreements"


def equivalence_harness(qbfs: Iterable[Qbf]) -> HarnessReport:
    """Run oracle and solver on every QBF and collect agreement, parameters,
    and world counts for the size-bound checks."""
    records = []
    for q in qbfs:
        oracle = qbf_brute_force(q)
        inst = reduce_tqbf_to_dbu(q)
        counts: list[int] = []
        verdict = solve_dbu(inst, on_step=lambda i, state: counts.append(len(state.model.worlds)))
        params = extract_parameters(inst)
        initial_worlds = len(inst.initial.model.worlds)
        records.append(
            HarnessRecord(
                qbf=format_qbf(q),
                oracle=oracle,
                dbu=verdict,
                agree=oracle == verdict,
                params=params,
                worlds_final=counts[-1] if counts else initial_worlds,
                bound=world_count_bound(initial_worlds, params.e, params.u),
                world_counts=tuple(counts),
            )
        )
    return HarnessReport(tuple(records))

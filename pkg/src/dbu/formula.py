"""Belief formulas: core AST, concrete syntax, and the two size metrics.

The core language has exactly four constructors: propositions, negation,
conjunction, and a per-agent belief operator.  Everything else in the
concrete syntax (``|``, ``->``, ``D[a]``, ``T``, ``F``) is sugar and is
expanded at parse time, so the metrics and the semantics only ever see
core nodes.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

AgentId = str
PropId = str

# Agent and proposition names are plain tokens; T and F are reserved words
# of the formula syntax.
TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")
RESERVED_NAMES = frozenset({"T", "F"})


class FormulaError(ValueError):
    """Base class for formula parsing/validation errors."""


class FormulaSyntaxError(FormulaError):
    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()):
        detail = f"{message} at position {position}"
        if expected:
            detail += " (expected " + ", ".join(expected) + ")"
        super().__init__(detail)
        self.position = position
        self.expected = expected


class UnknownAgentError(FormulaError):
    def __init__(self, agent: str, position: int | None = None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown agent {agent!r}{where}")
        self.agent = agent


class UnknownPropositionError(FormulaError):
    def __init__(self, prop: str, position: int | None = None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"unknown proposition {prop!r}{where}")
        self.prop = prop


# ---------- AST ----------


class Formula:
    """Base class of the core AST; instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Prop(Formula):
    name: PropId


@dataclass(frozen=True)
class Not(Formula):
    child: Formula


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Believes(Formula):
    agent: AgentId
    child: Formula


# ---------- Sugar constructors (build desugared core directly) ----------


def or_(left: Formula, right: Formula) -> Formula:
    return Not(And(Not(left), Not(right)))


def implies(left: Formula, right: Formula) -> Formula:
    return or_(Not(left), right)


def diamond(agent: AgentId, child: Formula) -> Formula:
    """Dual of the belief operator: the agent considers ``child`` possible."""
    return Not(Believes(agent, Not(child)))


def top(props: Iterable[PropId]) -> Formula:
    """Tautology, expanded over the lexicographically first proposition."""
    p = min(props)
    return or_(Prop(p), Not(Prop(p)))


def bottom(props: Iterable[PropId]) -> Formula:
    return Not(top(props))


# ---------- Parsing ----------

_TOKEN_PATTERN = re.compile(r"\s*(?:(->)|([~&|()\[\]])|([A-Za-z0-9_]+))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    """Return (kind, text, position) triples; kind is NAME, ARROW, or the punctuation itself."""
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_PATTERN.match(text, pos)
        if match is None or match.end() == pos:
            stripped = text[pos:].lstrip()
            if not stripped:
                break
            at = len(text) - len(stripped)
            raise FormulaSyntaxError(f"unexpected character {stripped[0]!r}", at)
        if match.group(1):
            tokens.append(("->", "->", match.start(1)))
        elif match.group(2):
            tokens.append((match.group(2), match.group(2), match.start(2)))
        else:
            tokens.append(("NAME", match.group(3), match.start(3)))
        pos = match.end()
    tokens.append(("EOF", "", len(text)))
    return tokens


class _Parser:
    """Recursive-descent parser for the concrete formula syntax.

    Precedence, loosest to tightest: ``->`` (right-associative), ``|``,
    ``&``, then the unary operators ``~``, ``B[a]``, ``D[a]``.
    """

    def __init__(self, text: str, agents: frozenset[str], props: frozenset[str]):
        self.tokens = _tokenize(text)
        self.pos = 0
        self.agents = agents
        self.props = props

    def _peek(self) -> tuple[str, str, int]:
        return self.tokens[self.pos]

    def _advance(self) -> tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def _expect(self, kind: str) -> tuple[str, str, int]:
        token = self._peek()
        if token[0] != kind:
            raise FormulaSyntaxError(
                f"unexpected token {token[1] or 'end of input'!r}", token[2], (repr(kind),)
            )
        return self._advance()

    def parse(self) -> Formula:
        formula = self._implies()
        kind, text, at = self._peek()
        if kind != "EOF":
            raise FormulaSyntaxError(f"unexpected trailing token {text!r}", at)
        return formula

    def _implies(self) -> Formula:
        left = self._or()
        if self._peek()[0] == "->":
            self._advance()
            return implies(left, self._implies())
        return left

    def _or(self) -> Formula:
        left = self._and()
        while self._peek()[0] == "|":
            self._advance()
            left = or_(left, self._and())
        return left

    def _and(self) -> Formula:
        left = self._unary()
        while self._peek()[0] == "&":
            self._advance()
            left = And(left, self._unary())
        return left

    def _unary(self) -> Formula:
        kind, text, at = self._peek()
        if kind == "~":
            self._advance()
            return Not(self._unary())
        if kind == "NAME" and text in ("B", "D") and self.tokens[self.pos + 1][0] == "[":
            self._advance()
            self._advance()
            agent_token = self._expect("NAME")
            if agent_token[1] not in self.agents:
                raise UnknownAgentError(agent_token[1], agent_token[2])
            self._expect("]")
            child = self._unary()
            if text == "B":
                return Believes(agent_token[1], child)
            return diamond(agent_token[1], child)
        return self._atom()

    def _atom(self) -> Formula:
        kind, text, at = self._peek()
        if kind == "(":
            self._advance()
            inner = self._implies()
            self._expect(")")
            return inner
        if kind == "NAME":
            self._advance()
            if text == "T":
                return top(self.props)
            if text == "F":
                return bottom(self.props)
            if text not in self.props:
                raise UnknownPropositionError(text, at)
            return Prop(text)
        raise FormulaSyntaxError(
            f"unexpected token {text or 'end of input'!r}",
            at,
            ("'('", "'~'", "'B['", "'D['", "a proposition name"),
        )


def parse_formula(text: str, agents: Iterable[AgentId], props: Iterable[PropId]) -> Formula:
    """Parse ``text`` into a core AST, expanding all syntactic sugar.

    Raises FormulaSyntaxError, UnknownAgentError, or UnknownPropositionError.
    """
    agent_set = frozenset(agents)
    prop_set = frozenset(props)
    if not agent_set or not prop_set:
        raise ValueError("agent and proposition sets must be nonempty")
    return _Parser(text, agent_set, prop_set).parse()


# ---------- Printing ----------

_LEVEL_OR = 1
_LEVEL_AND = 2
_LEVEL_UNARY = 3
_LEVEL_ATOM = 4


def _render(f: Formula, resugar: bool) -> tuple[str, int]:
    if isinstance(f, Prop):
        return f.name, _LEVEL_ATOM
    if isinstance(f, Not):
        if resugar and isinstance(f.child, Believes) and isinstance(f.child.child, Not):
            inner, level = _render(f.child.child.child, resugar)
            if level < _LEVEL_UNARY:
                inner = f"({inner})"
            return f"D[{f.child.agent}] {inner}", _LEVEL_UNARY
        if (
            resugar
            and isinstance(f.child, And)
            and isinstance(f.child.left, Not)
            and isinstance(f.child.right, Not)
        ):
            left, llevel = _render(f.child.left.child, resugar)
            right, rlevel = _render(f.child.right.child, resugar)
            if llevel < _LEVEL_OR:
                left = f"({left})"
            if rlevel <= _LEVEL_OR:
                right = f"({right})"
            return f"{left} | {right}", _LEVEL_OR
        inner, level = _render(f.child, resugar)
        if level < _LEVEL_UNARY:
            inner = f"({inner})"
        return f"~{inner}", _LEVEL_UNARY
    if isinstance(f, And):
        left, llevel = _render(f.left, resugar)
        right, rlevel = _render(f.right, resugar)
        if llevel < _LEVEL_AND:
            left = f"({left})"
        if rlevel <= _LEVEL_AND:
            right = f"({right})"
        return f"{left} & {right}", _LEVEL_AND
    if isinstance(f, Believes):
        inner, level = _render(f.child, resugar)
        if level < _LEVEL_UNARY:
            inner = f"({inner})"
        return f"B[{f.agent}] {inner}", _LEVEL_UNARY
    raise TypeError(f"not a formula: {f!r}")


def print_formula(f: Formula, resugar: bool = True) -> str:
    """Render ``f`` as concrete syntax; the output re-parses to the same AST.

    With ``resugar`` the dual operator and disjunction patterns print as
    ``D[a] x`` and ``x | y``; both expand back to the identical core tree.
    """
    return _render(f, resugar)[0]


# ---------- Metrics ----------


def modal_depth(f: Formula) -> int:
    """Maximum nesting of belief operators (negation does not contribute)."""
    if isinstance(f, Prop):
        return 0
    if isinstance(f, Not):
        return modal_depth(f.child)
    if isinstance(f, And):
        return max(modal_depth(f.left), modal_depth(f.right))
    if isinstance(f, Believes):
        return 1 + modal_depth(f.child)
    raise TypeError(f"not a formula: {f!r}")


def formula_size(f: Formula) -> int:
    """Number of proposition occurrences and connectives in the core AST."""
    if isinstance(f, Prop):
        return 1
    if isinstance(f, Not):
        return 1 + formula_size(f.child)
    if isinstance(f, And):
        return 1 + formula_size(f.left) + formula_size(f.right)
    if isinstance(f, Believes):
        return 1 + formula_size(f.child)
    raise TypeError(f"not a formula: {f!r}")


# ---------- Validation ----------


def validate_formula(f: Formula, agents: Iterable[AgentId], props: Iterable[PropId]) -> list[str]:
    """Check every mentioned agent/proposition against the instance sets.

    Returns human-readable violation strings; empty means valid.
    """
    agent_set = frozenset(agents)
    prop_set = frozenset(props)
    violations: list[str] = []
    seen_props: set[str] = set()
    seen_agents: set[str] = set()

    def walk(node: Formula) -> None:
        if isinstance(node, Prop):
            if node.name not in prop_set and node.name not in seen_props:
                seen_props.add(node.name)
                violations.append(f"formula mentions unknown proposition {node.name!r}")
        elif isinstance(node, Not):
            walk(node.child)
        elif isinstance(node, And):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, Believes):
            if node.agent not in agent_set and node.agent not in seen_agents:
                seen_agents.add(node.agent)
                violations.append(f"formula mentions unknown agent {node.agent!r}")
            walk(node.child)
        else:
            violations.append(f"not a formula node: {node!r}")

    walk(f)
    return violations

"""Propositional formulas of Basic Logic and their concrete syntax.

The language has the constant falsum, countably many variables, strong
conjunction and implication.  Truth is a defined constant: ``top`` abbreviates
``0 -> 0``.  The parser accepts the sugar ``~A`` for ``A -> 0``, ``1``/``top``
for ``0 -> 0`` and ``A <-> B`` for ``(A -> B) * (B -> A)``; the abstract syntax
stores only the four primitive constructors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache


class ParseError(ValueError):
    """Raised on malformed input, with the offending position."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class Formula:
    """Base class for formula nodes.  Instances are immutable and hashable."""

    __slots__ = ()


@dataclass(frozen=True)
class Bottom(Formula):
    """The falsum constant."""

    __slots__ = ()


@dataclass(frozen=True)
class Var(Formula):
    """A propositional variable ``p<index>``."""

    index: int

    def __post_init__(self) -> None:
        if self.index < 0:
            raise ValueError(f"variable index must be nonnegative, got {self.index}")


@dataclass(frozen=True)
class Conj(Formula):
    """Strong conjunction."""

    left: Formula
    right: Formula

    def __hash__(self) -> int:
        # Deep formulas are hashed constantly during label canonicalization,
        # so the recursive hash is computed once per instance.
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((Conj, self.left, self.right))
            object.__setattr__(self, "_hash", cached)
        return cached


@dataclass(frozen=True)
class Impl(Formula):
    """Implication."""

    left: Formula
    right: Formula

    def __hash__(self) -> int:
        cached = self.__dict__.get("_hash")
        if cached is None:
            cached = hash((Impl, self.left, self.right))
            object.__setattr__(self, "_hash", cached)
        return cached


BOT = Bottom()
TOP = Impl(BOT, BOT)


def is_atomic(formula: Formula) -> bool:
    """True for falsum, variables and the bare truth constant.

    A bare occurrence of ``top`` is treated as an atom by the proof search
    (it is never selected for reduction), even though structurally it is the
    implication ``0 -> 0``.
    """
    return isinstance(formula, (Bottom, Var)) or formula == TOP


@lru_cache(maxsize=None)
def complexity(formula: Formula) -> int:
    """Number of connective occurrences.  The truth constant has complexity 1."""
    if isinstance(formula, (Bottom, Var)):
        return 0
    assert isinstance(formula, (Conj, Impl))
    return 1 + complexity(formula.left) + complexity(formula.right)


@lru_cache(maxsize=None)
def serialize_key(formula: Formula) -> bytes:
    """Canonical prefix serialization, used as a deterministic tie-breaker.

    The encoding is injective: two formulas serialize equally iff they are
    structurally equal.
    """
    if isinstance(formula, Bottom):
        return b"B"
    if isinstance(formula, Var):
        return b"v%d;" % formula.index
    if isinstance(formula, Conj):
        return b"*" + serialize_key(formula.left) + serialize_key(formula.right)
    assert isinstance(formula, Impl)
    return b">" + serialize_key(formula.left) + serialize_key(formula.right)


def complexity_key(formula: Formula) -> tuple[int, bytes]:
    """Sort key realizing the total order used for pivot selection."""
    return (complexity(formula), serialize_key(formula))


def cmp_complexity(a: Formula, b: Formula) -> int:
    """Three-way comparison in the total complexity order.

    Formulas are compared by connective count first; ties are broken by the
    canonical serialization, so the result is 0 only for structurally equal
    formulas.  Returns -1, 0 or 1.
    """
    ka, kb = complexity_key(a), complexity_key(b)
    if ka < kb:
        return -1
    if ka > kb:
        return 1
    return 0


@lru_cache(maxsize=None)
def compound_subformulas(formula: Formula) -> frozenset[Formula]:
    """All subformulas with at least one connective, including the formula itself."""
    if isinstance(formula, (Bottom, Var)):
        return frozenset()
    assert isinstance(formula, (Conj, Impl))
    return (
        frozenset({formula})
        | compound_subformulas(formula.left)
        | compound_subformulas(formula.right)
    )


@lru_cache(maxsize=None)
def variables_in(formula: Formula) -> frozenset[int]:
    """Indices of the variables occurring in the formula."""
    if isinstance(formula, Bottom):
        return frozenset()
    if isinstance(formula, Var):
        return frozenset({formula.index})
    assert isinstance(formula, (Conj, Impl))
    return variables_in(formula.left) | variables_in(formula.right)


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<iff><->)
  | (?P<arrow>->)
  | (?P<star>\*)
  | (?P<tilde>~)
  | (?P<lparen>\()
  | (?P<rparen>\))
  | (?P<var>p\d+)
  | (?P<bot>0|bot\b)
  | (?P<top>1|top\b)
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN_RE.match(text, pos)
        if match is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos)
        kind = match.lastgroup
        assert kind is not None
        if kind != "ws":
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    """Recursive descent over the token stream.

    Precedence, loosest first: ``<->``, ``->`` (right associative), ``*``
    (left associative), ``~``.  ``<->`` associates to the right.
    """

    def __init__(self, tokens: list[tuple[str, str, int]]) -> None:
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> str:
        return self.tokens[self.pos][0]

    def next(self) -> tuple[str, str, int]:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> tuple[str, str, int]:
        token = self.next()
        if token[0] != kind:
            raise ParseError(f"expected {kind}, found {token[1] or 'end of input'}", token[2])
        return token

    def parse_equiv(self) -> Formula:
        left = self.parse_impl()
        if self.peek() == "iff":
            self.next()
            right = self.parse_equiv()
            return Conj(Impl(left, right), Impl(right, left))
        return left

    def parse_impl(self) -> Formula:
        left = self.parse_conj()
        if self.peek() == "arrow":
            self.next()
            return Impl(left, self.parse_impl())
        return left

    def parse_conj(self) -> Formula:
        result = self.parse_unary()
        while self.peek() == "star":
            self.next()
            result = Conj(result, self.parse_unary())
        return result

    def parse_unary(self) -> Formula:
        if self.peek() == "tilde":
            self.next()
            return Impl(self.parse_unary(), BOT)
        return self.parse_atom()

    def parse_atom(self) -> Formula:
        kind, text, pos = self.next()
        if kind == "bot":
            return BOT
        if kind == "top":
            return TOP
        if kind == "var":
            return Var(int(text[1:]))
        if kind == "lparen":
            inner = self.parse_equiv()
            self.expect("rparen")
            return inner
        raise ParseError(f"expected a formula, found {text or 'end of input'}", pos)


def parse(text: str) -> Formula:
    """Parse the concrete syntax into a formula.

    Raises ParseError on malformed input.
    """
    parser = _Parser(_tokenize(text))
    result = parser.parse_equiv()
    parser.expect("eof")
    return result


_PREC_IMPL = 0
_PREC_CONJ = 1
_PREC_ATOM = 2


def _prec(formula: Formula) -> int:
    if isinstance(formula, (Bottom, Var)) or formula == TOP:
        return _PREC_ATOM
    return _PREC_CONJ if isinstance(formula, Conj) else _PREC_IMPL


def _render(formula: Formula, min_prec: int) -> str:
    if formula == TOP:
        return "top"
    if isinstance(formula, Bottom):
        return "0"
    if isinstance(formula, Var):
        return f"p{formula.index}"
    if isinstance(formula, Conj):
        body = f"{_render(formula.left, _PREC_CONJ)} * {_render(formula.right, _PREC_ATOM)}"
        own = _PREC_CONJ
    else:
        assert isinstance(formula, Impl)
        body = f"{_render(formula.left, _PREC_CONJ)} -> {_render(formula.right, _PREC_IMPL)}"
        own = _PREC_IMPL
    return f"({body})" if own < min_prec else body


def render(formula: Formula) -> str:
    """Canonical concrete syntax.  parse(render(f)) == f for every formula.

    The truth constant is printed as ``top``; the other sugar forms are not
    reconstructed.
    """
    return _render(formula, _PREC_IMPL)

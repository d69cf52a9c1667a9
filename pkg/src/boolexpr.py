"""Phorma-type boolean functions: literals compare two entries of a sequence.

Grammar (whitespace insignificant, precedence ``! > & > |``)::

    expr    :: term ('|' term)*
    term    :: factor ('&' factor)*
    factor  :: '!' factor | '(' expr ')' | literal
    literal :: ident op ident
    ident   :: <var> digits            (var is 'a' for B, 'd' for C)
    op      :: '<=' | '>=' | '<' | '>' | '=' | '!='

The empty text parses to ``EMPTY``, which is always true.
"""

from __future__ import annotations

import enum
import operator
import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

from .errors import BoolSyntaxError, IndexOutOfRangeError

OPS: Dict[str, Callable[[int, int], bool]] = {
    "<=": operator.le,
    ">=": operator.ge,
    "<": operator.lt,
    ">": operator.gt,
    "=": operator.eq,
    "!=": operator.ne,
}


class Tri(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, value: bool) -> "Tri":
        return cls.TRUE if value else cls.FALSE


@dataclass(frozen=True)
class Literal:
    i: int
    op: str
    j: int
    var: str = "a"

    def __post_init__(self) -> None:
        if self.op not in OPS:
            raise ValueError(f"unknown comparison {self.op!r}")
        if self.i < 1 or self.j < 1:
            raise IndexOutOfRangeError(f"literal {self} uses an index below 1")

    def __str__(self) -> str:
        return f"{self.var}{self.i} {self.op} {self.var}{self.j}"


@dataclass(frozen=True)
class Leaf:
    literal: Literal


@dataclass(frozen=True)
class And:
    children: Tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Or:
    children: Tuple["BoolExpr", ...]


@dataclass(frozen=True)
class Not:
    child: "BoolExpr"


class _Empty:
    """The empty boolean function: no restrictions."""

    _instance: Optional["_Empty"] = None

    def __new__(cls) -> "_Empty":
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "EMPTY"

    def __reduce__(self):
        return (_Empty, ())


EMPTY = _Empty()

BoolExpr = Union[_Empty, Leaf, And, Or, Not]


def is_empty(expr: BoolExpr) -> bool:
    return expr is EMPTY


# --- parsing -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(<=|>=|!=|<|>|=)|([&|!()])|([A-Za-z]+)(\d+)|(\S))")


def _tokenize(text: str) -> Iterator[Tuple[str, str, int]]:
    """Yield (kind, value, position); kind is one of op, punct, ident, end."""
    pos = 0
    while True:
        m = _TOKEN.match(text, pos)
        if m is None:
            yield ("end", "", len(text))
            return
        start = m.end() - len(m.group(0).lstrip())
        if m.group(1):
            yield ("op", m.group(1), start)
        elif m.group(2):
            yield ("punct", m.group(2), start)
        elif m.group(3):
            yield ("ident", m.group(3) + m.group(4), start)
        else:
            raise BoolSyntaxError(f"unexpected character {m.group(5)!r}", start, text)
        pos = m.end()


class _Parser:
    def __init__(self, text: str, dim: int, var: str) -> None:
        self.text = text
        self.dim = dim
        self.var = var
        self.tokens = _tokenize(text)
        self.kind, self.value, self.pos = next(self.tokens)

    def advance(self) -> None:
        self.kind, self.value, self.pos = next(self.tokens)

    def fail(self, expected: str) -> BoolSyntaxError:
        have = "<end of expression>" if self.kind == "end" else repr(self.value)
        return BoolSyntaxError(f"expected {expected}, have {have}", self.pos, self.text)

    def accept(self, value: str) -> bool:
        if self.kind == "punct" and self.value == value:
            self.advance()
            return True
        return False

    def parse(self) -> BoolExpr:
        if self.kind == "end":
            return EMPTY
        expr = self.parse_or()
        if self.kind != "end":
            raise self.fail("'&', '|' or end of expression")
        return expr

    def parse_or(self) -> BoolExpr:
        children = [self.parse_and()]
        while self.accept("|"):
            children.append(self.parse_and())
        return children[0] if len(children) == 1 else Or(tuple(children))

    def parse_and(self) -> BoolExpr:
        children = [self.parse_factor()]
        while self.accept("&"):
            children.append(self.parse_factor())
        return children[0] if len(children) == 1 else And(tuple(children))

    def parse_factor(self) -> BoolExpr:
        if self.accept("!"):
            if self.kind == "end" or (self.kind == "punct" and self.value in "&|)"):
                raise self.fail("an operand for '!'")
            return Not(self.parse_factor())
        if self.accept("("):
            inner = self.parse_or()
            if not self.accept(")"):
                raise self.fail("')'")
            return inner
        return self.parse_literal()

    def parse_index(self) -> int:
        if self.kind != "ident":
            raise self.fail(f"an entry name like {self.var}1")
        name, pos = self.value, self.pos
        if not name.startswith(self.var) or not name[len(self.var):].isdigit():
            raise BoolSyntaxError(f"unknown entry name {name!r}", pos, self.text)
        index = int(name[len(self.var):])
        self.advance()
        return index

    def parse_literal(self) -> BoolExpr:
        i = self.parse_index()
        if self.kind != "op":
            raise self.fail("a comparison operator")
        op = self.value
        self.advance()
        j = self.parse_index()
        for k in (i, j):
            if k < 1 or k > self.dim:
                raise IndexOutOfRangeError(
                    f"literal {self.var}{i} {op} {self.var}{j} references {self.var}{k}, outside 1..{self.dim}"
                )
        return Leaf(Literal(i, op, j, self.var))


def parse_bool(text: str, dim: int, var: str = "a") -> BoolExpr:
    """Parse ``text`` into a boolean tree over entries ``<var>1..<var><dim>``."""
    if dim < 1:
        raise ValueError("dim must be positive")
    return _Parser(text or "", dim, var).parse()


def to_text(expr: BoolExpr) -> str:
    """Canonical printer; ``parse_bool(to_text(e), dim) == e``."""
    if expr is EMPTY:
        return ""
    return _print(expr, top=True)


def _print(expr: BoolExpr, top: bool = False) -> str:
    if isinstance(expr, Leaf):
        return f"({expr.literal})"
    if isinstance(expr, Not):
        inner = _print(expr.child)
        return "!" + (inner if isinstance(expr.child, Leaf) else f"({inner})")
    if isinstance(expr, (And, Or)):
        if not expr.children:
            raise ValueError(f"cannot print an empty {type(expr).__name__}")
        sep = " & " if isinstance(expr, And) else " | "
        body = sep.join(_print(c) if isinstance(c, (Leaf, Not)) else f"({_print(c)})" for c in expr.children)
        return body
    raise TypeError(f"not a boolean expression: {expr!r}")


def literals(expr: BoolExpr) -> List[Literal]:
    if expr is EMPTY:
        return []
    if isinstance(expr, Leaf):
        return [expr.literal]
    if isinstance(expr, Not):
        return literals(expr.child)
    out: List[Literal] = []
    for child in expr.children:
        out.extend(literals(child))
    return out


def max_index(expr: BoolExpr) -> int:
    return max((max(lit.i, lit.j) for lit in literals(expr)), default=0)


# --- evaluation --------------------------------------------------------

def evaluate(expr: BoolExpr, seq: Sequence[int], strict: bool = True) -> bool:
    """Evaluate ``expr`` on ``seq``.

    With ``strict=False`` a literal naming an entry past the end of ``seq``
    is false instead of an error (composition constraints use this).
    """
    if expr is EMPTY:
        return True
    if isinstance(expr, Leaf):
        lit = expr.literal
        n = len(seq)
        if lit.i > n or lit.j > n:
            if strict:
                raise IndexOutOfRangeError(f"literal {lit} needs {max(lit.i, lit.j)} entries, have {n}")
            return False
        return OPS[lit.op](seq[lit.i - 1], seq[lit.j - 1])
    if isinstance(expr, And):
        return all(evaluate(c, seq, strict) for c in expr.children)
    if isinstance(expr, Or):
        return any(evaluate(c, seq, strict) for c in expr.children)
    if isinstance(expr, Not):
        return not evaluate(expr.child, seq, strict)
    raise TypeError(f"not a boolean expression: {expr!r}")


def eval_partial(expr: BoolExpr, partial: Sequence[Optional[int]]) -> Tri:
    """Kleene three-valued evaluation over a partial assignment (None = unassigned)."""
    if expr is EMPTY:
        return Tri.TRUE
    if isinstance(expr, Leaf):
        lit = expr.literal
        n = len(partial)
        if lit.i > n or lit.j > n:
            raise IndexOutOfRangeError(f"literal {lit} needs {max(lit.i, lit.j)} entries, have {n}")
        x, y = partial[lit.i - 1], partial[lit.j - 1]
        if x is None or y is None:
            return Tri.UNKNOWN
        return Tri.of(OPS[lit.op](x, y))
    if isinstance(expr, Not):
        inner = eval_partial(expr.child, partial)
        if inner is Tri.UNKNOWN:
            return inner
        return Tri.FALSE if inner is Tri.TRUE else Tri.TRUE
    if isinstance(expr, And):
        result = Tri.TRUE
        for child in expr.children:
            value = eval_partial(child, partial)
            if value is Tri.FALSE:
                return Tri.FALSE
            if value is Tri.UNKNOWN:
                result = Tri.UNKNOWN
        return result
    if isinstance(expr, Or):
        result = Tri.FALSE
        for child in expr.children:
            value = eval_partial(child, partial)
            if value is Tri.TRUE:
                return Tri.TRUE
            if value is Tri.UNKNOWN:
                result = Tri.UNKNOWN
        return result
    raise TypeError(f"not a boolean expression: {expr!r}")

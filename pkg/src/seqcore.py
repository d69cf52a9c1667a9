"""Reduction, sorting, recovery and a-roofs of integer sequences, plus membership in A(a,B,C)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import FrozenSet, Iterable, Optional, Sequence, Tuple, Union

from .boolexpr import EMPTY, BoolExpr, evaluate, max_index, parse_bool
from .compositions import ALL, CompConstraint, occ, restricted
from .errors import DomainError, EmptySequenceError, LengthMismatchError, NotAMemberError

ReducedSeq = Tuple[int, ...]
AscendingSeq = Tuple[int, ...]

# the sink of every H family
SINK: AscendingSeq = ()


@dataclass(frozen=True)
class Bounds:
    a: Tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        if not self.a:
            raise DomainError("bounds need at least one entry")
        if any(x < 1 for x in self.a):
            raise DomainError(f"bounds {self.a} contain an entry below 1")

    @property
    def n(self) -> int:
        return len(self.a)

    @property
    def a_star(self) -> int:
        return max(self.a)

    @property
    def product(self) -> int:
        return math.prod(self.a)

    def __str__(self) -> str:
        return ",".join(map(str, self.a))


@dataclass(frozen=True)
class PhormaSpec:
    """The triple (a, B, C); ``b_list`` replaces B by an explicit reduced set."""

    bounds: Bounds
    B: BoolExpr = field(default=EMPTY)
    C: CompConstraint = field(default=ALL)
    b_list: Optional[FrozenSet[ReducedSeq]] = None
    name: str = ""

    def __post_init__(self) -> None:
        n = self.bounds.n
        if max_index(self.B) > n:
            raise DomainError(f"B references a{max_index(self.B)} but the dimension is {n}")
        if self.C.kind == "explicit":
            for delta in self.C.comps:
                if sum(delta) != n:
                    raise DomainError(f"composition {delta} is not a {n}-composition")
        if self.b_list is not None:
            checked = frozenset(tuple(b) for b in self.b_list)
            for beta in checked:
                if len(beta) != n:
                    raise LengthMismatchError(f"listed reduced sequence {beta} has length {len(beta)}, expected {n}")
                if not is_reduced(beta):
                    raise DomainError(f"listed sequence {beta} is not reduced")
            object.__setattr__(self, "b_list", checked)

    @property
    def n(self) -> int:
        return self.bounds.n

    def admits_order_type(self, beta: ReducedSeq) -> bool:
        if self.b_list is not None:
            return tuple(beta) in self.b_list
        return evaluate(self.B, beta)


def make_spec(
    bounds: Sequence[int],
    b: Union[str, BoolExpr] = "",
    c: Union[str, CompConstraint] = ALL,
    b_list: Optional[Iterable[Sequence[int]]] = None,
    name: str = "",
) -> PhormaSpec:
    """Build a spec from plain values; boolean texts are parsed against len(bounds)."""
    bnd = Bounds(tuple(bounds))
    expr = parse_bool(b, bnd.n) if isinstance(b, str) else b
    if isinstance(c, str):
        c = ALL if c.strip() in ("", "all") else restricted(c, bnd.n)
    listed = None if b_list is None else frozenset(tuple(x) for x in b_list)
    return PhormaSpec(bnd, expr, c, listed, name)


def _check_nonempty(alpha: Sequence[int]) -> None:
    if len(alpha) == 0:
        raise EmptySequenceError("sequence is empty")


def reduce(alpha: Sequence[int]) -> ReducedSeq:
    _check_nonempty(alpha)
    ranks = {v: j for j, v in enumerate(sorted(set(alpha)), start=1)}
    return tuple(ranks[v] for v in alpha)


def sort_distinct(alpha: Sequence[int]) -> AscendingSeq:
    _check_nonempty(alpha)
    return tuple(sorted(set(alpha)))


def is_reduced(beta: Sequence[int]) -> bool:
    return len(beta) > 0 and set(beta) == set(range(1, max(beta) + 1))


def recover(beta: ReducedSeq, gamma: AscendingSeq) -> Tuple[int, ...]:
    m = max(beta) if beta else 0
    if m != len(gamma):
        raise LengthMismatchError(f"reduced sequence uses {m} values but the ascending sequence has {len(gamma)}")
    return tuple(gamma[b - 1] for b in beta)


def roof(beta: ReducedSeq, bounds: Union[Bounds, Sequence[int]]) -> Optional[AscendingSeq]:
    """Largest ascending sequence whose recoveries with ``beta`` stay under the bounds, or None."""
    a = bounds.a if isinstance(bounds, Bounds) else tuple(bounds)
    if len(beta) != len(a):
        raise LengthMismatchError(f"reduced sequence has length {len(beta)}, bounds have {len(a)}")
    m = max(beta)
    lowest = [math.inf] * (m + 1)
    for value, bound in zip(beta, a):
        lowest[value] = min(lowest[value], bound)
    gamma = [0] * m
    gamma[m - 1] = lowest[m]
    for i in range(m - 2, -1, -1):
        gamma[i] = min(lowest[i + 1], gamma[i + 1] - 1)
    if any(g < i + 1 for i, g in enumerate(gamma)):
        return None
    return tuple(int(g) for g in gamma)


def membership_failure(spec: PhormaSpec, alpha: Sequence[int]) -> Optional[str]:
    """Name of the first failed condition ("bounds", "B" or "C"), or None for a member."""
    alpha = tuple(alpha)
    if len(alpha) != spec.n:
        raise LengthMismatchError(f"sequence has length {len(alpha)}, the spec has dimension {spec.n}")
    if any(x < 1 or x > bound for x, bound in zip(alpha, spec.bounds.a)):
        return "bounds"
    if spec.b_list is not None:
        if reduce(alpha) not in spec.b_list:
            return "B"
    elif not evaluate(spec.B, alpha):
        return "B"
    if spec.C.kind != "all" and not spec.C.admits(occ(alpha)):
        return "C"
    return None


def member(spec: PhormaSpec, alpha: Sequence[int]) -> bool:
    return membership_failure(spec, alpha) is None


def check_member(spec: PhormaSpec, alpha: Sequence[int]) -> None:
    reason = membership_failure(spec, alpha)
    if reason is not None:
        raise NotAMemberError(alpha, reason)

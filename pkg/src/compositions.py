"""n-compositions and the L-infinity lattice family that encodes them.

A path from (n, m) to (1, 1) in the lattice uses a west edge (p, q) -> (p-1, q)
of local label 0 and a southwest edge (p, q) -> (p-1, q-1) of label 1 (0 when
it is the only edge). Part k of a composition contributes ``delta_k - 1`` west
edges followed, between parts, by one southwest edge.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Generator, Iterable, List, Optional, Sequence, Tuple

from .boolexpr import EMPTY, BoolExpr, Tri, eval_partial, evaluate, max_index, parse_bool, to_text
from .errors import DomainError, EmptySequenceError, RankOutOfRangeError

Composition = Tuple[int, ...]

WEST = "W"
SOUTHWEST = "SW"


def validate(delta: Sequence[int], n: Optional[int] = None) -> Composition:
    parts = tuple(int(d) for d in delta)
    if not parts:
        raise DomainError("a composition has at least one part")
    if any(d < 1 for d in parts):
        raise DomainError(f"composition {parts} has a part below 1")
    if n is not None and sum(parts) != n:
        raise DomainError(f"composition {parts} does not sum to {n}")
    return parts


def occ(seq: Sequence[int]) -> Composition:
    """Multiplicity of the i-th smallest distinct value, for each i."""
    if not seq:
        raise EmptySequenceError("occ of an empty sequence")
    counts = Counter(seq)
    return tuple(counts[v] for v in sorted(counts))


@lru_cache(maxsize=None)
def lattice_order(p: int, q: int) -> int:
    """Number of (p, q) -> (1, 1) paths in the lattice."""
    if p < 1 or q < 1 or q > p:
        return 0
    if p == 1:
        return 1
    total = lattice_order(p - 1, q)
    if q >= 2:
        total += lattice_order(p - 1, q - 1)
    return total


def comp_count(n: int, m: int) -> int:
    if n < 1 or m < 1 or m > n:
        raise DomainError(f"no compositions of {n} into {m} parts")
    return lattice_order(n, m)


def comp_to_path(delta: Sequence[int]) -> List[str]:
    parts = validate(delta)
    path: List[str] = []
    for k, d in enumerate(parts):
        path.extend([WEST] * (d - 1))
        if k < len(parts) - 1:
            path.append(SOUTHWEST)
    return path


def path_to_comp(path: Iterable[str]) -> Composition:
    parts = [1]
    for edge in path:
        if edge == WEST:
            parts[-1] += 1
        elif edge == SOUTHWEST:
            parts.append(1)
        else:
            raise DomainError(f"unknown lattice edge {edge!r}")
    return tuple(parts)


def comp_rank(delta: Sequence[int]) -> int:
    parts = validate(delta)
    p, q = sum(parts), len(parts)
    rank = 0
    for edge in comp_to_path(parts):
        if edge == SOUTHWEST:
            # the west sibling has label 0 and carries all lower ranks
            rank += lattice_order(p - 1, q)
            q -= 1
        p -= 1
    return rank


def comp_unrank(n: int, m: int, r: int) -> Composition:
    total = comp_count(n, m)
    if not 0 <= r < total:
        raise RankOutOfRangeError(r, total)
    p, q = n, m
    path: List[str] = []
    while p > 1:
        west = lattice_order(p - 1, q)
        if q >= 2 and r >= west:
            r -= west
            path.append(SOUTHWEST)
            q -= 1
        else:
            path.append(WEST)
        p -= 1
    return path_to_comp(path)


# --- constraints -------------------------------------------------------

@dataclass(frozen=True)
class CompConstraint:
    """Which occurrence vectors are admitted: all, an explicit list, or a boolean over parts."""

    kind: str = "all"
    comps: Tuple[Composition, ...] = ()
    expr: BoolExpr = field(default=EMPTY)

    def admits(self, delta: Sequence[int]) -> bool:
        if self.kind == "all":
            return True
        if self.kind == "explicit":
            return tuple(delta) in self.comps
        return evaluate(self.expr, tuple(delta), strict=False)

    def describe(self) -> str:
        if self.kind == "all":
            return "all"
        if self.kind == "explicit":
            return "list " + ",".join("(" + ",".join(map(str, c)) + ")" for c in self.comps)
        return "expr " + to_text(self.expr)


ALL = CompConstraint("all")


def explicit(comps: Iterable[Sequence[int]], n: int) -> CompConstraint:
    checked = sorted({validate(c, n) for c in comps})
    return CompConstraint("explicit", tuple(checked))


def restricted(expr, n: int) -> CompConstraint:
    if isinstance(expr, str):
        expr = parse_bool(expr, n, var="d")
    return CompConstraint("restricted", expr=expr)


def enum_comps(n: int, constraint: CompConstraint = ALL) -> Generator[Composition, None, None]:
    """Yield the admitted n-compositions once each, lexicographically by parts."""
    if n < 1:
        raise DomainError("compositions are of positive integers")
    if constraint.kind == "explicit":
        yield from (c for c in constraint.comps if sum(c) == n)
        return
    expr = constraint.expr if constraint.kind == "restricted" else EMPTY
    width = max(n, max_index(expr))
    yield from _extend((), n, expr, width)


def _extend(prefix: Composition, remaining: int, expr: BoolExpr, width: int) -> Generator[Composition, None, None]:
    if remaining == 0:
        if evaluate(expr, prefix, strict=False):
            yield prefix
        return
    for part in range(1, remaining + 1):
        candidate = prefix + (part,)
        if expr is not EMPTY:
            padded = candidate + (None,) * (width - len(candidate))
            if eval_partial(expr, padded) is Tri.FALSE:
                continue
        yield from _extend(candidate, remaining - part, expr, width)

"""Generate the reduced set red A(a,B,C), one occurrence vector at a time.

For an occurrence vector delta with m parts, the reduced sequences are the
paths from the grid point delta to the origin of Z^m: the i-th step is taken
along axis beta_i. A depth-first walk over axes 1..m emits them in
lexicographic order and prunes a subtree as soon as either B is already false
on the prefix or the bounds seen so far leave no room for a roof.
"""

from __future__ import annotations

import heapq
import logging
import math
from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from .boolexpr import Tri, eval_partial, is_empty
from .compositions import Composition, enum_comps, occ, validate
from .errors import DomainError, LengthMismatchError
from .seqcore import AscendingSeq, PhormaSpec, ReducedSeq, roof

logger = logging.getLogger(__name__)

ReducedEntry = Tuple[ReducedSeq, AscendingSeq]


@dataclass
class GridState:
    """Current point of the grid walk and the prefix that reached it."""

    remaining: List[int]
    bounds: Tuple[int, ...]
    prefix: List[int] = field(default_factory=list)
    lowest: List[float] = field(default_factory=list)

    def __post_init__(self) -> None:
        if not self.lowest:
            # index 0 unused so value j sits at lowest[j]
            self.lowest = [math.inf] * (len(self.remaining) + 1)

    @property
    def m(self) -> int:
        return len(self.remaining)

    def at_origin(self) -> bool:
        return len(self.prefix) == len(self.bounds)

    def push(self, j: int) -> float:
        previous = self.lowest[j]
        self.lowest[j] = min(previous, self.bounds[len(self.prefix)])
        self.remaining[j - 1] -= 1
        self.prefix.append(j)
        return previous

    def pop(self, j: int, previous: float) -> None:
        self.prefix.pop()
        self.remaining[j - 1] += 1
        self.lowest[j] = previous

    def partial(self) -> Tuple[Optional[int], ...]:
        return tuple(self.prefix) + (None,) * (len(self.bounds) - len(self.prefix))

    def roof_feasible(self) -> bool:
        # bounds only shrink as positions are filled, so a failing cascade stays failing
        cap = math.inf
        for j in range(self.m, 0, -1):
            cap = min(self.lowest[j], cap - 1)
            if cap < j:
                return False
        return True


def grid_path(beta: ReducedSeq) -> Tuple[Composition, Tuple[int, ...]]:
    """Start point and axis sequence of the grid path encoding ``beta``."""
    return occ(beta), tuple(beta)


def grid_decode(delta: Sequence[int], path: Iterable[int]) -> ReducedSeq:
    remaining = list(validate(delta))
    beta = []
    for axis in path:
        if not 1 <= axis <= len(remaining) or remaining[axis - 1] == 0:
            raise DomainError(f"step along axis {axis} leaves the grid at {tuple(remaining)}")
        remaining[axis - 1] -= 1
        beta.append(axis)
    if any(remaining):
        raise LengthMismatchError(f"path stops at {tuple(remaining)}, not at the origin")
    return tuple(beta)


def gen_reduced_for(
    spec: PhormaSpec,
    delta: Sequence[int],
    prune_partial: bool = True,
    prune_roof: bool = True,
) -> List[ReducedEntry]:
    """Reduced sequences with occurrence vector ``delta`` that satisfy B and admit a roof."""
    delta = validate(delta, spec.n)
    if spec.b_list is not None:
        return _from_list(spec, delta)

    state = GridState(list(delta), spec.bounds.a)
    out: List[ReducedEntry] = []
    use_partial = prune_partial and not is_empty(spec.B)

    def walk() -> None:
        if state.at_origin():
            beta = tuple(state.prefix)
            if spec.admits_order_type(beta):
                top = roof(beta, spec.bounds)
                if top is not None:
                    out.append((beta, top))
            return
        for j in range(1, state.m + 1):
            if state.remaining[j - 1] == 0:
                continue
            previous = state.push(j)
            if not (use_partial and eval_partial(spec.B, state.partial()) is Tri.FALSE) and not (
                prune_roof and not state.roof_feasible()
            ):
                walk()
            state.pop(j, previous)

    walk()
    return out


def _from_list(spec: PhormaSpec, delta: Composition) -> List[ReducedEntry]:
    out = []
    for beta in sorted(spec.b_list):
        if occ(beta) != delta:
            continue
        top = roof(beta, spec.bounds)
        if top is not None:
            out.append((beta, top))
    return out


def gen_reduced_all(
    spec: PhormaSpec,
    workers: int = 1,
    prune_partial: bool = True,
    prune_roof: bool = True,
    verbose: bool = False,
) -> List[ReducedEntry]:
    comps = list(enum_comps(spec.n, spec.C))
    logger.info("searching %d occurrence vectors for n=%d", len(comps), spec.n)

    if workers > 1 and len(comps) > 1:
        parts = Parallel(n_jobs=workers)(
            delayed(gen_reduced_for)(spec, delta, prune_partial, prune_roof) for delta in comps
        )
    else:
        parts = [
            gen_reduced_for(spec, delta, prune_partial, prune_roof)
            for delta in tqdm(comps, desc="reduced set", disable=not verbose)
        ]

    merged = list(heapq.merge(*parts))
    for (prev, _), (cur, _) in zip(merged, merged[1:]):
        # distinct deltas never share a reduced sequence
        assert prev < cur, f"reduced sequence {cur} generated twice"
    logger.info("reduced set: %d sequences", len(merged))
    return merged

"""Brute-force reference for A(a,B,C) and a cross-check of a compiled index against it."""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from joblib import Parallel, delayed
from tqdm import tqdm

from .errors import BudgetExceededError, PhormaError
from .seqcore import PhormaSpec, member

logger = logging.getLogger(__name__)


@dataclass
class OracleReport:
    spec_id: str
    candidates: int
    brute_count: int
    index_count: int
    set_equal: bool
    round_trip_failures: List[int] = field(default_factory=list)
    first_divergence: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.set_equal and not self.round_trip_failures and self.first_divergence is None

    def summary(self) -> str:
        status = "OK" if self.ok else "FAILED"
        line = (
            f"{status} {self.spec_id}: brute {self.brute_count}, index {self.index_count}, "
            f"round-trip failures {len(self.round_trip_failures)}"
        )
        if self.first_divergence:
            line += f"; first divergence: {self.first_divergence}"
        return line


def candidate_count(spec: PhormaSpec) -> int:
    return spec.bounds.product


def _scan_slice(spec: PhormaSpec, first: int) -> List[Tuple[int, ...]]:
    rest = [range(1, x + 1) for x in spec.bounds.a[1:]]
    return [
        alpha
        for alpha in ((first,) + tail for tail in itertools.product(*rest))
        if member(spec, alpha)
    ]


def brute_enum(spec: PhormaSpec, budget: int = 10 ** 8, workers: int = 1, verbose: bool = False) -> List[Tuple[int, ...]]:
    """Every alpha <= a that is a member, in lexicographic order."""
    candidates = candidate_count(spec)
    if candidates > budget:
        raise BudgetExceededError(candidates, budget)
    firsts = range(1, spec.bounds.a[0] + 1)
    if workers > 1:
        slices = Parallel(n_jobs=workers)(delayed(_scan_slice)(spec, v) for v in firsts)
    else:
        slices = [_scan_slice(spec, v) for v in tqdm(firsts, desc="brute force", disable=not verbose)]
    return [alpha for part in slices for alpha in part]


def verify(spec: PhormaSpec, index, budget: int = 10 ** 8, workers: int = 1, verbose: bool = False) -> OracleReport:
    brute = brute_enum(spec, budget=budget, workers=workers, verbose=verbose)
    report = OracleReport(
        spec_id=spec.name or str(spec.bounds),
        candidates=candidate_count(spec),
        brute_count=len(brute),
        index_count=index.count(),
        set_equal=False,
    )

    def diverge(message: str) -> None:
        if report.first_divergence is None:
            report.first_divergence = message

    unranked = []
    for r in range(index.count()):
        try:
            alpha = index.unrank(r)
            unranked.append(alpha)
            if index.rank(alpha) != r:
                report.round_trip_failures.append(r)
                diverge(f"rank(unrank({r})) != {r}")
        except PhormaError as exc:
            report.round_trip_failures.append(r)
            diverge(f"rank {r}: {exc}")

    report.set_equal = len(brute) == index.count() and set(brute) == set(unranked)
    if not report.set_equal:
        missing = sorted(set(brute) - set(unranked))
        extra = sorted(set(unranked) - set(brute))
        if missing:
            diverge(f"{','.join(map(str, missing[0]))} is a member but never unranked")
        elif extra:
            diverge(f"{','.join(map(str, extra[0]))} unranked but not a member")
        else:
            diverge("index unranks the same sequence twice")

    for alpha in brute:
        try:
            if index.unrank(index.rank(alpha)) != alpha:
                diverge(f"unrank(rank({','.join(map(str, alpha))})) differs")
                break
        except PhormaError as exc:
            diverge(f"{','.join(map(str, alpha))}: {exc}")
            break

    if unranked:
        successor = unranked[0]
        for r, expected in enumerate(unranked):
            if successor != expected:
                diverge(f"next() sweep leaves the rank order at {r}")
                break
            successor = index.next(expected)
        else:
            if successor is not None:
                diverge("next() continues past the last rank")

    logger.info(report.summary())
    return report

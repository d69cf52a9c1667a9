"""Compiled perfect-hash index over A(a,B,C).

The index is a two-layer digraph. The source links to every reduced sequence
beta, in lexicographic order; beta links to its roof in the H layer. The rank
of alpha is the number of paths that leave the source through an earlier beta
(the offset of reduce(alpha)) plus the local rank of sort_distinct(alpha)
under the roof.
"""

from __future__ import annotations

import logging
import math
import random
from bisect import bisect_left, bisect_right
from dataclasses import asdict, dataclass
from typing import Iterator, List, Optional, Sequence, Tuple

from .errors import EmptyFamilyError, RankOutOfRangeError
from .hfamily import HVertexStore, build_store, h_rank, h_unrank
from .redgen import ReducedEntry, gen_reduced_all
from .seqcore import AscendingSeq, PhormaSpec, ReducedSeq, check_member, recover, reduce, sort_distinct
from .utils.config_loader import load_engine_config
from .utils.logging_utils import print_stage_progress

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class IndexStats:
    v_G: int
    v_H: int
    red_count: int
    total: int
    roof_count: int
    max_roof_count: int
    lam: int
    nu: int
    mu: float
    density: float
    density_log10: float
    a_star: int
    n_star: int
    vertex_bound: float

    @property
    def bucket_count(self) -> int:
        return self.nu

    @property
    def density_1e4(self) -> int:
        return int(round(self.density * 1e4))

    def density_text(self) -> str:
        """10^4*d rounded to an integer, or to one significant digit below 1."""
        scaled = self.density * 1e4
        if scaled == 0 or scaled >= 1:
            return str(int(round(scaled)))
        return f"{scaled:.1g}"

    def row(self) -> List[str]:
        """The table columns: v_G v_H |red A| |A| roofs maximal-roofs lambda mu 10^4*d."""
        return [
            str(self.v_G), str(self.v_H), str(self.red_count), str(self.total),
            str(self.roof_count), str(self.max_roof_count), str(self.lam),
            f"{self.mu:.4f}", self.density_text(),
        ]

    def to_dict(self) -> dict:
        out = asdict(self)
        out["density_1e4"] = self.density_1e4
        return out


@dataclass(frozen=True)
class ReducedRow:
    beta: ReducedSeq
    roof: AscendingSeq
    order: int
    offset: int


class PhormaIndex:
    def __init__(self, spec: PhormaSpec, entries: Sequence[ReducedEntry], store: HVertexStore) -> None:
        self.spec = spec
        self.store = store
        rows: List[ReducedRow] = []
        offset = 0
        for beta, top in entries:
            order = store.order(top)
            rows.append(ReducedRow(tuple(beta), tuple(top), order, offset))
            offset += order
        self.reduced: Tuple[ReducedRow, ...] = tuple(rows)
        self.total = offset
        self._betas = [row.beta for row in rows]
        self._offsets = [row.offset for row in rows]
        self.stats = self._compute_stats()

    def __len__(self) -> int:
        return self.total

    # --- counting / hashing ---

    def count(self) -> int:
        return self.total

    def _row_of(self, beta: ReducedSeq) -> int:
        pos = bisect_left(self._betas, beta)
        if pos == len(self._betas) or self._betas[pos] != beta:
            # a member always has its reduced sequence in the table
            raise RuntimeError(f"reduced sequence {beta} missing from the index")
        return pos

    def rank(self, alpha: Sequence[int]) -> int:
        alpha = tuple(alpha)
        check_member(self.spec, alpha)
        row = self.reduced[self._row_of(reduce(alpha))]
        return row.offset + h_rank(self.store, row.roof, sort_distinct(alpha))

    def unrank(self, r: int) -> Tuple[int, ...]:
        if not 0 <= r < self.total:
            raise RankOutOfRangeError(r, self.total)
        row = self.reduced[bisect_right(self._offsets, r) - 1]
        return recover(row.beta, h_unrank(self.store, row.roof, r - row.offset))

    def next(self, alpha: Sequence[int]) -> Optional[Tuple[int, ...]]:
        """Successor of ``alpha`` in rank order, or None after the last element."""
        alpha = tuple(alpha)
        check_member(self.spec, alpha)
        pos = self._row_of(reduce(alpha))
        row = self.reduced[pos]
        local = h_rank(self.store, row.roof, sort_distinct(alpha))
        if local + 1 < row.order:
            return recover(row.beta, h_unrank(self.store, row.roof, local + 1))
        if pos + 1 < len(self.reduced):
            nxt = self.reduced[pos + 1]
            # the lowest element under any roof is 1..m
            return recover(nxt.beta, tuple(range(1, len(nxt.roof) + 1)))
        return None

    def iter_range(self, start: int = 0, stop: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
        stop = self.total if stop is None else min(stop, self.total)
        if start >= stop:
            return
        alpha: Optional[Tuple[int, ...]] = self.unrank(start)
        for _ in range(start, stop):
            yield alpha
            alpha = self.next(alpha)

    def sample(self, seed: int) -> Tuple[int, ...]:
        return self.samples(seed, 1)[0]

    def samples(self, seed: int, k: int) -> List[Tuple[int, ...]]:
        if self.total == 0:
            raise EmptyFamilyError("cannot sample from an empty family")
        rng = random.Random(seed)
        return [self.unrank(rng.randrange(self.total)) for _ in range(k)]

    # --- statistics ---

    def _compute_stats(self) -> IndexStats:
        store = self.store
        bounds = self.spec.bounds
        log_space = sum(math.log10(x) for x in bounds.a)
        if self.total > 0:
            density_log10 = math.log10(self.total) - log_space
            density = 10.0 ** density_log10
        else:
            density_log10 = -math.inf
            density = 0.0
        n_star = max([len(row.roof) for row in self.reduced] + [1])
        return IndexStats(
            v_G=1 + len(self.reduced) + store.vertex_count,
            v_H=store.vertex_count,
            red_count=len(self.reduced),
            total=self.total,
            roof_count=len({row.roof for row in self.reduced}),
            max_roof_count=len(store.maximal_roofs),
            lam=store.max_bucket,
            nu=store.bucket_count,
            mu=store.mean_bucket,
            density=density,
            density_log10=density_log10,
            a_star=bounds.a_star,
            n_star=n_star,
            vertex_bound=store.vertex_bound(n_star=n_star, a_star=bounds.a_star),
        )


def compile(spec: PhormaSpec, cfg=None, verbose: bool = False) -> PhormaIndex:
    """Build the index for ``spec``; ``cfg`` is an engine CfgNode (defaults to the yaml)."""
    cfg = cfg if cfg is not None else load_engine_config()
    stages = 3

    print_stage_progress(0, stages, "reduced set", enabled=verbose)
    entries = gen_reduced_all(
        spec,
        workers=cfg.ENGINE.WORKERS,
        prune_partial=cfg.ENGINE.PRUNE_PARTIAL,
        prune_roof=cfg.ENGINE.PRUNE_ROOF,
        verbose=verbose,
    )

    print_stage_progress(1, stages, "H store", enabled=verbose)
    store = build_store([top for _, top in entries], a_star=spec.bounds.a_star)

    print_stage_progress(2, stages, "offsets", enabled=verbose)
    index = PhormaIndex(spec, entries, store)

    print_stage_progress(3, stages, "done", enabled=verbose)
    logger.info("compiled %s: |A|=%d, |red A|=%d", spec.name or "spec", index.total, len(index.reduced))
    return index

"""The H layer: ascending sequences linked by decrement (w) and drop-last (s) edges.

From a vertex gamma of length m the w edge (label 0) leads to the sequence with
last entry gamma_m - 1, the other entries cascading down so it stays strictly
increasing; the s edge (label 1, or 0 when w is absent) drops the last entry.
Every path from a roof gamma* to the sink ``()`` leaves each length through one
s edge, its *fall*; the last entries of the falls spell the ascending sequence
the path encodes.
"""

from __future__ import annotations

import logging
from bisect import bisect_left
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from .errors import DomainError, DominationError, RankOutOfRangeError, SinkError, VertexNotFoundError
from .seqcore import SINK, AscendingSeq

logger = logging.getLogger(__name__)

W_EDGE = "w"
S_EDGE = "s"


def w_step(gamma: AscendingSeq) -> Optional[AscendingSeq]:
    if not gamma:
        raise SinkError("the sink has no decrement successor")
    m = len(gamma)
    if gamma[-1] == m:
        return None
    out = list(gamma)
    out[-1] = gamma[-1] - 1
    for i in range(m - 2, -1, -1):
        out[i] = min(out[i + 1] - 1, gamma[i])
    return tuple(out)


def s_step(gamma: AscendingSeq) -> Optional[AscendingSeq]:
    if not gamma:
        return None
    return gamma[:-1]


def w_chain(gamma: AscendingSeq, last: int) -> AscendingSeq:
    """Apply w_step until the last entry equals ``last`` (closed form)."""
    m = len(gamma)
    if not m <= last <= gamma[-1]:
        raise DominationError(f"no decrement chain from {gamma} reaches last entry {last}")
    return tuple(min(g, last - (m - 1 - i)) for i, g in enumerate(gamma))


def dominated(lower: AscendingSeq, upper: AscendingSeq) -> bool:
    """True when ``lower`` is reachable from ``upper`` by w/s edges."""
    k = len(lower)
    if k == 0:
        return True
    if k > len(upper) or lower[-1] < k or lower[-1] > upper[k - 1]:
        return False
    return w_chain(upper[:k], lower[-1]) == tuple(lower)


def _check_ascending(gamma: Sequence[int]) -> AscendingSeq:
    gamma = tuple(int(g) for g in gamma)
    if gamma and gamma[0] < 1:
        raise DomainError(f"{gamma} has an entry below 1")
    if any(x >= y for x, y in zip(gamma, gamma[1:])):
        raise DomainError(f"{gamma} is not strictly increasing")
    return gamma


def falls(roof: AscendingSeq, gamma: AscendingSeq) -> List[AscendingSeq]:
    """Fall vertices of the path from ``roof`` encoding ``gamma``, longest first."""
    roof, gamma = _check_ascending(roof), _check_ascending(gamma)
    if len(gamma) != len(roof):
        raise DominationError(f"{gamma} and roof {roof} differ in length")
    if any(g > r for g, r in zip(gamma, roof)):
        raise DominationError(f"{gamma} is not dominated by roof {roof}")
    out: List[AscendingSeq] = []
    cur = roof
    for k in range(len(roof), 0, -1):
        cur = w_chain(cur, gamma[k - 1])
        out.append(cur)
        cur = cur[:-1]
    return out


def post_falls(roof: AscendingSeq, gamma: AscendingSeq) -> List[AscendingSeq]:
    return [w_chain(f, f[-1] - 1) for f in falls(roof, gamma) if f[-1] > len(f)]


def encode_path(roof: AscendingSeq, gamma: AscendingSeq) -> List[str]:
    path: List[str] = []
    prev_last = roof[-1] if roof else 0
    for f in falls(roof, gamma):
        path.extend([W_EDGE] * (prev_last - f[-1]))
        path.append(S_EDGE)
        prev_last = f[-2] if len(f) > 1 else 0
    return path


def decode_path(roof: AscendingSeq, path: Iterable[str]) -> AscendingSeq:
    cur = tuple(roof)
    picked: List[int] = []
    for edge in path:
        if edge == W_EDGE:
            nxt = w_step(cur)
            if nxt is None:
                raise DominationError(f"{cur} has no decrement successor")
            cur = nxt
        elif edge == S_EDGE:
            if not cur:
                raise SinkError("path continues past the sink")
            picked.append(cur[-1])
            cur = cur[:-1]
        else:
            raise ValueError(f"unknown H edge {edge!r}")
    if cur:
        raise DominationError(f"path stops at {cur} before the sink")
    return tuple(reversed(picked))


@dataclass
class _Bucket:
    vertices: List[AscendingSeq]
    orders: List[int]
    w_orders: List[int]


class HVertexStore:
    """Vertices of H bucketed by (last entry, length), each with its path count to the sink."""

    def __init__(
        self,
        orders: Dict[AscendingSeq, int],
        maximal_roofs: Sequence[AscendingSeq],
        a_star: Optional[int] = None,
        n_star: Optional[int] = None,
    ) -> None:
        self.maximal_roofs: Tuple[AscendingSeq, ...] = tuple(sorted(maximal_roofs))
        vertices = [v for v in orders if v]
        self.a_star = max([v[-1] for v in vertices] + [a_star or 0, 1])
        self.n_star = max([len(v) for v in vertices] + [n_star or 0, 1])

        grouped: Dict[Tuple[int, int], List[AscendingSeq]] = {}
        for v in vertices:
            grouped.setdefault((v[-1], len(v)), []).append(v)

        self.table = np.full((self.a_star + 1, self.n_star + 1), -1, dtype=np.int64)
        self.buckets: List[_Bucket] = []
        for key in sorted(grouped):
            members = sorted(grouped[key])
            w_orders = []
            for v in members:
                w = w_step(v)
                w_orders.append(orders[w] if w is not None else 0)
            self.table[key] = len(self.buckets)
            self.buckets.append(_Bucket(members, [orders[v] for v in members], w_orders))

    # --- lookups ---

    def _locate(self, gamma: AscendingSeq) -> Tuple[_Bucket, int]:
        r, m = gamma[-1], len(gamma)
        if 0 <= r <= self.a_star and 1 <= m <= self.n_star:
            bid = int(self.table[r, m])
            if bid >= 0:
                bucket = self.buckets[bid]
                pos = bisect_left(bucket.vertices, gamma)
                if pos < len(bucket.vertices) and bucket.vertices[pos] == gamma:
                    return bucket, pos
        raise VertexNotFoundError(f"{gamma} is not a vertex of the H store")

    def __contains__(self, gamma) -> bool:
        gamma = tuple(gamma)
        if not gamma:
            return True
        try:
            self._locate(gamma)
        except VertexNotFoundError:
            return False
        return True

    def order(self, gamma: Sequence[int]) -> int:
        gamma = tuple(gamma)
        if not gamma:
            return 1
        bucket, pos = self._locate(gamma)
        return bucket.orders[pos]

    def w_order(self, gamma: Sequence[int]) -> int:
        bucket, pos = self._locate(tuple(gamma))
        return bucket.w_orders[pos]

    def vertices(self) -> List[AscendingSeq]:
        out: List[AscendingSeq] = [SINK]
        for bucket in self.buckets:
            out.extend(bucket.vertices)
        return out

    def items(self) -> List[Tuple[AscendingSeq, int]]:
        out = [(SINK, 1)]
        for bucket in self.buckets:
            out.extend(zip(bucket.vertices, bucket.orders))
        return out

    # --- statistics ---

    @property
    def vertex_count(self) -> int:
        return 1 + sum(len(b.vertices) for b in self.buckets)

    @property
    def bucket_count(self) -> int:
        # the sink sits in a bucket of its own
        return 1 + len(self.buckets)

    @property
    def max_bucket(self) -> int:
        return max([1] + [len(b.vertices) for b in self.buckets])

    @property
    def mean_bucket(self) -> float:
        return self.vertex_count / self.bucket_count

    def bucket_sizes(self) -> Dict[Tuple[int, int], int]:
        sizes = {}
        for (r, m), bid in np.ndenumerate(self.table):
            if bid >= 0:
                sizes[(int(r), int(m))] = len(self.buckets[bid].vertices)
        return sizes

    def vertex_bound(self, n_star: Optional[int] = None, a_star: Optional[int] = None) -> float:
        """Upper bound 1 + R (a* - (n*-1)/2) n* on the vertex count, R the number of maximal roofs."""
        n_star = self.n_star if n_star is None else n_star
        a_star = self.a_star if a_star is None else a_star
        return 1 + len(self.maximal_roofs) * (a_star - (n_star - 1) / 2.0) * n_star


def maximal(roofs: Iterable[AscendingSeq]) -> List[AscendingSeq]:
    """Roofs not reachable from any other roof."""
    distinct = sorted({tuple(r) for r in roofs if r})
    return [
        r for r in distinct
        if not any(o != r and dominated(r, o) for o in distinct)
    ]


def build_store(
    roofs: Iterable[Sequence[int]],
    a_star: Optional[int] = None,
    n_star: Optional[int] = None,
) -> HVertexStore:
    tops = maximal(_check_ascending(r) for r in roofs)

    vertices = set()
    for top in tops:
        for k in range(1, len(top) + 1):
            prefix = top[:k]
            for last in range(k, top[k - 1] + 1):
                vertices.add(w_chain(prefix, last))

    orders: Dict[AscendingSeq, int] = {SINK: 1}
    # successors have smaller (length, last entry), so this order resolves them first
    for v in sorted(vertices, key=lambda g: (len(g), g[-1])):
        w = w_step(v)
        orders[v] = orders[v[:-1]] + (orders[w] if w is not None else 0)

    store = HVertexStore(orders, tops, a_star, n_star)
    logger.info(
        "H store: %d vertices in %d buckets from %d maximal roofs",
        store.vertex_count, store.bucket_count, len(tops),
    )
    return store


def order(store: HVertexStore, gamma: Sequence[int]) -> int:
    return store.order(gamma)


def h_rank(store: HVertexStore, roof: Sequence[int], gamma: Sequence[int]) -> int:
    """Local hash of ``gamma`` under ``roof``: the summed orders of its post-falls."""
    roof = tuple(roof)
    store.order(roof)
    return sum(store.w_order(f) for f in falls(roof, tuple(gamma)))


def h_unrank(store: HVertexStore, roof: Sequence[int], r: int) -> AscendingSeq:
    roof = _check_ascending(roof)
    total = store.order(roof)
    if not 0 <= r < total:
        raise RankOutOfRangeError(r, total)
    picked: List[int] = []
    cur = roof
    for k in range(len(roof), 0, -1):
        # smallest last entry whose chain vertex carries more than r paths
        lo, hi = k, cur[-1]
        while lo < hi:
            mid = (lo + hi) // 2
            if store.order(w_chain(cur, mid)) > r:
                hi = mid
            else:
                lo = mid + 1
        if lo > k:
            r -= store.order(w_chain(cur, lo - 1))
        picked.append(lo)
        cur = w_chain(cur, lo)[:-1]
    return tuple(reversed(picked))

import itertools
import unittest

from src.errors import DominationError, RankOutOfRangeError, SinkError, VertexNotFoundError
from src.hfamily import (
    S_EDGE,
    build_store,
    decode_path,
    dominated,
    encode_path,
    falls,
    h_rank,
    h_unrank,
    maximal,
    post_falls,
    s_step,
    w_chain,
    w_step,
)

from phorma_testcase import PhormaTestCase, ascending_under

ROOFS_75 = [(5,), (5, 7), (4, 5), (4, 5, 7), (3, 4, 5), (4, 5, 6, 7), (3, 4, 5, 7)]


def all_roofs(limit):
    for m in range(1, limit + 1):
        yield from itertools.combinations(range(1, limit + 1), m)


def reachable(top):
    """Breadth-first closure of ``top`` under both steps."""
    seen = {tuple(top)}
    frontier = [tuple(top)]
    while frontier:
        nxt = []
        for v in frontier:
            succ = [s_step(v)]
            if v:
                succ.append(w_step(v))
            for u in succ:
                if u is not None and u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return seen


class StepTest(PhormaTestCase):
    def test_w_step(self):
        self.assertEqual(w_step((5, 6, 7, 9)), (5, 6, 7, 8))
        self.assertEqual(w_step((4, 5, 6, 7)), (3, 4, 5, 6))
        self.assertIsNone(w_step((1, 2, 3, 4)))
        with self.assertRaises(SinkError):
            w_step(())

    def test_s_step(self):
        self.assertEqual(s_step((3, 4, 7, 8)), (3, 4, 7))
        self.assertEqual(s_step((5,)), ())
        self.assertIsNone(s_step(()))

    def test_chain_matches_repeated_steps(self):
        for top in all_roofs(7):
            cur = top
            while cur is not None:
                self.assertEqual(w_chain(top, cur[-1]), cur)
                cur = w_step(cur)

    def test_dominated_is_reachability(self):
        for top in all_roofs(6):
            closure = reachable(top)
            for other in all_roofs(6):
                self.assertEqual(dominated(other, top), other in closure, f"{other} under {top}")
            self.assertTrue(dominated((), top))

    def test_prefix_domination_is_not_enough(self):
        self.assertFalse(dominated((3, 4, 5, 7), (4, 5, 6, 7)))
        self.assertTrue(dominated((4, 5), (5, 7)))

    def test_maximal_roofs_of_the_l_piece(self):
        self.assertEqual(maximal(ROOFS_75), [(3, 4, 5, 7), (4, 5, 6, 7), (4, 5, 7), (5, 7)])


class StoreTest(PhormaTestCase):
    def test_l_piece_store(self):
        store = build_store(ROOFS_75)
        self.assertEqual(store.vertex_count, 22)
        self.assertEqual(store.bucket_count, 21)
        self.assertEqual(store.max_bucket, 2)
        self.assertCloseTo(store.mean_bucket, 22 / 21)
        self.assertEqual(store.bucket_sizes()[(7, 4)], 2)

    def test_single_chain(self):
        store = build_store([(5,)])
        self.assertEqual(store.items(), [((), 1), ((1,), 1), ((2,), 2), ((3,), 3), ((4,), 4), ((5,), 5)])

    def test_sink_only(self):
        store = build_store([()])
        self.assertEqual(store.vertex_count, 1)
        self.assertEqual(store.order(()), 1)
        self.assertEqual(store.maximal_roofs, ())

    def test_orders(self):
        store = build_store([(5, 6, 7, 9)])
        self.assertEqual(store.order((4, 5, 6, 7)), 35)
        self.assertEqual(store.order((4, 5, 6)), 20)
        self.assertEqual(store.order(()), 1)
        with self.assertRaises(VertexNotFoundError):
            store.order((6, 7, 8, 9))

    def test_store_invariants(self):
        for top in all_roofs(8):
            store = build_store([top])
            self.assertEqual(set(store.vertices()), reachable(top))
            for v in store.vertices():
                if not v:
                    continue
                w = w_step(v)
                expected = store.order(v[:-1]) + (store.order(w) if w is not None else 0)
                self.assertEqual(store.order(v), expected)
                self.assertEqual(store.order(v), len(ascending_under(v)))
            self.assertLessEqual(store.max_bucket, len(store.maximal_roofs))
            self.assertLessEqual(store.vertex_count, store.vertex_bound())

    def test_bucket_bound_with_several_roofs(self):
        store = build_store(ROOFS_75)
        self.assertLessEqual(store.max_bucket, len(store.maximal_roofs))
        self.assertLessEqual(store.vertex_count, store.vertex_bound(n_star=4, a_star=7))


class LocalHashTest(PhormaTestCase):
    def setUp(self):
        self.store = build_store([(5, 6, 7, 9)])

    def test_worked_example(self):
        roof, gamma = (5, 6, 7, 9), (3, 4, 7, 8)
        self.assertEqual(falls(roof, gamma), [(5, 6, 7, 8), (5, 6, 7), (3, 4), (3,)])
        pf = post_falls(roof, gamma)
        self.assertEqual(pf, [(4, 5, 6, 7), (4, 5, 6), (2, 3), (2,)])
        self.assertEqual([self.store.order(p) for p in pf], [35, 20, 3, 2])
        self.assertEqual(h_rank(self.store, roof, gamma), 60)
        self.assertEqual(h_unrank(self.store, roof, 60), gamma)

    def test_lowest_sequence_ranks_zero(self):
        roof = (5, 6, 7, 9)
        self.assertEqual(h_rank(self.store, roof, (1, 2, 3, 4)), 0)
        self.assertEqual(h_unrank(self.store, roof, 0), (1, 2, 3, 4))

    def test_single_entry_roof(self):
        store = build_store([(5,)])
        self.assertEqual(h_rank(store, (5,), (5,)), 4)
        self.assertEqual([h_unrank(store, (5,), r) for r in range(5)], [(1,), (2,), (3,), (4,), (5,)])

    def test_errors(self):
        roof = (5, 6, 7, 9)
        with self.assertRaises(DominationError):
            h_rank(self.store, roof, (3, 4, 8, 9))
        with self.assertRaises(DominationError):
            h_rank(self.store, roof, (3, 4, 7))
        with self.assertRaises(RankOutOfRangeError):
            h_unrank(self.store, roof, self.store.order(roof))
        with self.assertRaises(VertexNotFoundError):
            h_rank(self.store, (6, 7), (1, 2))

    def test_rank_bijection_and_path_codec(self):
        for top in all_roofs(8):
            store = build_store([top])
            below = ascending_under(top)
            ranks = []
            for gamma in below:
                path = encode_path(top, gamma)
                self.assertEqual(path.count(S_EDGE), len(top))
                self.assertEqual(decode_path(top, path), gamma)
                self.assertEqual(len(falls(top, gamma)), len(top))
                r = h_rank(store, top, gamma)
                self.assertEqual(h_unrank(store, top, r), gamma)
                ranks.append(r)
            self.assertEqual(sorted(ranks), list(range(store.order(top))))

    def test_rank_follows_path_label_order(self):
        top = (3, 5, 6)
        store = build_store([top])
        # label order: w edges (0) sort before s edges (1)
        by_label = sorted(ascending_under(top), key=lambda g: [0 if e == "w" else 1 for e in encode_path(top, g)])
        self.assertEqual([h_rank(store, top, g) for g in by_label], list(range(len(by_label))))


if __name__ == "__main__":
    unittest.main()

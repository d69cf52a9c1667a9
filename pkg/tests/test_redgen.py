import math
import unittest

from src.builtin_specs import l_spec, sym_spec, tz_spec
from src.compositions import enum_comps, explicit, occ, restricted
from src.errors import DomainError, LengthMismatchError
from src.oracle import brute_enum
from src.redgen import gen_reduced_all, gen_reduced_for, grid_decode, grid_path
from src.seqcore import make_spec, reduce, roof

from phorma_testcase import PhormaTestCase

L_75_REDUCED = [
    ((1, 1, 1, 1), (5,)),
    ((2, 1, 2, 1), (5, 7)),
    ((2, 2, 1, 1), (4, 5)),
    ((3, 2, 1, 1), (4, 5, 7)),
    ((3, 2, 2, 1), (4, 5, 7)),
    ((3, 3, 2, 1), (3, 4, 5)),
    ((4, 2, 3, 1), (4, 5, 6, 7)),
    ((4, 3, 1, 2), (3, 4, 5, 7)),
    ((4, 3, 2, 1), (3, 4, 5, 7)),
]


def multinomial(parts):
    out = math.factorial(sum(parts))
    for p in parts:
        out //= math.factorial(p)
    return out


class GridTest(PhormaTestCase):
    def test_grid_path(self):
        self.assertEqual(grid_path((4, 2, 3, 1)), ((1, 1, 1, 1), (4, 2, 3, 1)))
        self.assertEqual(grid_path((2, 1, 2, 1)), ((2, 2), (2, 1, 2, 1)))

    def test_decode_errors(self):
        with self.assertRaises(DomainError):
            grid_decode((2, 2), [1, 1, 1, 2])
        with self.assertRaises(DomainError):
            grid_decode((2, 2), [3])
        with self.assertRaises(LengthMismatchError):
            grid_decode((2, 2), [1, 2])

    def test_unconstrained_paths_are_all_reduced_sequences(self):
        for n in range(1, 7):
            spec = make_spec((n,) * n)
            for delta in enum_comps(n):
                entries = gen_reduced_for(spec, delta)
                self.assertEqual(len(entries), multinomial(delta), f"delta {delta}")
                for beta, _ in entries:
                    start, path = grid_path(beta)
                    self.assertEqual(start, delta)
                    self.assertEqual(grid_decode(delta, path), beta)


class ReducedSetTest(PhormaTestCase):
    def test_l_piece(self):
        self.assertEqual(gen_reduced_all(l_spec(7, 5)), L_75_REDUCED)

    def test_single_delta(self):
        spec = l_spec(7, 5)
        self.assertEqual(gen_reduced_for(spec, (4,)), [((1, 1, 1, 1), (5,))])
        self.assertEqual(
            gen_reduced_for(spec, (1, 1, 1, 1)),
            [((4, 2, 3, 1), (4, 5, 6, 7)), ((4, 3, 1, 2), (3, 4, 5, 7)), ((4, 3, 2, 1), (3, 4, 5, 7))],
        )

    def test_no_roof_under_unit_bounds(self):
        spec = make_spec((1, 1))
        self.assertEqual(gen_reduced_for(spec, (1, 1)), [])
        self.assertEqual(gen_reduced_all(spec), [((1, 1), (1,))])

    def test_strict_chain(self):
        self.assertEqual(gen_reduced_all(sym_spec(2, 9, strict=True)), [((2, 1), (8, 9))])
        self.assertEqual(len(gen_reduced_all(sym_spec(4, 9))), 2 ** 3)

    def test_listed_reduced_set(self):
        spec = make_spec((7, 5, 7, 5), b_list=[(2, 1, 2, 1), (1, 1, 1, 1), (1, 2, 1, 2)])
        entries = gen_reduced_all(spec)
        self.assertEqual(entries, [((1, 1, 1, 1), (5,)), ((1, 2, 1, 2), (4, 5)), ((2, 1, 2, 1), (5, 7))])

    def test_composition_constraints(self):
        spec = make_spec((7, 5, 7, 5), "a1 >= a3 & a2 >= a4 & a1 >= a2", explicit([(2, 2), (4,)], 4))
        self.assertEqual([beta for beta, _ in gen_reduced_all(spec)], [(1, 1, 1, 1), (2, 1, 2, 1), (2, 2, 1, 1)])
        spec = make_spec((4, 4, 4), c=restricted("d1 > d2", 3))
        expected = {}
        for alpha in brute_enum(make_spec((4, 4, 4))):
            beta = reduce(alpha)
            delta = occ(beta)
            if len(delta) >= 2 and delta[0] > delta[1]:
                expected[beta] = roof(beta, spec.bounds)
        self.assertEqual(gen_reduced_all(spec), sorted(expected.items()))
        self.assertIn(((2, 1, 1), (3, 4)), gen_reduced_all(spec))

    def test_pruning_does_not_change_the_result(self):
        specs = [
            l_spec(7, 5),
            l_spec(3, 2),
            sym_spec(4, 3, strict=True),
            make_spec((2, 5, 3), "a1 > a3 | a2 = a3"),
            tz_spec((3, 3, 2, 3, 3, 3, 3)),
        ]
        for spec in specs:
            with self.subTest(spec=spec.name or str(spec.bounds)):
                expected = gen_reduced_all(spec, prune_partial=False, prune_roof=False)
                self.assertEqual(gen_reduced_all(spec, prune_partial=True, prune_roof=False), expected)
                self.assertEqual(gen_reduced_all(spec, prune_partial=False, prune_roof=True), expected)
                self.assertEqual(gen_reduced_all(spec), expected)

    def test_parallel_matches_serial(self):
        spec = l_spec(7, 5)
        self.assertEqual(gen_reduced_all(spec, workers=2), gen_reduced_all(spec))

    def test_matches_reductions_of_brute_force_members(self):
        for spec in [l_spec(7, 5), sym_spec(3, 4), make_spec((3, 2, 4), "a1 != a3 | a2 < a1")]:
            with self.subTest(spec=spec.name or str(spec.bounds)):
                expected = {}
                for alpha in brute_enum(spec):
                    beta = reduce(alpha)
                    expected[beta] = roof(beta, spec.bounds)
                self.assertEqual(gen_reduced_all(spec), sorted(expected.items()))


if __name__ == "__main__":
    unittest.main()

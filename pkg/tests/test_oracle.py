import random
import unittest

from src.boolexpr import OPS
from src.builtin_specs import l_spec, sym_spec
from src.compositions import ALL, enum_comps, explicit, restricted
from src.errors import BudgetExceededError
from src.oracle import brute_enum, candidate_count, verify
from src.phormaindex import compile as compile_index
from src.seqcore import make_spec

from phorma_testcase import PhormaTestCase


def random_expr(rng, n, var, depth):
    if depth == 0 or rng.random() < 0.3:
        i, j = rng.randint(1, n), rng.randint(1, n)
        return f"{var}{i} {rng.choice(sorted(OPS))} {var}{j}"
    kind = rng.choice(["&", "|", "!"])
    if kind == "!":
        return f"!({random_expr(rng, n, var, depth - 1)})"
    left = random_expr(rng, n, var, depth - 1)
    right = random_expr(rng, n, var, depth - 1)
    return f"({left}) {kind} ({right})"


def random_spec(rng):
    n = rng.randint(1, 4)
    bounds = [rng.randint(1, 5) for _ in range(n)]
    b = random_expr(rng, n, "a", rng.randint(0, 3))
    kind = rng.choice(["all", "explicit", "restricted"])
    if kind == "all":
        c = ALL
    elif kind == "explicit":
        comps = list(enum_comps(n))
        c = explicit(rng.sample(comps, rng.randint(1, len(comps))), n)
    else:
        c = restricted(random_expr(rng, n, "d", rng.randint(0, 2)), n)
    return make_spec(bounds, b, c)


class BruteForceTest(PhormaTestCase):
    def test_counts(self):
        self.assertEqual(len(brute_enum(l_spec(7, 5))), 190)
        self.assertEqual(len(brute_enum(sym_spec(3, 9))), 165)
        self.assertEqual(brute_enum(make_spec((2, 2), "a1 > a2")), [(2, 1)])

    def test_lexicographic_and_parallel(self):
        spec = l_spec(7, 5)
        serial = brute_enum(spec)
        self.assertEqual(serial, sorted(serial))
        self.assertEqual(brute_enum(spec, workers=2), serial)

    def test_budget(self):
        spec = l_spec(7, 5)
        self.assertEqual(candidate_count(spec), 1225)
        with self.assertRaises(BudgetExceededError) as ctx:
            brute_enum(spec, budget=1000)
        self.assertEqual(ctx.exception.candidates, 1225)
        self.assertEqual(ctx.exception.budget, 1000)


class VerifyTest(PhormaTestCase):
    def test_builtin_specs_pass(self):
        for spec in [l_spec(7, 5), sym_spec(2, 9, strict=True), sym_spec(3, 5)]:
            with self.subTest(spec=spec.name):
                report = verify(spec, self.compiled(spec))
                self.assertTrue(report.ok, report.summary())
                self.assertEqual(report.brute_count, report.index_count)
        report = verify(sym_spec(2, 9, strict=True), self.compiled(sym_spec(2, 9, strict=True)))
        self.assertEqual(report.summary(), "OK sym_gt_2_9: brute 36, index 36, round-trip failures 0")

    def test_empty_family(self):
        spec = make_spec((1, 1), c=explicit([(1, 1)], 2))
        report = verify(spec, compile_index(spec, self.engine_cfg()))
        self.assertTrue(report.ok)
        self.assertEqual(report.brute_count, 0)

    def test_mismatched_index_is_reported(self):
        report = verify(l_spec(8, 5), self.compiled(l_spec(7, 5)))
        self.assertFalse(report.ok)
        self.assertFalse(report.set_equal)
        self.assertIn("never unranked", report.first_divergence)
        self.assertTrue(report.summary().startswith("FAILED L_8_5"))

    def test_random_corpus(self):
        rng = random.Random(1729)
        cfg = self.engine_cfg()
        for case in range(220):
            spec = random_spec(rng)
            with self.subTest(case=case, bounds=str(spec.bounds), C=spec.C.describe()):
                report = verify(spec, compile_index(spec, cfg))
                self.assertTrue(report.ok, report.summary())


if __name__ == "__main__":
    unittest.main()

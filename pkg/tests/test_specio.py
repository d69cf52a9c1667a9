import io
import os
import tempfile
import unittest
from pathlib import Path

from src.builtin_specs import l_spec, sym_spec, tz_spec
from src.errors import ChecksumError, ImageError, SpecSyntaxError, TruncatedImageError, VersionMismatchError
from src.phormaindex import compile as compile_index
from src.seqcore import make_spec
from src.specio import (
    dumps_index,
    expand_bounds,
    format_spec,
    load_index,
    loads_index,
    parse_spec,
    read_spec,
    save_index,
)

from phorma_testcase import PhormaTestCase

SPECS_DIR = Path(__file__).resolve().parents[1] / "specs"


class SpecFileTest(PhormaTestCase):
    def test_expand_bounds(self):
        self.assertEqual(expand_bounds("15^2 17^2 19^3"), (15, 15, 17, 17, 19, 19, 19))
        self.assertEqual(expand_bounds("7,5, 7 5"), (7, 5, 7, 5))
        for bad in ["", "7 x", "3^"]:
            with self.subTest(text=bad):
                with self.assertRaises(ValueError):
                    expand_bounds(bad)

    def test_shipped_specs_match_builtins(self):
        spec = read_spec(SPECS_DIR / "L_75.phorma")
        builtin = l_spec(7, 5)
        self.assertEqual(spec.name, "L_75")
        self.assertEqual((spec.bounds, spec.B, spec.C), (builtin.bounds, builtin.B, builtin.C))

        spec = read_spec(SPECS_DIR / "Tz_15_17_19.phorma")
        builtin = tz_spec((15, 15, 17, 17, 19, 19, 19))
        self.assertEqual((spec.bounds, spec.B), (builtin.bounds, builtin.B))

        spec = read_spec(SPECS_DIR / "sym_ge_3.phorma")
        builtin = sym_spec(3, 9)
        self.assertEqual((spec.bounds, spec.B), (builtin.bounds, builtin.B))

    def test_name_defaults_to_file_stem(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "pairs.phorma"
            path.write_text("bounds 3 3\nB: a1 > a2\n", encoding="utf-8")
            self.assertEqual(read_spec(path).name, "pairs")

    def test_constraints(self):
        spec = parse_spec("bounds 4 4 4 4\nC: list (2,2),(4)")
        self.assertEqual(spec.C.describe(), "list (2,2),(4)")
        spec = parse_spec("bounds 4 4 4\nC: expr d1 >= d2")
        self.assertEqual(spec.C.kind, "restricted")
        spec = parse_spec("bounds 7 5 7 5\nB-list: 1,1,1,1; 2,1,2,1")
        self.assertEqual(spec.b_list, frozenset({(1, 1, 1, 1), (2, 1, 2, 1)}))

    def test_format_round_trip(self):
        for spec in [
            l_spec(7, 5),
            make_spec((4, 4, 4), "a1 != a2", "d1 >= d2", name="mixed"),
            make_spec((7, 5, 7, 5), b_list=[(2, 1, 2, 1), (1, 1, 1, 1)], name="listed"),
        ]:
            with self.subTest(spec=spec.name):
                again = parse_spec(format_spec(spec))
                self.assertEqual(format_spec(again), format_spec(spec))
                self.assertEqual((again.bounds, again.B, again.b_list), (spec.bounds, spec.B, spec.b_list))

    def test_errors_carry_line_and_column(self):
        with self.assertRaises(SpecSyntaxError) as ctx:
            parse_spec("bounds 1 2\nB: (a1 >= )")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (2, 11))

        with self.assertRaises(SpecSyntaxError) as ctx:
            parse_spec("bounds 3 3\nB: (a1 >= a2)\n   & (a1 ? a2)")
        self.assertEqual((ctx.exception.line, ctx.exception.column), (3, 10))

    def test_semantic_errors(self):
        cases = [
            ("dim 3\nbounds 1 2", 1),
            ("bounds 2 2\nB: a1 < a3", 2),
            ("bounds 2 0", 1),
            ("bounds 2 2\nC: list (3)", 2),
            ("bounds 2 2\nC: maybe", 2),
            ("B: a1 < a2", 1),
            ("bounds 2 2\nbounds 3 3", 2),
            ("  bounds 2 2", 1),
        ]
        for text, line in cases:
            with self.subTest(text=text):
                with self.assertRaises(SpecSyntaxError) as ctx:
                    parse_spec(text)
                self.assertEqual(ctx.exception.line, line)


class ImageTest(PhormaTestCase):
    def setUp(self):
        self.index = self.compiled(l_spec(7, 5))

    def test_compile_and_save_twice_is_byte_identical(self):
        for spec in [l_spec(7, 5), sym_spec(3, 5), make_spec((3, 3), b_list=[(1, 2), (2, 1)], name="listed_pairs")]:
            with self.subTest(spec=spec.name):
                images = []
                for _ in range(2):
                    buf = io.StringIO()
                    save_index(compile_index(spec, self.engine_cfg()), buf)
                    images.append(buf.getvalue().encode("utf-8"))
                self.assertEqual(images[0], images[1])
                text = images[0].decode("utf-8")
                self.assertTrue(text.startswith("phorma-index 1\n[spec] "))
                self.assertEqual(dumps_index(loads_index(text)), text)

    def test_load_round_trip(self):
        buf = io.StringIO()
        save_index(self.index, buf)
        loaded = load_index(io.StringIO(buf.getvalue()))
        self.assertEqual(loaded.count(), 190)
        self.assertEqual(loaded.stats.row(), self.index.stats.row())
        self.assertEqual(loaded.reduced, self.index.reduced)
        for r in range(190):
            alpha = self.index.unrank(r)
            self.assertEqual(loaded.unrank(r), alpha)
            self.assertEqual(loaded.rank(alpha), r)

    def test_save_to_path(self):
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "L_75.phx")
            save_index(self.index, path)
            self.assertEqual(load_index(path).count(), 190)

    def test_corruption(self):
        text = dumps_index(self.index)
        lines = text.splitlines(keepends=True)

        tampered = text.replace("\n5 5\n", "\n5 6\n", 1)
        self.assertNotEqual(tampered, text)
        with self.assertRaises(ChecksumError):
            loads_index(tampered)

        with self.assertRaises(VersionMismatchError):
            loads_index("phorma-index 2\n" + "".join(lines[1:]))

        with self.assertRaises(TruncatedImageError):
            loads_index("".join(lines[:-1]))
        with self.assertRaises(TruncatedImageError):
            loads_index("")

    def test_malformed_header_and_encoding(self):
        lines = dumps_index(self.index).splitlines(keepends=True)
        with self.assertRaises(VersionMismatchError):
            loads_index("phorma-index v2\n" + "".join(lines[1:]))
        with tempfile.TemporaryDirectory() as tmp:
            path = os.path.join(tmp, "latin1.phx")
            with open(path, "wb") as f:
                f.write(b"phorma-index 1\n[spec] 1\nname \xe9\n")
            with self.assertRaises(ImageError):
                load_index(path)


if __name__ == "__main__":
    unittest.main()

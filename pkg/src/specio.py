"""Text formats: ``.phorma`` spec files and ``.phx`` index images.

Spec file, one key per line (``#`` starts a comment, an indented line
continues the value of the line above)::

    name    L_75
    dim     4
    bounds  7 5 7 5            # or 15^2 17^2 19^3
    B: (a1 >= a3) & (a2 >= a4)
    B-list: 1,1,1,1; 2,1,2,1   # instead of B
    C: all                     # | list (2,2),(4) | expr (d1 >= d2)

An index image echoes the spec, then lists the reduced table, the maximal
roofs and every H vertex with its order, and ends with a checksum line over
everything above it.
"""

from __future__ import annotations

import hashlib
import io
import math
import re
from pathlib import Path
from typing import Dict, List, Optional, Sequence, TextIO, Tuple, Union

from .boolexpr import EMPTY, parse_bool, to_text
from .compositions import ALL, CompConstraint, explicit, restricted
from .errors import (
    BoolSyntaxError,
    ChecksumError,
    ImageError,
    IndexOutOfRangeError,
    PhormaError,
    SpecSyntaxError,
    TruncatedImageError,
    VersionMismatchError,
)
from .hfamily import HVertexStore
from .phormaindex import PhormaIndex
from .seqcore import Bounds, PhormaSpec
from .utils.config_loader import load_engine_config

_KEYED = re.compile(r"^(dim|bounds|name)\b\s*(.*)$")
_COLON = re.compile(r"^(B-list|B|C)\s*:\s*(.*)$")
_RUN = re.compile(r"^(\d+)(?:\^(\d+))?$")
_TUPLE = re.compile(r"\(([^()]*)\)")


def expand_bounds(text: str) -> Tuple[int, ...]:
    """``"15^2 17^2 19^3"`` or ``"15^2,17^2,19^3"`` -> (15, 15, 17, 17, 19, 19, 19)."""
    out: List[int] = []
    for tok in re.split(r"[\s,]+", text.strip()):
        if not tok:
            continue
        m = _RUN.match(tok)
        if m is None:
            raise ValueError(f"bad bounds entry {tok!r}")
        out.extend([int(m.group(1))] * int(m.group(2) or 1))
    if not out:
        raise ValueError("bounds are empty")
    return tuple(out)


def _ints(text: str) -> Tuple[int, ...]:
    return tuple(int(x) for x in re.split(r"[\s,]+", text.strip()) if x)


class _Value:
    """A key's value joined across continuation lines, remembering where each piece came from."""

    def __init__(self, line: int, column: int, text: str) -> None:
        self.line = line
        self.pieces = [(0, line, column)]
        self.text = text

    def extend(self, line: int, column: int, text: str) -> None:
        self.text += " "
        self.pieces.append((len(self.text), line, column))
        self.text += text

    def where(self, offset: int) -> Tuple[int, int]:
        start, line, column = self.pieces[0]
        for s, ln, col in self.pieces:
            if s <= offset:
                start, line, column = s, ln, col
        return line, column + (offset - start)

    def error(self, message: str, offset: Optional[int] = None) -> SpecSyntaxError:
        if offset is None:
            return SpecSyntaxError(message, self.line)
        line, column = self.where(offset)
        return SpecSyntaxError(message, line, column)


def parse_spec(text: str, name: str = "") -> PhormaSpec:
    values: Dict[str, _Value] = {}
    last: Optional[_Value] = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].rstrip()
        if not body.strip():
            continue
        if body[0].isspace():
            if last is None:
                raise SpecSyntaxError("continuation line without a key", lineno, 1)
            stripped = body.lstrip()
            last.extend(lineno, len(body) - len(stripped) + 1, stripped)
            continue
        m = _KEYED.match(body) or _COLON.match(body)
        if m is None:
            raise SpecSyntaxError(f"unknown line {body.strip()!r}", lineno, 1)
        key = m.group(1)
        if key in values:
            raise SpecSyntaxError(f"duplicate key {key!r}", lineno, 1)
        last = values[key] = _Value(lineno, m.start(2) + 1, m.group(2))

    if "bounds" not in values:
        raise SpecSyntaxError("missing 'bounds' line", len(text.splitlines()) or 1)
    if "B" in values and "B-list" in values:
        raise values["B-list"].error("give either 'B:' or 'B-list:', not both")

    bv = values["bounds"]
    try:
        bounds = Bounds(expand_bounds(bv.text))
    except (ValueError, PhormaError) as exc:
        raise bv.error(str(exc), 0) from None
    n = bounds.n

    if "dim" in values:
        dv = values["dim"]
        try:
            dim = int(dv.text)
        except ValueError:
            raise dv.error(f"dim must be an integer, have {dv.text!r}", 0) from None
        if dim != n:
            raise dv.error(f"dim {dim} does not match {n} bounds", 0)

    expr = EMPTY
    b_list = None
    if "B" in values:
        v = values["B"]
        try:
            expr = parse_bool(v.text, n)
        except BoolSyntaxError as exc:
            raise v.error(str(exc), exc.position) from None
        except IndexOutOfRangeError as exc:
            raise v.error(str(exc)) from None
    if "B-list" in values:
        v = values["B-list"]
        try:
            b_list = frozenset(_ints(chunk) for chunk in v.text.split(";") if chunk.strip())
        except ValueError as exc:
            raise v.error(f"bad reduced sequence: {exc}", 0) from None

    constraint = ALL
    if "C" in values:
        constraint = _parse_constraint(values["C"], n)

    label = values["name"].text.strip() if "name" in values else name
    try:
        return PhormaSpec(bounds, expr, constraint, b_list, label)
    except PhormaError as exc:
        line = values["B-list"].line if b_list is not None and "B-list" in values else bv.line
        raise SpecSyntaxError(str(exc), line) from None


def _parse_constraint(v: _Value, n: int) -> CompConstraint:
    text = v.text.strip()
    head, _, rest = text.partition(" ")
    try:
        if head == "all" and not rest.strip():
            return ALL
        if head == "list":
            comps = [_ints(t) for t in _TUPLE.findall(rest)]
            if not comps:
                raise v.error("'list' needs at least one (d1,...,dm) tuple")
            return explicit(comps, n)
        if head == "expr":
            return restricted(rest, n)
    except BoolSyntaxError as exc:
        raise v.error(str(exc), v.text.index(rest) + exc.position) from None
    except (PhormaError, ValueError) as exc:
        if isinstance(exc, SpecSyntaxError):
            raise
        raise v.error(str(exc)) from None
    raise v.error(f"C must be 'all', 'list ...' or 'expr ...', have {text!r}", 0)


def read_spec(path: Union[str, Path]) -> PhormaSpec:
    path = Path(path)
    with open(path, encoding="utf-8") as f:
        return parse_spec(f.read(), name=path.stem)


def format_spec(spec: PhormaSpec) -> str:
    lines = []
    if spec.name:
        lines.append(f"name {spec.name}")
    lines.append(f"dim {spec.n}")
    lines.append("bounds " + " ".join(map(str, spec.bounds.a)))
    if spec.b_list is not None:
        lines.append("B-list: " + "; ".join(",".join(map(str, b)) for b in sorted(spec.b_list)))
    elif spec.B is not EMPTY:
        lines.append("B: " + to_text(spec.B))
    lines.append("C: " + spec.C.describe())
    return "\n".join(lines) + "\n"


# --- index images ------------------------------------------------------

MAGIC = "phorma-index"


def _seq(values: Sequence[int]) -> str:
    return ",".join(map(str, values)) if values else "-"


def _unseq(text: str) -> Tuple[int, ...]:
    return () if text == "-" else tuple(int(x) for x in text.split(","))


def _fmt_float(x: float) -> str:
    return "-inf" if x == -math.inf else f"{x:.6f}"


def _image_settings(cfg) -> Tuple[int, str]:
    cfg = cfg if cfg is not None else load_engine_config()
    return int(cfg.IMAGE.FORMAT_VERSION), str(cfg.IMAGE.CHECKSUM)


def dumps_index(idx: PhormaIndex, cfg=None) -> str:
    version, algo = _image_settings(cfg)
    out = io.StringIO()
    out.write(f"{MAGIC} {version}\n")

    spec_lines = format_spec(idx.spec).splitlines()
    out.write(f"[spec] {len(spec_lines)}\n")
    for line in spec_lines:
        out.write(line + "\n")

    out.write(f"[reduced] {len(idx.reduced)}\n")
    for row in idx.reduced:
        out.write(f"{_seq(row.beta)} {_seq(row.roof)} {row.order} {row.offset}\n")

    roofs = idx.store.maximal_roofs
    out.write(f"[roofs] {len(roofs)}\n")
    for top in roofs:
        out.write(_seq(top) + "\n")

    items = idx.store.items()
    out.write(f"[vertices] {len(items)}\n")
    for vertex, order in items:
        out.write(f"{_seq(vertex)} {order}\n")

    stats = idx.stats
    fields = [
        ("v_G", stats.v_G), ("v_H", stats.v_H), ("red_count", stats.red_count),
        ("total", stats.total), ("roof_count", stats.roof_count),
        ("max_roof_count", stats.max_roof_count), ("lambda", stats.lam), ("nu", stats.nu),
        ("mu", _fmt_float(stats.mu)), ("density_log10", _fmt_float(stats.density_log10)),
    ]
    out.write(f"[stats] {len(fields)}\n")
    for key, value in fields:
        out.write(f"{key} {value}\n")

    body = out.getvalue()
    digest = hashlib.new(algo, body.encode("utf-8")).hexdigest()
    return body + f"checksum {algo} {digest}\n"


def save_index(idx: PhormaIndex, sink: Union[str, Path, TextIO], cfg=None) -> None:
    text = dumps_index(idx, cfg)
    if hasattr(sink, "write"):
        sink.write(text)
        return
    with open(sink, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


class _Sections:
    def __init__(self, lines: List[str]) -> None:
        self.lines = lines
        self.pos = 1

    def take(self, name: str) -> List[str]:
        if self.pos >= len(self.lines):
            raise TruncatedImageError(f"image ends before section [{name}]")
        header = self.lines[self.pos].split()
        if len(header) != 2 or header[0] != f"[{name}]":
            raise ImageError(f"expected section [{name}] at line {self.pos + 1}")
        count = int(header[1])
        start = self.pos + 1
        self.pos = start + count
        if self.pos > len(self.lines):
            raise TruncatedImageError(f"section [{name}] is cut short")
        return self.lines[start:self.pos]


def loads_index(text: str, cfg=None) -> PhormaIndex:
    version, _ = _image_settings(cfg)
    lines = text.splitlines()
    if not lines:
        raise TruncatedImageError("image is empty")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MAGIC:
        raise ImageError("not a phorma index image")
    if not head[1].isdigit() or int(head[1]) != version:
        raise VersionMismatchError(f"image format {head[1]}, this build reads {version}")

    tail = lines[-1].split()
    if len(tail) != 3 or tail[0] != "checksum":
        raise TruncatedImageError("image has no checksum line")
    body = text[: text.rindex("checksum ")]
    try:
        digest = hashlib.new(tail[1], body.encode("utf-8")).hexdigest()
    except ValueError:
        raise ChecksumError(f"unknown checksum algorithm {tail[1]!r}") from None
    if digest != tail[2]:
        raise ChecksumError("image checksum does not match its contents")

    sections = _Sections(lines[:-1])
    try:
        spec = parse_spec("\n".join(sections.take("spec")))
        reduced = [line.split() for line in sections.take("reduced")]
        roofs = [_unseq(line) for line in sections.take("roofs")]
        orders = {}
        for line in sections.take("vertices"):
            vertex, order = line.split()
            orders[_unseq(vertex)] = int(order)
        stats = dict(line.split(" ", 1) for line in sections.take("stats"))
        entries = [(_unseq(beta), _unseq(top)) for beta, top, _, _ in reduced]
    except ImageError:
        raise
    except (ValueError, SpecSyntaxError) as exc:
        raise ImageError(f"malformed image: {exc}") from None

    store = HVertexStore(orders, roofs, a_star=spec.bounds.a_star)
    idx = PhormaIndex(spec, entries, store)
    for row, (_, _, order, offset) in zip(idx.reduced, reduced):
        if str(row.order) != order or str(row.offset) != offset:
            raise ImageError(f"reduced row {_seq(row.beta)} disagrees with the stored H orders")
    if str(idx.total) != stats.get("total"):
        raise ImageError("stored total disagrees with the reduced table")
    return idx


def load_index(source: Union[str, Path, TextIO], cfg=None) -> PhormaIndex:
    try:
        if hasattr(source, "read"):
            text = source.read()
        else:
            with open(source, encoding="utf-8") as f:
                text = f.read()
    except UnicodeDecodeError as exc:
        raise ImageError(f"image is not utf-8 text: {exc.reason} at byte {exc.start}") from None
    return loads_index(text, cfg)

"""Ready-made boolean functions and specs, addressed by short names like ``L:7:5``.

- ``sym_ge:n:amax`` / ``sym_gt:n:amax``: non-increasing (strictly decreasing)
  sequences of length n with every entry at most amax.
- ``L:p:q``: the L-shaped piece over bounds (p, q, p, q).
- ``Tz:a1,...,a7``: the seven-entry T-shaped piece, bounds accept ``15^2,17^2,19^3``.
"""

from __future__ import annotations

from typing import Sequence

from .boolexpr import BoolExpr, parse_bool
from .errors import DomainError
from .seqcore import PhormaSpec, make_spec
from .specio import expand_bounds

L_TEXT = (
    "(a1 >= a3) & (a2 >= a4) & (a1 >= a2) & ((a1 != a2) | (a3 >= a4)) "
    "& ((a1 != a3) | (a2 = a4)) & ((a2 != a4) | (a1 = a3))"
)

TZ_TEXT = (
    "(a2 >= a1) & (a4 >= a3) & (a7 >= a6) & (a6 >= a5) & (a2 >= a4) "
    "& ((a2 != a4) | (a1 >= a3)) & ((a1 != a2) | (a5 = a6)) "
    "& ((a3 != a4) | (a1 = a2)) & ((a3 != a4) | (a5 = a7))"
)


def _chain(n: int, op: str) -> str:
    return " & ".join(f"(a{i} {op} a{i + 1})" for i in range(1, n))


def sym_ge(n: int) -> BoolExpr:
    return parse_bool(_chain(n, ">="), n)


def sym_gt(n: int) -> BoolExpr:
    return parse_bool(_chain(n, ">"), n)


def l_piece() -> BoolExpr:
    return parse_bool(L_TEXT, 4)


def tz_piece() -> BoolExpr:
    return parse_bool(TZ_TEXT, 7)


def sym_spec(n: int, amax: int, strict: bool = False) -> PhormaSpec:
    kind = "sym_gt" if strict else "sym_ge"
    expr = sym_gt(n) if strict else sym_ge(n)
    return make_spec([amax] * n, expr, name=f"{kind}_{n}_{amax}")


def l_spec(p: int, q: int) -> PhormaSpec:
    return make_spec([p, q, p, q], l_piece(), name=f"L_{p}_{q}")


def tz_spec(bounds: Sequence[int]) -> PhormaSpec:
    bounds = tuple(bounds)
    if len(bounds) != 7:
        raise DomainError(f"the T piece has 7 entries, have {len(bounds)} bounds")
    return make_spec(bounds, tz_piece(), name="Tz_" + "_".join(map(str, bounds)))


def builtin_spec(text: str) -> PhormaSpec:
    kind, _, args = text.strip().partition(":")
    try:
        if kind in ("sym_ge", "sym_gt"):
            n, amax = (int(x) for x in args.split(":"))
            return sym_spec(n, amax, strict=kind == "sym_gt")
        if kind == "L":
            p, q = (int(x) for x in args.split(":"))
            return l_spec(p, q)
        if kind == "Tz":
            return tz_spec(expand_bounds(args))
    except ValueError as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad built-in spec {text!r}: {exc}") from None
    raise DomainError(f"unknown built-in spec {text!r}; use sym_ge:n:amax, sym_gt:n:amax, L:p:q or Tz:a1,...,a7")

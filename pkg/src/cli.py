"""Command-line entry point: ``python -m src.cli <command> ...``.

Exit status is 0 on success, 1 on a domain error and 2 on a usage error.
"""

from __future__ import annotations

import json
import logging
import sys
from argparse import ArgumentParser, Namespace
from pathlib import Path
from typing import List, Optional, Sequence

from tqdm import tqdm

from .builtin_specs import builtin_spec
from .errors import DomainError, PhormaError
from .oracle import candidate_count, verify
from .phormaindex import PhormaIndex, compile as compile_index
from .seqcore import PhormaSpec
from .specio import load_index, read_spec, save_index
from .utils.config_loader import load_engine_config, log_file_default
from .utils.logging_utils import init_logging

logger = logging.getLogger(__name__)

STATS_HEADER = ["v_G", "v_H", "|redA|", "|A|", "roofs", "max_roofs", "lambda", "mu", "1e4*d"]


def _parse_seq(text: str) -> tuple:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise DomainError(f"expected comma-separated integers, have {text!r}") from None


def _fmt_seq(alpha: Sequence[int]) -> str:
    return ",".join(map(str, alpha))


def _spec_from(args: Namespace) -> PhormaSpec:
    if args.builtin:
        return builtin_spec(args.builtin)
    if not args.source:
        raise DomainError("give a spec file or --builtin")
    return read_spec(args.source)


def _index_from(args: Namespace, cfg) -> PhormaIndex:
    if args.source and not args.builtin and Path(args.source).suffix == ".phx":
        return load_index(args.source, cfg)
    return compile_index(_spec_from(args), cfg, verbose=args.verbose)


class _Output:
    def __init__(self, as_json: bool) -> None:
        self.as_json = as_json

    def emit(self, text: str, payload) -> None:
        if self.as_json:
            print(json.dumps(payload, sort_keys=True))
        else:
            print(text)


def cmd_compile(args: Namespace, cfg, out: _Output) -> int:
    idx = compile_index(_spec_from(args), cfg, verbose=args.verbose)
    if args.output:
        save_index(idx, args.output, cfg)
    out.emit(
        f"compiled {idx.spec.name or 'spec'}: |A|={idx.total} |red A|={len(idx.reduced)}"
        + (f" -> {args.output}" if args.output else ""),
        {"name": idx.spec.name, "total": idx.total, "red_count": len(idx.reduced), "output": args.output},
    )
    return 0


def cmd_count(args: Namespace, cfg, out: _Output) -> int:
    idx = _index_from(args, cfg)
    out.emit(str(idx.count()), {"count": idx.count()})
    return 0


def cmd_rank(args: Namespace, cfg, out: _Output) -> int:
    idx = _index_from(args, cfg)
    r = idx.rank(_parse_seq(args.alpha))
    out.emit(str(r), {"rank": r})
    return 0


def cmd_unrank(args: Namespace, cfg, out: _Output) -> int:
    idx = _index_from(args, cfg)
    alpha = idx.unrank(args.rank)
    out.emit(_fmt_seq(alpha), {"alpha": list(alpha)})
    return 0


def cmd_next(args: Namespace, cfg, out: _Output) -> int:
    idx = _index_from(args, cfg)
    alpha = idx.next(_parse_seq(args.alpha))
    out.emit("none" if alpha is None else _fmt_seq(alpha), {"next": None if alpha is None else list(alpha)})
    return 0


def cmd_sample(args: Namespace, cfg, out: _Output) -> int:
    idx = _index_from(args, cfg)
    drawn = idx.samples(args.seed, args.count)
    out.emit("\n".join(_fmt_seq(a) for a in drawn), {"samples": [list(a) for a in drawn]})
    return 0


def cmd_enum(args: Namespace, cfg, out: _Output) -> int:
    idx = _index_from(args, cfg)
    stop = idx.total if args.to is None else args.to
    stream = tqdm(
        idx.iter_range(args.start, stop),
        total=max(0, min(stop, idx.total) - args.start),
        desc="enum",
        disable=not args.verbose,
    )
    if out.as_json:
        out.emit("", {"alphas": [list(a) for a in stream]})
    else:
        for alpha in stream:
            print(_fmt_seq(alpha))
    return 0


def format_stats_table(row: List[str]) -> str:
    widths = [max(len(h), len(v)) for h, v in zip(STATS_HEADER, row)]
    header = "  ".join(h.rjust(w) for h, w in zip(STATS_HEADER, widths))
    values = "  ".join(v.rjust(w) for v, w in zip(row, widths))
    return header + "\n" + values


def cmd_stats(args: Namespace, cfg, out: _Output) -> int:
    stats = _index_from(args, cfg).stats
    if args.table:
        text = format_stats_table(stats.row())
    else:
        text = "\n".join(f"{k}: {v}" for k, v in stats.to_dict().items())
    out.emit(text, stats.to_dict())
    return 0


def cmd_verify(args: Namespace, cfg, out: _Output) -> int:
    spec = _spec_from(args)
    budget = args.budget if args.budget is not None else cfg.ORACLE.BUDGET
    print(f"phorma: scanning {candidate_count(spec)} candidates (budget {budget})", file=sys.stderr)
    idx = compile_index(spec, cfg, verbose=args.verbose)
    report = verify(spec, idx, budget=budget, workers=cfg.ORACLE.WORKERS, verbose=args.verbose)
    out.emit(
        report.summary(),
        {
            "spec": report.spec_id,
            "candidates": report.candidates,
            "brute_count": report.brute_count,
            "index_count": report.index_count,
            "set_equal": report.set_equal,
            "round_trip_failures": report.round_trip_failures,
            "first_divergence": report.first_divergence,
        },
    )
    return 0 if report.ok else 1


COMMANDS = {
    "compile": cmd_compile,
    "count": cmd_count,
    "rank": cmd_rank,
    "unrank": cmd_unrank,
    "next": cmd_next,
    "sample": cmd_sample,
    "enum": cmd_enum,
    "stats": cmd_stats,
    "verify": cmd_verify,
}


def build_arg_parser() -> ArgumentParser:
    common = ArgumentParser(add_help=False)
    common.add_argument("source", nargs="?", default=None, help="spec file (.phorma) or compiled index (.phx)")
    common.add_argument("--builtin", default=None, help="built-in spec: sym_ge:n:amax, sym_gt:n:amax, L:p:q, Tz:a1,...,a7")
    common.add_argument("--config", default=None, help="engine yaml (default src/config/phorma.yaml)")
    common.add_argument("--workers", type=int, default=None, help="joblib workers for compile and verify")
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--verbose", action="store_true", help="progress and info logging on stderr")
    common.add_argument("--log_file", default=None, help="also write the log to this file")

    parser = ArgumentParser(prog="phorma", description="Perfect hashing of restricted integer sequences")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", parents=[common], help="compile a spec into an index image")
    p.add_argument("-o", "--output", default=None, help="path of the .phx image to write")

    sub.add_parser("count", parents=[common], help="number of sequences in the family")

    p = sub.add_parser("rank", parents=[common], help="perfect-hash value of a member")
    p.add_argument("--alpha", required=True, help="comma-separated sequence")

    p = sub.add_parser("unrank", parents=[common], help="member with the given rank")
    p.add_argument("--rank", type=int, required=True)

    p = sub.add_parser("next", parents=[common], help="successor of a member in rank order")
    p.add_argument("--alpha", required=True, help="comma-separated sequence")

    p = sub.add_parser("sample", parents=[common], help="uniform random members")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=1)

    p = sub.add_parser("enum", parents=[common], help="members with ranks in [from, to), one per line")
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", type=int, default=None)

    p = sub.add_parser("stats", parents=[common], help="index statistics")
    p.add_argument("--table", action="store_true", help="one aligned table row")

    p = sub.add_parser("verify", parents=[common], help="cross-check the index against brute force")
    p.add_argument("--budget", type=int, default=None, help="largest candidate space to scan")

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_arg_parser().parse_args(argv)
    init_logging(args.verbose, args.log_file or log_file_default())
    out = _Output(args.json)
    try:
        cfg = load_engine_config(args.config, workers=args.workers)
        return COMMANDS[args.command](args, cfg, out)
    except PhormaError as exc:
        if args.json:
            print(json.dumps({"error": exc.kind, "message": str(exc)}, sort_keys=True))
        else:
            print(f"phorma: error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"phorma: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

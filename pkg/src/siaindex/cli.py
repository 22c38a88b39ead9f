"""Command-line interface.

Exit codes: 0 result found, 1 usage or input error, 2 nothing found within
the cutoff, 3 no product of the requested class exists.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field
from typing import Optional

from . import __version__
from .classes import SizeLimitError, classify
from .families import FAMILIES, family
from .indices import ClassTag, all_indices, class_index_bfs, sia_index
from .patterns import SCHEMA_VERSION, MatrixFormatError, PatternError, dumps_matrix_set, loads_matrix_set
from .reductions import InstanceError, encode_3sat, encode_set_cover, parse_dimacs, parse_set_cover
from .sampling import (
    DEFAULT_SEED,
    check_inclusion_chain,
    check_local_exponents,
    check_power_bounds,
    check_scrambling_closure,
)
from .search import (
    DEFAULT_BUDGET,
    BudgetExceededError,
    default_workers,
    dump_extremal,
    emit_growth_curve,
    max_sia_index,
    summaries_csv,
)

EXIT_FOUND = 0
EXIT_ERROR = 1
EXIT_CUTOFF = 2
EXIT_NONE = 3


@dataclass
class RunConfig:
    subcommand: str
    inputs: list = field(default_factory=list)
    cutoff: Optional[int] = None
    workers: int = 1
    output_format: str = "text"
    seed: int = DEFAULT_SEED

    def __post_init__(self):
        if self.workers < 1:
            raise ValueError("worker count must be at least 1")
        if self.cutoff is not None and self.cutoff < 1:
            raise ValueError("cutoff must be at least 1")


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _write(text: str, path: Optional[str]) -> None:
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _positive_int(raw: str) -> int:
    value = int(raw)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {raw}")
    return value


def cmd_classify(args, cfg: RunConfig) -> int:
    s = loads_matrix_set(_read(args.file), args.zero_tolerance)
    reports = {label: classify(p, args.sarymsakov_limit) for label, p in zip(s.labels, s.patterns)}
    if cfg.output_format == "json":
        print(json.dumps({label: r.as_dict() for label, r in reports.items()}, indent=2))
    else:
        for label, r in reports.items():
            power = r.sia_witness_power if r.sia_witness_power is not None else "-"
            print(
                f"{label}: positive-column={r.is_positive_column} scrambling={r.is_scrambling} "
                f"sarymsakov={r.is_sarymsakov} sia={r.is_sia} sia_witness_power={power}"
            )
    return EXIT_FOUND


def _index_exit(status: str) -> int:
    return {"found": EXIT_FOUND, "cutoff": EXIT_CUTOFF, "none": EXIT_NONE}[status]


def cmd_index(args, cfg: RunConfig) -> int:
    s = loads_matrix_set(_read(args.file), args.zero_tolerance)
    cls = args.cls.upper()
    if cls == "ALL":
        results = all_indices(s, sia_cutoff=cfg.cutoff, bfs_cutoff=cfg.cutoff)
    elif cls == "SIA":
        results = {ClassTag.SIA: sia_index(s, cfg.cutoff)}
    else:
        results = {ClassTag(cls): class_index_bfs(s, cls, cfg.cutoff)}
    if cfg.output_format == "json":
        print(json.dumps([r.to_dict(s) for r in results.values()], indent=2))
    else:
        for tag, r in results.items():
            if r.value is not None:
                print(f"{tag.value.lower()} = {r.value}  witness: {s.format_word(r.witness) or '(empty)'}")
            elif r.status == "none":
                print(f"{tag.value.lower()}: no product of this class exists")
            else:
                print(f"{tag.value.lower()}: none found up to length {r.explored_up_to}")
    statuses = [r.status for r in results.values()]
    for status in ("none", "cutoff"):
        if status in statuses:
            return _index_exit(status)
    return EXIT_FOUND


def cmd_search(args, cfg: RunConfig) -> int:
    summaries = []
    for n in args.n:
        summary = max_sia_index(
            n,
            args.m,
            ic_only=args.ic,
            cutoff=cfg.cutoff,
            canonical=args.canonical,
            workers=cfg.workers,
            budget=args.budget,
            max_examples=args.examples,
        )
        summaries.append(summary)
        if args.dump_extremal:
            dump_extremal(summary, args.dump_extremal)
    timing = not args.no_timing
    if cfg.output_format == "json":
        text = json.dumps([s.to_dict(timing) for s in summaries], indent=2) + "\n"
    elif cfg.output_format == "csv":
        text = summaries_csv(summaries, timing)
    else:
        lines = []
        for s in summaries:
            line = (
                f"n={s.n} m={s.set_size} ic={s.ic_only} canonical={s.canonical}: max SIA-index {s.max_index} "
                f"({s.extremal_count} extremal up to relabeling, {s.enumerated} sets, {s.sia_sets} SIA)"
            )
            if timing:
                line += f" in {s.wall_time:.2f}s"
            lines.append(line)
        text = "\n".join(lines) + "\n"
    _write(text, args.output)
    if args.growth_curve:
        _write(emit_growth_curve(summaries), args.growth_curve)
    return EXIT_FOUND


def cmd_family(args, cfg: RunConfig) -> int:
    s = family(args.name, args.n)
    _write(dumps_matrix_set(s, family=args.name), args.output)
    return EXIT_FOUND


def cmd_reduce(args, cfg: RunConfig) -> int:
    text = _read(args.file)
    if args.kind == "3sat":
        s, threshold = encode_3sat(parse_dimacs(text))
        out = dumps_matrix_set(s, threshold=threshold)
    else:
        s = encode_set_cover(parse_set_cover(text))
        out = dumps_matrix_set(s)
    _write(out, args.output)
    return EXIT_FOUND


CHECKS = {
    "chain": check_inclusion_chain,
    "closure": check_scrambling_closure,
    "powers": check_power_bounds,
    "local": check_local_exponents,
}


def cmd_check(args, cfg: RunConfig) -> int:
    failed = False
    for n in args.n:
        tally = CHECKS[args.suite](n, args.samples, cfg.seed)
        ok = tally.violations == 0
        failed |= not ok
        print(f"{args.suite} n={n}: {tally.samples} samples, {tally.violations} violations {'PASS' if ok else 'FAIL'}")
    return EXIT_ERROR if failed else EXIT_FOUND


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="siaindex", description=__doc__.splitlines()[0])
    parser.add_argument(
        "--version", action="version", version=f"siaindex {__version__} (matrix-set schema {SCHEMA_VERSION})"
    )
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(p, choices=("text", "json"), default="text"):
        p.add_argument("--format", choices=choices, default=default)

    p = sub.add_parser("classify", help="class memberships of each matrix in a matrix-set file")
    p.add_argument("file")
    p.add_argument("--zero-tolerance", type=float, default=0.0)
    p.add_argument("--sarymsakov-limit", type=int, default=16)
    fmt(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("index", help="shortest product in a class")
    p.add_argument("file")
    p.add_argument("--class", dest="cls", choices=["pc", "scr", "sar", "sia", "all"], default="sia")
    p.add_argument("--cutoff", type=_positive_int)
    p.add_argument("--zero-tolerance", type=float, default=0.0)
    fmt(p)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("search", help="largest SIA-index over all sets of automata")
    p.add_argument("--n", type=_positive_int, nargs="+", required=True)
    p.add_argument("--m", type=_positive_int, default=2)
    p.add_argument("--ic", action="store_true", help="only initially connected sets")
    p.add_argument("--canonical", action="store_true", help="one set per relabeling class")
    p.add_argument("--workers", type=_positive_int, help="process count (env SIAINDEX_WORKERS)")
    p.add_argument("--cutoff", type=_positive_int)
    p.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET)
    p.add_argument("--examples", type=int, default=3, help="extremal examples to keep")
    p.add_argument("--dump-extremal", metavar="DIR")
    p.add_argument("--growth-curve", metavar="CSV")
    p.add_argument("--no-timing", action="store_true", help="omit wall times (byte-stable output)")
    p.add_argument("-o", "--output")
    fmt(p, ("text", "json", "csv"), "csv")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("family", help="emit a named matrix family")
    p.add_argument("--name", required=True, choices=sorted(FAMILIES))
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("reduce", help="encode a 3-SAT or set-cover instance")
    p.add_argument("--kind", required=True, choices=["3sat", "setcover"])
    p.add_argument("file")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("check", help="seeded randomized property checks")
    p.add_argument("--suite", choices=sorted(CHECKS), required=True)
    p.add_argument("--n", type=_positive_int, nargs="+", required=True)
    p.add_argument("--samples", type=_positive_int, default=10_000)
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = RunConfig(
            subcommand=args.command,
            inputs=[getattr(args, "file", None)] if getattr(args, "file", None) else [],
            cutoff=getattr(args, "cutoff", None),
            workers=getattr(args, "workers", None) or default_workers(),
            output_format=getattr(args, "format", "text"),
            seed=getattr(args, "seed", DEFAULT_SEED),
        )
        return args.func(args, cfg)
    except (MatrixFormatError, InstanceError) as exc:
        print(f"siaindex: input error: {exc}", file=sys.stderr)
    except (PatternError, SizeLimitError, BudgetExceededError, ValueError, OSError) as exc:
        print(f"siaindex: {exc}", file=sys.stderr)
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())

"""
Точка входа: перечисление, классификация, сверка, оракул, канонизация, сравнение баз
"""
import argparse
import asyncio
import logging
import sys
from typing import List, Optional

import config
from classify import DatabaseIncompleteError, classify_all
from database import CheckpointCorruptedError
from equivalence import NotFullDimensionalError, canonical_points
from expected import FAIL, verify_against_published
from geometry import convex_hull, lattice_points
from pipeline import ProvenanceConflictError, enumerate_polytopes, load_run
from seeds import BoundTooSmallError, SeedValidationFailed, oracle_enumerate
from store import (
    LP3File,
    LP3FormatError,
    LP3VersionError,
    diff_db,
    format_record,
    parse_loose,
    write_db,
    write_tables,
)

logger = logging.getLogger(__name__)

# Ошибки, которые означают проваленную проверку, а не баг
VALIDATION_ERRORS = (
    SeedValidationFailed,
    ProvenanceConflictError,
    CheckpointCorruptedError,
    DatabaseIncompleteError,
    BoundTooSmallError,
    LP3FormatError,
    LP3VersionError,
    NotFullDimensionalError,
)


def _at_least(minimum: int):
    def parse(raw: str) -> int:
        try:
            value = int(raw)
        except ValueError:
            raise argparse.ArgumentTypeError(f"expected an integer, got {raw!r}")
        if value < minimum:
            raise argparse.ArgumentTypeError(f"must be >= {minimum}, got {value}")
        return value
    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="poly3", description="Lattice 3-polytopes of width larger than one")
    parser.add_argument("--log-level", default=config.LOG_LEVEL, help="logging level (stderr)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("enumerate", help="run the enumeration and write size_NN.lp3 files")
    p.add_argument("--max-size", type=_at_least(5), default=config.DEFAULT_MAX_SIZE)
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=_at_least(1), default=config.DEFAULT_WORKERS)
    p.add_argument("--resume", action="store_true")
    p.add_argument("--progress-seconds", type=_at_least(1), default=config.PROGRESS_SECONDS)

    p = sub.add_parser("classify", help="emit classification tables as TSV")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--report", required=True)
    p.add_argument("--threads", type=_at_least(1), default=config.DEFAULT_WORKERS)
    p.add_argument("--boxed", action="store_true", help="also run the boxed sweeps")

    p = sub.add_parser("verify", help="compare a run against the published tables")
    p.add_argument("--in", dest="in_dir", required=True)
    p.add_argument("--threads", type=_at_least(1), default=config.DEFAULT_WORKERS)
    p.add_argument("--boxed", action="store_true", help="also verify the boxed sweeps")

    p = sub.add_parser("oracle", help="brute-force enumeration for sizes 5-7")
    p.add_argument("--size", type=int, choices=sorted(config.ORACLE_VOLUME_BOUNDS), required=True)
    p.add_argument("--volume-bound", type=_at_least(1))
    p.add_argument("--out", required=True)
    p.add_argument("--threads", type=_at_least(1), default=config.DEFAULT_WORKERS)

    p = sub.add_parser("canon", help="canonicalize a loose coordinate list")
    p.add_argument("file")

    p = sub.add_parser("diff", help="class differences between two databases")
    p.add_argument("first")
    p.add_argument("second")
    return parser


# ==================== КОМАНДЫ ====================

def cmd_enumerate(args) -> int:
    run = asyncio.run(enumerate_polytopes(
        max_size=args.max_size, out_dir=args.out, workers=args.threads,
        resume=args.resume, progress_seconds=args.progress_seconds,
    ))
    for n, total in run.totals().items():
        print(f"{n}\t{total}")
    return 0


def cmd_classify(args) -> int:
    db = load_run(args.in_dir)
    result = classify_all(db, workers=args.threads, include_boxed=args.boxed)
    for path in write_tables(args.report, result.tables):
        print(path)
    return 0


def cmd_verify(args) -> int:
    db = load_run(args.in_dir)
    if not db:
        logger.error(f"no size_NN.lp3 files in {args.in_dir}")
        return 1
    result = classify_all(db, workers=args.threads, include_boxed=args.boxed)
    sizes = sorted(db)
    rows = verify_against_published(result.cells, sizes)
    for row in rows:
        actual = "" if row.actual is None else row.actual
        print(f"{row.status}\t{row.table}\t{row.key}\t{row.expected}\t{actual}\t{row.note}")
    if result.bruns_exceptions:
        print(f"FAIL\tbruns_check\t{len(result.bruns_exceptions)} exceptions")
        return 1
    return 1 if any(row.status == FAIL for row in rows) else 0


def cmd_oracle(args) -> int:
    vmax = args.volume_bound or config.ORACLE_VOLUME_BOUNDS[args.size]
    forms = oracle_enumerate(args.size, vmax, workers=args.threads)
    write_db(args.out, LP3File(records=[f.points for f in forms],
                               comments=[f" oracle size={args.size} vmax={vmax}"]))
    print(f"{args.size}\t{len(forms)}")
    return 0


def cmd_canon(args) -> int:
    with open(args.file, encoding="ascii") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            points = parse_loose(line, number)
            closed = lattice_points(convex_hull(sorted(set(points))))
            print(format_record(canonical_points(closed)))
    return 0


def cmd_diff(args) -> int:
    only_first, only_second = diff_db(args.first, args.second)
    for record in only_first:
        print(f"< {format_record(record)}")
    for record in only_second:
        print(f"> {format_record(record)}")
    return 1 if only_first or only_second else 0


COMMANDS = {
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "oracle": cmd_oracle,
    "canon": cmd_canon,
    "diff": cmd_diff,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Код возврата: 0 успех, 1 проваленная проверка, 2 ошибка использования"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)

    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )
    try:
        return COMMANDS[args.command](args)
    except VALIDATION_ERRORS as e:
        logger.error(f"❌ {e}")
        return 1
    except FileNotFoundError as e:
        logger.error(f"❌ {e.filename or e}: file not found")
        return 1


if __name__ == "__main__":
    sys.exit(main())

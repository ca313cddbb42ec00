"""
Файлы баз многогранников (LP3) и TSV-отчёты
"""
import logging
import os
import tempfile
from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from equivalence import canonical_points
from geometry import Point

logger = logging.getLogger(__name__)

LP3_HEADER = "#LP3 1"

Configuration = Tuple[Point, ...]


class LP3FormatError(ValueError):
    """Битая запись в файле LP3"""


class LP3VersionError(ValueError):
    """Неизвестный заголовок файла LP3"""


@dataclass
class LP3File:
    records: List[Configuration] = field(default_factory=list)
    # Строки комментариев без ведущего "#"
    comments: List[str] = field(default_factory=list)


@dataclass
class Table:
    name: str
    columns: List[str]
    rows: List[List] = field(default_factory=list)


def record_key(points: Sequence[Point]) -> Tuple[int, ...]:
    """Запись как кортеж целых: n, x1, y1, z1, ..."""
    return (len(points), *(v for p in points for v in p))


def format_record(points: Sequence[Point]) -> str:
    return " ".join(str(v) for v in record_key(points))


def parse_record(line: str, number: int = 0) -> Configuration:
    """Разобрать строку записи; ошибка с номером строки"""
    try:
        values = [int(v) for v in line.split(" ")]
    except ValueError:
        raise LP3FormatError(f"line {number}: non-integer token in {line!r}")
    if not values or len(values) != 1 + 3 * values[0]:
        raise LP3FormatError(f"line {number}: expected n followed by 3n integers")
    coords = values[1:]
    return tuple(tuple(coords[i:i + 3]) for i in range(0, len(coords), 3))  # type: ignore[return-value]


def parse_loose(line: str, number: int) -> Configuration:
    """Любой список целых через пробелы: с префиксом n или без"""
    try:
        values = [int(v) for v in line.split()]
    except ValueError:
        raise LP3FormatError(f"line {number}: non-integer token in {line!r}")
    if values and len(values) == 1 + 3 * values[0]:
        values = values[1:]
    if not values or len(values) % 3:
        raise LP3FormatError(f"line {number}: coordinate count is not a multiple of 3")
    return tuple(tuple(values[i:i + 3]) for i in range(0, len(values), 3))  # type: ignore[return-value]


def render_db(db: LP3File) -> str:
    lines = [LP3_HEADER]
    lines += [f"#{comment}" for comment in db.comments]
    lines += [format_record(r) for r in sorted(db.records, key=record_key)]
    return "\n".join(lines) + "\n"


def write_db(path: str, db: LP3File) -> None:
    """Атомарная запись через временный файл и os.replace"""
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".lp3-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="ascii", newline="\n") as handle:
            handle.write(render_db(db))
        os.replace(tmp, path)
    except Exception:
        if os.path.exists(tmp):
            os.remove(tmp)
        raise


def read_db(path: str, strict: bool = True) -> LP3File:
    """Чтение LP3. strict: проверка канонических форм и порядка; иначе ремонт с предупреждением"""
    with open(path, encoding="ascii", newline="") as handle:
        text = handle.read()
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines or lines[0] != LP3_HEADER:
        if strict:
            raise LP3VersionError(f"{path}: expected header {LP3_HEADER!r}")
        logger.warning(f"{path}: missing LP3 header, ingesting as a loose coordinate list")
        body = list(enumerate(lines, start=1))
    else:
        body = list(enumerate(lines[1:], start=2))

    db = LP3File()
    previous = None
    repaired = 0
    seen = set()
    for number, line in body:
        if line.startswith("#"):
            db.comments.append(line[1:])
            continue
        if not strict:
            if not line.strip():
                continue
            raw = parse_loose(line, number)
            points = canonical_points(raw)
            if points != raw:
                repaired += 1
            if points not in seen:
                seen.add(points)
                db.records.append(points)
            continue

        points = parse_record(line, number)
        if canonical_points(points) != points:
            raise LP3FormatError(f"{path}:{number}: record is not in canonical form")
        key = record_key(points)
        if previous is not None and key <= previous:
            raise LP3FormatError(f"{path}:{number}: records are not strictly sorted")
        previous = key
        db.records.append(points)

    if not strict:
        db.records.sort(key=record_key)
        if repaired:
            logger.warning(f"{path}: re-canonicalized {repaired} records on ingest")
    return db


def ingest(path: str) -> LP3File:
    """Нестрогое чтение внешнего списка"""
    return read_db(path, strict=False)


def diff_db(first: str, second: str) -> Tuple[List[Configuration], List[Configuration]]:
    """Классы только в первом и только во втором файле"""
    a = set(ingest(first).records)
    b = set(ingest(second).records)
    return sorted(a - b, key=record_key), sorted(b - a, key=record_key)


# ==================== TSV ====================

def format_tsv(table: Table) -> str:
    lines = [table.name, "\t".join(table.columns)]
    lines += ["\t".join(str(v) for v in row) for row in table.rows]
    return "\n".join(lines) + "\n"


def write_tsv(path: str, table: Table) -> None:
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(format_tsv(table))


def write_tables(directory: str, tables: Iterable[Table]) -> List[str]:
    """Каждая таблица в свой файл <name>.tsv"""
    paths = []
    for table in tables:
        path = os.path.join(directory, f"{table.name}.tsv")
        write_tsv(path, table)
        paths.append(path)
    return paths

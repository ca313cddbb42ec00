"""
Инварианты классов и сводные таблицы классификации
"""
import itertools
import logging
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace
from typing import Dict, List, Optional, Sequence, Set, Tuple

from boxed import boxed_all, boxed_enumerate_fulledge, boxed_enumerate_missingedge, boxed_quasiminimal
from config import MAX_BOXED_SIZE, MAX_DPS_SIZE, MIN_PIPELINE_SIZE, max_volume
from equivalence import AffineUnimodularMap, canonical_points
from expected import Cells
from geometry import (
    Point,
    affine_dimension,
    convex_hull,
    count_lattice_points,
    interior_lattice_points,
    lattice_points,
    scale,
    tetra_det,
)
from spiked import spiked_generate
from store import Table
from width import essential_vertices, width

logger = logging.getLogger(__name__)

Configuration = Tuple[Point, ...]


class DatabaseIncompleteError(ValueError):
    """Для проверки максимальности нужен следующий размер базы"""


@dataclass(frozen=True)
class ClassificationRecord:
    points: Configuration
    size: int
    vertex_count: int
    interior_count: int
    width: int
    normalized_volume: int
    sublattice_index: int
    is_canonical: bool
    is_terminal: bool
    is_normal: bool
    is_dps: bool
    is_quasi_minimal: bool
    is_minimal: bool
    is_clean: bool
    # Определено только для dps и известного следующего размера
    is_dps_maximal: Optional[bool] = None


# ==================== ИНВАРИАНТЫ ====================

def sublattice_index(points: Sequence[Point]) -> int:
    """НОД определителей всех четвёрок точек"""
    g = 0
    for quad in itertools.combinations(points, 4):
        g = math.gcd(g, abs(tetra_det(*quad)))
        if g == 1:
            return 1
    if g == 0:
        raise ValueError("sublattice index needs a full-dimensional configuration")
    return g


def pair_sums(points: Sequence[Point]) -> Set[Point]:
    return {tuple(a[k] + b[k] for k in range(3)) for a, b in itertools.combinations_with_replacement(points, 2)}  # type: ignore[misc]


def is_normal(points: Sequence[Point]) -> bool:
    """#(2P ∩ Z^3) == #(A + A)"""
    pts = sorted(set(tuple(p) for p in points))
    doubled = convex_hull(sorted(scale(2, v) for v in convex_hull(pts).vertex_points))
    sums = pair_sums(pts)
    return count_lattice_points(doubled, stop_after=len(sums)) == len(sums)


def is_dps(points: Sequence[Point]) -> bool:
    """Все попарные суммы a + b (a <= b) различны"""
    n = len(set(points))
    return len(pair_sums(sorted(set(points)))) == n * (n + 1) // 2


def dps_children(classes: Sequence[Configuration]) -> Set[Configuration]:
    """Канонические удаления вершин у dps-классов"""
    children = set()
    for parent in classes:
        if not is_dps(parent):
            continue
        for v in convex_hull(parent).vertex_points:
            rest = tuple(p for p in parent if p != v)
            if len(rest) >= 4 and affine_dimension(rest) == 3:
                children.add(canonical_points(rest))
    return children


def is_dps_maximal(points: Sequence[Point], db: Dict[int, Sequence[Configuration]],
                   children: Optional[Set[Configuration]] = None) -> bool:
    """dps-класс не продолжается до dps-класса на единицу больше"""
    pts = tuple(sorted(set(tuple(p) for p in points)))
    if not is_dps(pts):
        raise ValueError("maximality is defined for dps configurations only")
    if len(pts) == MAX_DPS_SIZE:
        return True
    if len(pts) + 1 not in db:
        raise DatabaseIncompleteError(f"DatabaseIncomplete: size {len(pts) + 1} is needed to decide maximality")
    if children is None:
        children = dps_children(db[len(pts) + 1])
    return canonical_points(pts) not in children


def classification_record(points: Sequence[Point]) -> ClassificationRecord:
    """Все инварианты одного класса"""
    pts = tuple(sorted(set(tuple(p) for p in points)))
    hull = convex_hull(pts)
    interior = len(interior_lattice_points(hull))
    vertices = len(hull.vertices)
    report = essential_vertices(pts)
    return ClassificationRecord(
        points=pts,
        size=len(pts),
        vertex_count=vertices,
        interior_count=interior,
        width=width(pts).width,
        normalized_volume=hull.normalized_volume,
        sublattice_index=sublattice_index(pts),
        is_canonical=interior == 1,
        is_terminal=interior == 1 and len(pts) == vertices + 1,
        is_normal=is_normal(pts),
        is_dps=is_dps(pts),
        is_quasi_minimal=len(report.non_essential) <= 1,
        is_minimal=not report.non_essential,
        is_clean=len(pts) - interior == vertices,
    )


# ==================== ТЕТРАЭДРЫ T_n ====================

def make_Tn(n: int) -> Configuration:
    """Чистый тетраэдр размера n, ширины 2 и объёма 12(n-4)+8"""
    if n < 5:
        raise ValueError(f"T_n is defined for n >= 5, got {n}")
    vertices = [(-1, -1, 1), (-1, 1, -2), (0, 1, 2 * n - 9), (2, -1, 0)]
    hull = convex_hull(vertices)
    pts = tuple(lattice_points(hull))
    if len(pts) != n or hull.normalized_volume != max_volume(n):
        raise RuntimeError(f"T_{n}: size {len(pts)}, volume {hull.normalized_volume}")
    if len(pts) - len(interior_lattice_points(hull)) != 4:
        raise RuntimeError(f"T_{n} is not clean")
    return pts


TN_ALTERNATIVE_MAP = AffineUnimodularMap(((0, 3, -1), (-2, -2, 1), (3, 2, -1)), (-1, 1, -2))


def make_Tn_alternative(n: int) -> Tuple[Configuration, AffineUnimodularMap]:
    """conv{0, e1, e2, (2k+1, 4k+3, 12k+8)}, k = n-4, и отображение на T_n"""
    k = n - 4
    vertices = [(0, 0, 0), (1, 0, 0), (0, 1, 0), (2 * k + 1, 4 * k + 3, 12 * k + 8)]
    pts = tuple(lattice_points(convex_hull(vertices)))
    if tuple(sorted(TN_ALTERNATIVE_MAP.apply(pts))) != make_Tn(n):
        raise RuntimeError(f"alternative T_{n} does not map onto T_{n}")
    return pts, TN_ALTERNATIVE_MAP


# ==================== СВОДКА ====================

@dataclass
class Classification:
    records: Dict[int, List[ClassificationRecord]] = field(default_factory=dict)
    tables: List[Table] = field(default_factory=list)
    cells: Dict[str, Cells] = field(default_factory=dict)
    bruns_exceptions: List[Configuration] = field(default_factory=list)


def compute_records(classes: Sequence[Configuration], workers: int = 1) -> List[ClassificationRecord]:
    if workers > 1 and len(classes) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(classification_record, classes, chunksize=32))
    return [classification_record(points) for points in classes]


def bruns_exceptions(records: Sequence[ClassificationRecord]) -> List[Configuration]:
    """Нормальные классы без нормального трёхмерного удаления вершины"""
    found = []
    for record in records:
        if not record.is_normal:
            continue
        ok = False
        for v in convex_hull(record.points).vertex_points:
            rest = tuple(p for p in record.points if p != v)
            if len(rest) >= 4 and affine_dimension(rest) == 3 and is_normal(rest):
                ok = True
                break
        if not ok:
            found.append(record.points)
    return found


def quasi_minimal_census(db: Dict[int, Sequence[Configuration]],
                         records: Dict[int, List[ClassificationRecord]]) -> Tuple[Table, Dict[str, Cells]]:
    """Квазиминимальные классы по размеру и числу вершин: шипастые, коробочные, все"""
    cells: Dict[str, Cells] = {"quasi_minimal": {}, "quasi_minimal_spiked": {}, "quasi_minimal_boxed": {}}
    table = Table("quasi_minimal_census", ["size", "vertices", "spiked", "boxed", "all"])
    for size in sorted(db):
        everything = Counter(r.vertex_count for r in records[size] if r.is_quasi_minimal)
        spiked: Counter = Counter()
        boxed: Counter = Counter()
        if size >= MIN_PIPELINE_SIZE:
            spiked = Counter(len(convex_hull(f.points).vertices) for f in spiked_generate(size))
            if size <= MAX_BOXED_SIZE:
                boxed = Counter(len(convex_hull(b.form.points).vertices) for b in boxed_quasiminimal(size))
        for v in sorted(set(everything) | set(spiked) | set(boxed)):
            table.rows.append([size, v, spiked[v], boxed[v], everything[v]])
            cells["quasi_minimal"][(size, v)] = everything[v]
            if size >= MIN_PIPELINE_SIZE:
                cells["quasi_minimal_spiked"][(size, v)] = spiked[v]
                cells["quasi_minimal_boxed"][(size, v)] = boxed[v]
    return table, cells


def boxed_tables() -> Tuple[List[Table], Dict[str, Cells]]:
    """Таблицы трёх переборов коробочных многогранников"""
    sweeps = {
        "fulledge": boxed_enumerate_fulledge(),
        "missingedge": boxed_enumerate_missingedge(),
        "irredundant": {n: list(items) for n, items in boxed_all().items()},
    }
    cells: Dict[str, Cells] = {"boxed_total": {}}
    tables = []
    for name, grouped in sweeps.items():
        table = Table(f"boxed_{name}", ["size", "vertices", "count"])
        by_vertices: Cells = {}
        for size in sorted(grouped):
            counts = Counter(len(convex_hull(item.form.points).vertices) for item in grouped[size])
            for v in sorted(counts):
                table.rows.append([size, v, counts[v]])
                by_vertices[(size, v)] = counts[v]
            cells["boxed_total"][(name, size)] = len(grouped[size])
        cells[f"boxed_{name}"] = by_vertices
        tables.append(table)
    return tables, cells


def classify_all(db: Dict[int, Sequence[Configuration]], workers: int = 1,
                 attribution: bool = True, include_boxed: bool = False) -> Classification:
    """Записи по всем классам и все таблицы"""
    result = Classification()
    for size in sorted(db):
        result.records[size] = compute_records(db[size], workers)
        logger.info(f"classified size {size}: {len(result.records[size])} classes")

    # Максимальность dps
    for size, records in list(result.records.items()):
        if size != MAX_DPS_SIZE and size + 1 not in db:
            continue
        children = dps_children(db[size + 1]) if size + 1 in db else set()
        result.records[size] = [
            replace(r, is_dps_maximal=is_dps_maximal(r.points, db, children)) if r.is_dps else r
            for r in records
        ]

    cells = result.cells
    for name in ("census", "census_total", "interior", "canonical", "terminal", "width",
                 "index", "normal", "dps", "dps_maximal", "volume_max", "volume_min"):
        cells[name] = {}

    census = Table("census", ["size", "vertices", "count"])
    canon = Table("canonical_terminal", ["size", "canonical", "terminal", "clean"])
    widths = Table("width", ["size", "width", "count"])
    grid = Table("interior_vertices", ["size", "interior", "vertices", "count"])
    index = Table("index", ["size", "index", "count"])
    normal = Table("normal", ["size", "normal"])
    dps = Table("dps", ["size", "vertices", "dps", "maximal"])
    extremes = Table("volume_extremes", ["size", "min", "min_count", "max", "max_count", "max_is_Tn"])
    histogram = Table("volume_histogram", ["size", "volume", "count"])
    listing = Table("dps_size8", ["points", "vertices", "interior", "volume", "width"])

    for size in sorted(result.records):
        records = result.records[size]
        by_vertices = Counter(r.vertex_count for r in records)
        for v in sorted(by_vertices):
            census.rows.append([size, v, by_vertices[v]])
            cells["census"][(size, v)] = by_vertices[v]
        cells["census_total"][size] = len(records)

        n_canonical = sum(r.is_canonical for r in records)
        n_terminal = sum(r.is_terminal for r in records)
        canon.rows.append([size, n_canonical, n_terminal, sum(r.is_clean for r in records)])
        cells["canonical"][size] = n_canonical
        cells["terminal"][size] = n_terminal

        for w, count in sorted(Counter(r.width for r in records).items()):
            widths.rows.append([size, w, count])
            cells["width"][(size, w)] = count
        for i, count in sorted(Counter(r.interior_count for r in records).items()):
            cells["interior"][(size, i)] = count
        for (i, v), count in sorted(Counter((r.interior_count, r.vertex_count) for r in records).items()):
            grid.rows.append([size, i, v, count])
        for idx, count in sorted(Counter(r.sublattice_index for r in records).items()):
            index.rows.append([size, idx, count])
            cells["index"][(size, idx)] = count

        n_normal = sum(r.is_normal for r in records)
        normal.rows.append([size, n_normal])
        cells["normal"][size] = n_normal

        dps_records = [r for r in records if r.is_dps]
        for v, count in sorted(Counter(r.vertex_count for r in dps_records).items()):
            decided = [r for r in dps_records if r.vertex_count == v and r.is_dps_maximal is not None]
            maximal = sum(bool(r.is_dps_maximal) for r in decided)
            dps.rows.append([size, v, count, maximal if decided else ""])
            cells["dps"][(size, v)] = count
            if decided:
                cells["dps_maximal"][(size, v)] = maximal
        if size == MAX_DPS_SIZE:
            for r in dps_records:
                listing.rows.append([" ".join(f"{p[0]},{p[1]},{p[2]}" for p in r.points),
                                     r.vertex_count, r.interior_count, r.normalized_volume, r.width])

        volumes = Counter(r.normalized_volume for r in records)
        for vol, count in sorted(volumes.items()):
            histogram.rows.append([size, vol, count])
        lo, hi = min(volumes), max(volumes)
        largest = [r.points for r in records if r.normalized_volume == hi]
        is_tn = len(largest) == 1 and largest[0] == canonical_points(make_Tn(size))
        extremes.rows.append([size, lo, volumes[lo], hi, volumes[hi], is_tn])
        cells["volume_min"][size] = lo
        cells["volume_max"][size] = hi

    result.bruns_exceptions = bruns_exceptions([r for records in result.records.values() for r in records])
    bruns = Table("bruns_check", ["size", "points"])
    for points in result.bruns_exceptions:
        bruns.rows.append([len(points), " ".join(f"{p[0]},{p[1]},{p[2]}" for p in points)])
    if result.bruns_exceptions:
        logger.warning(f"bruns check: {len(result.bruns_exceptions)} normal classes without a normal removal")

    result.tables = [census, canon, widths, grid, index, normal, dps, listing, extremes, histogram, bruns]

    if attribution:
        table, qm_cells = quasi_minimal_census(db, result.records)
        result.tables.insert(0, table)
        cells.update(qm_cells)
    if include_boxed:
        tables, b_cells = boxed_tables()
        result.tables.extend(tables)
        cells.update(b_cells)
    return result

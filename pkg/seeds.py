"""
Затравочные списки размеров 5 и 6: независимый переборный оракул с ограничением объёма
"""
import hashlib
import itertools
import logging
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Set, Tuple

import numpy as np

from config import (
    EXCEPTIONAL_SIZE6,
    ORACLE_VOLUME_BOUNDS,
    SEED_DIR,
    SEED_EXPECTED_COUNTS,
    max_volume,
)
from equivalence import CanonicalForm, canonical_form, canonical_points
from geometry import Matrix, Point, convex_hull, count_lattice_points, det3, facet_area
from store import LP3File, format_record, read_db, record_key, write_db
from width import width_at_most_one

logger = logging.getLogger(__name__)

Configuration = Tuple[Point, ...]


class BoundTooSmallError(ValueError):
    """Объём ниже теоретического максимума для размера"""


class SeedValidationFailed(RuntimeError):
    """Затравочный список не совпал с ожидаемыми числами"""


@dataclass
class SeedDatabase:
    classes: Dict[int, List[CanonicalForm]] = field(default_factory=dict)
    # Параметры оракула и хеш прогона по размерам
    provenance: Dict[int, str] = field(default_factory=dict)

    def points(self, size: int) -> List[Configuration]:
        return [form.points for form in self.classes.get(size, [])]


# ==================== ТЕТРАЭДРЫ ====================

def hnf_matrices(vmax: int) -> Iterator[Matrix]:
    """Верхнетреугольные матрицы в форме Эрмита с определителем <= vmax"""
    for a in range(1, vmax + 1):
        for d in range(1, vmax // a + 1):
            for f in range(1, vmax // (a * d) + 1):
                for b in range(d):
                    for c in range(f):
                        for e in range(f):
                            yield ((a, b, c), (0, d, e), (0, 0, f))


def empty_tetrahedra(vmax: int) -> List[Configuration]:
    """Классы пустых тетраэдров с объёмом <= vmax"""
    classes: Set[Configuration] = set()
    for h in hnf_matrices(vmax):
        tetra = ((0, 0, 0), (h[0][0], 0, 0), (h[0][1], h[1][1], 0), (h[0][2], h[1][2], h[2][2]))
        if count_lattice_points(convex_hull(tetra), stop_after=4) != 4:
            continue
        classes.add(canonical_points(tetra))
    logger.debug(f"empty tetrahedra up to volume {vmax}: {len(classes)} classes")
    return sorted(classes)


# ==================== РАСШИРЕНИЕ ====================

def _region_box(facets: Sequence[Tuple[Point, int]], slack: Sequence[int]) -> Optional[Tuple[Point, Point]]:
    """Целочисленная коробка многогранника {w : a_j w + d_j >= -slack_j}"""
    planes = [(a, -s - d) for (a, d), s in zip(facets, slack)]
    corners = []
    for (a1, r1), (a2, r2), (a3, r3) in itertools.combinations(planes, 3):
        m = (a1, a2, a3)
        det = det3(m)
        if det == 0:
            continue
        # Правило Крамера в дробях
        w = []
        for k in range(3):
            cols = [list(row) for row in m]
            for row, r in zip(cols, (r1, r2, r3)):
                row[k] = r
            w.append(Fraction(det3(cols), det))
        if all(sum(c * x for c, x in zip(a, w)) >= r for a, r in planes):
            corners.append(w)
    if not corners:
        return None
    lo = tuple(math.floor(min(c[k] for c in corners)) for k in range(3))
    hi = tuple(math.ceil(max(c[k] for c in corners)) for k in range(3))
    return lo, hi  # type: ignore[return-value]


def _extend(args: Tuple[Configuration, int, int, bool]) -> List[Configuration]:
    """Решёточно-замкнутые расширения на одну точку с объёмом <= limit"""
    config, limit, target, final = args
    hull = convex_hull(config)
    budget = limit - hull.normalized_volume
    if budget < 1:
        return []
    facets = [(f.linear, f.d) for f in hull.facets]
    areas = [facet_area(hull, i) for i in range(len(facets))]
    box = _region_box(facets, [budget // area for area in areas])
    if box is None:
        return []
    lo, hi = box

    grid = np.stack(np.meshgrid(
        *(np.arange(lo[k], hi[k] + 1, dtype=np.int64) for k in range(3)), indexing="ij"
    ), axis=-1).reshape(-1, 3)
    coeffs = np.array([a for a, _ in facets], dtype=np.int64)
    offsets = np.array([d for _, d in facets], dtype=np.int64)
    values = grid @ coeffs.T + offsets
    # Новый объём = старый + пирамиды над видимыми гранями
    added = (np.clip(-values, 0, None) * np.array(areas, dtype=np.int64)).sum(axis=1)
    mask = (added >= 1) & (added <= budget)

    found = []
    for w in grid[mask].tolist():
        candidate = tuple(sorted(config + (tuple(w),)))
        if count_lattice_points(convex_hull(candidate), stop_after=target) != target:
            continue
        if final and width_at_most_one(candidate)[0]:
            continue
        found.append(canonical_points(candidate))
    return sorted(set(found))


def _grow(level: List[Configuration], limit: int, target: int, final: bool,
          workers: int) -> List[Configuration]:
    jobs = [(config, limit, target, final) for config in level]
    result: Set[Configuration] = set()
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            for found in pool.map(_extend, jobs, chunksize=8):
                result.update(found)
    else:
        for job in jobs:
            result.update(_extend(job))
    return sorted(result, key=record_key)


def oracle_enumerate(n: int, vmax: int, workers: int = 1) -> List[CanonicalForm]:
    """Все классы размера n и ширины > 1 с объёмом <= vmax"""
    if n not in ORACLE_VOLUME_BOUNDS:
        raise ValueError(f"oracle supports sizes {sorted(ORACLE_VOLUME_BOUNDS)}, got {n}")
    if vmax < max_volume(n):
        raise BoundTooSmallError(f"BoundTooSmall: size {n} needs vmax >= {max_volume(n)}, got {vmax}")

    # Каждая добавленная точка увеличивает объём хотя бы на 1
    level = empty_tetrahedra(vmax - (n - 4))
    logger.info(f"oracle size {n}: {len(level)} empty tetrahedra")
    for size in range(5, n + 1):
        limit = vmax - (n - size)
        level = _grow(level, limit, size, size == n, workers)
        logger.info(f"oracle size {n}: level {size} has {len(level)} configurations")
    return [canonical_form(points)[0] for points in level]


# ==================== БАЗА ЗАТРАВОК ====================

def seed_path(size: int, seed_dir: str = SEED_DIR) -> str:
    return os.path.join(seed_dir, f"size_{size:02d}.lp3")


def run_hash(records: Sequence[Configuration]) -> str:
    body = "\n".join(format_record(r) for r in sorted(records, key=record_key))
    return hashlib.blake2b(body.encode("ascii"), digest_size=8).hexdigest()


def _generate(size: int, path: str, workers: int) -> LP3File:
    vmax = ORACLE_VOLUME_BOUNDS[size]
    logger.warning(f"seed cache {path} missing, running oracle for size {size} (vmax={vmax})")
    records = [form.points for form in oracle_enumerate(size, vmax, workers)]
    db = LP3File(
        records=sorted(records, key=record_key),
        comments=[f" oracle size={size} vmax={vmax} run_hash={run_hash(records)}"],
    )
    write_db(path, db)
    return db


def validate_seeds(seeds: SeedDatabase) -> None:
    """Числа 9/76 и исключительный многогранник среди размера 6"""
    for size, expected in SEED_EXPECTED_COUNTS.items():
        got = len(seeds.classes.get(size, []))
        if got != expected:
            raise SeedValidationFailed(f"SeedValidationFailed: size {size} has {got} classes, expected {expected}")
    if canonical_points(EXCEPTIONAL_SIZE6) not in set(seeds.points(6)):
        raise SeedValidationFailed("SeedValidationFailed: exceptional size-6 polytope is missing")


def seed_database(seed_dir: str = SEED_DIR, workers: int = 1) -> SeedDatabase:
    """Загрузить кэш затравок (или построить оракулом) и проверить"""
    seeds = SeedDatabase()
    for size in sorted(SEED_EXPECTED_COUNTS):
        path = seed_path(size, seed_dir)
        db = read_db(path) if os.path.exists(path) else _generate(size, path, workers)
        seeds.classes[size] = [canonical_form(points)[0] for points in db.records]
        seeds.provenance[size] = ";".join(c.strip() for c in db.comments) or f"run_hash={run_hash(db.records)}"
    validate_seeds(seeds)
    logger.info(f"seeds loaded: {', '.join(f'{s}: {len(c)}' for s, c in sorted(seeds.classes.items()))}")
    return seeds

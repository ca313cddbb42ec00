"""
Шипастые квазиминимальные многогранники
Явные семейства M, Q1..Q9, Q10a, Q10b, проверка и дедупликация.
"""
import logging
from dataclasses import dataclass, replace
from typing import Dict, Iterator, List, Optional, Tuple

from config import MIN_PIPELINE_SIZE
from equivalence import CanonicalForm, canonical_form
from geometry import Point, convex_hull, count_lattice_points, lattice_points
from width import essential_vertices, width_at_most_one

logger = logging.getLogger(__name__)


class UseSeedListsError(ValueError):
    """Размеры 5 и 6 берутся из затравочных списков"""


# Семейства: вершины как функция (k, a, b), допустимые параметры,
# формула размера и индекс несущественной (выделенной) вершины.
# Для M выделенной вершины нет: многогранник минимальный.
SPIKED_FAMILIES: Dict[str, Dict] = {
    "M": {
        "vertices": lambda k, a, b: [(1, 0, 0), (0, 1, 0), (-1, 0, -a), (0, -1, 2 * k + b)],
        "params": lambda k: [(0, 0), (0, 1), (1, 1)],
        "size": lambda k, a, b: k + 5,
        "marked": None,
    },
    "Q1": {
        "vertices": lambda k, a, b: [(1, -1, -1), (-1, 1, 1), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(0, 0)],
        "size": lambda k, a, b: k + 4,
        "marked": 3,
    },
    "Q2": {
        "vertices": lambda k, a, b: [(1, -1, 0), (-1, 1, -1), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(0, 0)],
        "size": lambda k, a, b: k + 5,
        "marked": 3,
    },
    "Q3": {
        "vertices": lambda k, a, b: [(1, -1, 0), (-1, 1, 0), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(0, 0)],
        "size": lambda k, a, b: k + 6,
        "marked": 3,
    },
    "Q4": {
        "vertices": lambda k, a, b: [(2, -1, -1), (-1, 2, 1), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(0, 0)],
        "size": lambda k, a, b: k + 4,
        "marked": 3,
    },
    "Q5": {
        "vertices": lambda k, a, b: [(1, -1, -1), (0, 1, a), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(-1, 0), (0, 0)],
        "size": lambda k, a, b: k + 4,
        "marked": 3,
    },
    "Q6": {
        "vertices": lambda k, a, b: [(1, 0, 0), (0, 1, a), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(-2, 0), (-1, 0), (0, 0)],
        "size": lambda k, a, b: k + 4,
        "marked": 3,
    },
    "Q7": {
        "vertices": lambda k, a, b: [(2, 1, 0), (-1, 1, a), (-1, -1, 0), (0, 0, k)],
        "params": lambda k: [(-5, 0), (-1, 0)],
        "size": lambda k, a, b: k + 4,
        "marked": 3,
    },
    "Q8": {
        "vertices": lambda k, a, b: [(1, 0, 0), (0, 1, 0), (-1, 0, a), (0, -1, b), (0, 0, k)],
        "params": lambda k: [(a, b) for a in (-1, 0) for b in range(a, 2 * k)],
        "size": lambda k, a, b: k + 5,
        "marked": 4,
    },
    "Q9": {
        "vertices": lambda k, a, b: [(1, 0, 0), (0, 1, 0), (-1, -1, a), (1, 1, 2 * k - a + b)],
        "params": lambda k: [(a, b) for a in (-2, -1, 0) for b in (0, 1)],
        "size": lambda k, a, b: k + 5,
        "marked": 3,
    },
    "Q10a": {
        "vertices": lambda k, a, b: [(1, 0, a), (0, 2, b), (-1, 0, 0), (0, 0, k)],
        "params": lambda k: [(a, b) for a in (-1, 0) for b in (-1, 0)],
        "size": lambda k, a, b: (3 * k + b) // 2 + 5,
        "marked": 3,
    },
    "Q10b": {
        "vertices": lambda k, a, b: [(1, 0, 0), (0, 2, a), (-1, 0, 0), (0, 1, k)],
        "params": lambda k: [(-1, 0), (0, 0)],
        "size": lambda k, a, b: k + 5,
        "marked": 3,
    },
}

REJECT_SIZE = "size"
REJECT_WIDTH = "width"
REJECT_NOT_QUASI_MINIMAL = "not_quasi_minimal"
REJECT_LABEL = "label"


@dataclass(frozen=True)
class SpikedFamilyInstance:
    family: str
    k: int
    a: int
    b: int
    vertices: Tuple[Point, ...]
    marked_vertex: Optional[Point]
    size: int
    points: Tuple[Point, ...] = ()
    rejected: Optional[str] = None
    vertex_count: int = 0


def _sweep(n: int) -> Iterator[SpikedFamilyInstance]:
    """Сырой перебор параметров, у которых формула размера может дать n"""
    for family, spec in SPIKED_FAMILIES.items():
        # k не больше n: все формулы размера растут не медленнее k
        for k in range(2, n + 1):
            for a, b in spec["params"](k):
                size = spec["size"](k, a, b)
                # k = 2 всегда проходит через фильтры, чтобы причина отказа была видна
                if size != n and k != 2:
                    continue
                vertices = tuple(spec["vertices"](k, a, b))
                marked = vertices[spec["marked"]] if spec["marked"] is not None else None
                yield SpikedFamilyInstance(family, k, a, b, vertices, marked, size)


def _validate(instance: SpikedFamilyInstance, n: int) -> SpikedFamilyInstance:
    """Пересчёт точек, ширина, квазиминимальность, метка семейства"""
    hull = convex_hull(sorted(set(instance.vertices)))
    if hull.dimension < 3 or count_lattice_points(hull, stop_after=n) != n:
        return replace(instance, rejected=REJECT_SIZE)
    points = tuple(lattice_points(hull))
    instance = replace(instance, points=points, vertex_count=len(hull.vertices))
    if width_at_most_one(points)[0]:
        return replace(instance, rejected=REJECT_WIDTH)

    report = essential_vertices(points)
    if len(report.non_essential) > 1:
        return replace(instance, rejected=REJECT_NOT_QUASI_MINIMAL)
    if instance.marked_vertex is None:
        labelled = not report.non_essential
    else:
        labelled = report.non_essential == (instance.marked_vertex,)
    if not labelled:
        return replace(instance, rejected=REJECT_LABEL)
    return instance


def spiked_family_instances(n: int) -> List[SpikedFamilyInstance]:
    """Все экземпляры семейств для размера n с причиной отбраковки"""
    result = []
    for raw in _sweep(n):
        checked = _validate(raw, n)
        if checked.rejected:
            logger.debug(
                f"spiked {checked.family} k={checked.k} a={checked.a} b={checked.b}: rejected by {checked.rejected}"
            )
        result.append(checked)
    return result


def spiked_generate(n: int, keep_unlabeled: bool = False) -> List[CanonicalForm]:
    """Классы шипастых квазиминимальных многогранников размера n"""
    if n < MIN_PIPELINE_SIZE:
        raise UseSeedListsError(f"UseSeedLists: spiked generation starts at size {MIN_PIPELINE_SIZE}, got {n}")

    accepted = {REJECT_LABEL, None} if keep_unlabeled else {None}
    classes: Dict[Tuple[Point, ...], CanonicalForm] = {}
    for instance in spiked_family_instances(n):
        if instance.rejected not in accepted:
            continue
        form = canonical_form(instance.points)[0]
        classes.setdefault(form.points, form)
    logger.info(f"spiked size {n}: {len(classes)} classes")
    return [classes[key] for key in sorted(classes)]


def spiked_census(n: int) -> Dict[int, int]:
    """Число шипастых классов по числу вершин"""
    counts: Dict[int, int] = {}
    for form in spiked_generate(n):
        v = len(convex_hull(form.points).vertices)
        counts[v] = counts.get(v, 0) + 1
    return counts


"""
Решёточная ширина и существенные вершины
"""
import itertools
import logging
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from geometry import (
    Functional,
    Point,
    adjugate,
    affine_dimension,
    content,
    convex_hull,
    cross,
    det3,
    from_columns,
    hnf,
    primitive,
    sub,
    vec_mat,
)

logger = logging.getLogger(__name__)


class NotWideEnoughError(ValueError):
    """Ширина конфигурации не больше единицы"""


@dataclass(frozen=True)
class WidthResult:
    width: int
    witness: Functional
    degenerate: bool = False


@dataclass(frozen=True)
class VertexVerdict:
    vertex: Point
    essential: bool
    # "dimension_drop", "width" или None для несущественной вершины
    reason: Optional[str] = None
    witness: Optional[Functional] = None


@dataclass(frozen=True)
class EssentialVertexReport:
    verdicts: Tuple[VertexVerdict, ...]

    @property
    def vertices(self) -> Tuple[Point, ...]:
        return tuple(v.vertex for v in self.verdicts)

    @property
    def essential(self) -> Tuple[Point, ...]:
        return tuple(v.vertex for v in self.verdicts if v.essential)

    @property
    def non_essential(self) -> Tuple[Point, ...]:
        return tuple(v.vertex for v in self.verdicts if not v.essential)


def _normalize(linear: Sequence[int]) -> Tuple[int, int, int]:
    """Знак: первая ненулевая компонента положительна"""
    first = next(v for v in linear if v != 0)
    if first < 0:
        return (-linear[0], -linear[1], -linear[2])
    return (linear[0], linear[1], linear[2])


def _anchored(linear: Sequence[int], points: Sequence[Point]) -> Tuple[int, Functional]:
    """Ширина по направлению и функционал с минимумом 0 на конфигурации"""
    f = Functional(linear[0], linear[1], linear[2], 0)
    lo, hi = f.value_range(points)
    return hi - lo, f.shifted(-lo)


def _vanishing_functional(points: Sequence[Point]) -> Functional:
    """Функционал, постоянный (нулевой) на вырожденной конфигурации"""
    p0 = points[0]
    diffs = [sub(p, p0) for p in points if p != p0]
    if diffs:
        d1 = diffs[0]
        normal = next((cross(d1, d) for d in diffs if cross(d1, d) != (0, 0, 0)), None)
        if normal is None:
            # Прямая или точка: берём нормаль к направлению
            normal = next(cross(d1, e) for e in ((1, 0, 0), (0, 1, 0), (0, 0, 1)) if cross(d1, e) != (0, 0, 0))
    else:
        normal = (1, 0, 0)
    normal = _normalize(primitive(normal))
    return Functional.through(normal, p0)


def _difference_basis(points: Sequence[Point]) -> Tuple[Point, Point, Point]:
    """Тройка разностей от первой точки с минимальным ненулевым |det|"""
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    best = None
    for trio in itertools.combinations(diffs, 3):
        d = abs(det3(trio))
        if d and (best is None or d < best[0]):
            best = (d, trio)
    return best[1]


def _search(points: Sequence[Point], bound: int, basis: Tuple[Point, Point, Point]) -> List[Tuple[int, Functional]]:
    """Все примитивные функционалы с |f(d_i)| <= bound, с их ширинами"""
    # f * D = m, D со столбцами d_i  =>  f = m * adj(D) / det(D)
    d_matrix = from_columns(*basis)
    det = det3(d_matrix)
    adj = adjugate(d_matrix)
    found = []
    for m in itertools.product(range(-bound, bound + 1), repeat=3):
        if m == (0, 0, 0):
            continue
        if next(v for v in m if v != 0) < 0:
            continue
        numerator = vec_mat(m, adj)
        if any(v % det for v in numerator):
            continue
        linear = (numerator[0] // det, numerator[1] // det, numerator[2] // det)
        if content(linear) != 1:
            continue
        w, f = _anchored(_normalize(linear), points)
        found.append((w, f))
    return found


def _initial_bound(points: Sequence[Point], basis: Tuple[Point, Point, Point]) -> int:
    """Верхняя оценка ширины: координаты после HNF-отображения и нормали граней"""
    _, u = hnf(from_columns(*basis))
    candidates = [tuple(row) for row in u]
    candidates += [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
    candidates += [f.linear for f in convex_hull(points).facets]
    return min(_anchored(primitive(c), points)[0] for c in candidates)


def width(points: Sequence[Point]) -> WidthResult:
    """Точная решёточная ширина со свидетелем"""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 2:
        raise ValueError("width needs at least 2 points")
    if affine_dimension(pts) < 3:
        return WidthResult(width=0, witness=_vanishing_functional(pts), degenerate=True)

    basis = _difference_basis(pts)
    bound = _initial_bound(pts, basis)
    found = _search(pts, bound, basis)
    best = min(found, key=lambda item: (item[0], item[1].linear))
    return WidthResult(width=best[0], witness=best[1])


def width_at_most_one(points: Sequence[Point]) -> Tuple[bool, Optional[Functional]]:
    """Быстрая проверка: вырождена или ширина <= 1"""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 4 or affine_dimension(pts) < 3:
        return True, _vanishing_functional(pts)
    found = [item for item in _search(pts, 1, _difference_basis(pts)) if item[0] <= 1]
    if not found:
        return False, None
    return True, min(found, key=lambda item: item[1].linear)[1]


def functionals_of_width_one(points: Sequence[Point]) -> List[Functional]:
    """Все примитивные функционалы ширины 1 (с точностью до знака), смещённые в [0,1]"""
    pts = sorted(set(tuple(p) for p in points))
    if affine_dimension(pts) < 3:
        return []
    return sorted(f for w, f in _search(pts, 1, _difference_basis(pts)) if w == 1)


def essential_vertices(points: Sequence[Point]) -> EssentialVertexReport:
    """Классификация вершин conv(A) на существенные и несущественные"""
    pts = sorted(set(tuple(p) for p in points))
    hull = convex_hull(pts)
    if hull.dimension < 3:
        raise NotWideEnoughError("NotWideEnough: configuration is not full-dimensional")
    if width_at_most_one(pts)[0]:
        raise NotWideEnoughError("NotWideEnough: configuration has width <= 1")

    verdicts = []
    for v in sorted(hull.vertex_points):
        rest = [p for p in pts if p != v]
        if affine_dimension(rest) < 3:
            verdicts.append(VertexVerdict(v, True, "dimension_drop"))
            continue
        thin, witness = width_at_most_one(rest)
        if thin:
            verdicts.append(VertexVerdict(v, True, "width", witness))
        else:
            verdicts.append(VertexVerdict(v, False))
    return EssentialVertexReport(tuple(verdicts))


def is_quasi_minimal(points: Sequence[Point]) -> bool:
    """Не более одной несущественной вершины"""
    return len(essential_vertices(points).non_essential) <= 1


def is_minimal(points: Sequence[Point]) -> bool:
    """Все вершины существенные"""
    return not essential_vertices(points).non_essential
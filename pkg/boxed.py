"""
Коробочные многогранники (boxed)
Три перебора: коробка Q0, полный куб с очисткой вершин, куб без ребра.
"""
import functools
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from config import BOXED_REPRESENTATIVES_PATH, MAX_BOXED_SIZE
from equivalence import CanonicalForm, canonical_form
from geometry import (
    Functional,
    Point,
    convex_hull,
    count_lattice_points,
    det3,
    is_lattice_closed,
    lattice_points,
)
from width import essential_vertices, functionals_of_width_one, is_quasi_minimal, width_at_most_one

logger = logging.getLogger(__name__)

UNIT_CUBE = "UnitCube"
Q0 = "Q0"

COORDINATE_FUNCTIONALS = (Functional(1, 0, 0), Functional(0, 1, 0), Functional(0, 0, 1))
Q0_FUNCTIONALS = (Functional(0, 1, 1), Functional(1, 0, 1), Functional(1, 1, 0))

# Решёточные точки Q0 и меню вершин v1, v2, v3
Q0_BASE = ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1))
Q0_MENUS = (
    ((-1, 1, 1), (-1, 1, 2), (-1, 2, 1), (0, 1, 1), (1, -1, -1), (1, -1, 0), (1, 0, -1), (2, -1, -1)),
    ((1, -1, 1), (1, -1, 2), (2, -1, 1), (1, 0, 1), (-1, 1, -1), (-1, 1, 0), (0, 1, -1), (-1, 2, -1)),
    ((1, 1, -1), (1, 2, -1), (2, 1, -1), (1, 1, 0), (-1, -1, 1), (-1, 0, 1), (0, -1, 1), (-1, -1, 2)),
)

CUBE = tuple(itertools.product((0, 1), repeat=3))

# Восемь классов подмножеств вершин куба, не задевающих хотя бы одно ребро
MISSING_EDGE_SUBSETS = {
    # призма: куб без ребра
    "prism": ((0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)),
    # пирамида с основанием на грани куба
    "pyramid_facet": ((1, 1, 0), (0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, 1)),
    # пирамида с диагональным основанием y+z=1
    "pyramid_diagonal": ((0, 1, 0), (1, 1, 0), (0, 0, 1), (1, 0, 1), (1, 1, 1)),
    # квадрат грани
    "square": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0)),
    # диагональный прямоугольник
    "rectangle": ((0, 1, 0), (1, 1, 0), (1, 0, 1), (0, 0, 1)),
    # унимодулярные тетраэдры: угол, зигзаг, угол грани плюс дальняя вершина
    "corner": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (0, 0, 1)),
    "path": ((0, 0, 0), (1, 0, 0), (1, 1, 0), (1, 1, 1)),
    "triangle_far": ((0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 1)),
}

# Координата a_i выброса вдоль ребра s_i
FAR_OUTLIER_RANGE = tuple(range(-6, 0)) + tuple(range(2, 8))
NEAR_OUTLIER_RANGE = (-1, 2)


@dataclass(frozen=True)
class BoxedCertificate:
    kind: str
    functionals: Tuple[Functional, Functional, Functional]
    outliers: Tuple[Point, Point, Point]
    box_points: Tuple[Point, ...]


@dataclass(frozen=True)
class BoxedPolytope:
    form: CanonicalForm
    certificate: BoxedCertificate

    @property
    def size(self) -> int:
        return self.form.size


def _in_box(value: int) -> bool:
    return value in (0, 1)


def verify_boxed(points: Sequence[Point], cert: BoxedCertificate) -> Tuple[bool, Optional[str]]:
    """Проверка сертификата коробочности; (успех, код причины)"""
    pts = set(tuple(p) for p in points)
    fs = cert.functionals
    if len(pts) > MAX_BOXED_SIZE:
        return False, "too_many_points"
    if any(not f.is_primitive for f in fs):
        return False, "non_primitive_functional"
    det = abs(det3([f.linear for f in fs]))
    expected = {UNIT_CUBE: 1, Q0: 2}.get(cert.kind)
    if det == 0:
        return False, "dependent_functionals"
    if expected is None or det != expected:
        return False, "wrong_box_kind"
    if len(set(cert.outliers)) != 3 or any(v not in pts for v in cert.outliers):
        return False, "outlier_not_in_configuration"
    for i, f in enumerate(fs):
        for j, v in enumerate(cert.outliers):
            if _in_box(f(v)) != (i != j):
                return False, "outlier_position"
    rest = pts - set(cert.outliers)
    if rest != set(cert.box_points):
        return False, "box_points_mismatch"
    if any(not _in_box(f(p)) for p in rest for f in fs):
        return False, "point_outside_box"
    if width_at_most_one(sorted(pts))[0]:
        return False, "width"
    return True, None


def _certificate(kind: str, functionals, outliers, points) -> BoxedCertificate:
    box = tuple(sorted(set(points) - set(outliers)))
    return BoxedCertificate(kind, tuple(functionals), tuple(outliers), box)


def find_boxed_certificates(points: Sequence[Point]) -> List[BoxedCertificate]:
    """Все сертификаты: существенные вершины и функционалы ширины 1 их удалений"""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) > MAX_BOXED_SIZE or width_at_most_one(pts)[0]:
        return []
    report = essential_vertices(pts)
    options: Dict[Point, List[Functional]] = {}
    for v in report.essential:
        rest = [p for p in pts if p != v]
        fs = []
        for f in functionals_of_width_one(rest):
            if not _in_box(f(v)):
                fs.append(f)
        if fs:
            options[v] = fs

    found = []
    for trio in itertools.combinations(sorted(options), 3):
        for fs in itertools.product(*(options[v] for v in trio)):
            det = abs(det3([f.linear for f in fs]))
            if det not in (1, 2):
                continue
            kind = UNIT_CUBE if det == 1 else Q0
            cert = _certificate(kind, fs, trio, pts)
            if verify_boxed(pts, cert)[0]:
                found.append(cert)
    return found


def _canonical_boxed(points: Sequence[Point], cert: BoxedCertificate) -> BoxedPolytope:
    """Перевести конфигурацию и сертификат в канонические координаты"""
    form, witness, _ = canonical_form(points)
    moved = BoxedCertificate(
        kind=cert.kind,
        functionals=tuple(witness.push_functional(f) for f in cert.functionals),
        outliers=tuple(witness(v) for v in cert.outliers),
        box_points=tuple(sorted(witness(p) for p in cert.box_points)),
    )
    return BoxedPolytope(form, moved)


def _exact_points(candidate: Sequence[Point]) -> Optional[Tuple[Point, ...]]:
    """Набор, если он совпадает с решёточными точками своей оболочки"""
    pts = sorted(set(candidate))
    if len(pts) != len(candidate):
        return None
    hull = convex_hull(pts)
    if hull.dimension < 3:
        return None
    if count_lattice_points(hull, stop_after=len(pts)) != len(pts):
        return None
    return tuple(pts)


def _closed_partial(candidate: Sequence[Point]) -> bool:
    """Часть будущей конфигурации: замкнута в своей оболочке любой размерности"""
    pts = sorted(set(candidate))
    if len(pts) != len(candidate):
        return False
    return is_lattice_closed(pts)


def outlier_menu(subset: Sequence[Point], axis: int) -> List[Point]:
    """Допустимые выбросы вдоль оси axis для подмножества куба без ребра"""
    ranged = _outlier_options(
        axis,
        lambda base: FAR_OUTLIER_RANGE if _edge_missed(subset, axis, base) else NEAR_OUTLIER_RANGE,
    )
    # Каждый выброс по отдельности не должен давать лишних точек
    return [v for v in ranged if _closed_partial(tuple(subset) + (v,))]


def _collect(found: Dict[Tuple[Point, ...], BoxedPolytope], item: BoxedPolytope) -> None:
    found.setdefault(item.form.points, item)


def _by_size(found: Dict[Tuple[Point, ...], BoxedPolytope]) -> Dict[int, List[BoxedPolytope]]:
    grouped: Dict[int, List[BoxedPolytope]] = {}
    for key in sorted(found):
        grouped.setdefault(len(key), []).append(found[key])
    return grouped


# ==================== КОРОБКА Q0 ====================

def boxed_enumerate_q0() -> List[BoxedPolytope]:
    """Перебор 8x8x8 меню для коробки Q0"""
    found: Dict[Tuple[Point, ...], BoxedPolytope] = {}
    for outliers in itertools.product(*Q0_MENUS):
        pts = _exact_points(Q0_BASE + outliers)
        if pts is None:
            continue
        cert = _certificate(Q0, Q0_FUNCTIONALS, outliers, pts)
        ok, reason = verify_boxed(pts, cert)
        if not ok:
            logger.debug(f"Q0 {outliers}: rejected ({reason})")
            continue
        _collect(found, _canonical_boxed(pts, cert))
    logger.info(f"Q0 sweep: {len(found)} classes")
    return [found[key] for key in sorted(found)]


# ==================== ПОЛНЫЙ КУБ ====================

def _chimney_positions(axis: int, values: Iterable[int], base: Tuple[int, int]) -> List[Point]:
    coords = list(base)
    coords.insert(axis, 0)
    result = []
    for a in values:
        coords[axis] = a
        result.append(tuple(coords))
    return result


def _outlier_options(axis: int, values_for_edge) -> List[Point]:
    """Позиции v_i: i-я координата из диапазона, остальные в {0,1}"""
    options = []
    for base in itertools.product((0, 1), repeat=2):
        options.extend(_chimney_positions(axis, values_for_edge(base), base))
    return options


def _peel(start: Tuple[Point, ...], outliers: Tuple[Point, Point, Point], found) -> None:
    """Удаление вершин куба по одной во всех порядках"""
    seen = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for pts in frontier:
            box = [p for p in pts if p not in outliers]
            if len(box) <= 4:
                continue
            hull = convex_hull(pts)
            for u in sorted(hull.vertex_points):
                if u in outliers:
                    continue
                child = tuple(p for p in pts if p != u)
                if child in seen:
                    continue
                seen.add(child)
                if _exact_points(child) is None:
                    continue
                cert = _certificate(UNIT_CUBE, COORDINATE_FUNCTIONALS, outliers, child)
                if not verify_boxed(child, cert)[0]:
                    # ширина 1 сохраняется при дальнейшем удалении
                    continue
                _collect(found, _canonical_boxed(child, cert))
                nxt.append(child)
        frontier = nxt


def boxed_enumerate_fulledge() -> Dict[int, List[BoxedPolytope]]:
    """Максимальные конфигурации на всём кубе и все их очистки"""
    found: Dict[Tuple[Point, ...], BoxedPolytope] = {}
    options = [_outlier_options(axis, lambda base: NEAR_OUTLIER_RANGE) for axis in range(3)]
    for outliers in itertools.product(*options):
        pts = _exact_points(CUBE + outliers)
        if pts is None:
            continue
        cert = _certificate(UNIT_CUBE, COORDINATE_FUNCTIONALS, outliers, pts)
        if not verify_boxed(pts, cert)[0]:
            continue
        _collect(found, _canonical_boxed(pts, cert))
        _peel(pts, outliers, found)
    grouped = _by_size(found)
    logger.info(f"full-edge sweep: { {n: len(v) for n, v in grouped.items()} }")
    return grouped


# ==================== КУБ БЕЗ РЕБРА ====================

def _edge_missed(subset: Sequence[Point], axis: int, base: Tuple[int, int]) -> bool:
    """Ребро s_i вдоль оси axis через base не пересекает подмножество"""
    for t in (0, 1):
        coords = list(base)
        coords.insert(axis, t)
        if tuple(coords) in subset:
            return False
    return True


def boxed_enumerate_missingedge() -> Dict[int, List[BoxedPolytope]]:
    """Перебор выбросов для восьми подмножеств куба"""
    found: Dict[Tuple[Point, ...], BoxedPolytope] = {}
    for name, subset in MISSING_EDGE_SUBSETS.items():
        options = [outlier_menu(subset, axis) for axis in range(3)]

        pairs_ok = {}

        def pair_ok(u: Point, w: Point) -> bool:
            key = (u, w)
            if key not in pairs_ok:
                pairs_ok[key] = _closed_partial(subset + (u, w))
            return pairs_ok[key]

        before = len(found)
        for v1, v2 in itertools.product(options[0], options[1]):
            if not pair_ok(v1, v2):
                continue
            for v3 in options[2]:
                if not (pair_ok(v1, v3) and pair_ok(v2, v3)):
                    continue
                outliers = (v1, v2, v3)
                pts = _exact_points(subset + outliers)
                if pts is None:
                    continue
                cert = _certificate(UNIT_CUBE, COORDINATE_FUNCTIONALS, outliers, pts)
                if not verify_boxed(pts, cert)[0]:
                    continue
                _collect(found, _canonical_boxed(pts, cert))
        logger.debug(f"missing-edge subset {name}: {len(found) - before} new classes")
    grouped = _by_size(found)
    logger.info(f"missing-edge sweep: { {n: len(v) for n, v in grouped.items()} }")
    return grouped


# ==================== ОБЪЕДИНЕНИЕ ====================

@functools.lru_cache(maxsize=1)
def boxed_all() -> Dict[int, Tuple[BoxedPolytope, ...]]:
    """Неизбыточная классификация коробочных многогранников по размерам"""
    found: Dict[Tuple[Point, ...], BoxedPolytope] = {}
    for item in boxed_enumerate_q0():
        _collect(found, item)
    for grouped in (boxed_enumerate_fulledge(), boxed_enumerate_missingedge()):
        for items in grouped.values():
            for item in items:
                _collect(found, item)
    return {n: tuple(items) for n, items in _by_size(found).items()}


def boxed_quasiminimal(n: int) -> List[BoxedPolytope]:
    """Квазиминимальные коробочные многогранники размера n"""
    return [item for item in boxed_all().get(n, ()) if is_quasi_minimal(item.form.points)]


def load_boxed_representatives(path: str = BOXED_REPRESENTATIVES_PATH) -> Dict[int, List[CanonicalForm]]:
    """Прочитать вершины 32 квазиминимальных коробочных представителей"""
    result: Dict[int, List[CanonicalForm]] = {}
    with open(path, encoding="utf-8") as handle:
        for number, line in enumerate(handle, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            size_text, _, coords_text = line.partition(":")
            values = [int(v) for v in coords_text.split()]
            if len(values) % 3:
                raise ValueError(f"{path}:{number}: coordinate count is not a multiple of 3")
            vertices = [tuple(values[i:i + 3]) for i in range(0, len(values), 3)]
            pts = lattice_points(convex_hull(sorted(set(vertices))))
            size = int(size_text)
            if len(pts) != size:
                raise ValueError(f"{path}:{number}: expected size {size}, hull has {len(pts)} lattice points")
            result.setdefault(size, []).append(canonical_form(pts)[0])
    return result

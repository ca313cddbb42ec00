"""
Точная целочисленная геометрия в Z^3
HNF, выпуклая оболочка, решёточные точки. Никакой плавающей точки.
"""
import functools
import itertools
import logging
from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

logger = logging.getLogger(__name__)

Point = Tuple[int, int, int]
Matrix = Tuple[Tuple[int, int, int], Tuple[int, int, int], Tuple[int, int, int]]

IDENTITY: Matrix = ((1, 0, 0), (0, 1, 0), (0, 0, 1))

# Предел для векторного сканирования в int64
_INT64_SAFE = 1 << 62


class SingularMatrixError(ValueError):
    """Вырожденная матрица там, где нужна невырожденная"""


# ==================== ВЕКТОРЫ И МАТРИЦЫ ====================

def sub(p: Sequence[int], q: Sequence[int]) -> Point:
    return (p[0] - q[0], p[1] - q[1], p[2] - q[2])


def add(p: Sequence[int], q: Sequence[int]) -> Point:
    return (p[0] + q[0], p[1] + q[1], p[2] + q[2])


def scale(k: int, p: Sequence[int]) -> Point:
    return (k * p[0], k * p[1], k * p[2])


def dot(p: Sequence[int], q: Sequence[int]) -> int:
    return p[0] * q[0] + p[1] * q[1] + p[2] * q[2]


def cross(p: Sequence[int], q: Sequence[int]) -> Point:
    return (
        p[1] * q[2] - p[2] * q[1],
        p[2] * q[0] - p[0] * q[2],
        p[0] * q[1] - p[1] * q[0],
    )


def det3(m: Sequence[Sequence[int]]) -> int:
    """Определитель 3x3 (строки)"""
    return dot(m[0], cross(m[1], m[2]))


def tetra_det(p0: Point, p1: Point, p2: Point, p3: Point) -> int:
    """det(p1-p0, p2-p0, p3-p0)"""
    return dot(sub(p1, p0), cross(sub(p2, p0), sub(p3, p0)))


def transpose(m: Sequence[Sequence[int]]) -> Matrix:
    return (
        (m[0][0], m[1][0], m[2][0]),
        (m[0][1], m[1][1], m[2][1]),
        (m[0][2], m[1][2], m[2][2]),
    )


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    bt = transpose(b)
    return tuple(tuple(dot(row, col) for col in bt) for row in a)  # type: ignore[return-value]


def mat_vec(m: Sequence[Sequence[int]], p: Sequence[int]) -> Point:
    return (dot(m[0], p), dot(m[1], p), dot(m[2], p))


def vec_mat(p: Sequence[int], m: Sequence[Sequence[int]]) -> Point:
    """Строка p, умноженная на матрицу m"""
    return mat_vec(transpose(m), p)


def adjugate(m: Sequence[Sequence[int]]) -> Matrix:
    """Присоединённая матрица: m * adj(m) = det(m) * I"""
    c0, c1, c2 = cross(m[1], m[2]), cross(m[2], m[0]), cross(m[0], m[1])
    return transpose((c0, c1, c2))


def inverse_unimodular(m: Sequence[Sequence[int]]) -> Matrix:
    """Обратная к матрице с |det| = 1"""
    d = det3(m)
    if d not in (1, -1):
        raise ValueError(f"matrix is not unimodular, det={d}")
    adj = adjugate(m)
    return tuple(tuple(d * v for v in row) for row in adj)  # type: ignore[return-value]


def from_columns(c0: Sequence[int], c1: Sequence[int], c2: Sequence[int]) -> Matrix:
    return transpose((tuple(c0), tuple(c1), tuple(c2)))


def content(v: Iterable[int]) -> int:
    """НОД модулей компонент"""
    g = 0
    for x in v:
        g = gcd(g, x)
    return g


def primitive(v: Sequence[int]) -> Point:
    g = content(v)
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g, v[2] // g)


# ==================== НОРМАЛЬНАЯ ФОРМА ЭРМИТА ====================

def hnf(m: Sequence[Sequence[int]]) -> Tuple[Matrix, Matrix]:
    """Строчная HNF: U*M = H, H верхнетреугольная, 0 <= H[j][k] < H[k][k] при j < k"""
    if det3(m) == 0:
        raise SingularMatrixError("SingularMatrix: hnf needs det(M) != 0")

    h = [list(row) for row in m]
    u = [list(row) for row in IDENTITY]

    def swap(i: int, j: int) -> None:
        h[i], h[j] = h[j], h[i]
        u[i], u[j] = u[j], u[i]

    def add_row(target: int, source: int, k: int) -> None:
        # строка target -= k * строка source
        if k:
            h[target] = [a - k * b for a, b in zip(h[target], h[source])]
            u[target] = [a - k * b for a, b in zip(u[target], u[source])]

    for col in range(3):
        # Евклид по столбцу col среди строк col..2
        while True:
            rows = [r for r in range(col, 3) if h[r][col] != 0]
            pivot = min(rows, key=lambda r: (abs(h[r][col]), r))
            if pivot != col:
                swap(pivot, col)
            done = True
            for r in range(col + 1, 3):
                if h[r][col] != 0:
                    add_row(r, col, h[r][col] // h[col][col])
                    if h[r][col] != 0:
                        done = False
            if done:
                break
        if h[col][col] < 0:
            h[col] = [-a for a in h[col]]
            u[col] = [-a for a in u[col]]
        # Редукция над пивотом
        for r in range(col):
            add_row(r, col, h[r][col] // h[col][col])

    return (
        tuple(tuple(row) for row in h),  # type: ignore[return-value]
        tuple(tuple(row) for row in u),  # type: ignore[return-value]
    )


# ==================== ФУНКЦИОНАЛЫ ====================

@dataclass(frozen=True, order=True)
class Functional:
    """Аффинный функционал f(p) = a*x + b*y + c*z + d"""
    a: int
    b: int
    c: int
    d: int = 0

    def __call__(self, p: Sequence[int]) -> int:
        return self.a * p[0] + self.b * p[1] + self.c * p[2] + self.d

    @property
    def linear(self) -> Point:
        return (self.a, self.b, self.c)

    @property
    def is_primitive(self) -> bool:
        return content(self.linear) == 1

    @classmethod
    def through(cls, normal: Sequence[int], point: Sequence[int]) -> "Functional":
        """Функционал с линейной частью normal, равный нулю в point"""
        return cls(normal[0], normal[1], normal[2], -dot(normal, point))

    def negated(self) -> "Functional":
        return Functional(-self.a, -self.b, -self.c, -self.d)

    def shifted(self, delta: int) -> "Functional":
        return Functional(self.a, self.b, self.c, self.d + delta)

    def value_range(self, points: Iterable[Sequence[int]]) -> Tuple[int, int]:
        values = [self(p) for p in points]
        return min(values), max(values)


# ==================== ОБОЛОЧКА ====================

@dataclass(frozen=True)
class HullData:
    """Выпуклая оболочка набора решёточных точек"""
    points: Tuple[Point, ...]
    dimension: int
    vertices: Tuple[int, ...]
    facets: Tuple[Functional, ...] = ()
    # Вершины каждой грани в циклическом порядке (против часовой стрелки
    # относительно внутренней нормали)
    facet_vertices: Tuple[Tuple[int, ...], ...] = ()
    normalized_volume: int = 0
    # Для размерности 2: нормаль плоскости и рёбра многоугольника
    plane: Optional[Functional] = field(default=None)

    @property
    def vertex_points(self) -> Tuple[Point, ...]:
        return tuple(self.points[i] for i in self.vertices)

    def contains(self, p: Sequence[int]) -> bool:
        """Точка в оболочке (только для размерности 3)"""
        return all(f(p) >= 0 for f in self.facets)

    def strictly_inside(self, p: Sequence[int]) -> bool:
        return all(f(p) > 0 for f in self.facets)


def affine_dimension(points: Sequence[Point]) -> int:
    """Размерность аффинной оболочки"""
    if not points:
        raise ValueError("empty configuration")
    p0 = points[0]
    diffs = [sub(p, p0) for p in points[1:]]
    d1 = next((d for d in diffs if d != (0, 0, 0)), None)
    if d1 is None:
        return 0
    normal = next((cross(d1, d) for d in diffs if cross(d1, d) != (0, 0, 0)), None)
    if normal is None:
        return 1
    if any(dot(normal, d) != 0 for d in diffs):
        return 3
    return 2


def convex_hull(points: Sequence[Point]) -> HullData:
    """Точная оболочка: вершины, грани с внутренними примитивными функционалами, объём"""
    pts = tuple(tuple(p) for p in points)
    if not pts:
        raise ValueError("convex_hull needs at least one point")
    if len(set(pts)) != len(pts):
        raise ValueError("convex_hull expects deduplicated points")

    dim = affine_dimension(pts)
    if dim == 0:
        return HullData(points=pts, dimension=0, vertices=(0,))
    if dim == 1:
        return _hull_1d(pts)
    if dim == 2:
        return _hull_2d(pts)
    return _hull_3d(pts)


def _hull_1d(pts: Tuple[Point, ...]) -> HullData:
    order = sorted(range(len(pts)), key=lambda i: pts[i])
    return HullData(points=pts, dimension=1, vertices=tuple(sorted((order[0], order[-1]))))


def _plane_normal(pts: Sequence[Point]) -> Point:
    p0 = pts[0]
    d1 = next(sub(p, p0) for p in pts if p != p0)
    n = next(cross(d1, sub(p, p0)) for p in pts if cross(d1, sub(p, p0)) != (0, 0, 0))
    return primitive(n)


def _ccw_order(pts: Sequence[Point], indices: Sequence[int], normal: Point) -> Tuple[int, ...]:
    """Циклический порядок вершин выпуклого многоугольника вокруг normal"""
    start = min(indices, key=lambda i: pts[i])
    origin = pts[start]

    def compare(i: int, j: int) -> int:
        s = dot(normal, cross(sub(pts[i], origin), sub(pts[j], origin)))
        return -1 if s > 0 else (1 if s < 0 else 0)

    rest = sorted((i for i in indices if i != start), key=functools.cmp_to_key(compare))
    return (start, *rest)


def _polygon_vertices(pts: Sequence[Point], indices: Sequence[int], normal: Point) -> List[int]:
    """Вершины плоского набора (монотонная цепочка в проекции, коллинеарные выкидываются)"""
    drop = max(range(3), key=lambda k: abs(normal[k]))
    keep = [k for k in range(3) if k != drop]
    order = sorted(indices, key=lambda i: (pts[i][keep[0]], pts[i][keep[1]]))

    def turn(o: int, a: int, b: int) -> int:
        po, pa, pb = pts[o], pts[a], pts[b]
        return ((pa[keep[0]] - po[keep[0]]) * (pb[keep[1]] - po[keep[1]])
                - (pa[keep[1]] - po[keep[1]]) * (pb[keep[0]] - po[keep[0]]))

    def chain(seq: Sequence[int]) -> List[int]:
        out: List[int] = []
        for i in seq:
            while len(out) >= 2 and turn(out[-2], out[-1], i) <= 0:
                out.pop()
            out.append(i)
        return out

    lower = chain(order)
    upper = chain(list(reversed(order)))
    return sorted(set(lower[:-1] + upper[:-1]))


def _hull_2d(pts: Tuple[Point, ...]) -> HullData:
    normal = _plane_normal(pts)
    idx = list(range(len(pts)))
    verts = _polygon_vertices(pts, idx, normal)
    plane = Functional.through(normal, pts[0])
    return HullData(
        points=pts,
        dimension=2,
        vertices=tuple(sorted(verts)),
        facet_vertices=(_ccw_order(pts, verts, normal),),
        plane=plane,
    )


def _hull_3d(pts: Tuple[Point, ...]) -> HullData:
    n = len(pts)
    facets = {}
    for i, j, k in itertools.combinations(range(n), 3):
        normal = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]))
        if normal == (0, 0, 0):
            continue
        normal = primitive(normal)
        values = [dot(normal, sub(p, pts[i])) for p in pts]
        if all(v >= 0 for v in values):
            f = Functional.through(normal, pts[i])
        elif all(v <= 0 for v in values):
            f = Functional.through(scale(-1, normal), pts[i])
        else:
            continue
        facets[f] = None

    facet_list = sorted(facets)
    on_facet = [[i for i in range(n) if f(pts[i]) == 0] for f in facet_list]

    # Вершина: нормали содержащих её граней имеют ранг 3
    vertices = []
    for i in range(n):
        normals = [f.linear for f, members in zip(facet_list, on_facet) if i in members]
        if _rank(normals) == 3:
            vertices.append(i)
    vertex_set = set(vertices)

    facet_vertices = []
    for f, members in zip(facet_list, on_facet):
        corners = [i for i in members if i in vertex_set]
        facet_vertices.append(_ccw_order(pts, corners, f.linear))

    hull = HullData(
        points=pts,
        dimension=3,
        vertices=tuple(vertices),
        facets=tuple(facet_list),
        facet_vertices=tuple(facet_vertices),
    )
    volume = fan_volume(hull, hull.vertices[0])
    return HullData(
        points=pts,
        dimension=3,
        vertices=hull.vertices,
        facets=hull.facets,
        facet_vertices=hull.facet_vertices,
        normalized_volume=volume,
    )


def _rank(vectors: Sequence[Point]) -> int:
    nonzero = [v for v in vectors if v != (0, 0, 0)]
    if not nonzero:
        return 0
    first = nonzero[0]
    crosses = [cross(first, v) for v in nonzero[1:] if cross(first, v) != (0, 0, 0)]
    if not crosses:
        return 1
    normal = crosses[0]
    if any(dot(normal, v) != 0 for v in nonzero):
        return 3
    return 2


def fan_volume(hull: HullData, apex: int) -> int:
    """Нормированный объём через веер тетраэдров из вершины apex"""
    top = hull.points[apex]
    total = 0
    for corners in hull.facet_vertices:
        if apex in corners:
            continue
        w0 = hull.points[corners[0]]
        for a, b in zip(corners[1:], corners[2:]):
            total += abs(tetra_det(top, w0, hull.points[a], hull.points[b]))
    return total


def facet_area(hull: HullData, index: int) -> int:
    """Нормированная решёточная площадь грани (2 x площадь в решётке грани)"""
    normal = hull.facets[index].linear
    corners = hull.facet_vertices[index]
    w0 = hull.points[corners[0]]
    axis = next(k for k in range(3) if normal[k] != 0)
    total = 0
    for a, b in zip(corners[1:], corners[2:]):
        c = cross(sub(hull.points[a], w0), sub(hull.points[b], w0))
        total += abs(c[axis] // normal[axis])
    return total


def facet_volume(hull: HullData) -> int:
    """Объём как сумма пирамид над гранями с вершиной в первой вершине"""
    top = hull.points[hull.vertices[0]]
    return sum(f(top) * facet_area(hull, i) for i, f in enumerate(hull.facets))


# ==================== РЕШЁТОЧНЫЕ ТОЧКИ ====================

def bounding_box(points: Iterable[Sequence[int]]) -> Tuple[Point, Point]:
    pts = list(points)
    lo = tuple(min(p[k] for p in pts) for k in range(3))
    hi = tuple(max(p[k] for p in pts) for k in range(3))
    return lo, hi  # type: ignore[return-value]


def _scan(hull: HullData, strict: bool, stop_after: Optional[int] = None) -> List[Point]:
    lo, hi = bounding_box(hull.vertex_points)
    coeffs = np.array([f.linear for f in hull.facets], dtype=np.int64)
    offsets = np.array([f.d for f in hull.facets], dtype=np.int64)
    span = max(abs(v) for v in (*lo, *hi)) + 1
    worst = int(np.abs(coeffs).sum(axis=1).max()) * span + int(np.abs(offsets).max())
    if worst >= _INT64_SAFE:
        raise OverflowError(f"lattice scan out of int64 range: {worst}")

    xs = np.arange(lo[0], hi[0] + 1, dtype=np.int64)
    ys = np.arange(lo[1], hi[1] + 1, dtype=np.int64)
    gx, gy = np.meshgrid(xs, ys, indexing="ij")
    gx, gy = gx.ravel(), gy.ravel()

    found: List[Point] = []
    for z in range(lo[2], hi[2] + 1):
        values = np.outer(coeffs[:, 0], gx) + np.outer(coeffs[:, 1], gy) + (coeffs[:, 2] * z + offsets)[:, None]
        mask = (values > 0).all(axis=0) if strict else (values >= 0).all(axis=0)
        for x, y in zip(gx[mask].tolist(), gy[mask].tolist()):
            found.append((x, y, z))
        if stop_after is not None and len(found) > stop_after:
            break
    found.sort()
    return found


def _lattice_points_lowdim(hull: HullData) -> List[Point]:
    pts = hull.points
    if hull.dimension == 0:
        return [pts[0]]
    if hull.dimension == 1:
        a, b = (pts[i] for i in hull.vertices)
        step = sub(b, a)
        g = content(step)
        unit = (step[0] // g, step[1] // g, step[2] // g)
        return sorted(add(a, scale(k, unit)) for k in range(g + 1))

    # Размерность 2: скан коробки по плоскости и рёбрам многоугольника
    normal = hull.plane.linear
    ring = hull.facet_vertices[0]
    edges = [(pts[ring[i]], pts[ring[(i + 1) % len(ring)]]) for i in range(len(ring))]
    lo, hi = bounding_box(hull.vertex_points)
    result = []
    for p in itertools.product(*(range(lo[k], hi[k] + 1) for k in range(3))):
        if hull.plane(p) != 0:
            continue
        if all(dot(normal, cross(sub(w, u), sub(p, u))) >= 0 for u, w in edges):
            result.append(p)
    return sorted(result)


def lattice_points(hull: HullData) -> List[Point]:
    """Все целые точки оболочки, лексикографически"""
    if hull.dimension < 3:
        return _lattice_points_lowdim(hull)
    return _scan(hull, strict=False)


def count_lattice_points(hull: HullData, stop_after: Optional[int] = None) -> int:
    """Число целых точек; при stop_after счёт может оборваться на значении > stop_after"""
    if hull.dimension < 3:
        return len(_lattice_points_lowdim(hull))
    return len(_scan(hull, strict=False, stop_after=stop_after))


def interior_lattice_points(hull: HullData) -> List[Point]:
    """Целые точки строго внутри"""
    if hull.dimension < 3:
        return []
    return _scan(hull, strict=True)


def lattice_closure(points: Sequence[Point]) -> List[Point]:
    """Все решёточные точки conv(points)"""
    return lattice_points(convex_hull(sorted(set(points))))


def is_lattice_closed(points: Sequence[Point]) -> bool:
    """Набор содержит все решёточные точки своей оболочки"""
    pts = sorted(set(points))
    hull = convex_hull(pts)
    return count_lattice_points(hull, stop_after=len(pts)) == len(pts)

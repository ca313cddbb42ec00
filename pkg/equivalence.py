"""
Унимодулярная эквивалентность конфигураций решёточных точек
Канонические формы, автоморфизмы, дешёвые инварианты.
"""
import hashlib
import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from geometry import (
    IDENTITY,
    Functional,
    Matrix,
    Point,
    add,
    det3,
    from_columns,
    hnf,
    inverse_unimodular,
    mat_mul,
    mat_vec,
    scale,
    sub,
    tetra_det,
    vec_mat,
)

logger = logging.getLogger(__name__)


class NotFullDimensionalError(ValueError):
    """Конфигурация не порождает R^3"""


@dataclass(frozen=True)
class AffineUnimodularMap:
    """t(p) = L*p + s, |det L| = 1"""
    linear: Matrix
    translation: Point = (0, 0, 0)

    def __post_init__(self):
        if det3(self.linear) not in (1, -1):
            raise ValueError(f"linear part is not unimodular: {self.linear}")

    def __call__(self, p: Sequence[int]) -> Point:
        return add(mat_vec(self.linear, p), self.translation)

    def apply(self, points: Sequence[Sequence[int]]) -> List[Point]:
        return sorted(self(p) for p in points)

    def compose(self, other: "AffineUnimodularMap") -> "AffineUnimodularMap":
        """self ∘ other"""
        return AffineUnimodularMap(
            mat_mul(self.linear, other.linear),
            add(mat_vec(self.linear, other.translation), self.translation),
        )

    def inverse(self) -> "AffineUnimodularMap":
        inv = inverse_unimodular(self.linear)
        return AffineUnimodularMap(inv, scale(-1, mat_vec(inv, self.translation)))

    def push_functional(self, f: Functional) -> Functional:
        """Функционал g с g(t(p)) = f(p)"""
        inv = self.inverse()
        a, b, c = vec_mat(f.linear, inv.linear)
        return Functional(a, b, c, f(inv.translation))

    @property
    def determinant(self) -> int:
        return det3(self.linear)

    @classmethod
    def identity(cls) -> "AffineUnimodularMap":
        return cls(IDENTITY, (0, 0, 0))


@dataclass(frozen=True)
class CanonicalForm:
    """Каноническое представление класса эквивалентности"""
    points: Tuple[Point, ...]
    hash: int
    automorphism_count: int

    @property
    def size(self) -> int:
        return len(self.points)


def configuration_hash(points: Sequence[Point]) -> int:
    """64-битный хеш потока координат"""
    stream = " ".join(str(v) for p in points for v in p).encode("ascii")
    return int.from_bytes(hashlib.blake2b(stream, digest_size=8).digest(), "big")


def volume_vector_invariant(points: Sequence[Point]) -> Tuple[int, ...]:
    """Отсортированный мультимножество |det| по всем 4-подмножествам"""
    if len(points) < 4:
        raise ValueError("volume vector needs at least 4 points")
    return tuple(sorted(abs(tetra_det(*quad)) for quad in itertools.combinations(points, 4)))


def _candidate_tuples(pts: Sequence[Point]) -> List[Tuple[int, int, int, int]]:
    """Упорядоченные четвёрки минимального объёма с минимальной сигнатурой точек"""
    volumes: Dict[Tuple[int, int, int, int], int] = {}
    per_point: List[List[int]] = [[] for _ in pts]
    for quad in itertools.combinations(range(len(pts)), 4):
        v = abs(tetra_det(*(pts[i] for i in quad)))
        volumes[quad] = v
        for i in quad:
            per_point[i].append(v)

    nonzero = [v for v in volumes.values() if v]
    if not nonzero:
        raise NotFullDimensionalError("NotFullDimensional: configuration spans less than R^3")
    smallest = min(nonzero)

    # Сигнатура точки инвариантна, поэтому отбор по ней согласован с обеих сторон
    signature = [tuple(sorted(vs)) for vs in per_point]
    best_key = None
    chosen: List[Tuple[int, int, int, int]] = []
    for quad, v in volumes.items():
        if v != smallest:
            continue
        for order in itertools.permutations(quad):
            key = tuple(signature[i] for i in order)
            if best_key is None or key < best_key:
                best_key, chosen = key, [order]
            elif key == best_key:
                chosen.append(order)
    return chosen


def _tuple_map(pts: Sequence[Point], order: Tuple[int, int, int, int]) -> AffineUnimodularMap:
    p0 = pts[order[0]]
    m = from_columns(*(sub(pts[i], p0) for i in order[1:]))
    _, u = hnf(m)
    return AffineUnimodularMap(u, scale(-1, mat_vec(u, p0)))


def canonical_form(
    points: Sequence[Point],
) -> Tuple[CanonicalForm, AffineUnimodularMap, List[AffineUnimodularMap]]:
    """Каноническая форма, отображение в неё и автоморфизмы представителя"""
    pts = sorted(set(tuple(p) for p in points))
    if len(pts) < 4:
        raise NotFullDimensionalError("NotFullDimensional: fewer than 4 points")

    best: Optional[Tuple[Point, ...]] = None
    minimizers: List[AffineUnimodularMap] = []
    for order in _candidate_tuples(pts):
        t = _tuple_map(pts, order)
        image = tuple(sorted(t(p) for p in pts))
        if best is None or image < best:
            best, minimizers = image, [t]
        elif image == best:
            minimizers.append(t)

    witness = minimizers[0]
    back = witness.inverse()
    automorphisms: Dict[AffineUnimodularMap, None] = {}
    for t in minimizers:
        automorphisms[t.compose(back)] = None
    group = sorted(automorphisms, key=lambda g: (g.linear, g.translation))

    form = CanonicalForm(points=best, hash=configuration_hash(best), automorphism_count=len(group))
    return form, witness, group


def canonical_points(points: Sequence[Point]) -> Tuple[Point, ...]:
    """Только точки канонического представителя"""
    return canonical_form(points)[0].points


def are_equivalent(
    first: Sequence[Point], second: Sequence[Point]
) -> Tuple[bool, Optional[AffineUnimodularMap]]:
    """Эквивалентны ли конфигурации; при успехе t с t(first) = second"""
    a = sorted(set(map(tuple, first)))
    b = sorted(set(map(tuple, second)))
    if len(a) != len(b):
        return False, None
    if volume_vector_invariant(a) != volume_vector_invariant(b):
        return False, None
    form_a, map_a, _ = canonical_form(a)
    form_b, map_b, _ = canonical_form(b)
    if form_a.points != form_b.points:
        return False, None
    return True, map_b.inverse().compose(map_a)


def transformations_between(
    first: Sequence[Point], second: Sequence[Point]
) -> List[AffineUnimodularMap]:
    """Все унимодулярные t с t(first) = second"""
    form_a, map_a, _ = canonical_form(first)
    form_b, map_b, group = canonical_form(second)
    if form_a.points != form_b.points:
        return []
    back = map_b.inverse()
    return [back.compose(g).compose(map_a) for g in group]

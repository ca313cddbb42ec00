"""
Склейка (merging): многогранники размера n из пар многогранников размера n-1
"""
import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Set, Tuple

from equivalence import AffineUnimodularMap, CanonicalForm, canonical_form
from geometry import Point, affine_dimension, convex_hull, count_lattice_points
from width import width_at_most_one

logger = logging.getLogger(__name__)

Configuration = Tuple[Point, ...]


@dataclass(frozen=True)
class VertexRemoval:
    parent: Configuration
    vertex: Point
    child: Configuration
    # None, если ребёнок не трёхмерный
    child_form: Optional[CanonicalForm] = None
    to_canonical: Optional[AffineUnimodularMap] = None

    @property
    def full_dimensional(self) -> bool:
        return self.child_form is not None


@dataclass(frozen=True)
class MergeGroup:
    """Все удаления с одним и тем же классом ребёнка"""
    group_id: str
    representative: Configuration
    automorphisms: Tuple[AffineUnimodularMap, ...]
    entries: Tuple[VertexRemoval, ...]


def vertex_removals(parent: Sequence[Point]) -> List[VertexRemoval]:
    """По одному удалению на каждую вершину conv(parent)"""
    pts = tuple(sorted(set(tuple(p) for p in parent)))
    hull = convex_hull(pts)
    removals = []
    for v in sorted(hull.vertex_points):
        child = tuple(p for p in pts if p != v)
        if len(child) < 4 or affine_dimension(child) < 3:
            logger.debug(f"removal of {v} leaves a lower-dimensional child")
            removals.append(VertexRemoval(pts, v, child))
            continue
        form, witness, _ = canonical_form(child)
        removals.append(VertexRemoval(pts, v, child, form, witness))
    return removals


class ChildIndex:
    """Хеш канонической формы ребёнка -> удаления"""

    def __init__(self):
        self._buckets: Dict[int, List[VertexRemoval]] = {}

    def add(self, removal: VertexRemoval) -> None:
        if not removal.full_dimensional:
            return
        self._buckets.setdefault(removal.child_form.hash, []).append(removal)

    def extend(self, removals: Iterable[VertexRemoval]) -> None:
        for removal in removals:
            self.add(removal)

    def __len__(self) -> int:
        return sum(len(v) for v in self._buckets.values())

    def groups(self) -> List[MergeGroup]:
        """Группы с одинаковой формой ребёнка (коллизии хеша разведены)"""
        result = []
        for key in sorted(self._buckets):
            by_form: Dict[Configuration, List[VertexRemoval]] = {}
            for removal in self._buckets[key]:
                by_form.setdefault(removal.child_form.points, []).append(removal)
            for sub_index, form_points in enumerate(sorted(by_form)):
                entries = sorted(by_form[form_points], key=lambda r: (r.parent, r.vertex))
                _, _, group = canonical_form(form_points)
                result.append(MergeGroup(
                    group_id=f"{key:016x}:{sub_index}",
                    representative=form_points,
                    automorphisms=tuple(group),
                    entries=tuple(entries),
                ))
        return result


def build_child_index(classes: Iterable[Sequence[Point]]) -> ChildIndex:
    index = ChildIndex()
    for parent in classes:
        index.extend(vertex_removals(parent))
    return index


def merge_pair(first: VertexRemoval, second: VertexRemoval,
               automorphisms: Sequence[AffineUnimodularMap], n: int) -> Set[Configuration]:
    """Кандидаты conv({t(v1)} ∪ P2) для всех t: ребёнок1 -> ребёнок2"""
    back = second.to_canonical.inverse()
    target = set(second.parent)
    accepted: Set[Configuration] = set()
    seen: Set[Point] = set()
    for s in automorphisms:
        t = back.compose(s).compose(first.to_canonical)
        u = t(first.vertex)
        if u in seen or u in target:
            continue
        seen.add(u)
        candidate = tuple(sorted(target | {u}))
        hull = convex_hull(candidate)
        if count_lattice_points(hull, stop_after=n) == n:
            accepted.add(candidate)
    return accepted


def merge_group(group: MergeGroup, n: int) -> List[Configuration]:
    """Канонические классы, полученные склейкой внутри одной группы"""
    raw: Set[Configuration] = set()
    entries = group.entries
    for i, first in enumerate(entries):
        for second in entries[i:]:
            raw |= merge_pair(first, second, group.automorphisms, n)
    forms = {canonical_form(candidate)[0].points for candidate in raw}
    return sorted(forms)


def merge_all(classes: Sequence[Sequence[Point]], n: int) -> List[Configuration]:
    """Все склеенные многогранники размера n (однопоточный вариант)"""
    index = build_child_index(classes)
    result: Set[Configuration] = set()
    groups = index.groups()
    logger.info(f"merge size {n}: {len(index)} removals in {len(groups)} groups")
    for group in groups:
        result.update(merge_group(group, n))
    return sorted(result)


def is_merged(points: Sequence[Point]) -> bool:
    """Есть вершины v != w: ширины P^v, P^w > 1 и P^{vw} трёхмерен"""
    pts = tuple(sorted(set(tuple(p) for p in points)))
    wide = []
    for v in sorted(convex_hull(pts).vertex_points):
        rest = [p for p in pts if p != v]
        if not width_at_most_one(rest)[0]:
            wide.append(v)
    for i, v in enumerate(wide):
        for w in wide[i + 1:]:
            rest = [p for p in pts if p not in (v, w)]
            if len(rest) >= 4 and affine_dimension(rest) == 3:
                return True
    return False

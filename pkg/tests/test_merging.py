import pytest

from classify import make_Tn
from config import EXCEPTIONAL_SIZE6, EXCEPTIONAL_SIZE6_TWIN
from equivalence import canonical_points
from geometry import lattice_closure
from merging import ChildIndex, build_child_index, is_merged, merge_all, vertex_removals
from pipeline import quasi_minimal_classes
from width import essential_vertices, is_quasi_minimal
from tests.conftest import SPIKE_VERTICES


def test_removals_cover_every_vertex(spike_polytope):
    removals = vertex_removals(spike_polytope)
    assert [r.vertex for r in removals] == sorted(SPIKE_VERTICES)
    for removal in removals:
        assert removal.vertex not in removal.child
        assert len(removal.child) == len(spike_polytope) - 1
        # без вершины (-1, 1, 2) остаётся плоский треугольник
        assert removal.full_dimensional == (removal.vertex != (-1, 1, 2))
        if removal.full_dimensional:
            assert tuple(removal.to_canonical.apply(removal.child)) == removal.child_form.points


def test_child_index_groups_by_class(spike_polytope):
    index = ChildIndex()
    index.extend(vertex_removals(spike_polytope))
    index.extend(vertex_removals(spike_polytope))
    assert len(index) == 6
    groups = index.groups()
    assert sum(len(g.entries) for g in groups) == 6
    for group in groups:
        assert all(entry.child_form.points == group.representative for entry in group.entries)
        assert len(group.automorphisms) >= 1
    assert len({g.group_id for g in groups}) == len(groups)


def test_extremal_tetrahedron_is_rebuilt_from_two_removals():
    polytope = make_Tn(8)
    report = essential_vertices(polytope)
    assert len(report.non_essential) >= 2
    v, w = report.non_essential[:2]
    parents = [canonical_points([p for p in polytope if p != v]), canonical_points([p for p in polytope if p != w])]
    merged = merge_all(parents, 8)
    assert canonical_points(polytope) in merged
    assert is_merged(polytope)


def test_merged_candidates_are_lattice_closed(spike_polytope):
    child = canonical_points([p for p in spike_polytope if p != (0, 5, 0)])
    n = len(spike_polytope)
    assert len(build_child_index([child])) > 0
    for points in merge_all([child], n):
        assert len(points) == n
        assert tuple(lattice_closure(points)) == points


def test_doubled_simplex_is_not_merged(doubled_simplex):
    assert not is_merged(doubled_simplex)


def test_exceptional_size_six():
    assert not is_merged(EXCEPTIONAL_SIZE6)
    assert not is_quasi_minimal(EXCEPTIONAL_SIZE6)
    assert is_merged(EXCEPTIONAL_SIZE6_TWIN)


@pytest.mark.slow
def test_size_seven_is_split_between_quasi_minimal_and_merged(seed_classes):
    quasi = set(quasi_minimal_classes(7))
    merged = set(merge_all(seed_classes.points(6), 7))
    assert not quasi & merged
    assert len(quasi | merged) == 496
    for points in quasi | merged:
        assert is_quasi_minimal(points) != is_merged(points)
        assert is_quasi_minimal(points) == (points in quasi)

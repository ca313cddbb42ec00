import itertools

import pytest
import sympy

from equivalence import (
    AffineUnimodularMap,
    NotFullDimensionalError,
    are_equivalent,
    canonical_form,
    canonical_points,
    transformations_between,
    volume_vector_invariant,
)
from tests.conftest import UNIT_CUBE_POINTS, UNIT_TETRAHEDRON, random_maps


def test_canonical_form_is_invariant(spike_polytope, unimodular_maps):
    reference = canonical_points(spike_polytope)
    for t in unimodular_maps:
        assert canonical_points(t.apply(spike_polytope)) == reference


def test_witness_maps_to_canonical(spike_polytope):
    form, witness, _ = canonical_form(spike_polytope)
    assert tuple(witness.apply(spike_polytope)) == form.points
    assert form.size == len(spike_polytope)


def test_automorphism_counts():
    assert canonical_form(UNIT_TETRAHEDRON)[0].automorphism_count == 24
    form, _, group = canonical_form(UNIT_CUBE_POINTS)
    assert form.automorphism_count == 48
    for g in group:
        assert tuple(g.apply(form.points)) == form.points


def test_are_equivalent_returns_map(spike_polytope, unimodular_maps):
    t = unimodular_maps[0]
    image = t.apply(spike_polytope)
    ok, found = are_equivalent(spike_polytope, image)
    assert ok
    assert found.apply(spike_polytope) == sorted(image)
    assert len(transformations_between(spike_polytope, image)) == canonical_form(image)[0].automorphism_count


def test_inequivalent_configurations(spike_polytope, doubled_simplex):
    assert are_equivalent(spike_polytope, UNIT_CUBE_POINTS) == (False, None)
    assert are_equivalent(doubled_simplex, UNIT_CUBE_POINTS + ((2, 0, 0), (2, 1, 0))) == (False, None)


def test_volume_vector_invariant(unimodular_maps):
    base = volume_vector_invariant(UNIT_CUBE_POINTS)
    for t in unimodular_maps[:5]:
        assert volume_vector_invariant(t.apply(UNIT_CUBE_POINTS)) == base


def test_map_algebra(unimodular_maps):
    t, s = unimodular_maps[:2]
    p = (3, -1, 4)
    assert t.inverse()(t(p)) == p
    assert t.compose(s)(p) == t(s(p))


def test_rejects_non_unimodular_map():
    with pytest.raises(ValueError):
        AffineUnimodularMap(((2, 0, 0), (0, 1, 0), (0, 0, 1)))


def test_planar_configuration_is_rejected():
    with pytest.raises(NotFullDimensionalError):
        canonical_form([(0, 0, 0), (1, 0, 0), (0, 1, 0), (1, 1, 0), (2, 1, 0)])


def _key(t):
    return tuple(map(tuple, t.linear)), tuple(t.translation)


def _edges(quad):
    return sympy.Matrix([[x - y for x, y in zip(p, quad[0])] for p in quad[1:]]).T


def _scan_equivalence(first, second):
    """Перебор образов одного аффинного базиса first среди упорядоченных четвёрок second"""
    a, b = sorted(first), sorted(second)
    if len(a) != len(b):
        return False
    base = next(q for q in itertools.combinations(a, 4) if _edges(q).det())
    source = _edges(base)
    target = set(b)
    for image in itertools.permutations(b, 4):
        linear = _edges(image) * source.inv()
        if any(not v.is_integer for v in linear) or abs(linear.det()) != 1:
            continue
        shift = sympy.Matrix(image[0]) - linear * sympy.Matrix(base[0])
        if {tuple(int(v) for v in linear * sympy.Matrix(p) + shift) for p in a} == target:
            return True
    return False


@pytest.mark.slow
def test_equivalence_matches_basis_scan(seed_classes):
    classes = seed_classes.points(5)
    moved = [t.apply(points) for t, points in zip(random_maps(seed=5, count=len(classes)), classes)]
    for i, first in enumerate(classes):
        for j, second in enumerate(moved):
            assert are_equivalent(first, second)[0] == _scan_equivalence(first, second) == (i == j)


@pytest.mark.slow
@pytest.mark.parametrize("size", [5, 6])
def test_automorphisms_form_a_group(seed_classes, size):
    for points in seed_classes.points(size):
        group = transformations_between(points, points)
        keys = {_key(g) for g in group}
        assert len(group) == len(keys) == canonical_form(points)[0].automorphism_count
        assert _key(AffineUnimodularMap.identity()) in keys
        for g in group:
            assert _key(g.inverse()) in keys
            assert tuple(g.apply(points)) == tuple(points)
            for h in group:
                assert _key(g.compose(h)) in keys


@pytest.mark.slow
@pytest.mark.parametrize("size", [5, 6])
def test_canonical_form_is_invariant_for_seed_classes(seed_classes, size):
    for index, points in enumerate(seed_classes.points(size)):
        reference = canonical_points(points)
        assert reference == tuple(points)
        for t in random_maps(seed=1000 * size + index, count=8):
            assert canonical_points(t.apply(points)) == reference

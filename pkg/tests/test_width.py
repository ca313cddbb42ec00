import itertools

import numpy as np
import pytest

from classify import make_Tn
from tests.conftest import UNIT_CUBE_POINTS
from width import (
    NotWideEnoughError,
    essential_vertices,
    functionals_of_width_one,
    is_minimal,
    is_quasi_minimal,
    width,
    width_at_most_one,
)


def test_cube_has_width_one():
    assert width(UNIT_CUBE_POINTS).width == 1
    thin, witness = width_at_most_one(UNIT_CUBE_POINTS)
    assert thin
    lo, hi = witness.value_range(UNIT_CUBE_POINTS)
    assert hi - lo <= 1
    assert len(functionals_of_width_one(UNIT_CUBE_POINTS)) == 3


def test_doubled_simplex_has_width_two(doubled_simplex):
    result = width(doubled_simplex)
    assert result.width == 2
    lo, hi = result.witness.value_range(doubled_simplex)
    assert hi - lo == 2
    assert not width_at_most_one(doubled_simplex)[0]


def test_spike_polytope_has_one_removable_vertex(spike_polytope):
    assert width(spike_polytope).width == 2
    report = essential_vertices(spike_polytope)
    assert report.non_essential == ((0, 5, 0),)
    assert is_quasi_minimal(spike_polytope)
    assert not is_minimal(spike_polytope)


def test_thin_configuration_is_refused():
    with pytest.raises(NotWideEnoughError):
        essential_vertices(UNIT_CUBE_POINTS)


def test_degenerate_width_is_zero():
    result = width([(0, 0, 0), (1, 0, 0), (0, 1, 0)])
    assert result.degenerate
    assert result.width == 0


@pytest.mark.parametrize("n", [5, 7, 9])
def test_extremal_family_has_width_two(n):
    assert width(make_Tn(n)).width == 2


def _scanned_width(points, bound=10):
    """Минимум max-min по всем ненулевым функционалам из [-bound, bound]^3"""
    grid = np.array([f for f in itertools.product(range(-bound, bound + 1), repeat=3) if any(f)])
    values = grid @ np.array(points).T
    return int((values.max(axis=1) - values.min(axis=1)).min())


@pytest.mark.slow
@pytest.mark.parametrize("size", [5, 6])
def test_width_matches_functional_scan(seed_classes, size):
    for points in seed_classes.points(size):
        result = width(points)
        assert result.width == _scanned_width(points)
        lo, hi = result.witness.value_range(points)
        assert hi - lo == result.width

"""
Общие фикстуры: эталонные конфигурации и случайные унимодулярные отображения
"""
from typing import List

import numpy as np
import pytest

from equivalence import AffineUnimodularMap
from geometry import IDENTITY, Matrix, convex_hull, lattice_points, mat_mul
from seeds import seed_database

UNIT_TETRAHEDRON = ((0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0))
UNIT_CUBE_POINTS = tuple((x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1))
DOUBLED_SIMPLEX_VERTICES = ((0, 0, 0), (2, 0, 0), (0, 2, 0), (0, 0, 2))
SPIKE_VERTICES = ((-1, 1, 2), (1, 0, 0), (-1, 0, 0), (0, 5, 0))

# Шесть dps-многогранников размера 8: точки, вершины, внутренние, объём, ширина
DPS_SIZE8 = (
    (((-3, -3, -1), (-1, -1, 0), (0, -1, 3), (0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 4, -1)), 4, 4, 51, 3),
    (((-3, -5, 1), (-1, -1, 0), (0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 3, -1), (1, 0, 0), (1, 8, -3)), 4, 4, 39, 3),
    (((-1, -1, -1), (0, 0, 0), (0, 0, 1), (0, 1, 3), (1, -1, 0), (1, 0, 0), (1, 2, 1), (2, -3, -2)), 4, 4, 35, 3),
    (((-2, 1, 1), (-1, -1, 0), (0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 2, -1), (3, -1, 1)), 5, 2, 28, 2),
    (((-2, 1, 1), (-1, -1, 0), (0, 0, 0), (0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 2, -1), (5, -1, -1)), 5, 3, 36, 2),
    (((-1, -2, -1), (-1, -1, 2), (0, 0, 0), (0, 0, 1), (0, 1, 1), (1, 0, 0), (1, 3, 1), (2, 1, 0)), 6, 2, 25, 3),
)


def random_unimodular_matrix(rng: np.random.Generator, steps: int = 6) -> Matrix:
    """Произведение случайных элементарных матриц"""
    m = IDENTITY
    for _ in range(steps):
        i, j = rng.choice(3, size=2, replace=False)
        e = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
        e[int(i)][int(j)] = int(rng.integers(-2, 3))
        if rng.random() < 0.3:
            e[int(i)][int(i)] = -1
        m = mat_mul(tuple(tuple(r) for r in e), m)
    return m


def random_maps(seed: int, count: int) -> List[AffineUnimodularMap]:
    rng = np.random.default_rng(seed)
    maps = []
    for _ in range(count):
        shift = tuple(int(v) for v in rng.integers(-5, 6, size=3))
        maps.append(AffineUnimodularMap(random_unimodular_matrix(rng), shift))
    return maps


@pytest.fixture
def unimodular_maps() -> List[AffineUnimodularMap]:
    return random_maps(seed=20240607, count=25)


@pytest.fixture
def spike_polytope():
    """Восемь точек, ширина 2, единственная несущественная вершина (0, 5, 0)"""
    return tuple(lattice_points(convex_hull(SPIKE_VERTICES)))


@pytest.fixture
def doubled_simplex():
    return tuple(lattice_points(convex_hull(DOUBLED_SIMPLEX_VERTICES)))


@pytest.fixture(scope="session")
def seed_dir(tmp_path_factory) -> str:
    return str(tmp_path_factory.mktemp("seeds"))


@pytest.fixture(scope="session")
def seed_classes(seed_dir):
    """Затравки размеров 5 и 6 (оракул, один раз на сессию)"""
    return seed_database(seed_dir)

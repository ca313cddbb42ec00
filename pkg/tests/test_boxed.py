import pytest

from boxed import (
    COORDINATE_FUNCTIONALS,
    MISSING_EDGE_SUBSETS,
    Q0,
    UNIT_CUBE,
    BoxedCertificate,
    boxed_enumerate_fulledge,
    boxed_enumerate_missingedge,
    boxed_enumerate_q0,
    boxed_all,
    boxed_quasiminimal,
    find_boxed_certificates,
    load_boxed_representatives,
    outlier_menu,
    verify_boxed,
)
from geometry import Functional, convex_hull
from width import is_quasi_minimal

OUTLIERS = ((-1, 0, 0), (0, -1, 1), (0, 1, 2))
BOX_POINTS = ((0, 0, 0), (0, 0, 1), (1, 0, 0))
EXAMPLE = tuple(sorted(OUTLIERS + BOX_POINTS))


def _cert(**changes):
    fields = dict(kind=UNIT_CUBE, functionals=COORDINATE_FUNCTIONALS, outliers=OUTLIERS, box_points=BOX_POINTS)
    fields.update(changes)
    return BoxedCertificate(**fields)


def _vertex_census(items):
    counts = {}
    for points in items:
        v = len(convex_hull(points).vertices)
        counts[v] = counts.get(v, 0) + 1
    return counts


def test_certificate_is_accepted():
    assert verify_boxed(EXAMPLE, _cert()) == (True, None)


@pytest.mark.parametrize("changes, reason", [
    ({"outliers": (OUTLIERS[1], OUTLIERS[0], OUTLIERS[2])}, "outlier_position"),
    ({"outliers": ((5, 5, 5), OUTLIERS[1], OUTLIERS[2])}, "outlier_not_in_configuration"),
    ({"box_points": BOX_POINTS[:2]}, "box_points_mismatch"),
    ({"kind": Q0}, "wrong_box_kind"),
    ({"functionals": (Functional(2, 0, 0), Functional(0, 1, 0), Functional(0, 0, 1))}, "non_primitive_functional"),
    ({"functionals": (Functional(1, 0, 0), Functional(1, 0, 0), Functional(0, 0, 1))}, "dependent_functionals"),
])
def test_bad_certificates_are_rejected(changes, reason):
    assert verify_boxed(EXAMPLE, _cert(**changes)) == (False, reason)


def test_certificate_search_finds_outliers():
    certs = find_boxed_certificates(EXAMPLE)
    assert any(c.kind == UNIT_CUBE and set(c.outliers) == set(OUTLIERS) for c in certs)
    for cert in certs:
        assert verify_boxed(EXAMPLE, cert)[0]


def test_q0_sweep_is_covered_by_unit_cube():
    items = boxed_enumerate_q0()
    assert len(items) == 5
    for item in items:
        assert item.certificate.kind == Q0
        assert verify_boxed(item.form.points, item.certificate)[0]
        assert any(c.kind == UNIT_CUBE for c in find_boxed_certificates(item.form.points))


def test_shipped_representatives():
    reps = load_boxed_representatives()
    assert {n: len(forms) for n, forms in reps.items()} == {7: 23, 8: 7, 9: 1, 10: 1}
    assert _vertex_census(f.points for f in reps[7]) == {4: 4, 5: 15, 6: 4}
    assert _vertex_census(f.points for f in reps[8]) == {4: 2, 5: 5}
    for forms in reps.values():
        for form in forms:
            assert is_quasi_minimal(form.points)
            assert find_boxed_certificates(form.points)


def test_representatives_reject_wrong_size(tmp_path):
    path = tmp_path / "reps.txt"
    path.write_text("8: 0 0 0 1 1 2 1 2 0 2 0 0\n", encoding="ascii")
    with pytest.raises(ValueError):
        load_boxed_representatives(str(path))


@pytest.mark.slow
def test_full_edge_sweep():
    grouped = boxed_enumerate_fulledge()
    assert {n: len(items) for n, items in grouped.items()} == {7: 50, 8: 91, 9: 90, 10: 55, 11: 16}


@pytest.mark.slow
def test_missing_edge_sweep():
    grouped = boxed_enumerate_missingedge()
    assert {n: len(items) for n, items in grouped.items()} == {7: 102, 8: 124, 9: 66}


@pytest.mark.slow
def test_irredundant_classification():
    merged = boxed_all()
    assert {n: len(items) for n, items in merged.items()} == {7: 104, 8: 136, 9: 109, 10: 55, 11: 16}


@pytest.mark.slow
def test_quasi_minimal_boxed_match_representatives():
    reps = load_boxed_representatives()
    for n in range(7, 12):
        found = {item.form.points for item in boxed_quasiminimal(n)}
        assert found == {form.points for form in reps.get(n, [])}


def test_coplanar_outliers_stay_on_the_menu():
    square = MISSING_EDGE_SUBSETS["square"]
    along_x = outlier_menu(square, 0)
    # выброс в плоскости квадрата: оболочка плоская, но без лишних точек
    assert (-1, 0, 0) in along_x
    assert (2, 1, 0) in along_x
    along_z = outlier_menu(square, 2)
    assert (0, 0, -1) in along_z
    # ребро (0,0,0)-(0,0,2) проходит через (0,0,1)
    assert (0, 0, 2) not in along_z

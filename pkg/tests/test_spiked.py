import pytest

from geometry import lattice_closure
from spiked import SPIKED_FAMILIES, UseSeedListsError, spiked_census, spiked_family_instances, spiked_generate
from width import is_quasi_minimal, width_at_most_one


@pytest.mark.parametrize("n", [4, 5, 6])
def test_small_sizes_come_from_seed_lists(n):
    with pytest.raises(UseSeedListsError):
        spiked_generate(n)


def test_size_seven_census():
    assert spiked_census(7) == {4: 21, 5: 6}


@pytest.mark.parametrize("family", ["M", "Q8"])
def test_accepted_size_matches_formula(family):
    family_data = SPIKED_FAMILIES[family]
    accepted = [i for i in spiked_family_instances(7) if i.family == family and i.rejected is None]
    assert accepted
    for instance in accepted:
        assert instance.k == 2
        assert len(lattice_closure(instance.vertices)) == family_data["size"](instance.k, instance.a, instance.b) == 7
        assert len(instance.points) == 7


def test_size_seven_classes_are_quasi_minimal():
    for form in spiked_generate(7):
        assert form.size == 7
        assert not width_at_most_one(form.points)[0]
        assert is_quasi_minimal(form.points)


def test_unlabeled_survivors_only_add_classes():
    strict = {form.points for form in spiked_generate(7)}
    relaxed = {form.points for form in spiked_generate(7, keep_unlabeled=True)}
    assert strict <= relaxed


@pytest.mark.slow
@pytest.mark.parametrize("n, expected", [
    (8, {4: 22, 5: 13}),
    (9, {4: 26, 5: 17}),
    (10, {4: 24, 5: 21}),
    (11, {4: 24, 5: 25}),
])
def test_larger_census(n, expected):
    assert spiked_census(n) == expected

import pytest

from config import EXCEPTIONAL_SIZE6
from equivalence import canonical_form
from seeds import (
    BoundTooSmallError,
    SeedDatabase,
    SeedValidationFailed,
    empty_tetrahedra,
    hnf_matrices,
    oracle_enumerate,
    run_hash,
    seed_database,
    seed_path,
    validate_seeds,
)
from store import read_db, write_db
from width import width_at_most_one


def test_hnf_matrices_up_to_two():
    matrices = list(hnf_matrices(2))
    assert len(matrices) == 8
    assert all(m[0][0] * m[1][1] * m[2][2] <= 2 for m in matrices)


def test_empty_tetrahedra_up_to_two():
    assert len(empty_tetrahedra(2)) == 2


def test_bound_below_maximum_volume_is_refused():
    with pytest.raises(BoundTooSmallError):
        oracle_enumerate(5, 19)


def test_unsupported_oracle_size():
    with pytest.raises(ValueError):
        oracle_enumerate(8, 100)


def test_validation_rejects_wrong_counts():
    with pytest.raises(SeedValidationFailed):
        validate_seeds(SeedDatabase())


def test_seed_path_layout(tmp_path):
    assert seed_path(5, str(tmp_path)).endswith("size_05.lp3")


def test_run_hash_ignores_order():
    records = [((0, 0, 0), (0, 0, 1)), ((0, 0, 0), (1, 0, 0))]
    assert run_hash(records) == run_hash(list(reversed(records)))


@pytest.mark.slow
def test_oracle_size_five():
    forms = oracle_enumerate(5, 20)
    assert len(forms) == 9
    for form in forms:
        assert form.size == 5
        assert not width_at_most_one(form.points)[0]


@pytest.mark.slow
def test_seed_database_is_cached_and_validated(tmp_path):
    seeds = seed_database(str(tmp_path))
    assert {size: len(forms) for size, forms in seeds.classes.items()} == {5: 9, 6: 76}
    assert canonical_form(EXCEPTIONAL_SIZE6)[0].points in set(seeds.points(6))
    assert "run_hash=" in seeds.provenance[5]

    # Второй запуск читает кэш
    again = seed_database(str(tmp_path))
    assert again.points(6) == seeds.points(6)

    # Испорченный кэш не проходит проверку
    path = seed_path(6, str(tmp_path))
    db = read_db(path)
    db.records = db.records[1:]
    write_db(path, db)
    with pytest.raises(SeedValidationFailed):
        seed_database(str(tmp_path))

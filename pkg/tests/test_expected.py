from expected import (
    CENSUS_TOTALS,
    ERRATUM,
    FAIL,
    PASS,
    SKIPPED,
    VOLUME_MAX,
    printed_value,
    verify_against_published,
)


def _rows(computed, sizes=None, table=None):
    rows = verify_against_published(computed, sizes)
    return {row.key: row for row in rows if table is None or row.table == table}


def test_matching_and_mismatching_cells():
    rows = _rows({"census_total": {5: 9, 6: 75}}, table="census_total")
    assert rows[5].status == PASS
    assert rows[6].status == FAIL
    assert rows[6].actual == 75
    assert rows[7].status == SKIPPED


def test_sizes_filter_skips_cells():
    rows = _rows({"census_total": {5: 9, 6: 75}}, sizes=[5], table="census_total")
    assert rows[5].status == PASS
    assert rows[6].status == SKIPPED


def test_missing_table_is_skipped():
    rows = _rows({}, table="dps")
    assert rows
    assert all(row.status == SKIPPED for row in rows.values())


def test_erratum_cell():
    computed = {"boxed_total": {("irredundant", 9): 109}}
    rows = _rows(computed, table="boxed_total")
    assert rows[("irredundant", 9)].status == ERRATUM
    assert printed_value("boxed_total", ("irredundant", 9)) == 279
    assert printed_value("census_total", 11) == 156464


def test_volume_maximum_formula():
    assert VOLUME_MAX.cells == {5: 20, 6: 32, 7: 44, 8: 56, 9: 68, 10: 80, 11: 92}
    assert CENSUS_TOTALS.size(7) == 7

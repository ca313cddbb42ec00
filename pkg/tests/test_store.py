import pytest

from equivalence import canonical_points
from store import (
    LP3_HEADER,
    LP3File,
    LP3FormatError,
    LP3VersionError,
    Table,
    diff_db,
    format_record,
    format_tsv,
    ingest,
    parse_loose,
    parse_record,
    read_db,
    render_db,
    write_db,
    write_tables,
)
from tests.conftest import UNIT_CUBE_POINTS, UNIT_TETRAHEDRON


@pytest.fixture
def records(spike_polytope, doubled_simplex):
    return [canonical_points(spike_polytope), canonical_points(doubled_simplex), canonical_points(UNIT_CUBE_POINTS)]


def test_write_read_is_byte_stable(tmp_path, records):
    path = str(tmp_path / "db.lp3")
    write_db(path, LP3File(records=records, comments=[" test"]))
    first = (tmp_path / "db.lp3").read_bytes()
    db = read_db(path)
    assert sorted(db.records) == sorted(records)
    assert db.comments == [" test"]
    write_db(path, db)
    assert (tmp_path / "db.lp3").read_bytes() == first
    assert first.startswith((LP3_HEADER + "\n").encode("ascii"))
    assert first.endswith(b"\n")


def test_record_format():
    assert format_record(UNIT_TETRAHEDRON) == "4 0 0 0 0 0 1 0 1 0 1 0 0"
    assert parse_record("4 0 0 0 0 0 1 0 1 0 1 0 0") == UNIT_TETRAHEDRON


@pytest.mark.parametrize("line", ["4 0 0 0", "x 0 0", "2 0 0 0 1 1 1 5"])
def test_bad_records(line):
    with pytest.raises(LP3FormatError):
        parse_record(line, 3)


def test_loose_lines():
    assert parse_loose("0 0 0  1 0 0", 1) == ((0, 0, 0), (1, 0, 0))
    assert parse_loose("2 0 0 0 1 0 0", 1) == ((0, 0, 0), (1, 0, 0))
    with pytest.raises(LP3FormatError):
        parse_loose("1 2", 1)


def test_strict_read_rejects_missing_header(tmp_path):
    path = tmp_path / "db.lp3"
    path.write_text("4 0 0 0 0 0 1 0 1 0 1 0 0\n", encoding="ascii")
    with pytest.raises(LP3VersionError):
        read_db(str(path))


def test_strict_read_rejects_non_canonical(tmp_path):
    path = tmp_path / "db.lp3"
    moved = tuple(sorted((x + 1, y, z) for x, y, z in UNIT_TETRAHEDRON))
    path.write_text(f"{LP3_HEADER}\n{format_record(moved)}\n", encoding="ascii")
    with pytest.raises(LP3FormatError):
        read_db(str(path))


def test_strict_read_rejects_unsorted(tmp_path, records):
    path = tmp_path / "db.lp3"
    text = render_db(LP3File(records=records))
    header, *lines = text.strip("\n").split("\n")
    path.write_text("\n".join([header, *reversed(lines)]) + "\n", encoding="ascii")
    with pytest.raises(LP3FormatError):
        read_db(str(path))


def test_ingest_repairs_external_lists(tmp_path):
    path = tmp_path / "loose.txt"
    moved = [(x + 3, y - 1, z) for x, y, z in UNIT_CUBE_POINTS]
    path.write_text(
        " ".join(str(v) for p in moved for v in p) + "\n"
        + " ".join(str(v) for p in UNIT_CUBE_POINTS for v in p) + "\n",
        encoding="ascii",
    )
    db = ingest(str(path))
    assert db.records == [canonical_points(UNIT_CUBE_POINTS)]


def test_diff(tmp_path, records):
    first, second = str(tmp_path / "a.lp3"), str(tmp_path / "b.lp3")
    write_db(first, LP3File(records=records))
    write_db(second, LP3File(records=records[1:]))
    only_first, only_second = diff_db(first, second)
    assert only_first == [records[0]]
    assert only_second == []
    assert diff_db(first, first) == ([], [])


def test_tables(tmp_path):
    table = Table("census", ["size", "count"], [[5, 9], [6, 76]])
    assert format_tsv(table) == "census\nsize\tcount\n5\t9\n6\t76\n"
    paths = write_tables(str(tmp_path / "report"), [table])
    assert paths[0].endswith("census.tsv")
    assert (tmp_path / "report" / "census.tsv").read_text(encoding="utf-8") == format_tsv(table)

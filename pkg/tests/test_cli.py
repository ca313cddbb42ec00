from cli import main
from equivalence import canonical_points
from store import LP3File, format_record, write_db
from tests.conftest import UNIT_CUBE_POINTS


def test_usage_errors():
    assert main([]) == 2
    assert main(["enumerate", "--out", "x", "--max-size", "4"]) == 2
    assert main(["enumerate", "--out", "x", "--threads", "zero"]) == 2
    assert main(["oracle", "--size", "9", "--out", "x"]) == 2


def test_canon_prints_canonical_closure(tmp_path, capsys, spike_polytope, unimodular_maps):
    moved = unimodular_maps[3].apply(spike_polytope)
    path = tmp_path / "input.txt"
    path.write_text(
        "# spike\n" + " ".join(str(v) for p in moved for v in p) + "\n",
        encoding="ascii",
    )
    assert main(["canon", str(path)]) == 0
    assert capsys.readouterr().out == format_record(canonical_points(spike_polytope)) + "\n"


def test_diff_exit_codes(tmp_path, capsys, doubled_simplex):
    first, second = str(tmp_path / "a.lp3"), str(tmp_path / "b.lp3")
    cube = canonical_points(UNIT_CUBE_POINTS)
    simplex = canonical_points(doubled_simplex)
    write_db(first, LP3File(records=[cube, simplex]))
    write_db(second, LP3File(records=[cube]))
    assert main(["diff", first, first]) == 0
    capsys.readouterr()
    assert main(["diff", first, second]) == 1
    assert capsys.readouterr().out == f"< {format_record(simplex)}\n"


def test_oracle_bound_too_small(tmp_path):
    assert main(["oracle", "--size", "5", "--volume-bound", "19", "--out", str(tmp_path / "o.lp3")]) == 1


def test_verify_needs_a_run(tmp_path):
    assert main(["verify", "--in", str(tmp_path)]) == 1


def test_missing_file(tmp_path):
    assert main(["canon", str(tmp_path / "absent.txt")]) == 1

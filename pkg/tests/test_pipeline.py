import asyncio

import pytest

from config import PROVENANCE_BOTH, PROVENANCE_MERGED, PROVENANCE_SEED
from equivalence import canonical_points
from pipeline import (
    EnumerationRun,
    ProvenanceConflictError,
    RunMetrics,
    enumerate_polytopes,
    load_run,
    provenance,
    size_path,
)
from store import LP3File, write_db
from tests.conftest import UNIT_CUBE_POINTS


def test_metrics():
    metrics = RunMetrics()
    metrics.start_size(8, 10)
    metrics.track_group(3)
    metrics.track_group(0)
    stats = metrics.get_stats()
    assert stats["size"] == 8
    assert stats["groups"] == "2/10"
    assert stats["classes"] == 3


def test_provenance_lookup(spike_polytope, doubled_simplex, unimodular_maps):
    spike = canonical_points(spike_polytope)
    simplex = canonical_points(doubled_simplex)
    run = EnumerationRun(max_size=10, out_dir="unused")
    run.provenance[9] = {spike: PROVENANCE_MERGED}
    run.provenance[10] = {simplex: PROVENANCE_BOTH}
    assert provenance(run, 9, unimodular_maps[0].apply(spike_polytope)) == PROVENANCE_MERGED
    with pytest.raises(ProvenanceConflictError):
        provenance(run, 10, doubled_simplex)
    with pytest.raises(KeyError):
        provenance(run, 9, doubled_simplex)


def test_load_run(tmp_path):
    cube = canonical_points(UNIT_CUBE_POINTS)
    write_db(size_path(str(tmp_path), 5), LP3File(records=[cube]))
    write_db(size_path(str(tmp_path), 6), LP3File(records=[]))
    write_db(size_path(str(tmp_path), 8), LP3File(records=[cube]))
    assert size_path(str(tmp_path), 6).endswith("size_06.lp3")
    assert load_run(str(tmp_path)) == {5: [cube], 6: []}
    assert load_run(str(tmp_path), max_size=8) == {5: [cube], 6: [], 8: [cube]}


def test_small_max_size_is_refused(tmp_path):
    with pytest.raises(ValueError):
        asyncio.run(enumerate_polytopes(max_size=4, out_dir=str(tmp_path)))



def _outputs(out_dir):
    return {name: (out_dir / name).read_bytes()
            for name in ("size_05.lp3", "size_06.lp3", "size_07.lp3", "summary.tsv")}


@pytest.mark.slow
def test_enumerate_to_seven(tmp_path, seed_dir):
    out = tmp_path / "run"
    run = asyncio.run(enumerate_polytopes(max_size=7, out_dir=str(out), seed_dir=seed_dir))
    assert run.totals() == {5: 9, 6: 76, 7: 496}
    assert set(run.provenance[5].values()) == {PROVENANCE_SEED}
    first = _outputs(out)

    resumed = asyncio.run(enumerate_polytopes(max_size=7, out_dir=str(out), seed_dir=seed_dir, resume=True))
    assert resumed.resumed_sizes == [7]
    assert _outputs(out) == first

    parallel = tmp_path / "parallel"
    asyncio.run(enumerate_polytopes(max_size=7, out_dir=str(parallel), seed_dir=seed_dir, workers=2))
    assert _outputs(parallel) == first

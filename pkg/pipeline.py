"""
Полный прогон перечисления: затравки -> для n = 7..N квазиминимальные ∪ склеенные
Чекпоинты по размерам и по группам склейки, возобновление прогона.
"""
import asyncio
import logging
import os
import time
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Set, Tuple

from apscheduler.schedulers.asyncio import AsyncIOScheduler

from boxed import boxed_quasiminimal
from config import (
    CHECKPOINT_NAME,
    DEFAULT_MAX_SIZE,
    MAX_BOXED_SIZE,
    MIN_PIPELINE_SIZE,
    PROGRESS_SECONDS,
    PROVENANCE_BOTH,
    PROVENANCE_MERGED,
    PROVENANCE_QUASI_MINIMAL,
    PROVENANCE_SEED,
    SEED_DIR,
)
from database import (
    get_checkpoint_stats,
    get_classes,
    get_completed_sizes,
    get_meta,
    get_processed_groups,
    init_db,
    mark_size_complete,
    save_classes,
    save_merge_group,
    set_meta,
)
from equivalence import canonical_points
from geometry import Point
from merging import ChildIndex, MergeGroup, VertexRemoval, merge_group, vertex_removals
from seeds import seed_database
from spiked import spiked_generate
from store import LP3File, Table, read_db, record_key, write_db, write_tsv

logger = logging.getLogger(__name__)

Configuration = Tuple[Point, ...]

REMOVAL_CHUNK = 64


class ProvenanceConflictError(RuntimeError):
    """Класс получен и как квазиминимальный, и как склеенный"""


@dataclass
class EnumerationRun:
    max_size: int
    out_dir: str
    classes: Dict[int, List[Configuration]] = field(default_factory=dict)
    provenance: Dict[int, Dict[Configuration, str]] = field(default_factory=dict)
    seconds: Dict[int, float] = field(default_factory=dict)
    resumed_sizes: List[int] = field(default_factory=list)

    @property
    def checkpoint_path(self) -> str:
        return os.path.join(self.out_dir, CHECKPOINT_NAME)

    def totals(self) -> Dict[int, int]:
        return {n: len(items) for n, items in sorted(self.classes.items())}


class RunMetrics:
    """Счётчики для периодического лога прогресса"""
    def __init__(self):
        self.size = 0
        self.groups_total = 0
        self.groups_done = 0
        self.classes = 0
        self.start_time = time.time()

    def start_size(self, size: int, groups_total: int):
        self.size = size
        self.groups_total = groups_total
        self.groups_done = 0

    def track_group(self, produced: int):
        self.groups_done += 1
        self.classes += produced

    def get_stats(self) -> dict:
        elapsed = int(time.time() - self.start_time)
        return {
            "size": self.size,
            "groups": f"{self.groups_done}/{self.groups_total}",
            "classes": self.classes,
            "elapsed_human": f"{elapsed // 3600}h {(elapsed % 3600) // 60}m {elapsed % 60}s",
        }


async def log_progress(metrics: RunMetrics, checkpoint_path: str):
    """Прогресс прогона (интервальная задача планировщика)"""
    stats = metrics.get_stats()
    try:
        stored = await get_checkpoint_stats(checkpoint_path)
    except Exception as e:
        logger.warning(f"progress: checkpoint not readable yet: {e}")
        stored = {}
    logger.info(
        f"📊 size {stats['size']}: groups {stats['groups']}, "
        f"merged candidates {stats['classes']}, "
        f"stored classes {stored.get('classes_count', 0)}, elapsed {stats['elapsed_human']}"
    )


# ==================== РАБОТА В ПРОЦЕССАХ ====================

def quasi_minimal_classes(n: int) -> List[Configuration]:
    """Шипастые (с непомеченными выжившими) ∪ коробочные квазиминимальные"""
    found: Set[Configuration] = {form.points for form in spiked_generate(n, keep_unlabeled=True)}
    if n <= MAX_BOXED_SIZE:
        found.update(item.form.points for item in boxed_quasiminimal(n))
    return sorted(found, key=record_key)


def removals_for(parents: Sequence[Configuration]) -> List[VertexRemoval]:
    result = []
    for parent in parents:
        result.extend(vertex_removals(parent))
    return result


def merge_job(group: MergeGroup, n: int) -> Tuple[str, List[Configuration]]:
    return group.group_id, merge_group(group, n)


async def _call(executor: Optional[Executor], func, *args):
    """Один рабочий: прямо в этом процессе"""
    if executor is None:
        await asyncio.sleep(0)
        return func(*args)
    return await asyncio.get_running_loop().run_in_executor(executor, func, *args)


# ==================== ПРОГОН ====================

def provenance(run: EnumerationRun, n: int, points: Sequence[Point]) -> str:
    """Происхождение класса в прогоне"""
    key = canonical_points(points)
    value = run.provenance.get(n, {}).get(key)
    if value is None:
        raise KeyError(f"class is not in the size-{n} database")
    if value == PROVENANCE_BOTH:
        raise ProvenanceConflictError(f"ProvenanceConflict: size-{n} class is both quasi-minimal and merged")
    return value


def size_path(out_dir: str, n: int) -> str:
    return os.path.join(out_dir, f"size_{n:02d}.lp3")


def _write_size(out_dir: str, n: int, classes: Sequence[Configuration], provenances: Dict[Configuration, str]):
    counts = {p: sum(1 for v in provenances.values() if v == p)
              for p in (PROVENANCE_SEED, PROVENANCE_QUASI_MINIMAL, PROVENANCE_MERGED)}
    summary = " ".join(f"{p}={c}" for p, c in counts.items() if c)
    write_db(size_path(out_dir, n), LP3File(records=list(classes), comments=[f" size={n} classes={len(classes)} {summary}"]))


async def _merge_size(run: EnumerationRun, n: int, parents: Sequence[Configuration], quasi: Set[Configuration],
                      executor: Optional[Executor], metrics: RunMetrics, resume: bool) -> None:
    """Склейка всех групп размера n с чекпоинтом на каждую группу"""
    index = ChildIndex()
    chunks = [parents[i:i + REMOVAL_CHUNK] for i in range(0, len(parents), REMOVAL_CHUNK)]
    for removals in await asyncio.gather(*(_call(executor, removals_for, chunk) for chunk in chunks)):
        index.extend(removals)
    groups = index.groups()

    done = await get_processed_groups(run.checkpoint_path, n) if resume else set()
    if done:
        logger.warning(f"size {n}: resuming, {len(done)} of {len(groups)} merge groups already stored")
    pending = [g for g in groups if g.group_id not in done]
    metrics.start_size(n, len(groups))
    metrics.groups_done = len(groups) - len(pending)
    logger.info(f"size {n}: {len(index)} removals in {len(groups)} merge groups")
    # Один писатель в SQLite
    write_lock = asyncio.Lock()

    async def handle(group: MergeGroup):
        group_id, produced = await _call(executor, merge_job, group, n)
        clash = quasi.intersection(produced)
        if clash:
            logger.error(f"size {n}: merge group {group_id} produced {len(clash)} quasi-minimal classes")
            raise ProvenanceConflictError(
                f"ProvenanceConflict: size-{n} class {sorted(clash)[0]} is both quasi-minimal and merged"
            )
        async with write_lock:
            await save_merge_group(run.checkpoint_path, n, group_id, produced, PROVENANCE_MERGED)
        metrics.track_group(len(produced))

    if executor is None:
        for group in pending:
            await handle(group)
    else:
        await asyncio.gather(*(handle(group) for group in pending))


async def enumerate_polytopes(max_size: int = DEFAULT_MAX_SIZE, out_dir: str = "out", workers: int = 1,
                              resume: bool = False, seed_dir: str = SEED_DIR,
                              progress_seconds: int = PROGRESS_SECONDS) -> EnumerationRun:
    """Все классы ширины > 1 размеров 5..max_size"""
    if max_size < 5:
        raise ValueError(f"max size must be >= 5, got {max_size}")
    if max_size > MAX_BOXED_SIZE:
        logger.warning(f"sizes above {MAX_BOXED_SIZE} use spiked quasi-minimal inputs only")

    run = EnumerationRun(max_size=max_size, out_dir=out_dir)
    os.makedirs(out_dir, exist_ok=True)
    if not resume and os.path.exists(run.checkpoint_path):
        logger.warning(f"removing previous checkpoint {run.checkpoint_path} (no --resume)")
        os.remove(run.checkpoint_path)
    await init_db(run.checkpoint_path)
    previous = await get_meta(run.checkpoint_path, "max_size")
    if previous is not None and int(previous) != max_size:
        logger.warning(f"checkpoint was started with max size {previous}, continuing to {max_size}")
    await set_meta(run.checkpoint_path, "max_size", str(max_size))

    seeds = await asyncio.to_thread(seed_database, seed_dir, workers)
    completed = await get_completed_sizes(run.checkpoint_path)
    for n in range(5, min(MIN_PIPELINE_SIZE - 1, max_size) + 1):
        classes = sorted(seeds.points(n), key=record_key)
        await save_classes(run.checkpoint_path, n, classes, PROVENANCE_SEED)
        run.classes[n] = classes
        run.provenance[n] = {c: PROVENANCE_SEED for c in classes}
        _write_size(out_dir, n, classes, run.provenance[n])
        await mark_size_complete(run.checkpoint_path, n, len(classes))

    metrics = RunMetrics()
    scheduler = AsyncIOScheduler()
    scheduler.add_job(log_progress, 'interval', seconds=progress_seconds, id='progress',
                      args=[metrics, run.checkpoint_path])
    scheduler.start()
    executor = ProcessPoolExecutor(max_workers=workers) if workers > 1 else None
    try:
        for n in range(MIN_PIPELINE_SIZE, max_size + 1):
            started = time.time()
            if resume and n in completed:
                stored = await get_classes(run.checkpoint_path, n)
                run.classes[n] = sorted(stored, key=record_key)
                run.provenance[n] = stored
                run.resumed_sizes.append(n)
                _write_size(out_dir, n, run.classes[n], stored)
                logger.warning(f"size {n}: loaded {len(stored)} classes from checkpoint")
                continue

            quasi_list = await _call(executor, quasi_minimal_classes, n)
            quasi = set(quasi_list)
            await save_classes(run.checkpoint_path, n, quasi_list, PROVENANCE_QUASI_MINIMAL)
            logger.info(f"size {n}: {len(quasi)} quasi-minimal classes")

            await _merge_size(run, n, run.classes[n - 1], quasi, executor, metrics, resume)

            stored = await get_classes(run.checkpoint_path, n)
            run.classes[n] = sorted(stored, key=record_key)
            run.provenance[n] = stored
            _write_size(out_dir, n, run.classes[n], stored)
            await mark_size_complete(run.checkpoint_path, n, len(stored))
            run.seconds[n] = time.time() - started
            logger.info(f"✅ size {n}: {len(stored)} classes in {run.seconds[n]:.1f}s")
    finally:
        if executor is not None:
            executor.shutdown(wait=True)
        if scheduler.running:
            scheduler.shutdown(wait=False)

    summary = Table("summary", ["size", "total", "seed", "quasi_minimal", "merged"])
    for n in sorted(run.classes):
        values = list(run.provenance[n].values())
        summary.rows.append([n, len(run.classes[n]), values.count(PROVENANCE_SEED),
                             values.count(PROVENANCE_QUASI_MINIMAL), values.count(PROVENANCE_MERGED)])
    write_tsv(os.path.join(out_dir, "summary.tsv"), summary)
    return run


def load_run(out_dir: str, max_size: Optional[int] = None) -> Dict[int, List[Configuration]]:
    """Базы size_NN.lp3 из каталога прогона"""
    db: Dict[int, List[Configuration]] = {}
    for n in range(5, (max_size or 64) + 1):
        path = size_path(out_dir, n)
        if not os.path.exists(path):
            if max_size is None:
                break
            continue
        db[n] = read_db(path).records
    return db

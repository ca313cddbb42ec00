"""
SQLite чекпоинт прогона перечисления
Классы, обработанные группы склейки и завершённые размеры.
"""
import aiosqlite
import logging
import sqlite3
import time
from typing import Dict, Iterable, Optional, Sequence, Set, Tuple

from geometry import Point
from store import format_record, parse_record

logger = logging.getLogger(__name__)

Configuration = Tuple[Point, ...]


class CheckpointCorruptedError(RuntimeError):
    """Чекпоинт не читается"""

    def __init__(self, path: str, reason: str):
        super().__init__(
            f"CheckpointCorrupted: {path}: {reason}. "
            f"Delete the checkpoint or rerun without --resume"
        )
        self.path = path


async def init_db(db_path: str):
    """Создание схемы чекпоинта"""
    try:
        async with aiosqlite.connect(db_path) as db:
            # Классы: уникальность по (размер, запись LP3)
            await db.execute("""
                CREATE TABLE IF NOT EXISTS classes (
                    size INTEGER NOT NULL,
                    record TEXT NOT NULL,
                    provenance TEXT NOT NULL,
                    created_at INTEGER NOT NULL,
                    UNIQUE(size, record)
                )
            """)

            await db.execute("""
                CREATE INDEX IF NOT EXISTS idx_classes_size
                ON classes(size, provenance)
            """)

            # Группы склейки, уже записанные целиком
            await db.execute("""
                CREATE TABLE IF NOT EXISTS merge_groups (
                    size INTEGER NOT NULL,
                    group_id TEXT NOT NULL,
                    produced INTEGER DEFAULT 0,
                    created_at INTEGER NOT NULL,
                    PRIMARY KEY (size, group_id)
                )
            """)

            await db.execute("""
                CREATE TABLE IF NOT EXISTS sizes (
                    size INTEGER PRIMARY KEY,
                    total INTEGER NOT NULL,
                    completed_at INTEGER NOT NULL
                )
            """)

            await db.execute("""
                CREATE TABLE IF NOT EXISTS meta (
                    key TEXT PRIMARY KEY,
                    value TEXT NOT NULL
                )
            """)

            await db.commit()
    except sqlite3.DatabaseError as e:
        raise CheckpointCorruptedError(db_path, str(e)) from e

    logger.debug(f"checkpoint initialized at {db_path}")


async def save_classes(db_path: str, size: int, classes: Iterable[Sequence[Point]], provenance: str) -> int:
    """Вставка-если-нет; возвращает число новых строк"""
    now = int(time.time())
    rows = [(size, format_record(points), provenance, now) for points in classes]
    async with aiosqlite.connect(db_path) as db:
        before = db.total_changes
        await db.executemany("""
            INSERT OR IGNORE INTO classes (size, record, provenance, created_at)
            VALUES (?, ?, ?, ?)
        """, rows)
        await db.commit()
        return db.total_changes - before


async def save_merge_group(db_path: str, size: int, group_id: str,
                           classes: Iterable[Sequence[Point]], provenance: str) -> None:
    """Классы группы и её идентификатор одной транзакцией"""
    now = int(time.time())
    rows = [(size, format_record(points), provenance, now) for points in classes]
    async with aiosqlite.connect(db_path) as db:
        await db.execute("BEGIN")
        try:
            await db.executemany("""
                INSERT OR IGNORE INTO classes (size, record, provenance, created_at)
                VALUES (?, ?, ?, ?)
            """, rows)
            await db.execute("""
                INSERT OR REPLACE INTO merge_groups (size, group_id, produced, created_at)
                VALUES (?, ?, ?, ?)
            """, (size, group_id, len(rows), now))
            await db.commit()
        except Exception:
            await db.rollback()
            raise


async def get_processed_groups(db_path: str, size: int) -> Set[str]:
    try:
        async with aiosqlite.connect(db_path) as db:
            async with db.execute(
                "SELECT group_id FROM merge_groups WHERE size = ?", (size,)
            ) as cursor:
                return {row[0] for row in await cursor.fetchall()}
    except sqlite3.DatabaseError as e:
        raise CheckpointCorruptedError(db_path, str(e)) from e


async def get_classes(db_path: str, size: int, provenance: Optional[str] = None) -> Dict[Configuration, str]:
    """Классы размера -> провенанс"""
    query = "SELECT record, provenance FROM classes WHERE size = ?"
    params: Tuple = (size,)
    if provenance is not None:
        query += " AND provenance = ?"
        params = (size, provenance)
    try:
        async with aiosqlite.connect(db_path) as db:
            async with db.execute(query, params) as cursor:
                rows = await cursor.fetchall()
    except sqlite3.DatabaseError as e:
        raise CheckpointCorruptedError(db_path, str(e)) from e
    return {parse_record(record): prov for record, prov in rows}


async def mark_size_complete(db_path: str, size: int, total: int) -> None:
    async with aiosqlite.connect(db_path) as db:
        await db.execute("""
            INSERT OR REPLACE INTO sizes (size, total, completed_at)
            VALUES (?, ?, ?)
        """, (size, total, int(time.time())))
        await db.commit()


async def get_completed_sizes(db_path: str) -> Dict[int, int]:
    """Завершённые размеры -> число классов"""
    try:
        async with aiosqlite.connect(db_path) as db:
            async with db.execute("SELECT size, total FROM sizes ORDER BY size") as cursor:
                return {size: total for size, total in await cursor.fetchall()}
    except sqlite3.DatabaseError as e:
        raise CheckpointCorruptedError(db_path, str(e)) from e


async def set_meta(db_path: str, key: str, value: str) -> None:
    async with aiosqlite.connect(db_path) as db:
        await db.execute("INSERT OR REPLACE INTO meta (key, value) VALUES (?, ?)", (key, value))
        await db.commit()


async def get_meta(db_path: str, key: str) -> Optional[str]:
    try:
        async with aiosqlite.connect(db_path) as db:
            async with db.execute("SELECT value FROM meta WHERE key = ?", (key,)) as cursor:
                row = await cursor.fetchone()
                return row[0] if row else None
    except sqlite3.DatabaseError as e:
        raise CheckpointCorruptedError(db_path, str(e)) from e


async def get_checkpoint_stats(db_path: str) -> Dict[str, int]:
    """Счётчики для логов прогресса"""
    stats = {}
    async with aiosqlite.connect(db_path) as db:
        for table in ("classes", "merge_groups", "sizes"):
            async with db.execute(f"SELECT COUNT(*) FROM {table}") as cursor:
                row = await cursor.fetchone()
                stats[f"{table}_count"] = row[0] if row else 0
    return stats


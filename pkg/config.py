import os
import sys
from dotenv import load_dotenv

load_dotenv()

BASE_DIR = os.path.dirname(os.path.abspath(__file__))


def _int_from_env(name: str, default: int) -> int:
    """Прочитать целое из окружения или выйти с ошибкой"""
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        print(f"❌ ОШИБКА: {name} должно быть целым числом, получено {raw!r}")
        print(f"   Исправьте .env или уберите {name} из окружения")
        sys.exit(1)
    if value < 1:
        print(f"❌ ОШИБКА: {name} должно быть >= 1, получено {value}")
        sys.exit(1)
    return value


# Настройки процесса (только значения по умолчанию для флагов CLI)
LOG_LEVEL = os.getenv("POLY3_LOG_LEVEL", "INFO").upper()
DATA_DIR = os.getenv("POLY3_DATA_DIR", os.path.join(BASE_DIR, "data"))
DEFAULT_WORKERS = _int_from_env("POLY3_WORKERS", os.cpu_count() or 1)
PROGRESS_SECONDS = _int_from_env("POLY3_PROGRESS_SECONDS", 30)

SEED_DIR = os.path.join(DATA_DIR, "seeds")
BOXED_REPRESENTATIVES_PATH = os.path.join(DATA_DIR, "boxed_quasiminimal.txt")
CHECKPOINT_NAME = "checkpoint.sqlite"

# Перечисление
DEFAULT_MAX_SIZE = 11
MIN_PIPELINE_SIZE = 7
MAX_BOXED_SIZE = 11  # d + 2^d при d = 3
MAX_DPS_SIZE = 8  # 2^d

# Максимальный объём размера n равен 12(n-4)+8
ORACLE_VOLUME_BOUNDS = {5: 20, 6: 32, 7: 44}
SEED_EXPECTED_COUNTS = {5: 9, 6: 76}


def max_volume(size: int) -> int:
    """Максимальный нормированный объём при данном размере"""
    return 12 * (size - 4) + 8


# Исключительный многогранник размера 6: не квазиминимальный и не склеенный
EXCEPTIONAL_SIZE6 = (
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (1, 2, 3), (-1, -2, -3),
)

# Похожий многогранник размера 6, но склеенный
EXCEPTIONAL_SIZE6_TWIN = (
    (0, 0, 0), (1, 0, 0), (0, 1, 0), (-1, -1, 0), (1, 2, 3), (-1, 1, -3),
)

# Провенанс классов в прогоне
PROVENANCE_QUASI_MINIMAL = "quasi-minimal"
PROVENANCE_MERGED = "merged"
PROVENANCE_BOTH = "both"
PROVENANCE_SEED = "seed"

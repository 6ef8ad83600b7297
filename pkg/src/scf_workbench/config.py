"""
Configuration module for the social choice workbench.
Defines paths, size limits, file format tags and logging.
"""
import os
import logging
from pathlib import Path


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logging.getLogger(__name__).warning(f"Ignoring non-integer {name}={raw!r}, using {default}")
        return default


BASE_DIR = Path(os.environ.get("SCF_BASE", ".")).resolve()
LOG_DIR = str(Path(os.environ.get("SCF_LOG_DIR", str(BASE_DIR / 'logs'))).resolve())
LOG_LEVEL = os.environ.get("SCF_LOG_LEVEL", "INFO").upper()

# Largest table, in entries (m!)^n, any construction may allocate.
SIZE_GUARD = _env_int("SCF_SIZE_GUARD", 2 ** 24)
# Largest profile count the exhaustive search accepts.
SEARCH_SCOPE = 6 ** 4
DEFAULT_WORKERS = 1

TABLE_FORMAT_TAG = 'gssc'
TABLE_FORMAT_VERSION = 1
TRACE_FORMAT_TAG = 'gssc-trace'
TRACE_FORMAT_VERSION = 1

os.makedirs(LOG_DIR, exist_ok=True)

logging.basicConfig(
    level=getattr(logging, LOG_LEVEL, logging.INFO),
    format='[%(asctime)s] %(levelname)s: - %(message)s',
    handlers=[
        logging.FileHandler(os.path.join(LOG_DIR, 'scf.log')),
        logging.StreamHandler()
    ]
)

logger = logging.getLogger(__name__)

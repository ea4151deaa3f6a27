from dotenv import load_dotenv
import os

load_dotenv()


def _env_bool(name, default=False):
    value = os.environ.get(name)
    if value is None:
        return default
    return value.strip().lower() in {"1", "true", "yes", "on"}


def _env_int(name, default):
    value = os.environ.get(name)
    if value is None or not value.strip():
        return default
    try:
        return int(value)
    except ValueError:
        return default


def _env_float(name, default):
    value = os.environ.get(name)
    if value is None or not value.strip():
        return default
    try:
        return float(value)
    except ValueError:
        return default


class Config:
    # Worker pool
    HH_LAB_THREADS = max(1, _env_int('HH_LAB_THREADS', min(8, os.cpu_count() or 1)))
    CHUNK_CELLS = max(1024, _env_int('HH_LAB_CHUNK_CELLS', 65536))  # cells per worker chunk

    LOG_LEVEL = os.environ.get('HH_LAB_LOG_LEVEL', 'WARNING').upper()
    RICH_TRACEBACKS = _env_bool('HH_LAB_RICH_TRACEBACKS', False)

    # Integration driver
    DEFAULT_TOL = _env_float('HH_LAB_DEFAULT_TOL', 1e-6)
    MAX_DEPTH = _env_int('HH_LAB_MAX_DEPTH', 20)  # dyadic depths 1..MAX_DEPTH, at most 2^20 cells
    TERNARY_REL_TOL = 1e-9  # relative to the cell width
    TERNARY_MAX_STEPS = 96
    DENSE_MIN_COUNT = 2
    DEFAULT_DENSE_COUNT = _env_int('HH_LAB_DENSE_COUNT', 8)
    EXACT_MAX_CELLS = _env_int('HH_LAB_EXACT_MAX_CELLS', 2 ** 14)  # larger partitions fall back to floats

    # Scans (jensen / k-convex / hh / violation search)
    DEFAULT_PAIRS = _env_int('HH_LAB_DEFAULT_PAIRS', 1000)
    DEFAULT_SEED = _env_int('HH_LAB_DEFAULT_SEED', 0)
    GRID_POINTS = _env_int('HH_LAB_GRID_POINTS', 17)
    SCAN_MARGIN = _env_float('HH_LAB_SCAN_MARGIN', 1e-9)  # relative shrink of closed scan domains
    MIN_SEPARATION = _env_float('HH_LAB_MIN_SEPARATION', 1e-2)  # relative to the scan width
    SAMPLE_RADIUS = _env_float('HH_LAB_SAMPLE_RADIUS', 10.0)  # clip for infinite domains
    RATIONAL_GRID_BITS = 20  # random scan points are k/2^20 rationals

    # Support lines
    SUPPORT_PROBES = 1000
    SUPPORT_PROBE_RADIUS = 1.0
    RICHARDSON_STEPS = 30
    WITNESS_PRECISION_BITS = 106  # doubled IEEE double mantissa

    VERSION = '1.0.0'

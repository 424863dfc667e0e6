"""
Settings for the boundary_qed project.

Values are read once from the environment (a local .env file is honoured via
python-dotenv). Every variable is optional; see .env.starter for the full list.
"""

import math
import os
from pathlib import Path

import scipy.constants
from dotenv import load_dotenv

# Build paths inside the project like this: BASE_DIR / 'subdir'.
BASE_DIR = Path(__file__).resolve().parent.parent

load_dotenv(BASE_DIR / ".env")


def _float_env(name: str, default: float) -> float:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = float(raw)
    except ValueError:
        raise ValueError(f"{name} must be a number, got {raw!r}")
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {raw!r}")
    return value


def _int_env(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


def _ladder_env(name: str, default: tuple) -> tuple:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return tuple(float(item) for item in raw.split(",") if item.strip())
    except ValueError:
        raise ValueError(f"{name} must be a comma separated list of numbers, got {raw!r}")


# Physics
# e² in Lorentz-Heaviside units with hbar = c = 1
COUPLING = _float_env("BQED_COUPLING", 4.0 * math.pi / 137.035999)

# Special-function evaluation
SERIES_THRESHOLD_SIGMA = _float_env("BQED_SERIES_THRESHOLD_SIGMA", 1e-2)
SERIES_THRESHOLD_ETA = _float_env("BQED_SERIES_THRESHOLD_ETA", 1e-2)
SERIES_ORDER = _int_env("BQED_SERIES_ORDER", 8)

# Quadrature oracle
EPS_LADDER = _ladder_env("BQED_EPS_LADDER", (0.02, 0.01, 0.005))
QUAD_ABS_TOL = _float_env("BQED_QUAD_ABS_TOL", 1e-10)
QUAD_REL_TOL = _float_env("BQED_QUAD_REL_TOL", 1e-6)
MAX_SUBDIVISIONS = _int_env("BQED_MAX_SUBDIVISIONS", 200)
VERIFY_REL_TOL = _float_env("BQED_VERIFY_REL_TOL", 1e-3)

# Crossing search
CROSSING_POINTS_PER_PERIOD = _int_env("BQED_CROSSING_POINTS", 64)

# Sweeps
SWEEP_WORKERS = _int_env("BQED_WORKERS", os.cpu_count() or 1)

# Output and logging
OUTPUT_DIR = Path(os.getenv("BQED_OUTPUT_DIR") or BASE_DIR / "data")
LOG_LEVEL = (os.getenv("BQED_LOG_LEVEL") or "WARNING").upper()

# CODATA constants used for unit conversion (cgs lengths)
SPEED_OF_LIGHT_CM = scipy.constants.c * 100.0
HBAR = scipy.constants.hbar
BOLTZMANN = scipy.constants.k

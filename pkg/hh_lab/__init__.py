"""K-Riemann integration and Hermite-Hadamard convexity checks."""
from hh_lab.config import Config
from hh_lab import models  # noqa: F401  models first; func_def imports utils.evaluator

__version__ = Config.VERSION

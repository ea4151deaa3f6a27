import logging
from concurrent.futures import ThreadPoolExecutor

from rich.console import Console
from rich.logging import RichHandler

from hh_lab.config import Config

# Initialize extensions
console = Console(stderr=True)
logger = logging.getLogger('hh_lab')


def init_logging(level=None):
    """Attach the rich handler to the package logger once."""
    if not any(isinstance(handler, RichHandler) for handler in logger.handlers):
        handler = RichHandler(console=console, show_path=False, rich_tracebacks=Config.RICH_TRACEBACKS)
        handler.setFormatter(logging.Formatter('%(name)s: %(message)s'))
        logger.addHandler(handler)
        logger.propagate = False
    logger.setLevel(level or Config.LOG_LEVEL)
    return logger


def worker_pool(max_workers=None):
    """Thread pool capped by HH_LAB_THREADS; numpy kernels release the GIL."""
    cap = Config.HH_LAB_THREADS
    workers = min(cap, max_workers) if max_workers else cap
    return ThreadPoolExecutor(max_workers=max(1, workers), thread_name_prefix='hh-lab')

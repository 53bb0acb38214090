"""
batch.py - run one CLI job per arrangement file in a folder.

Jobs are independent and share nothing, so they run in a process pool.
The overall exit code is the largest per-file code.
"""

#####################################
# Import Modules
#####################################

# Imports from Python Standard Library
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Sequence, TypeVar

# Imports from local modules
from utils.utils_logger import logger

Spec = TypeVar("Spec")
Result = TypeVar("Result")

#####################################
# Batch Runner
#####################################


def run_batch(specs: Sequence[Spec], runner: Callable[[Spec], Result], jobs: int = 1) -> list[Result]:
    """Apply runner to every spec, in input order; runner must be a module-level function."""
    logger.info(f"Batch of {len(specs)} jobs with {jobs} worker(s)")
    if jobs <= 1 or len(specs) <= 1:
        return [runner(spec) for spec in specs]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(runner, specs))


def batch_exit_code(codes: Sequence[int]) -> int:
    """Largest per-file code, so any contract violation dominates."""
    return max(codes, default=0)

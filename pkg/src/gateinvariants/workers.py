# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
import logging
from typing import Callable, TypeVar
# 3RD
import numpy as np
# Project
from gateinvariants.config import DEFAULT_PARALLEL, ParallelOptions


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)

T = TypeVar("T")


# --- --- --- Chunks --- --- ---

@dataclass(frozen=True, slots=True)
class Chunk:
    """Slice [start, start + size) of a seeded study. `seed` is the chunk's own child of the study seed."""
    index: int
    start: int
    size: int
    seed: np.random.SeedSequence

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.seed)
# End of class Chunk


def plan_chunks(n:int, seed:int|None, options:ParallelOptions=DEFAULT_PARALLEL) -> list[Chunk]:
    """
    Split n samples into chunks of `options.chunk_size` with one spawned SeedSequence each.
    The plan, and therefore every drawn number, depends on n, seed and chunk_size only.
    """
    if n < 1:
        raise ValueError(f"Need at least one sample, got n={n}")
    if options.chunk_size < 1:
        raise ValueError(f"chunk_size must be positive, got {options.chunk_size}")
    n_chunks = -(-n // options.chunk_size)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    return [
        Chunk(index=i, start=i * options.chunk_size, size=min(options.chunk_size, n - i * options.chunk_size), seed=children[i])
        for i in range(n_chunks)
    ]
# End of def plan_chunks


# --- --- --- Fan-out --- --- ---

def run_chunks(job:Callable[[Chunk], T], chunks:list[Chunk], options:ParallelOptions=DEFAULT_PARALLEL) -> list[T]:
    """
    Evaluate `job` on every chunk and return the results in chunk order.

    With workers > 1 a thread pool is used; numpy releases the GIL inside the batched
    factorizations that dominate the cost. Exceptions raised by a job propagate to the caller.
    """
    if options.workers <= 1 or len(chunks) <= 1:
        return [job(chunk) for chunk in chunks]
    #
    logger.debug(f"Running {len(chunks)} chunks on {options.workers} worker threads")
    with ThreadPoolExecutor(max_workers=options.workers, thread_name_prefix="gateinvariants") as pool:
        return list(pool.map(job, chunks))
# End of def run_chunks


def map_seeded(job:Callable[[Chunk], T], n:int, seed:int|None, options:ParallelOptions=DEFAULT_PARALLEL) -> list[T]:
    return run_chunks(job, plan_chunks(n, seed, options), options)

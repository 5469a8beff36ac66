# --- --- --- Imports --- --- ---
# STD
# 3RD
import numpy as np
import pytest
# Project
from gateinvariants.config import ParallelOptions
from gateinvariants.workers import Chunk, map_seeded, plan_chunks, run_chunks


def _draw(chunk:Chunk) -> np.ndarray:
    return chunk.rng().standard_normal(chunk.size)


def test_plan_chunks_covers_every_sample():
    chunks = plan_chunks(10, seed=1, options=ParallelOptions(chunk_size=4))
    assert [c.size for c in chunks] == [4, 4, 2]
    assert [c.start for c in chunks] == [0, 4, 8]
    assert [c.index for c in chunks] == [0, 1, 2]


def test_plan_chunks_rejects_bad_arguments():
    with pytest.raises(ValueError):
        plan_chunks(0, seed=1)
    with pytest.raises(ValueError):
        plan_chunks(5, seed=1, options=ParallelOptions(chunk_size=0))


def test_results_do_not_depend_on_workers():
    single = np.concatenate(map_seeded(_draw, 1000, 42, ParallelOptions(workers=1, chunk_size=64)))
    pooled = np.concatenate(map_seeded(_draw, 1000, 42, ParallelOptions(workers=4, chunk_size=64)))
    assert np.array_equal(single, pooled)


def test_results_depend_on_seed():
    a = np.concatenate(map_seeded(_draw, 100, 1))
    b = np.concatenate(map_seeded(_draw, 100, 2))
    assert not np.array_equal(a, b)


def test_run_chunks_keeps_order():
    chunks = plan_chunks(50, seed=0, options=ParallelOptions(chunk_size=5))
    got = run_chunks(lambda c: c.index, chunks, ParallelOptions(workers=3, chunk_size=5))
    assert got == list(range(10))


def test_run_chunks_propagates_errors():
    def _boom(chunk:Chunk) -> None:
        raise RuntimeError(f"chunk {chunk.index}")
    chunks = plan_chunks(20, seed=0, options=ParallelOptions(chunk_size=5))
    with pytest.raises(RuntimeError, match="chunk"):
        run_chunks(_boom, chunks, ParallelOptions(workers=2, chunk_size=5))

# --- --- --- Imports --- --- ---
# STD
# 3RD
import numpy as np
import pytest
# Project
from gateinvariants.config import ParallelOptions
from gateinvariants.datamodel import Unitary4
from gateinvariants.errors import OutOfRangeError
from gateinvariants.ensemble.samplers import (
    chamber_points, haar_unitaries, local_unitaries, pe_mask, sample_chamber_uniform, sample_haar_su4,
    sample_local_gates, sample_perfect_entanglers,
)
from gateinvariants.linalg.canonical import in_weyl_chamber, invariants_from_unitary, is_perfect_entangler
from gateinvariants.linalg.matkit import unitarity_residual


def test_haar_unitaries_are_special_unitary(rng):
    stack = haar_unitaries(rng, 100)
    assert stack.shape == (100, 4, 4)
    assert unitarity_residual(stack) < 1e-12
    assert np.allclose(np.linalg.det(stack), 1.0, atol=1e-12)


def test_haar_trace_moment(rng):
    # E|tr U|^2 = 1 under the Haar measure
    stack = haar_unitaries(rng, 20000)
    moment = np.mean(np.abs(np.trace(stack, axis1=1, axis2=2)) ** 2)
    assert moment == pytest.approx(1.0, abs=0.05)


def test_chamber_points_are_inside(rng):
    pts = chamber_points(rng, 2000)
    assert all(in_weyl_chamber(p) for p in pts)


def test_chamber_points_are_volume_uniform(rng):
    pts = chamber_points(rng, 20000)
    centroid = np.array([np.pi/2, np.pi/4, np.pi/8])
    assert np.allclose(pts.mean(axis=0), centroid, atol=0.02)
    # the perfect entanglers fill half of the chamber
    assert np.mean(pe_mask(pts)) == pytest.approx(0.5, abs=0.02)


def test_local_unitaries_have_identity_invariants(rng):
    for k in local_unitaries(rng, 10):
        inv = invariants_from_unitary(Unitary4(k))
        assert inv.abs_g1 == pytest.approx(1.0, abs=1e-12)
        assert inv.g2 == pytest.approx(3.0, abs=1e-12)


def test_seeded_samplers_are_reproducible():
    a = sample_haar_su4(10, seed=4)
    b = sample_haar_su4(10, seed=4)
    assert all(np.array_equal(x.matrix, y.matrix) for x, y in zip(a, b))
    assert sample_chamber_uniform(10, seed=4) == sample_chamber_uniform(10, seed=4)
    assert sample_chamber_uniform(10, seed=4) != sample_chamber_uniform(10, seed=5)


def test_seeded_samplers_ignore_worker_count():
    one = sample_chamber_uniform(3000, seed=9, parallel=ParallelOptions(workers=1, chunk_size=256))
    many = sample_chamber_uniform(3000, seed=9, parallel=ParallelOptions(workers=3, chunk_size=256))
    assert one == many


def test_sample_local_gates():
    gates = sample_local_gates(5, seed=1)
    assert len(gates) == 5
    assert all(abs(np.linalg.det(g.matrix) - 1.0) < 1e-12 for g in gates)


def test_sample_perfect_entanglers():
    pts = sample_perfect_entanglers(500, seed=2)
    assert len(pts) == 500
    assert all(is_perfect_entangler(p) and in_weyl_chamber(p) for p in pts)


@pytest.mark.parametrize("sampler", [sample_haar_su4, sample_chamber_uniform, sample_local_gates, sample_perfect_entanglers])
def test_samplers_reject_empty_requests(sampler):
    with pytest.raises(OutOfRangeError):
        sampler(0, 1)

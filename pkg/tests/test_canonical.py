# --- --- --- Imports --- --- ---
# STD
# 3RD
import numpy as np
import pytest
# Project
from gateinvariants.config import POLYHEDRON_VERTICES, WEYL_VERTICES
from gateinvariants.datamodel import NamedGate, Unitary4, VertexName, WeylPoint, WeylRegion
from gateinvariants.ensemble.samplers import chamber_points, haar_unitaries, local_unitaries
from gateinvariants.linalg.canonical import (
    classify, coordinates_from_unitary, in_weyl_chamber, invariants_from_point, invariants_from_points,
    invariants_from_unitary, is_perfect_entangler, magic_transform, named_equivalent, pe_margins, weyl_reduce, weyl_region,
)
from gateinvariants.linalg.matkit import canonical_gate


def _vertex(name:str) -> WeylPoint:
    return WeylPoint.from_array(WEYL_VERTICES[VertexName(name)])


NAMED_POINTS = [
    (NamedGate.IDENTITY, (0.0, 0.0, 0.0), 1.0, 3.0),
    (NamedGate.CNOT, (np.pi/2, 0.0, 0.0), 0.0, 1.0),
    (NamedGate.DCNOT, (np.pi/2, np.pi/2, 0.0), 0.0, -1.0),
    (NamedGate.SWAP, (np.pi/2, np.pi/2, np.pi/2), 1.0, -3.0),
    (NamedGate.SQRT_SWAP, (np.pi/4, np.pi/4, np.pi/4), 0.25, 0.0),
]


# --- --- --- Invariants --- --- ---

@pytest.mark.parametrize("gate,point,abs_g1,g2", NAMED_POINTS)
def test_named_gate_invariants(named, gate, point, abs_g1, g2):
    inv = invariants_from_unitary(named[gate])
    assert inv.abs_g1 == pytest.approx(abs_g1, abs=1e-12)
    assert inv.g2 == pytest.approx(g2, abs=1e-12)


@pytest.mark.parametrize("gate,point,abs_g1,g2", NAMED_POINTS)
def test_named_gate_coordinates(named, gate, point, abs_g1, g2):
    c = coordinates_from_unitary(named[gate])
    assert np.allclose(c.as_array(), point, atol=1e-9), f"{gate} recovered at {c.to_list()}"


def test_invariants_ignore_global_phase(rng):
    m = haar_unitaries(rng, 1)[0]
    a = invariants_from_unitary(Unitary4(m))
    b = invariants_from_unitary(Unitary4(np.exp(0.37j) * m))
    assert abs(a.g1 - b.g1) < 1e-12 and abs(a.g2 - b.g2) < 1e-12


def test_invariants_from_point_match_matrix(rng):
    for p in chamber_points(rng, 25):
        c = WeylPoint.from_array(p)
        from_matrix = invariants_from_unitary(canonical_gate(c))
        from_point = invariants_from_point(c)
        assert abs(from_matrix.g1 - from_point.g1) < 1e-12
        assert abs(from_matrix.g2 - from_point.g2) < 1e-12


def test_invariants_from_points_vectorized(rng):
    pts = chamber_points(rng, 10)
    g1, g2 = invariants_from_points(pts)
    for p, a, b in zip(pts, g1, g2):
        inv = invariants_from_point(WeylPoint.from_array(p))
        assert a == pytest.approx(inv.g1) and b == pytest.approx(inv.g2)


def test_magic_transform_of_canonical_gate_is_diagonal():
    ub = magic_transform(canonical_gate(WeylPoint(1.1, 0.5, 0.2)))
    assert np.max(np.abs(ub - np.diag(np.diag(ub)))) < 1e-13


# --- --- --- Chamber --- --- ---

def test_weyl_reduce_leaves_interior_points():
    c = weyl_reduce([2.0, 0.6, 0.3])
    assert np.allclose(c.as_array(), [2.0, 0.6, 0.3])


@pytest.mark.parametrize("raw,expected", [
    ((-np.pi/2, 0.0, 0.0), (np.pi/2, 0.0, 0.0)),
    ((0.0, np.pi/2, 0.0), (np.pi/2, 0.0, 0.0)),
    ((3*np.pi/4, 0.0, 0.0), (np.pi/4, 0.0, 0.0)),          # c3 = 0 face folds onto c1 <= pi/2
    ((np.pi, 0.0, 0.0), (0.0, 0.0, 0.0)),
    ((0.3, 0.5, 0.1 + np.pi), (0.5, 0.3, 0.1)),
])
def test_weyl_reduce_moves(raw, expected):
    assert np.allclose(weyl_reduce(raw).as_array(), expected, atol=1e-12)


def test_weyl_reduce_keeps_invariants(rng):
    for raw in rng.uniform(-4.0, 4.0, size=(30, 3)):
        c = weyl_reduce(raw)
        assert in_weyl_chamber(c)
        a = invariants_from_point(WeylPoint.from_array(raw))
        b = invariants_from_point(c)
        assert abs(a.g1 - b.g1) < 1e-10 and abs(a.g2 - b.g2) < 1e-10


def test_coordinates_round_trip(rng):
    for p in chamber_points(rng, 200):
        got = coordinates_from_unitary(canonical_gate(WeylPoint.from_array(p)))
        assert np.max(np.abs(got.as_array() - p)) < 1e-8


def test_coordinates_are_local_invariant(rng):
    gates = haar_unitaries(rng, 20)
    left = local_unitaries(rng, 20)
    right = local_unitaries(rng, 20)
    for u, k1, k2 in zip(gates, left, right):
        a = coordinates_from_unitary(Unitary4(u))
        b = coordinates_from_unitary(Unitary4(k1 @ u @ k2))
        assert np.max(np.abs(a.as_array() - b.as_array())) < 1e-8


def test_coordinates_of_haar_gates_are_in_chamber(rng):
    for u in haar_unitaries(rng, 50):
        assert in_weyl_chamber(coordinates_from_unitary(Unitary4(u)))


# --- --- --- Classification --- --- ---

@pytest.mark.parametrize("name", POLYHEDRON_VERTICES)
def test_polyhedron_vertices_are_perfect_entanglers(name):
    c = _vertex(name)
    assert is_perfect_entangler(c)
    assert weyl_region(c) is WeylRegion.PE
    assert min(pe_margins(c)) >= -1e-12


@pytest.mark.parametrize("name,region", [("O", WeylRegion.W0), ("A1", WeylRegion.W0_STAR), ("A3", WeylRegion.W1)])
def test_chamber_corners_regions(name, region):
    c = _vertex(name)
    assert not is_perfect_entangler(c)
    assert weyl_region(c) is region


def test_named_equivalent():
    assert named_equivalent(_vertex("A1")) is NamedGate.IDENTITY
    assert named_equivalent(_vertex("L")) is NamedGate.CNOT
    assert named_equivalent(_vertex("P")) is NamedGate.SQRT_SWAP
    assert named_equivalent(WeylPoint(1.0, 0.5, 0.1)) is None


def test_classify_cnot_is_special_perfect_entangler(named):
    gc = classify(coordinates_from_unitary(named[NamedGate.CNOT]))
    assert gc.is_perfect_entangler and gc.is_special_perfect_entangler
    assert not gc.is_local
    assert gc.named_equivalent is NamedGate.CNOT
    assert gc.within_invariant_bounds


def test_classify_sqrt_swap_is_not_special():
    gc = classify(_vertex("P"))
    assert gc.is_perfect_entangler and not gc.is_special_perfect_entangler


@pytest.mark.parametrize("name", ["O", "A1"])
def test_classify_identity_corners_are_local(name):
    gc = classify(_vertex(name))
    assert gc.is_local and not gc.is_perfect_entangler


def test_classify_swap_is_not_perfect_entangler():
    gc = classify(_vertex("A3"))
    assert not gc.is_perfect_entangler and not gc.is_local
    assert gc.named_equivalent is NamedGate.SWAP


def test_perfect_entanglers_respect_invariant_bounds(rng):
    pts = chamber_points(rng, 4000)
    for p in pts:
        c = WeylPoint.from_array(p)
        if is_perfect_entangler(c):
            inv = invariants_from_point(c)
            assert inv.abs_g1 <= 0.25 + 1e-9
            assert -1.0 - 1e-9 <= inv.g2 <= 1.0 + 1e-9

# --- --- --- Imports --- --- ---
# STD
# 3RD
import numpy as np
import pytest
# Project
from gateinvariants.config import WEYL_VERTICES
from gateinvariants.datamodel import EdgeFamily, VertexName, WeylPoint
from gateinvariants.errors import OutOfRangeError, UnknownEdgeError
from gateinvariants.ensemble.edges import active_faces, all_edges, edge_point, edge_points, edge_sweep, get_edge, validate_polyhedron_edges
from gateinvariants.measures.schmidt import strength_from_entropy_rank2


def test_edge_tables():
    assert len(all_edges()) == 15
    assert len(all_edges(EdgeFamily.TETRAHEDRON)) == 6
    assert len(all_edges(EdgeFamily.POLYHEDRON)) == 9


def test_get_edge_spellings():
    assert get_edge("oa1").name == "OA1"
    assert get_edge("PQ").name == "QP"
    assert get_edge("MA2").name == "A2M"
    assert get_edge(" lq ").family is EdgeFamily.POLYHEDRON


def test_get_edge_unknown():
    with pytest.raises(UnknownEdgeError, match="OP"):
        get_edge("OP")


def test_edge_point_endpoints_and_midpoint():
    e = get_edge("OA1")
    assert edge_point(e, 0.0) == WeylPoint(0.0, 0.0, 0.0)
    assert np.allclose(edge_point(e, 1.0).as_array(), WEYL_VERTICES[VertexName("A1")])
    assert np.allclose(edge_point("OA1", 0.5).as_array(), WEYL_VERTICES[VertexName("L")])


@pytest.mark.parametrize("t", [-0.1, 1.5])
def test_edge_point_out_of_range(t):
    with pytest.raises(OutOfRangeError):
        edge_point("OA1", t)


def test_edge_points_vectorized():
    ts = np.linspace(0.0, 1.0, 7)
    pts = edge_points("LN", ts)
    for t, p in zip(ts, pts):
        assert np.allclose(p, edge_point("LN", float(t)).as_array())


def test_sweep_oa1():
    records = edge_sweep("OA1", 5)
    assert [r.t for r in records] == pytest.approx([0.0, 0.25, 0.5, 0.75, 1.0])
    assert records[0].l == pytest.approx(0.0, abs=1e-12) and records[-1].l == pytest.approx(0.0, abs=1e-12)
    mid = records[2]
    assert mid.l == pytest.approx(0.5) and mid.k_sch == pytest.approx(1.0)
    assert mid.schmidt_number == 2 and mid.is_pe
    assert mid.ep == pytest.approx(2/9)
    for r in records:
        assert r.schmidt_number <= 2
        assert r.k_sch == pytest.approx(strength_from_entropy_rank2(r.l), abs=1e-9)


def test_sweep_a2a3_is_maximal():
    for r in edge_sweep("A2A3", 21):
        assert r.l == pytest.approx(0.75, abs=1e-12)
        assert r.k_sch == pytest.approx(2.0, abs=1e-9)
        assert r.schmidt_number == 4


def test_sweep_lq_runs_from_cnot_to_q():
    records = edge_sweep("LQ", 11)
    assert records[0].l == pytest.approx(0.5) and records[0].k_sch == pytest.approx(1.0)
    assert records[-1].l == pytest.approx(0.4375)
    assert all(r.is_pe for r in records)
    ks = [r.k_sch for r in records]
    assert all(b > a for a, b in zip(ks, ks[1:]))


@pytest.mark.parametrize("a,b", [("QP", "MN"), ("LQ", "LM"), ("A2M", "A2Q")])
def test_mirrored_edges_share_measures(a, b):
    for ra, rb in zip(edge_sweep(a, 41), edge_sweep(b, 41)):
        assert ra.k_sch == pytest.approx(rb.k_sch, abs=1e-9)
        assert ra.l == pytest.approx(rb.l, abs=1e-9)


def test_sweep_needs_two_steps():
    with pytest.raises(OutOfRangeError):
        edge_sweep("OA1", 1)


def test_active_faces():
    assert active_faces(WeylPoint.from_array(WEYL_VERTICES[VertexName("L")])) == 4
    assert active_faces(WeylPoint(1.5, 0.5, 0.2)) == 0


def test_polyhedron_edges_lie_on_the_boundary():
    assert validate_polyhedron_edges() == []

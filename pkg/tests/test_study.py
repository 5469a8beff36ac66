# --- --- --- Imports --- --- ---
# STD
import logging
# 3RD
import numpy as np
import pytest
# Project
from gateinvariants.config import ParallelOptions
from gateinvariants.datamodel import NamedGate, ScatterRecord, SchmidtSpectrum, Unitary4, WeylPoint
from gateinvariants.errors import NonUnitaryError, OutOfRangeError, ParseError, UnknownGateError
from gateinvariants.ensemble.report_io import save_matrix_file
from gateinvariants.ensemble.samplers import haar_unitaries
from gateinvariants.ensemble.study import SamplingMode, analyze_gate, envelope_violations, pearson, resolve_gate, scatter_study
from gateinvariants.linalg.canonical import in_weyl_chamber
from gateinvariants.linalg.matkit import CNOT, SWAP


# --- --- --- Correlation --- --- ---

def test_pearson_of_a_line():
    x = np.arange(10.0)
    assert pearson(x, 3 * x + 1) == pytest.approx(1.0)
    assert pearson(x, -x) == pytest.approx(-1.0)


def test_pearson_matches_numpy(rng):
    x = rng.standard_normal(200)
    y = x + rng.standard_normal(200)
    assert pearson(x, y) == pytest.approx(np.corrcoef(x, y)[0, 1], abs=1e-12)


def test_pearson_zero_variance_is_nan(caplog):
    with caplog.at_level(logging.WARNING):
        r = pearson([1.0, 1.0, 1.0], [0.0, 1.0, 2.0])
    assert np.isnan(r)
    assert "zero variance" in caplog.text


def test_pearson_too_few_samples():
    assert np.isnan(pearson([1.0], [2.0]))
    with pytest.raises(ValueError):
        pearson([1.0, 2.0], [1.0])


# --- --- --- Scatter --- --- ---

def test_scatter_chamber_mode():
    records, r = scatter_study(500, seed=3)
    assert len(records) == 500
    assert np.isfinite(r)
    for rec in records:
        assert 0.0 <= rec.k_sch <= 2.0 + 1e-12
        assert -1e-12 <= rec.l <= 0.75 + 1e-12
        assert -1e-12 <= rec.ep <= 2/9 + 1e-12
        assert rec.t is None


def test_scatter_haar_mode():
    records, r = scatter_study(200, seed=3, mode=SamplingMode.HAAR)
    assert np.isfinite(r)
    assert all(in_weyl_chamber(rec.point) for rec in records)
    assert all(rec.schmidt_number == 4 for rec in records)


def test_scatter_is_reproducible_and_worker_independent():
    a, ra = scatter_study(3000, seed=8, parallel=ParallelOptions(workers=1, chunk_size=512))
    b, rb = scatter_study(3000, seed=8, parallel=ParallelOptions(workers=3, chunk_size=512))
    assert a == b and ra == rb


def test_scatter_needs_two_samples():
    with pytest.raises(OutOfRangeError):
        scatter_study(1, seed=0)


def test_scatter_respects_the_schmidt_number_2_envelope():
    records, _ = scatter_study(5000, seed=12)
    assert envelope_violations(records) == []


def test_envelope_flags_points_below_the_curve():
    low = ScatterRecord(
        point=WeylPoint(0.5, 0.1, 0.0), spectrum=SchmidtSpectrum.from_values([1, 0, 0, 0]),
        k_sch=0.1, l=0.4, ep=0.0, schmidt_number=4, is_pe=False,
    )
    high = ScatterRecord(
        point=WeylPoint(0.5, 0.1, 0.0), spectrum=SchmidtSpectrum.from_values([1, 0, 0, 0]),
        k_sch=1.5, l=0.4, ep=0.0, schmidt_number=4, is_pe=False,
    )
    assert envelope_violations([low, high]) == [low]


# --- --- --- Single gate --- --- ---

def test_resolve_gate_sources(tmp_path, named):
    path = tmp_path / "cnot.json"
    save_matrix_file(CNOT, path)
    from_file = resolve_gate(path)
    from_name = resolve_gate("cnot")
    from_array = resolve_gate(CNOT)
    for u in (from_file, from_name, from_array):
        assert np.allclose(u.matrix, named[NamedGate.CNOT].matrix, atol=1e-10)


def test_resolve_gate_errors(tmp_path):
    with pytest.raises(UnknownGateError):
        resolve_gate("CZZ")
    with pytest.raises(NonUnitaryError):
        resolve_gate(np.eye(4) * 1.01)
    with pytest.raises(ParseError):
        resolve_gate(tmp_path / "missing.json")


def test_analyze_cnot():
    report = analyze_gate("CNOT")
    assert np.allclose(report.point.to_list(), [np.pi/2, 0.0, 0.0], atol=1e-9)
    assert report.invariants.abs_g1 == pytest.approx(0.0, abs=1e-12)
    assert report.invariants.g2 == pytest.approx(1.0)
    assert np.allclose(report.spectrum.s, [2**-0.5, 2**-0.5, 0.0, 0.0], atol=1e-12)
    assert report.schmidt_number == 2
    assert report.k_sch == pytest.approx(1.0)
    assert report.l == pytest.approx(0.5)
    assert report.l_max_deviation < 1e-8
    assert set(report.l_routes) == {"permutation", "coefficients", "geometric", "invariants"}
    assert report.l_swapped == pytest.approx(0.75)
    assert report.concurrence == pytest.approx(1.0)
    assert report.entangling_capability == 1.0
    assert report.ep_invariant == pytest.approx(2/9)
    assert report.ep_linear == pytest.approx(2/9)
    assert report.gate_class.is_special_perfect_entangler
    assert report.ep_montecarlo is None


def test_analyze_swap():
    report = analyze_gate(SWAP)
    assert report.schmidt_number == 4
    assert report.concurrence is None
    assert report.k_sch == pytest.approx(2.0)
    assert report.ep_invariant == pytest.approx(0.0, abs=1e-12)
    assert not report.gate_class.is_perfect_entangler


def test_analyze_with_montecarlo():
    report = analyze_gate(NamedGate.SQRT_SWAP, mc_samples=20000, seed=1)
    est = report.ep_montecarlo
    assert est is not None and est.n == 20000
    assert abs(est.mean - 1/6) < 5 * est.standard_error


def test_analyze_haar_gate_routes_agree(rng):
    for m in haar_unitaries(rng, 20):
        report = analyze_gate(Unitary4(m))
        assert report.l_max_deviation < 1e-8
        assert report.ep_linear == pytest.approx(report.ep_invariant, abs=1e-10)

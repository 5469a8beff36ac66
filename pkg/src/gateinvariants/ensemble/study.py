# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
from collections.abc import Sequence
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
import itertools
import logging
from pathlib import Path
# 3RD
import numpy as np
from numpy.typing import ArrayLike, NDArray
# Project
from gateinvariants.config import DEFAULT_PARALLEL, DEFAULT_TOLERANCES, ParallelOptions, Tolerances
from gateinvariants.datamodel import GateReport, NamedGate, ScatterRecord, SchmidtSpectrum, Unitary4, WeylPoint
from gateinvariants.ensemble.report_io import load_matrix_file, matrix_to_unitary
from gateinvariants.ensemble.samplers import chamber_points, haar_unitaries, pe_mask
from gateinvariants.errors import OutOfRangeError
from gateinvariants.linalg.canonical import classify, coordinates_from_unitary, invariants_from_points, invariants_from_unitary
from gateinvariants.linalg.matkit import canonical_gates, named_gate, su4_normalize
from gateinvariants.measures.nonlocality import (
    concurrence_from_point, entangling_power_montecarlo, entanglement_report,
)
from gateinvariants.measures.schmidt import (
    linear_entropies, linear_entropy_coeffs, linear_entropy_permutation, operator_concurrence,
    schmidt_decompose, schmidt_number, schmidt_numbers, schmidt_spectra, schmidt_strength, schmidt_strengths,
    strength_curve_rank2,
)
from gateinvariants.workers import Chunk, map_seeded


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)


class SamplingMode(StrEnum):
    CHAMBER = "chamber"     # Euclidean-uniform over the chamber, gates are canonical gates
    HAAR = "haar"           # Haar-random SU(4)


# --- --- --- Statistics --- --- ---

def pearson(x:ArrayLike, y:ArrayLike) -> float:
    """Pearson correlation with (n - 1) normalization. NaN, with a warning, when it is undefined."""
    xa = np.asarray(x, dtype=np.float64)
    ya = np.asarray(y, dtype=np.float64)
    if xa.shape != ya.shape:
        raise ValueError(f"pearson needs equal-length samples, got {xa.shape} and {ya.shape}")
    if xa.size < 2:
        logger.warning(f"Correlation undefined for {xa.size} sample(s)")
        return float("nan")
    sx = np.std(xa, ddof=1)
    sy = np.std(ya, ddof=1)
    if sx == 0.0 or sy == 0.0:
        logger.warning("Correlation undefined: zero variance in at least one variable")
        return float("nan")
    cov = np.sum((xa - xa.mean()) * (ya - ya.mean())) / (xa.size - 1)
    return float(cov / (sx * sy))
# End of def pearson


# --- --- --- Scatter study --- --- ---

def _records_from_batch(pts:NDArray[np.float64], spectra:NDArray[np.float64], tol:Tolerances) -> list[ScatterRecord]:
    k_sch = schmidt_strengths(spectra, tol)
    ls = linear_entropies(spectra)
    numbers = schmidt_numbers(spectra, tol.schmidt_eps)
    g1, _ = invariants_from_points(pts)
    ep = 2.0 / 9.0 * (1.0 - np.abs(g1))
    is_pe = pe_mask(pts, tol)
    return [
        ScatterRecord(
            point=WeylPoint.from_array(pts[i]),
            spectrum=SchmidtSpectrum.from_values(spectra[i]),
            k_sch=float(k_sch[i]),
            l=float(ls[i]),
            ep=float(ep[i]),
            schmidt_number=int(numbers[i]),
            is_pe=bool(is_pe[i]),
        )
        for i in range(pts.shape[0])
    ]
# End of def _records_from_batch


def scatter_study(n:int, seed:int, mode:SamplingMode|str=SamplingMode.CHAMBER,
                  parallel:ParallelOptions=DEFAULT_PARALLEL, tol:Tolerances=DEFAULT_TOLERANCES) -> tuple[list[ScatterRecord], float]:
    """
    (records, pearson(K_Sch, L)) over n gates.

    Chamber mode draws points uniformly in the chamber and analyzes their canonical gates; Haar mode draws
    SU(4) gates and recovers their points. Records come in sample order and do not depend on the
    number of workers.
    """
    if n < 2:
        raise OutOfRangeError(f"A scatter study needs n >= 2, got {n}")
    mode = SamplingMode(mode)

    def _job(chunk:Chunk) -> list[ScatterRecord]:
        rng = chunk.rng()
        if mode is SamplingMode.CHAMBER:
            pts = chamber_points(rng, chunk.size)
            gates = canonical_gates(pts)
        else:
            gates = haar_unitaries(rng, chunk.size)
            pts = np.array([coordinates_from_unitary(Unitary4(g), tol).to_list() for g in gates], dtype=np.float64)
        return _records_from_batch(pts, schmidt_spectra(gates), tol)
    # End of internal def _job

    records = list(itertools.chain.from_iterable(map_seeded(_job, n, seed, parallel)))
    r = pearson([rec.k_sch for rec in records], [rec.l for rec in records])
    logger.info(f"Scatter study ({mode}, n={n}, seed={seed}): pearson(K_Sch, L) = {r:.6f}")
    return records, r
# End of def scatter_study


def envelope_violations(records:Sequence[ScatterRecord], slack:float=1e-6, tol:Tolerances=DEFAULT_TOLERANCES) -> list[ScatterRecord]:
    """
    Records with L <= 1/2 lying below the Schmidt-number-2 curve K_Sch(L) (the edge OA1).
    For a fixed L <= 1/2 no distribution of four weights has less entropy than the two-weight one.
    """
    candidates = [rec for rec in records if rec.l <= 0.5]
    if not candidates:
        return []
    curve = strength_curve_rank2([rec.l for rec in candidates], tol)
    return [rec for rec, bound in zip(candidates, curve) if rec.k_sch < bound - slack]


# --- --- --- Single gate --- --- ---

def resolve_gate(source:Unitary4|NamedGate|str|Path|ArrayLike, tol:Tolerances=DEFAULT_TOLERANCES) -> Unitary4:
    """
    A gate from a named gate, a JSON matrix file, or a raw 4x4 matrix (checked at the parse tolerance,
    then projected to the nearest unitary and det-normalized).
    """
    if isinstance(source, Unitary4): return su4_normalize(source.matrix, tol.unitarity)
    if isinstance(source, Path): return load_matrix_file(source, tol)
    if isinstance(source, str): return named_gate(source)
    return matrix_to_unitary(np.asarray(source, dtype=np.complex128), tol)
# End of def resolve_gate


def analyze_gate(source:Unitary4|NamedGate|str|Path|ArrayLike, mc_samples:int=0, seed:int=0,
                 parallel:ParallelOptions=DEFAULT_PARALLEL, tol:Tolerances=DEFAULT_TOLERANCES) -> GateReport:
    """
    Full characterization of one gate: chamber point, invariants, Schmidt spectrum and number, K_Sch,
    L by four routes (permutation trace, coefficients, coordinates, invariants) with their largest
    pairwise deviation, operator concurrence for Schmidt number <= 2, entangling power in closed form
    and optionally by Monte Carlo, and the classification.
    """
    u = resolve_gate(source, tol)
    point = coordinates_from_unitary(u, tol)
    inv = invariants_from_unitary(u, tol)
    spectrum = schmidt_decompose(u).spectrum
    number = schmidt_number(spectrum, tol.schmidt_eps)
    closed = entanglement_report(point, inv)

    l_routes = {
        "permutation": linear_entropy_permutation(u, tol),
        "coefficients": linear_entropy_coeffs(spectrum),
        "geometric": closed.l_geometric,
        "invariants": closed.l_invariant,
    }
    values = list(l_routes.values())
    l_max_deviation = max(abs(a - b) for a, b in itertools.combinations(values, 2))
    if l_max_deviation > tol.round_trip:
        logger.warning(f"Linear entropy routes disagree by {l_max_deviation:.3e}: {l_routes}")

    ep_montecarlo = entangling_power_montecarlo(u, mc_samples, seed, parallel) if mc_samples > 0 else None

    return GateReport(
        unitary=u,
        point=point,
        invariants=inv,
        spectrum=spectrum,
        schmidt_number=number,
        k_sch=schmidt_strength(spectrum, tol),
        l_routes=l_routes,
        l_max_deviation=l_max_deviation,
        l_swapped=closed.l_swapped,
        concurrence=operator_concurrence(spectrum, tol.schmidt_eps) if number <= 2 else None,
        entangling_capability=concurrence_from_point(point, tol),
        ep_invariant=closed.ep_invariant,
        ep_linear=closed.ep_linear,
        gate_class=classify(point, inv, tol),
        ep_montecarlo=ep_montecarlo,
    )
# End of def analyze_gate

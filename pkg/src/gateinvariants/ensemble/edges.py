# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
import logging
# 3RD
import numpy as np
from numpy.typing import NDArray
# Project
from gateinvariants.config import DEFAULT_TOLERANCES, EDGE_FAMILIES, POLYHEDRON_EDGES, TETRAHEDRON_EDGES, WEYL_VERTICES, Tolerances
from gateinvariants.datamodel import EdgeFamily, EdgeName, EdgeSpec, ScatterRecord, SchmidtSpectrum, WeylPoint
from gateinvariants.errors import OutOfRangeError, UnknownEdgeError
from gateinvariants.linalg.canonical import classify, invariants_from_points
from gateinvariants.linalg.matkit import canonical_gates
from gateinvariants.measures.schmidt import linear_entropies, schmidt_numbers, schmidt_spectra, schmidt_strengths


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)

_ALL_EDGES = {**TETRAHEDRON_EDGES, **POLYHEDRON_EDGES}


# --- --- --- Edge table --- --- ---

def get_edge(name:str|EdgeName) -> EdgeSpec:
    """
    Edge by name, case-insensitive. The reversed spelling (e.g. PQ for QP, MA2 for A2M) is accepted and
    returns the edge in its configured orientation.
    """
    key = str(name).strip().upper()
    lookup = {n.upper(): n for n in _ALL_EDGES}
    reversed_lookup = {(end + start).upper(): n for n, (start, end) in _ALL_EDGES.items()}
    edge_name = lookup.get(key) or reversed_lookup.get(key)
    if edge_name is None:
        raise UnknownEdgeError(str(name), list(_ALL_EDGES))
    start, end = _ALL_EDGES[edge_name]
    return EdgeSpec(
        name=edge_name,
        start=start,
        end=end,
        p0=WeylPoint.from_array(WEYL_VERTICES[start]),
        p1=WeylPoint.from_array(WEYL_VERTICES[end]),
        family=EDGE_FAMILIES[edge_name],
    )
# End of def get_edge


def all_edges(family:EdgeFamily|None=None) -> list[EdgeSpec]:
    return [get_edge(n) for n in _ALL_EDGES if family is None or EDGE_FAMILIES[n] == family]


def _resolve(e:EdgeSpec|str) -> EdgeSpec:
    return e if isinstance(e, EdgeSpec) else get_edge(e)


def edge_point(e:EdgeSpec|str, t:float) -> WeylPoint:
    edge = _resolve(e)
    if not 0.0 <= t <= 1.0:
        raise OutOfRangeError(f"Edge parameter must be in [0, 1], got t={t!r}")
    return WeylPoint.from_array(edge.p0.as_array() + t * (edge.p1.as_array() - edge.p0.as_array()))


def edge_points(e:EdgeSpec|str, ts:NDArray[np.float64]) -> NDArray[np.float64]:
    edge = _resolve(e)
    p0, p1 = edge.p0.as_array(), edge.p1.as_array()
    return p0[None, :] + np.asarray(ts, dtype=np.float64)[:, None] * (p1 - p0)[None, :]


# --- --- --- Sweeps --- --- ---

def edge_sweep(e:EdgeSpec|str, steps:int, tol:Tolerances=DEFAULT_TOLERANCES) -> list[ScatterRecord]:
    """
    Records at `steps` equally spaced parameters t in [0, 1], ordered by t.
    The gate at each t is the canonical gate of the interpolated point.
    """
    edge = _resolve(e)
    if steps < 2:
        raise OutOfRangeError(f"An edge sweep needs at least 2 steps, got {steps}")

    ts = np.linspace(0.0, 1.0, steps)
    pts = edge_points(edge, ts)
    spectra = schmidt_spectra(canonical_gates(pts))
    k_sch = schmidt_strengths(spectra, tol)
    ls = linear_entropies(spectra)
    numbers = schmidt_numbers(spectra, tol.schmidt_eps)
    g1, g2 = invariants_from_points(pts)
    ep = 2.0 / 9.0 * (1.0 - np.abs(g1))

    records:list[ScatterRecord] = []
    for i, t in enumerate(ts):
        point = WeylPoint.from_array(pts[i])
        gate_class = classify(point, tol=tol)
        records.append(ScatterRecord(
            point=point,
            spectrum=SchmidtSpectrum.from_values(spectra[i]),
            k_sch=float(k_sch[i]),
            l=float(ls[i]),
            ep=float(ep[i]),
            schmidt_number=int(numbers[i]),
            is_pe=gate_class.is_perfect_entangler,
            t=float(t),
        ))
    #
    logger.info(f"Swept edge {edge.name} with {steps} steps")
    return records
# End of def edge_sweep


# --- --- --- Polyhedron self-check --- --- ---

def active_faces(c:WeylPoint, tol:Tolerances=DEFAULT_TOLERANCES) -> int:
    """Number of polyhedron faces through c: the three perfect-entangler faces and the four chamber faces."""
    eps = tol.classification
    c1, c2, c3 = c.c1, c.c2, c.c3
    distances = (
        c1 + c2 - np.pi/2, np.pi/2 - (c1 - c2), np.pi/2 - (c2 + c3),
        c3, c2 - c3, c1 - c2, np.pi - (c1 + c2),
    )
    return sum(1 for d in distances if abs(d) <= eps)


def validate_polyhedron_edges(steps:int=33, tol:Tolerances=DEFAULT_TOLERANCES) -> list[EdgeName]:
    """
    Names of the configured polyhedron edges that are not true edges: some sampled point is not a
    perfect entangler or lies on fewer than two faces. An empty list means the enumeration is consistent.
    """
    bad:list[EdgeName] = []
    for edge in all_edges(EdgeFamily.POLYHEDRON):
        for t in np.linspace(0.0, 1.0, steps):
            point = edge_point(edge, float(t))
            gate_class = classify(point, tol=tol)
            if not gate_class.is_perfect_entangler or active_faces(point, tol) < 2:
                logger.warning(f"Polyhedron edge {edge.name} fails at t={t:.4f}: {point.to_list()}")
                bad.append(edge.name)
                break
        #
    #
    return bad
# End of def validate_polyhedron_edges

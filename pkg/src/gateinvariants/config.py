# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
from dataclasses import dataclass
from types import MappingProxyType
from typing import Mapping
# 3RD
import numpy as np
# Project
from gateinvariants.datamodel import EdgeFamily, EdgeName, VertexName


# --- --- --- Tolerances --- --- ---

@dataclass(frozen=True, slots=True)
class Tolerances:
    """Numerical thresholds. Every public function taking a `tol` argument reads the field it needs from here."""
    unitarity: float = 1e-10            # su4_normalize and kernel contracts
    parse_unitarity: float = 1e-8       # matrix files and user input
    symmetry: float = 1e-9              # eigenphases_symmetric_unitary
    classification: float = 1e-9        # chamber membership, PE half-spaces, named points
    round_trip: float = 1e-8            # invariants of recovered coordinates vs. invariants of the matrix
    imaginary_residue: float = 1e-9     # G2 and L(U) by permutation trace are real
    schmidt_eps: float = 1e-8           # Schmidt number threshold
    entropy_zero: float = 1e-12         # coefficients below are exact zeros in K_Sch
    rank2_slack: float = 1e-12          # L may exceed 1/2 by this much in the two-weight strength relation
# End of class Tolerances


DEFAULT_TOLERANCES = Tolerances()


# --- --- --- Parallel evaluation --- --- ---

@dataclass(frozen=True, slots=True)
class ParallelOptions:
    """Fan-out of Monte-Carlo and ensemble studies. Results never depend on `workers`, only on `chunk_size` and the seed."""
    workers: int = 1
    chunk_size: int = 4096
# End of class ParallelOptions


DEFAULT_PARALLEL = ParallelOptions()


# --- --- --- Weyl chamber geometry --- --- ---
# Vertices of the chamber O-A1-A2-A3 and of the perfect-entangler polyhedron LMNPQA2, in radians.
# L, M, N, P, Q are midpoints of OA1, A1A2, A1A3, OA3, OA2.

_PI = np.pi

WEYL_VERTICES: Mapping[VertexName, tuple[float, float, float]] = MappingProxyType({
    VertexName("O"):  (0.0, 0.0, 0.0),
    VertexName("A1"): (_PI, 0.0, 0.0),
    VertexName("A2"): (_PI / 2, _PI / 2, 0.0),
    VertexName("A3"): (_PI / 2, _PI / 2, _PI / 2),
    VertexName("L"):  (_PI / 2, 0.0, 0.0),
    VertexName("M"):  (3 * _PI / 4, _PI / 4, 0.0),
    VertexName("N"):  (3 * _PI / 4, _PI / 4, _PI / 4),
    VertexName("P"):  (_PI / 4, _PI / 4, _PI / 4),
    VertexName("Q"):  (_PI / 4, _PI / 4, 0.0),
})

POLYHEDRON_VERTICES: tuple[VertexName, ...] = tuple(VertexName(v) for v in ("L", "M", "N", "P", "Q", "A2"))


# Edge name -> (start vertex, end vertex). Parameter t runs from start to end.
TETRAHEDRON_EDGES: Mapping[EdgeName, tuple[VertexName, VertexName]] = MappingProxyType({
    EdgeName("OA1"):  (VertexName("O"), VertexName("A1")),
    EdgeName("OA2"):  (VertexName("O"), VertexName("A2")),
    EdgeName("OA3"):  (VertexName("O"), VertexName("A3")),
    EdgeName("A1A2"): (VertexName("A1"), VertexName("A2")),
    EdgeName("A1A3"): (VertexName("A1"), VertexName("A3")),
    EdgeName("A2A3"): (VertexName("A2"), VertexName("A3")),
})

# Nine polyhedron edges. MA2 and QA2 lie on the chamber edges A1A2 and OA2; NA2 and PA2 are not part of the set.
POLYHEDRON_EDGES: Mapping[EdgeName, tuple[VertexName, VertexName]] = MappingProxyType({
    EdgeName("LM"):  (VertexName("L"), VertexName("M")),
    EdgeName("LQ"):  (VertexName("L"), VertexName("Q")),
    EdgeName("LN"):  (VertexName("L"), VertexName("N")),
    EdgeName("LP"):  (VertexName("L"), VertexName("P")),
    EdgeName("MN"):  (VertexName("M"), VertexName("N")),
    EdgeName("QP"):  (VertexName("Q"), VertexName("P")),
    EdgeName("A2M"): (VertexName("A2"), VertexName("M")),
    EdgeName("A2Q"): (VertexName("A2"), VertexName("Q")),
    EdgeName("NP"):  (VertexName("N"), VertexName("P")),
})

EDGE_FAMILIES: Mapping[EdgeName, EdgeFamily] = MappingProxyType(
    {name: EdgeFamily.TETRAHEDRON for name in TETRAHEDRON_EDGES} | {name: EdgeFamily.POLYHEDRON for name in POLYHEDRON_EDGES}
)


# --- --- --- Reference values --- --- ---

REFERENCE_CORRELATION = 0.0705  # published K_Sch vs L correlation over chamber-uniform gates
PE_ENTROPY_MIN = 0.4375         # L at Q
PE_ENTROPY_MAX = 0.75           # L on A2A3

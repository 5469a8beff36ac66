# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
from dataclasses import dataclass
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__
from typing import Any, NewType
# 3RD
import numpy as np
from numpy.typing import NDArray
# Project
from gateinvariants.errors import NonUnitaryError


# --- --- --- Utils --- --- ---
ComplexMatrix = NDArray[np.complex128]   # dense, row-major; 2x2, 4x4 or 16x16 here
RealVector = NDArray[np.float64]

UNITARY4_TOL = 1e-12     # max |U†U - I| accepted by Unitary4

VertexName = NewType("VertexName", str)
EdgeName = NewType("EdgeName", str)


def _frozen_array(values:Any, dtype:type) -> NDArray:
    arr = np.array(values, dtype=dtype, copy=True)
    arr.setflags(write=False)
    return arr


# --- --- --- Gates --- --- ---

@dataclass(frozen=True, slots=True)
class Unitary4:
    """
    4x4 special unitary on two qubits, row index 2a+b for |ab>, a the left factor.
    The matrix is checked against UNITARY4_TOL and rescaled by exp(-i arg(det)/4), so det = 1.
    """
    matrix:ComplexMatrix

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.shape != (4, 4):
            raise ValueError(f"Unitary4 needs a 4x4 matrix, got shape {m.shape}")
        residual = float(np.max(np.abs(m.conj().T @ m - np.eye(4))))
        if residual > UNITARY4_TOL:
            raise NonUnitaryError(residual, UNITARY4_TOL)
        m = m * np.exp(-0.25j * np.angle(np.linalg.det(m)))
        object.__setattr__(self, "matrix", _frozen_array(m, np.complex128))
# End of class Unitary4


class NamedGate(StrEnum):
    IDENTITY = "IDENTITY"
    CNOT = "CNOT"
    DCNOT = "DCNOT"
    SWAP = "SWAP"
    SQRT_SWAP = "SQRT_SWAP"


# --- --- --- Geometry --- --- ---

@dataclass(frozen=True, slots=True)
class WeylPoint:
    """Canonical coordinates [c1, c2, c3] in radians."""
    c1:float
    c2:float
    c3:float

    @classmethod
    def from_array(cls, values:Any) -> WeylPoint:
        c1, c2, c3 = (float(v) for v in values)
        return cls(c1, c2, c3)

    def as_array(self) -> RealVector:
        return np.array([self.c1, self.c2, self.c3], dtype=np.float64)

    def to_list(self) -> list[float]:
        return [self.c1, self.c2, self.c3]
# End of class WeylPoint


@dataclass(frozen=True, slots=True)
class LocalInvariants:
    """Makhlin pair. g1 is complex, g2 is real."""
    g1:complex
    g2:float

    @property
    def abs_g1(self) -> float:
        return abs(self.g1)
# End of class LocalInvariants


class WeylRegion(StrEnum):
    """Part of the chamber a point lies in, split by the three perfect-entangler faces."""
    W0 = "W0"           # origin side, c1 + c2 < pi/2
    W0_STAR = "W0*"     # A1 side, c1 - c2 > pi/2
    W1 = "W1"           # A3 side, c2 + c3 > pi/2
    PE = "PE"


@dataclass(frozen=True, slots=True)
class GateClass:
    is_local:bool
    is_perfect_entangler:bool
    is_special_perfect_entangler:bool
    named_equivalent:NamedGate|None
    region:WeylRegion
    within_invariant_bounds:bool = True     # PE only: |G1| <= 1/4 and -1 <= G2 <= 1

    def to_dict(self) -> dict[str, Any]:
        return {
            "is_local": self.is_local,
            "is_perfect_entangler": self.is_perfect_entangler,
            "is_special_perfect_entangler": self.is_special_perfect_entangler,
            "named_equivalent": None if self.named_equivalent is None else str(self.named_equivalent),
            "region": str(self.region),
        }
# End of class GateClass


class EdgeFamily(StrEnum):
    TETRAHEDRON = "tetrahedron"
    POLYHEDRON = "polyhedron"


@dataclass(frozen=True, slots=True)
class EdgeSpec:
    """Straight segment between two named chamber vertices, parameterized by t in [0, 1] from start to end."""
    name:EdgeName
    start:VertexName
    end:VertexName
    p0:WeylPoint
    p1:WeylPoint
    family:EdgeFamily
# End of class EdgeSpec


# --- --- --- Operator-Schmidt --- --- ---

@dataclass(frozen=True, slots=True)
class SchmidtSpectrum:
    """s1 >= s2 >= s3 >= s4 >= 0 with sum of squares 1."""
    s:tuple[float, float, float, float]

    @classmethod
    def from_values(cls, values:Any) -> SchmidtSpectrum:
        vals = sorted((max(float(v), 0.0) for v in values), reverse=True)
        if len(vals) != 4:
            raise ValueError(f"A two-qubit Schmidt spectrum has 4 coefficients, got {len(vals)}")
        return cls((vals[0], vals[1], vals[2], vals[3]))

    def as_array(self) -> RealVector:
        return np.array(self.s, dtype=np.float64)
# End of class SchmidtSpectrum


@dataclass(frozen=True, slots=True)
class SchmidtFactors:
    spectrum:SchmidtSpectrum
    a_ops:tuple[ComplexMatrix, ...]     # 2x2 each, tr(A_k^dag A_l) = 2 delta_kl
    b_ops:tuple[ComplexMatrix, ...]

    def reconstruct(self) -> ComplexMatrix:
        return sum((s * np.kron(a, b) for s, a, b in zip(self.spectrum.s, self.a_ops, self.b_ops)), start=np.zeros((4, 4), dtype=np.complex128))
# End of class SchmidtFactors


# --- --- --- States and entanglement --- --- ---

@dataclass(frozen=True, slots=True)
class TwoQubitPureState:
    amplitudes:NDArray[np.complex128]   # (4,), index 2a+b

    def __post_init__(self):
        amps = _frozen_array(self.amplitudes, np.complex128)
        if amps.shape != (4,):
            raise ValueError(f"A two-qubit state has 4 amplitudes, got shape {amps.shape}")
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def product(cls, a:Any, b:Any) -> TwoQubitPureState:
        return cls(np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128)))
# End of class TwoQubitPureState


@dataclass(frozen=True, slots=True)
class EntanglementReport:
    l_geometric:float       # from coordinates
    l_invariant:float       # from (|G1|, G2)
    l_swapped:float         # L(U S)
    ep_invariant:float      # (2/9)(1 - |G1|)
    ep_linear:float         # (4/9)(L(U) + L(US) - L(S))
# End of class EntanglementReport


@dataclass(frozen=True, slots=True)
class MonteCarloEstimate:
    mean:float
    standard_error:float
    n:int
# End of class MonteCarloEstimate


# --- --- --- Study records and reports --- --- ---

@dataclass(frozen=True, slots=True)
class ScatterRecord:
    point:WeylPoint
    spectrum:SchmidtSpectrum
    k_sch:float
    l:float
    ep:float
    schmidt_number:int
    is_pe:bool
    t:float|None = None     # edge parameter, None for ensemble samples
# End of class ScatterRecord


@dataclass(frozen=True, slots=True)
class GateReport:
    unitary:Unitary4
    point:WeylPoint
    invariants:LocalInvariants
    spectrum:SchmidtSpectrum
    schmidt_number:int
    k_sch:float
    l_routes:dict[str, float]           # route name -> L(U)
    l_max_deviation:float               # max pairwise deviation across routes
    l_swapped:float
    concurrence:float|None              # operator concurrence, Schmidt number <= 2 only
    entangling_capability:float         # state concurrence reachable from product inputs (1 on perfect entanglers)
    ep_invariant:float
    ep_linear:float
    gate_class:GateClass
    ep_montecarlo:MonteCarloEstimate|None = None

    @property
    def l(self) -> float:
        return self.l_routes["coefficients"]
# End of class GateReport

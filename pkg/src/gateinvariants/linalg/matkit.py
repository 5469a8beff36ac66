# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
import logging
# 3RD
import numpy as np
from numpy.typing import ArrayLike, NDArray
# Project
from gateinvariants.config import DEFAULT_TOLERANCES, Tolerances
from gateinvariants.datamodel import ComplexMatrix, NamedGate, RealVector, Unitary4, WeylPoint
from gateinvariants.errors import NonUnitaryError, NotSymmetricError, UnknownGateError


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)


# --- --- --- Constants --- --- ---
# Qubit ordering: |ab> has row index 2a+b, a is the left tensor factor.

I2 = np.eye(2, dtype=np.complex128)
SX = np.array([[0, 1], [1, 0]], dtype=np.complex128)
SY = np.array([[0, -1j], [1j, 0]], dtype=np.complex128)
SZ = np.array([[1, 0], [0, -1]], dtype=np.complex128)
I4 = np.eye(4, dtype=np.complex128)

CNOT = np.array([
    [1, 0, 0, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
], dtype=np.complex128)

# Control on the right qubit
CNOT_REVERSED = np.array([
    [1, 0, 0, 0],
    [0, 0, 0, 1],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
], dtype=np.complex128)

# CNOT then reversed CNOT
DCNOT = CNOT_REVERSED @ CNOT

SWAP = np.array([
    [1, 0, 0, 0],
    [0, 0, 1, 0],
    [0, 1, 0, 0],
    [0, 0, 0, 1],
], dtype=np.complex128)

# Square root of SWAP with singlet eigenvalue -i, the root that sits at [pi/4, pi/4, pi/4]
SQRT_SWAP = np.array([
    [1, 0, 0, 0],
    [0, (1 - 1j) / 2, (1 + 1j) / 2, 0],
    [0, (1 + 1j) / 2, (1 - 1j) / 2, 0],
    [0, 0, 0, 1],
], dtype=np.complex128)

# Columns: (|00>+|11>)/√2, (-i|00>+i|11>)/√2, (|01>-|10>)/√2, (-i|01>-i|10>)/√2
MAGIC = np.array([
    [1, -1j, 0, 0],
    [0, 0, 1, -1j],
    [0, 0, -1, -1j],
    [1, 1j, 0, 0],
], dtype=np.complex128) / np.sqrt(2)


def _build_t13() -> NDArray[np.float64]:
    """16x16 permutation |a,b,c,d> -> |c,b,a,d> under index 8a+4b+2c+d."""
    t = np.zeros((16, 16), dtype=np.float64)
    for a in range(2):
        for b in range(2):
            for c in range(2):
                for d in range(2):
                    t[8*c + 4*b + 2*a + d, 8*a + 4*b + 2*c + d] = 1.0
    return t
# End of def _build_t13

T13 = _build_t13()
T13.setflags(write=False)

_NAMED: dict[NamedGate, ComplexMatrix] = {
    NamedGate.IDENTITY: I4,
    NamedGate.CNOT: CNOT,
    NamedGate.DCNOT: DCNOT,
    NamedGate.SWAP: SWAP,
    NamedGate.SQRT_SWAP: SQRT_SWAP,
}

for _m in (I2, SX, SY, SZ, I4, CNOT, CNOT_REVERSED, DCNOT, SWAP, SQRT_SWAP, MAGIC):
    _m.setflags(write=False)


# --- --- --- Products --- --- ---

def kron(a:ArrayLike, b:ArrayLike) -> ComplexMatrix:
    return np.kron(np.asarray(a, dtype=np.complex128), np.asarray(b, dtype=np.complex128))


def dagger(m:ArrayLike) -> ComplexMatrix:
    """Conjugate transpose over the last two axes, so stacks of matrices work too."""
    return np.conj(np.swapaxes(np.asarray(m), -1, -2))


def unitarity_residual(m:ArrayLike) -> float:
    """max |m†m - I| over every entry (and every matrix of a stack)."""
    arr = np.asarray(m, dtype=np.complex128)
    eye = np.eye(arr.shape[-1], dtype=np.complex128)
    return float(np.max(np.abs(dagger(arr) @ arr - eye)))


# --- --- --- Normalization --- --- ---

def su4_normalize(m:ArrayLike, tol:float|None=None) -> Unitary4:
    """
    Accept a 4x4 unitary within `tol`, project it onto the unitaries and let Unitary4 scale it to det 1.

    Raises NonUnitaryError when max |m†m - I| exceeds `tol` (default: Tolerances.unitarity).
    """
    tol = DEFAULT_TOLERANCES.unitarity if tol is None else tol
    arr = np.asarray(m, dtype=np.complex128)
    if arr.shape != (4, 4):
        raise ValueError(f"su4_normalize needs a 4x4 matrix, got shape {arr.shape}")
    residual = unitarity_residual(arr)
    if residual > tol:
        raise NonUnitaryError(residual, tol)
    return Unitary4(nearest_unitary(arr))
# End of def su4_normalize


def nearest_unitary(m:ArrayLike) -> ComplexMatrix:
    """Closest unitary in Frobenius norm (polar factor W V† of m = W Σ V†)."""
    w, _, vh = np.linalg.svd(np.asarray(m, dtype=np.complex128))
    return w @ vh


# --- --- --- Gate construction --- --- ---

def canonical_gate(c:WeylPoint) -> Unitary4:
    """
    exp((i/2)(c1 XX + c2 YY + c3 ZZ)), computed in the magic basis where the three generators are diagonal.
    """
    c1, c2, c3 = c.c1, c.c2, c.c3
    lam = 0.5 * np.array([c1 - c2 + c3, -c1 + c2 + c3, -c1 - c2 - c3, c1 + c2 - c3], dtype=np.float64)
    return Unitary4(MAGIC @ np.diag(np.exp(1j * lam)) @ dagger(MAGIC))


def canonical_gates(points:NDArray[np.float64]) -> NDArray[np.complex128]:
    """Stacked canonical_gate for an (n, 3) array of coordinates, returns (n, 4, 4)."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    c1, c2, c3 = pts[:, 0], pts[:, 1], pts[:, 2]
    lam = 0.5 * np.stack([c1 - c2 + c3, -c1 + c2 + c3, -c1 - c2 - c3, c1 + c2 - c3], axis=-1)
    phases = np.exp(1j * lam)
    return np.einsum("ij,nj,kj->nik", MAGIC, phases, MAGIC.conj())


def local_gate(a:ArrayLike, b:ArrayLike) -> Unitary4:
    """Product gate a⊗b from two single-qubit unitaries, det-normalized."""
    a_arr = np.asarray(a, dtype=np.complex128)
    b_arr = np.asarray(b, dtype=np.complex128)
    if a_arr.shape != (2, 2) or b_arr.shape != (2, 2):
        raise ValueError(f"local_gate needs two 2x2 matrices, got {a_arr.shape} and {b_arr.shape}")
    return su4_normalize(kron(a_arr, b_arr))


def named_gate(name:str|NamedGate) -> Unitary4:
    try:
        key = NamedGate(str(name).upper())
    except ValueError:
        raise UnknownGateError(str(name), [g.value for g in NamedGate]) from None
    return su4_normalize(_NAMED[key])


# --- --- --- Factorizations --- --- ---

def svd4(m:ArrayLike) -> tuple[RealVector, ComplexMatrix, ComplexMatrix]:
    """
    Singular value decomposition m = Σ σ_l u_l v_l†.

    Returns (sigma, u, v): sigma descending, u and v hold the vectors u_l, v_l as columns.
    Works on a single 4x4 matrix or on a stack (..., 4, 4).
    """
    arr = np.asarray(m, dtype=np.complex128)
    if arr.shape[-2:] != (4, 4):
        raise ValueError(f"svd4 needs 4x4 matrices, got shape {arr.shape}")
    u, sigma, vh = np.linalg.svd(arr)
    return sigma, u, dagger(vh)
# End of def svd4


def eigenphases_symmetric_unitary(m:ArrayLike, tol:Tolerances=DEFAULT_TOLERANCES) -> RealVector:
    """
    Phases θ_j in (-π, π] of the eigenvalues e^{iθ_j} of a complex-symmetric unitary 4x4 matrix.

    Raises NotSymmetricError / NonUnitaryError when m fails the corresponding check.
    """
    arr = np.asarray(m, dtype=np.complex128)
    sym_residual = float(np.max(np.abs(arr - arr.T)))
    if sym_residual > tol.symmetry:
        raise NotSymmetricError(sym_residual, tol.symmetry)
    residual = unitarity_residual(arr)
    if residual > tol.symmetry:
        raise NonUnitaryError(residual, tol.symmetry)
    return np.angle(np.linalg.eigvals(arr))
# End of def eigenphases_symmetric_unitary

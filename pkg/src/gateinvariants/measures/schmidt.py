# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
import logging
# 3RD
import numpy as np
from numpy.typing import ArrayLike, NDArray
# Project
from gateinvariants.config import DEFAULT_TOLERANCES, Tolerances
from gateinvariants.datamodel import SchmidtFactors, SchmidtSpectrum, Unitary4
from gateinvariants.errors import DegenerateCountError, ImaginaryResidueError, NotSchmidtRank2Error, OutOfRangeError
from gateinvariants.linalg.matkit import T13, dagger, kron, svd4


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)


# --- --- --- Realignment --- --- ---

def realign(m:ArrayLike) -> NDArray[np.complex128]:
    """
    R[(2a+c), (2b+d)] = U[(2a+b), (2c+d)]: first-qubit indices against second-qubit indices.
    Accepts a single 4x4 matrix or a stack (..., 4, 4).
    """
    arr = np.asarray(m, dtype=np.complex128)
    lead = arr.shape[:-2]
    return arr.reshape(*lead, 2, 2, 2, 2).swapaxes(-3, -2).reshape(*lead, 4, 4)


def schmidt_decompose(u:Unitary4) -> SchmidtFactors:
    """
    U = Σ s_l A_l ⊗ B_l with tr(A_k†A_l) = tr(B_k†B_l) = 2 δ_kl.

    Realignment singular values σ_l satisfy Σσ² = tr(U†U) = 4, hence s_l = σ_l / 2 and the
    operator bases are the reshaped singular vectors scaled by √2.
    """
    sigma, x, y = svd4(realign(u.matrix))
    a_ops = tuple(np.sqrt(2) * x[:, l].reshape(2, 2) for l in range(4))
    b_ops = tuple(np.sqrt(2) * np.conj(y[:, l]).reshape(2, 2) for l in range(4))
    return SchmidtFactors(spectrum=SchmidtSpectrum.from_values(sigma / 2), a_ops=a_ops, b_ops=b_ops)
# End of def schmidt_decompose


def schmidt_spectra(stack:ArrayLike) -> NDArray[np.float64]:
    """Schmidt coefficients of a stack of gates (n, 4, 4) as an (n, 4) array, rows descending."""
    return np.linalg.svd(realign(stack), compute_uv=False) / 2


# --- --- --- Scalar measures --- --- ---

def schmidt_number(sp:SchmidtSpectrum, eps:float|None=None) -> int:
    """Number of coefficients above `eps` (default: Tolerances.schmidt_eps). A unitary only has 1, 2 or 4."""
    eps = DEFAULT_TOLERANCES.schmidt_eps if eps is None else eps
    count = sum(1 for s in sp.s if s > eps)
    if count == 3:
        raise DegenerateCountError(sp.s, eps)
    return count
# End of def schmidt_number


def schmidt_numbers(spectra:NDArray[np.float64], eps:float|None=None) -> NDArray[np.int64]:
    eps = DEFAULT_TOLERANCES.schmidt_eps if eps is None else eps
    counts = np.sum(spectra > eps, axis=-1)
    bad = np.flatnonzero(counts == 3)
    if bad.size:
        raise DegenerateCountError(tuple(float(v) for v in spectra[bad[0]]), eps)
    return counts


def _shannon_bits(weights:NDArray[np.float64], keep:NDArray[np.bool_]) -> NDArray[np.float64]:
    safe = np.where(keep, weights, 1.0)
    return np.maximum(-np.sum(np.where(keep, safe * np.log2(safe), 0.0), axis=-1), 0.0)


def schmidt_strength(sp:SchmidtSpectrum, tol:Tolerances=DEFAULT_TOLERANCES) -> float:
    """K_Sch = -Σ s_l² log2 s_l², with coefficients below tol.entropy_zero counted as exact zeros."""
    s = sp.as_array()
    return float(_shannon_bits(s**2, s > tol.entropy_zero))


def schmidt_strengths(spectra:NDArray[np.float64], tol:Tolerances=DEFAULT_TOLERANCES) -> NDArray[np.float64]:
    return _shannon_bits(spectra**2, spectra > tol.entropy_zero)


def linear_entropy_coeffs(sp:SchmidtSpectrum) -> float:
    return float(1.0 - np.sum(sp.as_array() ** 4))


def linear_entropies(spectra:NDArray[np.float64]) -> NDArray[np.float64]:
    return 1.0 - np.sum(spectra**4, axis=-1)


def linear_entropy_permutation(u:Unitary4, tol:Tolerances=DEFAULT_TOLERANCES) -> float:
    """L(U) = 1 - tr(U†⊗² T13 U⊗² T13) / 16, with T13 exchanging the first qubit of the two copies."""
    uu = kron(u.matrix, u.matrix)
    value = 1.0 - np.trace(dagger(uu) @ T13 @ uu @ T13) / 16.0
    if abs(value.imag) > tol.imaginary_residue:
        raise ImaginaryResidueError("L(U) by permutation trace", abs(value.imag), tol.imaginary_residue)
    return float(value.real)
# End of def linear_entropy_permutation


def operator_concurrence(sp:SchmidtSpectrum, eps:float|None=None) -> float:
    """C = 2 s1 s2, defined for Schmidt number 1 or 2 only."""
    if schmidt_number(sp, eps) == 4:
        raise NotSchmidtRank2Error(f"Operator concurrence needs Schmidt number <= 2, spectrum is {sp.s}")
    return 2.0 * sp.s[0] * sp.s[1]


# --- --- --- Schmidt number 2 relation --- --- ---

def _rank2_weights(l:NDArray[np.float64]) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    # s² solves s⁴ - s² + L/2 = 0
    root = np.sqrt(np.maximum(1.0 - 2.0*l, 0.0))
    return (1.0 + root) / 2.0, (1.0 - root) / 2.0


def strength_from_entropy_rank2(l:float, tol:Tolerances=DEFAULT_TOLERANCES) -> float:
    """
    K_Sch as a function of L for Schmidt number 2 gates. Defined on [0, 1/2]; OutOfRangeError beyond
    `tol.rank2_slack`.
    """
    if not (-tol.rank2_slack <= l <= 0.5 + tol.rank2_slack):
        raise OutOfRangeError(f"Schmidt number 2 gates have 0 <= L <= 1/2, got L={l!r}")
    return float(strength_curve_rank2(np.asarray([l]), tol)[0])


def strength_curve_rank2(ls:ArrayLike, tol:Tolerances=DEFAULT_TOLERANCES) -> NDArray[np.float64]:
    """Vectorized strength_from_entropy_rank2 without range checks; inputs are clipped into [0, 1/2]."""
    l_arr = np.clip(np.asarray(ls, dtype=np.float64), 0.0, 0.5)
    w1, w2 = _rank2_weights(l_arr)
    weights = np.stack([w1, w2], axis=-1)
    return _shannon_bits(weights, weights > tol.entropy_zero**2)

# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
from collections.abc import Iterable
import logging
# 3RD
import numpy as np
from numpy.typing import ArrayLike, NDArray
# Project
from gateinvariants.config import DEFAULT_PARALLEL, DEFAULT_TOLERANCES, PE_ENTROPY_MAX, PE_ENTROPY_MIN, ParallelOptions, Tolerances
from gateinvariants.datamodel import EntanglementReport, LocalInvariants, MonteCarloEstimate, TwoQubitPureState, Unitary4, WeylPoint
from gateinvariants.errors import NotPerfectEntanglerError, OutOfRangeError
from gateinvariants.linalg.canonical import in_weyl_chamber, is_perfect_entangler
from gateinvariants.linalg.matkit import SWAP, su4_normalize
from gateinvariants.workers import Chunk, map_seeded


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)

ENTROPY_OF_SWAP = 0.75


# --- --- --- Operator linear entropy, closed forms --- --- ---

def linear_entropy_point(c:WeylPoint) -> float:
    """L(U) = 1 - (1/4)(1 + cos²c1 cos²c2 + cos²c2 cos²c3 + cos²c3 cos²c1)."""
    a, b, d = np.cos(c.as_array()) ** 2
    return float(1.0 - 0.25 * (1.0 + a*b + b*d + d*a))


def linear_entropy_points(points:ArrayLike) -> NDArray[np.float64]:
    cos2 = np.cos(np.asarray(points, dtype=np.float64).reshape(-1, 3)) ** 2
    a, b, d = cos2[:, 0], cos2[:, 1], cos2[:, 2]
    return 1.0 - 0.25 * (1.0 + a*b + b*d + d*a)


def linear_entropy_invariants(inv:LocalInvariants) -> float:
    return 1.0 - (3.0 + 2.0*inv.abs_g1 + inv.g2) / 8.0


def linear_entropy_swapped(inv:LocalInvariants) -> float:
    """L(U·SWAP) from the invariants of U."""
    return 1.0 - (3.0 + 2.0*inv.abs_g1 - inv.g2) / 8.0


# --- --- --- Entangling power --- --- ---

def entangling_power_invariant(inv:LocalInvariants) -> float:
    return 2.0 / 9.0 * (1.0 - inv.abs_g1)


def entangling_power_linear(l_u:float, l_us:float) -> float:
    """e_p from L(U) and L(U·SWAP), with L(SWAP) = 3/4."""
    return 4.0 / 9.0 * (l_u + l_us - ENTROPY_OF_SWAP)


def _reduced_purity_loss(amplitudes:NDArray[np.complex128]) -> NDArray[np.float64]:
    """1 - tr(ρ_A²) for a stack of two-qubit states (..., 4)."""
    psi = amplitudes.reshape(*amplitudes.shape[:-1], 2, 2)
    rho_a = psi @ np.conj(np.swapaxes(psi, -1, -2))
    purity = np.real(np.einsum("...ij,...ji->...", rho_a, rho_a))
    return 1.0 - purity


def state_linear_entropy(psi:TwoQubitPureState) -> float:
    """1 - tr(ρ_A²) of the first-qubit reduced state: 0 for product states, 1/2 for maximally entangled ones."""
    return float(_reduced_purity_loss(psi.amplitudes))


def _haar_qubit_states(rng:np.random.Generator, n:int) -> NDArray[np.complex128]:
    z = rng.standard_normal((n, 2)) + 1j * rng.standard_normal((n, 2))
    return z / np.linalg.norm(z, axis=1, keepdims=True)


def entangling_power_montecarlo(u:Unitary4, n:int, seed:int, parallel:ParallelOptions=DEFAULT_PARALLEL) -> MonteCarloEstimate:
    """
    Average output linear entropy over n random product inputs |a>⊗|b>, each factor Haar-distributed.

    Samples are drawn per chunk from spawned seed sequences, so the estimate depends on the seed and the
    chunk size but never on the number of workers. The standard error is NaN for n = 1.
    """
    if n < 1:
        raise OutOfRangeError(f"Monte-Carlo entangling power needs n >= 1, got {n}")
    gate_t = u.matrix.T

    def _job(chunk:Chunk) -> NDArray[np.float64]:
        rng = chunk.rng()
        a = _haar_qubit_states(rng, chunk.size)
        b = _haar_qubit_states(rng, chunk.size)
        product = (a[:, :, None] * b[:, None, :]).reshape(chunk.size, 4)
        return _reduced_purity_loss(product @ gate_t)
    # End of internal def _job

    values = np.concatenate(map_seeded(_job, n, seed, parallel))
    mean = float(np.mean(values))
    se = float(np.std(values, ddof=1) / np.sqrt(n)) if n > 1 else float("nan")
    logger.debug(f"Monte-Carlo e_p over {n} samples: {mean:.6f} ± {se:.2e}")
    return MonteCarloEstimate(mean=mean, standard_error=se, n=n)
# End of def entangling_power_montecarlo


# --- --- --- Entangling capability --- --- ---

def concurrence_from_point(c:WeylPoint, tol:Tolerances=DEFAULT_TOLERANCES) -> float:
    """
    Largest state concurrence the gate can create from a product input: 1 for perfect entanglers,
    otherwise max |sin(c_i ± c_j)| over coordinate pairs.
    """
    if is_perfect_entangler(c, tol):
        return 1.0
    v = c.as_array()
    shifted = np.roll(v, 1)
    return float(np.max(np.abs(np.sin(np.concatenate((v - shifted, v + shifted))))))


# --- --- --- Aggregates --- --- ---

def entanglement_report(c:WeylPoint, inv:LocalInvariants) -> EntanglementReport:
    """Closed-form L and e_p of a gate from its chamber point and local invariants."""
    l_inv = linear_entropy_invariants(inv)
    l_swapped = linear_entropy_swapped(inv)
    return EntanglementReport(
        l_geometric=linear_entropy_point(c),
        l_invariant=l_inv,
        l_swapped=l_swapped,
        ep_invariant=entangling_power_invariant(inv),
        ep_linear=entangling_power_linear(l_inv, l_swapped),
    )
# End of def entanglement_report


def swapped(u:Unitary4) -> Unitary4:
    """U·SWAP, det-normalized again (det SWAP = -1)."""
    return su4_normalize(u.matrix @ SWAP)


def perfect_entangler_entropy_bounds(samples:Iterable[WeylPoint]|ArrayLike, tol:Tolerances=DEFAULT_TOLERANCES) -> tuple[float, float]:
    """
    (min L, max L) over perfect-entangler chamber points. Every input must be a perfect entangler
    (NotPerfectEntanglerError otherwise); values outside [0.4375, 0.75] are logged.
    """
    if isinstance(samples, np.ndarray):
        pts = samples.reshape(-1, 3)
    else:
        pts = np.array([p.to_list() if isinstance(p, WeylPoint) else list(p) for p in samples], dtype=np.float64).reshape(-1, 3)
    if pts.shape[0] == 0:
        raise OutOfRangeError("perfect_entangler_entropy_bounds needs at least one point")

    for row in pts:
        point = WeylPoint.from_array(row)
        if not (in_weyl_chamber(point, tol) and is_perfect_entangler(point, tol)):
            raise NotPerfectEntanglerError(f"Point {point.to_list()} is not a perfect entangler")
    #

    ls = linear_entropy_points(pts)
    eps = tol.classification
    outside = np.flatnonzero((ls < PE_ENTROPY_MIN - eps) | (ls > PE_ENTROPY_MAX + eps))
    if outside.size:
        logger.warning(f"{outside.size} perfect entanglers have L outside [{PE_ENTROPY_MIN}, {PE_ENTROPY_MAX}], first at {pts[outside[0]].tolist()}")
    return float(ls.min()), float(ls.max())
# End of def perfect_entangler_entropy_bounds

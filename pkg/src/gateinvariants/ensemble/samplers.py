# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
import logging
# 3RD
import numpy as np
from numpy.typing import NDArray
# Project
from gateinvariants.config import DEFAULT_PARALLEL, DEFAULT_TOLERANCES, WEYL_VERTICES, ParallelOptions, Tolerances
from gateinvariants.datamodel import Unitary4, VertexName, WeylPoint
from gateinvariants.errors import OutOfRangeError
from gateinvariants.workers import Chunk, map_seeded


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)

CHAMBER_CORNERS = np.array([WEYL_VERTICES[VertexName(v)] for v in ("O", "A1", "A2", "A3")], dtype=np.float64)


def _check_count(n:int) -> None:
    if n < 1:
        raise OutOfRangeError(f"Sample count must be >= 1, got {n}")


# --- --- --- Array samplers (one generator, one batch) --- --- ---

def haar_unitaries(rng:np.random.Generator, n:int, dim:int=4) -> NDArray[np.complex128]:
    """
    (n, dim, dim) Haar-distributed unitaries, det-normalized.

    QR of a complex Ginibre matrix, with the columns of Q rephased by diag(R)/|diag(R)| so that the
    distribution does not depend on the QR sign convention.
    """
    z = (rng.standard_normal((n, dim, dim)) + 1j * rng.standard_normal((n, dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r, axis1=-2, axis2=-1)
    q = q * (d / np.abs(d))[:, None, :]
    det = np.linalg.det(q)
    return q * np.exp(-1j * np.angle(det) / dim)[:, None, None]
# End of def haar_unitaries


def chamber_points(rng:np.random.Generator, n:int) -> NDArray[np.float64]:
    """(n, 3) points uniform in volume over the tetrahedron O-A1-A2-A3 (flat Dirichlet barycentric weights)."""
    weights = rng.dirichlet(np.ones(4), size=n)
    return weights @ CHAMBER_CORNERS


def local_unitaries(rng:np.random.Generator, n:int) -> NDArray[np.complex128]:
    """(n, 4, 4) products a⊗b of independent Haar SU(2) factors."""
    a = haar_unitaries(rng, n, dim=2)
    b = haar_unitaries(rng, n, dim=2)
    return np.einsum("nij,nkl->nikjl", a, b).reshape(n, 4, 4)


def pe_mask(points:NDArray[np.float64], tol:Tolerances=DEFAULT_TOLERANCES) -> NDArray[np.bool_]:
    c1, c2, c3 = points[:, 0], points[:, 1], points[:, 2]
    eps = tol.classification
    return (c1 + c2 >= np.pi/2 - eps) & (c1 - c2 <= np.pi/2 + eps) & (c2 + c3 <= np.pi/2 + eps)


# --- --- --- Seeded samplers --- --- ---

def sample_haar_su4(n:int, seed:int, parallel:ParallelOptions=DEFAULT_PARALLEL) -> list[Unitary4]:
    _check_count(n)
    def _job(chunk:Chunk) -> NDArray[np.complex128]:
        return haar_unitaries(chunk.rng(), chunk.size)
    stack = np.concatenate(map_seeded(_job, n, seed, parallel))
    return [Unitary4(m) for m in stack]
# End of def sample_haar_su4


def sample_chamber_uniform(n:int, seed:int, parallel:ParallelOptions=DEFAULT_PARALLEL) -> list[WeylPoint]:
    _check_count(n)
    def _job(chunk:Chunk) -> NDArray[np.float64]:
        return chamber_points(chunk.rng(), chunk.size)
    pts = np.concatenate(map_seeded(_job, n, seed, parallel))
    return [WeylPoint.from_array(p) for p in pts]
# End of def sample_chamber_uniform


def sample_local_gates(n:int, seed:int) -> list[Unitary4]:
    """Haar SU(2)⊗SU(2) dressings k = a⊗b."""
    _check_count(n)
    stack = local_unitaries(np.random.default_rng(seed), n)
    return [Unitary4(m) for m in stack]


def sample_perfect_entanglers(n:int, seed:int, tol:Tolerances=DEFAULT_TOLERANCES) -> list[WeylPoint]:
    """Chamber-uniform points restricted to the perfect-entangler polyhedron (rejection, half the chamber volume)."""
    _check_count(n)
    rng = np.random.default_rng(seed)
    kept:list[NDArray[np.float64]] = []
    total = 0
    while total < n:
        batch = chamber_points(rng, max(2 * (n - total), 64))
        batch = batch[pe_mask(batch, tol)]
        kept.append(batch)
        total += batch.shape[0]
    #
    pts = np.concatenate(kept)[:n]
    return [WeylPoint.from_array(p) for p in pts]
# End of def sample_perfect_entanglers

# --- --- --- Imports --- --- ---
# STD
from __future__ import annotations
import itertools
import logging
# 3RD
import numpy as np
from numpy.typing import ArrayLike, NDArray
# Project
from gateinvariants.config import DEFAULT_TOLERANCES, WEYL_VERTICES, Tolerances
from gateinvariants.datamodel import ComplexMatrix, GateClass, LocalInvariants, NamedGate, Unitary4, VertexName, WeylPoint, WeylRegion
from gateinvariants.errors import CoordinateRecoveryFailed, ImaginaryResidueError
from gateinvariants.linalg.matkit import MAGIC, dagger, eigenphases_symmetric_unitary


# --- --- --- Logger --- --- ---
logger = logging.getLogger(__name__)


# --- --- --- Symmetry group of the chamber --- --- ---
# Coordinate permutations times sign flips of an even number of coordinates: 24 elements.
# Together with shifts by pi on any coordinate they generate the local-equivalence moves.

_PERMS = np.array(list(itertools.permutations(range(3))), dtype=np.intp)                            # (6, 3)
_EVEN_SIGNS = np.array([[1, 1, 1], [-1, -1, 1], [-1, 1, -1], [1, -1, -1]], dtype=np.float64)       # (4, 3)

# Orderings of the four magic-basis eigenphases, identity first
_LAMBDA_ORDERS = tuple(itertools.permutations(range(4)))

_NAMED_POINTS: dict[NamedGate, tuple[VertexName, ...]] = {
    NamedGate.IDENTITY: (VertexName("O"), VertexName("A1")),
    NamedGate.CNOT: (VertexName("L"),),
    NamedGate.DCNOT: (VertexName("A2"),),
    NamedGate.SWAP: (VertexName("A3"),),
    NamedGate.SQRT_SWAP: (VertexName("P"),),
}


# --- --- --- Magic basis and invariants --- --- ---

def magic_transform(u:Unitary4) -> ComplexMatrix:
    """U_B = Q†UQ. Local gates become real orthogonal, canonical gates diagonal."""
    return dagger(MAGIC) @ u.matrix @ MAGIC


def _magic_square(u:Unitary4) -> ComplexMatrix:
    ub = magic_transform(u)
    return ub.T @ ub


def invariants_from_unitary(u:Unitary4, tol:Tolerances=DEFAULT_TOLERANCES) -> LocalInvariants:
    """
    Makhlin invariants from the matrix: with m = U_B^T U_B,
    G1 = tr²(m) / (16 det U) and G2 = (tr²(m) - tr(m²)) / (4 det U).

    Dividing by det U makes the pair independent of the global phase. G2 is real analytically,
    an imaginary part above `tol.imaginary_residue` raises ImaginaryResidueError.
    """
    m = _magic_square(u)
    det = np.linalg.det(u.matrix)
    tr = np.trace(m)
    g1 = tr**2 / (16.0 * det)
    g2 = (tr**2 - np.trace(m @ m)) / (4.0 * det)
    if abs(g2.imag) > tol.imaginary_residue:
        raise ImaginaryResidueError("G2", abs(g2.imag), tol.imaginary_residue)
    return LocalInvariants(g1=complex(g1), g2=float(g2.real))
# End of def invariants_from_unitary


def invariants_from_point(c:WeylPoint) -> LocalInvariants:
    cos2 = np.cos(c.as_array()) ** 2
    sin2 = np.sin(c.as_array()) ** 2
    cos_prod = float(np.prod(cos2))
    sin_prod = float(np.prod(sin2))
    g1 = complex(cos_prod - sin_prod, 0.25 * np.sin(2*c.c1) * np.sin(2*c.c2) * np.sin(2*c.c3))
    g2 = 4.0*cos_prod - 4.0*sin_prod - np.cos(2*c.c1) * np.cos(2*c.c2) * np.cos(2*c.c3)
    return LocalInvariants(g1=g1, g2=float(g2))
# End of def invariants_from_point


def invariants_from_points(points:ArrayLike) -> tuple[NDArray[np.complex128], NDArray[np.float64]]:
    """Vectorized invariants_from_point over an (n, 3) array. Returns (g1, g2)."""
    pts = np.asarray(points, dtype=np.float64).reshape(-1, 3)
    cos_prod = np.prod(np.cos(pts) ** 2, axis=1)
    sin_prod = np.prod(np.sin(pts) ** 2, axis=1)
    g1 = (cos_prod - sin_prod) + 0.25j * np.prod(np.sin(2*pts), axis=1)
    g2 = 4.0*cos_prod - 4.0*sin_prod - np.prod(np.cos(2*pts), axis=1)
    return g1, g2


# --- --- --- Chamber geometry --- --- ---

def _chamber_violation(pts:NDArray[np.float64]) -> NDArray[np.float64]:
    """Largest violation of 0 <= c3 <= c2 <= c1, c1 + c2 <= pi, c2 <= pi/2 per row (<= 0 inside)."""
    c1, c2, c3 = pts[..., 0], pts[..., 1], pts[..., 2]
    return np.max(np.stack([-c3, c3 - c2, c2 - c1, c1 + c2 - np.pi, c2 - np.pi/2], axis=-1), axis=-1)


def in_weyl_chamber(c:WeylPoint|ArrayLike, tol:Tolerances=DEFAULT_TOLERANCES) -> bool:
    arr = c.as_array() if isinstance(c, WeylPoint) else np.asarray(c, dtype=np.float64)
    return bool(_chamber_violation(arr) <= tol.classification)


def weyl_reduce(raw:ArrayLike, tol:Tolerances=DEFAULT_TOLERANCES) -> WeylPoint:
    """
    Bring any coordinate triple into the chamber O-A1-A2-A3.

    Every permutation with an even number of sign flips is tried, each coordinate is wrapped into
    [0, pi) (values within tolerance of pi wrap to 0), and among the candidates inside the chamber
    the lexicographically smallest is kept. On the c3 = 0 face this selects c1 <= pi/2.
    """
    eps = tol.classification
    v = np.asarray(raw, dtype=np.float64).reshape(3)
    cands = (v[_PERMS][None, :, :] * _EVEN_SIGNS[:, None, :]).reshape(-1, 3)
    cands = np.mod(cands, np.pi)
    cands = np.where(cands > np.pi - eps, cands - np.pi, cands)

    violation = _chamber_violation(cands)
    inside = violation <= eps
    if not inside.any():
        # Rounding pushed every image just outside; keep the closest one
        logger.debug(f"weyl_reduce: no candidate inside the chamber for {v.tolist()}, min violation {violation.min():.3e}")
        inside = violation <= violation.min()
    pool = cands[inside]
    keys = np.round(pool, 9)
    best = pool[np.lexsort((keys[:, 2], keys[:, 1], keys[:, 0]))[0]]

    c3 = max(best[2], 0.0)
    c2 = min(max(best[1], c3), np.pi / 2)
    c1 = min(max(best[0], c2), np.pi - c2)
    return WeylPoint(float(c1), float(c2), float(c3))
# End of def weyl_reduce


def coordinates_from_unitary(u:Unitary4, tol:Tolerances=DEFAULT_TOLERANCES) -> WeylPoint:
    """
    Recover the chamber point of a det-normalized gate.

    The eigenphases 2λ_j of m = U_B^T U_B give c1 = λ0 + λ3, c2 = λ1 + λ3, c3 = λ0 + λ1, which is then
    reduced to the chamber. The result must reproduce the matrix invariants within `tol.round_trip`;
    other eigenphase orderings are tried before giving up.
    """
    target = invariants_from_unitary(u, tol)
    half = 0.5 * eigenphases_symmetric_unitary(_magic_square(u), tol)

    for attempt, order in enumerate(_LAMBDA_ORDERS):
        l0, l1, _, l3 = half[list(order)]
        point = weyl_reduce((l0 + l3, l1 + l3, l0 + l1), tol)
        got = invariants_from_point(point)
        dg1 = abs(got.g1 - target.g1)
        dg2 = abs(got.g2 - target.g2)
        if dg1 <= tol.round_trip and dg2 <= tol.round_trip:
            return point
        logger.debug(f"Coordinate recovery attempt {attempt} rejected: |dG1|={dg1:.3e}, |dG2|={dg2:.3e}")
    #

    raise CoordinateRecoveryFailed(f"No chamber point reproduces G1={target.g1:.6g}, G2={target.g2:.6g} within {tol.round_trip:.1e}")
# End of def coordinates_from_unitary


# --- --- --- Classification --- --- ---

def pe_margins(c:WeylPoint) -> tuple[float, float, float]:
    """
    Signed distances (in coordinate units) to the three perfect-entangler faces, all >= 0 inside:
    c1 + c2 - pi/2, pi/2 - (c1 - c2), pi/2 - (c2 + c3).
    """
    return (c.c1 + c.c2 - np.pi/2, np.pi/2 - (c.c1 - c.c2), np.pi/2 - (c.c2 + c.c3))


def is_perfect_entangler(c:WeylPoint, tol:Tolerances=DEFAULT_TOLERANCES) -> bool:
    return min(pe_margins(c)) >= -tol.classification


def weyl_region(c:WeylPoint, tol:Tolerances=DEFAULT_TOLERANCES) -> WeylRegion:
    low, high, top = pe_margins(c)
    if min(low, high, top) >= -tol.classification: return WeylRegion.PE
    if low < -tol.classification: return WeylRegion.W0
    if high < -tol.classification: return WeylRegion.W0_STAR
    return WeylRegion.W1
# End of def weyl_region


def _near(c:WeylPoint, vertex:VertexName, eps:float) -> bool:
    return bool(np.max(np.abs(c.as_array() - np.asarray(WEYL_VERTICES[vertex]))) <= eps)


def named_equivalent(c:WeylPoint, tol:Tolerances=DEFAULT_TOLERANCES) -> NamedGate|None:
    for gate, vertices in _NAMED_POINTS.items():
        if any(_near(c, v, tol.classification) for v in vertices):
            return gate
    return None


def classify(c:WeylPoint, inv:LocalInvariants|None=None, tol:Tolerances=DEFAULT_TOLERANCES) -> GateClass:
    """
    Local / perfect entangler / special perfect entangler flags and the named gate class, if any.

    Perfect entanglers are the closed polyhedron LMNPQA2, tested through its three faces inside the
    chamber. PE points are cross-checked against |G1| <= 1/4 and -1 <= G2 <= 1; a violation is logged
    and reported in `within_invariant_bounds` but does not change the geometric verdict.
    """
    eps = tol.classification
    inv = invariants_from_point(c) if inv is None else inv

    named = named_equivalent(c, tol)
    is_local = named is NamedGate.IDENTITY
    is_pe = (not is_local) and is_perfect_entangler(c, tol)
    is_spe = is_pe and abs(c.c1 - np.pi/2) <= eps and abs(c.c3) <= eps and -eps <= c.c2 <= np.pi/2 + eps

    within = True
    if is_pe:
        within = inv.abs_g1 <= 0.25 + eps and -1.0 - eps <= inv.g2 <= 1.0 + eps
        if not within:
            logger.warning(f"Perfect entangler {c.to_list()} outside invariant bounds: |G1|={inv.abs_g1:.6g}, G2={inv.g2:.6g}")
    #

    return GateClass(
        is_local=is_local,
        is_perfect_entangler=is_pe,
        is_special_perfect_entangler=is_spe,
        named_equivalent=named,
        region=weyl_region(c, tol),
        within_invariant_bounds=within,
    )
# End of def classify

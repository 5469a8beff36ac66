# --- --- --- Imports --- --- ---
# STD
# 3RD
# Project


# --- --- --- Base --- --- ---

class GateInvariantsError(Exception):
    """Root of every error raised by gateinvariants."""
# End of class GateInvariantsError


# --- --- --- Input validation --- --- ---

class NonUnitaryError(GateInvariantsError, ValueError):
    """A matrix expected to be unitary deviates from U†U = I beyond tolerance."""

    def __init__(self, residual:float, tol:float):
        super().__init__(f"Matrix is not unitary: max |U†U - I| = {residual:.3e} > {tol:.1e}")
        self.residual = residual
        self.tol = tol
# End of class NonUnitaryError


class NotSymmetricError(GateInvariantsError, ValueError):
    def __init__(self, residual:float, tol:float):
        super().__init__(f"Matrix is not symmetric: max |M - M^T| = {residual:.3e} > {tol:.1e}")
        self.residual = residual
# End of class NotSymmetricError


class ParseError(GateInvariantsError, ValueError):
    """Matrix source could not be read or has the wrong shape."""
# End of class ParseError


class UnknownGateError(GateInvariantsError, ValueError):
    def __init__(self, name:str, known:list[str]):
        super().__init__(f"Unknown gate '{name}'. Known gates: {', '.join(known)}")
        self.name = name
# End of class UnknownGateError


class UnknownEdgeError(GateInvariantsError, ValueError):
    def __init__(self, name:str, known:list[str]):
        super().__init__(f"Unknown edge '{name}'. Known edges: {', '.join(known)}")
        self.name = name
# End of class UnknownEdgeError


class OutOfRangeError(GateInvariantsError, ValueError):
    """Scalar argument outside the domain of a closed-form relation."""
# End of class OutOfRangeError


# --- --- --- Numerical consistency --- --- ---

class ImaginaryResidueError(GateInvariantsError, ValueError):
    """A quantity that is real analytically came out with a large imaginary part."""

    def __init__(self, what:str, residue:float, tol:float):
        super().__init__(f"{what} has imaginary residue {residue:.3e} > {tol:.1e}")
        self.residue = residue
# End of class ImaginaryResidueError


class CoordinateRecoveryFailed(GateInvariantsError, RuntimeError):
    """No chamber point reproduces the local invariants of the gate."""
# End of class CoordinateRecoveryFailed


class DegenerateCountError(GateInvariantsError, ValueError):
    """Exactly three Schmidt coefficients above threshold: impossible for a unitary, so the threshold is wrong."""

    def __init__(self, spectrum:tuple[float, ...], eps:float):
        super().__init__(f"Schmidt spectrum {spectrum} has exactly 3 coefficients above eps={eps:.1e}")
        self.spectrum = spectrum
        self.eps = eps
# End of class DegenerateCountError


class NotSchmidtRank2Error(GateInvariantsError, ValueError):
    """Operator concurrence requested for a Schmidt number 4 gate."""
# End of class NotSchmidtRank2Error


class NotPerfectEntanglerError(GateInvariantsError, ValueError):
    """A point handed to a perfect-entangler-only routine is outside the polyhedron."""
# End of class NotPerfectEntanglerError

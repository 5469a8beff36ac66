from .matkit import canonical_gate, kron, named_gate, su4_normalize, svd4
from .canonical import classify, coordinates_from_unitary, invariants_from_point, invariants_from_unitary, weyl_reduce

# --- --- --- Imports --- --- ---
# STD
# 3RD
import numpy as np
import pytest
# Project
from gateinvariants.datamodel import NamedGate, Unitary4
from gateinvariants.linalg.matkit import named_gate


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20240)


@pytest.fixture(scope="session")
def named() -> dict[NamedGate, Unitary4]:
    return {g: named_gate(g) for g in NamedGate}

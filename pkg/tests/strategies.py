"""Hypothesis strategies shared by the property tests."""

from hypothesis import strategies as st
import numpy as np

from qect.pauli import PauliString, SignedPauli
from qect.poly import Polynomial, VarTable

VARS = VarTable(("x", "y", "z"))


@st.composite
def paulis(draw, n=None):
    n = draw(st.integers(1, 6)) if n is None else n
    x = draw(st.integers(0, (1 << n) - 1))
    z = draw(st.integers(0, (1 << n) - 1))
    return PauliString(n, x, z)


@st.composite
def pauli_pairs(draw, count=2):
    n = draw(st.integers(1, 6))
    return tuple(draw(paulis(n)) for _ in range(count))


@st.composite
def signed_paulis(draw, n):
    return SignedPauli(draw(st.integers(0, 3)), draw(paulis(n)))


coefficients = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def polynomials(draw, max_terms=5, max_exp=3):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        exp = tuple(draw(st.integers(0, max_exp)) for _ in VARS)
        terms[exp] = draw(coefficients)
    return Polynomial(VARS, terms)


def random_unitary(rng: np.random.Generator, d: int) -> np.ndarray:
    m = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(m)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_kraus(rng: np.random.Generator, d: int, count: int = 2) -> list[np.ndarray]:
    """Kraus operators of a random channel: blocks of a random isometry."""
    u = random_unitary(rng, d * count)
    return [u[j * d:(j + 1) * d, :d] for j in range(count)]

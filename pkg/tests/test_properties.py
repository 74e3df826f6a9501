"""Structural properties checked on random inputs against the dense oracle."""

from functools import reduce
from itertools import product

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from strategies import paulis, random_kraus, random_unitary
from qect.codes import perfect_code, rotated_surface_code
from qect.oracle import dense_tensor
from qect.pauli import PauliString, normalizer_basis, symplectic
from qect.tensor import compose, process_matrix_from_kraus, psi_transform, scale, tensor_from_kraus

TOL = 1e-9


def span(basis, n):
    """Every product of the basis elements, phases dropped."""
    out = []
    for bits in product((0, 1), repeat=len(basis)):
        x = z = 0
        for b, p in zip(bits, basis):
            if b:
                x, z = x ^ p.x, z ^ p.z
        out.append(PauliString(n, x, z))
    return out


def character_sum(e, group):
    return sum(-1 if symplectic(e, g) else 1 for g in group)


@pytest.fixture(scope="module")
def perfect_groups():
    code = perfect_code()
    return code, span(code.stabilizer_paulis, code.n), span(normalizer_basis(code), code.n)


def test_group_sizes(perfect_groups):
    code, stab, norm = perfect_groups
    assert len(set(stab)) == 2 ** (code.n - code.k)
    assert len(set(norm)) == 2 ** (code.n + code.k)


def test_character_sums_pick_out_the_dual_group(perfect_groups):
    code, stab, norm = perfect_groups
    n, k = code.n, code.k
    for x in range(1 << n):
        for z in range(1 << n):
            e = PauliString(n, x, z)
            assert character_sum(e, stab) == (2 ** (n - k) if code.in_normalizer(e) else 0)
            assert character_sum(e, norm) == (2 ** (n + k) if code.in_stabilizer(e) else 0)


@pytest.fixture(scope="module")
def surface_groups():
    code = rotated_surface_code(3)
    return code, span(code.stabilizer_paulis, code.n), span(normalizer_basis(code), code.n)


@settings(max_examples=60, deadline=None)
@given(paulis(9))
def test_character_sums_on_surface_code(surface_groups, e):
    code, stab, norm = surface_groups
    n, k = code.n, code.k
    assert character_sum(e, stab) == (2 ** (n - k) if code.in_normalizer(e) else 0)
    assert character_sum(e, norm) == (2 ** (n + k) if code.in_stabilizer(e) else 0)


def test_stabilizer_elements_sum_over_normalizer(surface_groups):
    code, stab, norm = surface_groups
    for s in stab[:8]:
        assert character_sum(s, norm) == 2 ** (code.n + code.k)


@pytest.mark.parametrize("seed", range(20))
def test_kraus_decomposition_independence(seed):
    rng = np.random.default_rng(seed)
    d = 2 if seed % 2 else 4
    kraus = random_kraus(rng, d, count=3)
    u = random_unitary(rng, 3)
    mixed = [sum(u[i, j] * kraus[j] for j in range(3)) for i in range(3)]
    assert tensor_from_kraus(mixed).equals(tensor_from_kraus(kraus), tol=TOL)


def random_operator(rng, d):
    return rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))


@pytest.mark.parametrize("seed", range(100))
def test_composition_matches_dense_product(seed):
    rng = np.random.default_rng(1000 + seed)
    d = 2 if seed < 60 else 4
    a, b = random_operator(rng, d), random_operator(rng, d)
    ta = tensor_from_kraus([a], check=False)
    tb = tensor_from_kraus([b], check=False)
    assert compose(ta, tb).equals(dense_tensor(b @ a), tol=TOL)


def test_composition_of_many_channels():
    rng = np.random.default_rng(7)
    channels = [random_kraus(rng, 2, count=2) for _ in range(4)]
    tensors = [tensor_from_kraus(k) for k in channels]
    # Kraus set of the sequential product
    product_kraus = reduce(lambda acc, ks: [k @ a for a in acc for k in ks], channels[1:], channels[0])
    assert reduce(compose, tensors).equals(dense_tensor(product_kraus), tol=TOL)


@pytest.mark.parametrize("seed", range(50))
def test_process_matrix_route(seed):
    rng = np.random.default_rng(5000 + seed)
    n = 1 if seed < 30 else 2
    kraus = random_kraus(rng, 2 ** n, count=int(rng.integers(1, 4)))
    pm = process_matrix_from_kraus(kraus)
    assert pm.is_hermitian(TOL)
    lhs = scale(psi_transform(pm), 2 ** n)
    assert lhs.equals(tensor_from_kraus(kraus), tol=TOL)

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clifford_wolf.clifford_octonion import (
    associator, clifford_generators, g2_as_octonion_maps, g2_derivations, leibniz_residual,
    multiplication_table, octonion_conj, octonion_multiply, octonion_norm, orbit_dimension, quat_multiply,
    spin_algebra_basis, spin_rep_dim, stabilizer_coords, transitive_sphere_check, unit, vector_cover,
)
from clifford_wolf.lie_core import parse_group_spec
from clifford_wolf.matrix_core import mat_exp

vecs8 = st.lists(st.floats(-3, 3, allow_nan=False), min_size=8, max_size=8).map(np.array)


def test_quaternion_units():
    i, j, k = np.eye(4)[1:]
    assert np.allclose(quat_multiply(i, j), k)
    assert np.allclose(quat_multiply(j, i), -k)
    assert np.allclose(quat_multiply(i, i), -np.eye(4)[0])


def test_octonion_examples():
    assert np.allclose(octonion_multiply(unit(1), unit(2)), unit(3))
    assert np.allclose(octonion_multiply(unit(1), unit(4)), unit(5))
    for k in range(1, 8):
        assert np.allclose(octonion_multiply(unit(k), unit(k)), -unit(0))
    table = multiplication_table()
    assert len(table) == 8 and all(len(r) == 8 for r in table)


def test_nonassociative():
    a = associator(unit(1), unit(2), unit(4))
    assert np.linalg.norm(a) > 1
    # alternative: (x, x, y) = 0
    x, y = unit(1) + 2 * unit(6), unit(3) - unit(5)
    assert np.allclose(associator(x, x, y), 0)


@settings(max_examples=50, deadline=None)
@given(x=vecs8, y=vecs8)
def test_norm_multiplicative(x, y):
    assert np.isclose(octonion_norm(octonion_multiply(x, y)), octonion_norm(x) * octonion_norm(y),
                      rtol=1e-10, atol=1e-10)
    assert np.allclose(octonion_multiply(x, octonion_conj(x)), octonion_norm(x) ** 2 * unit(0), atol=1e-9)


def test_g2_derivations():
    D = g2_derivations()
    assert len(D) == 14
    maps = g2_as_octonion_maps(D)
    for d, m in zip(D, maps):
        assert np.abs(m + m.T).max() < 1e-12
        assert leibniz_residual(d) < 1e-10
    # closed under bracket
    flat = maps.reshape(len(maps), -1)
    P = flat.T @ np.linalg.pinv(flat.T)
    for a in maps[:5]:
        for b in maps[5:10]:
            c = (a @ b - b @ a).ravel()
            assert np.linalg.norm(P @ c - c) < 1e-9


@pytest.mark.parametrize("n", [3, 4, 5, 6, 7, 8, 9])
def test_clifford_relations(n):
    rep = clifford_generators(n)
    assert rep.dim == spin_rep_dim(n)
    assert rep.relation_residual() < 1e-12


def test_spin9_sign_and_bad_n():
    assert clifford_generators(9).sign == 1
    with pytest.raises(ValueError):
        spin_rep_dim(10)


@pytest.mark.parametrize("n", [5, 7, 9])
def test_vector_cover_homomorphism(n):
    G = parse_group_spec(f"Spin({n})")
    from clifford_wolf.lie_core import random_element
    a, b = random_element(G, 1).matrix, random_element(G, 2).matrix
    Ra, Rb, Rab = vector_cover(a, n), vector_cover(b, n), vector_cover(a @ b, n)
    assert np.allclose(Ra @ Rb, Rab, atol=1e-10)
    assert np.allclose(Ra.T @ Ra, np.eye(n), atol=1e-10)
    assert np.isclose(np.linalg.det(Ra), 1)


def test_vector_cover_rotation_and_kernel():
    n, t = 7, np.pi / 3
    B = spin_algebra_basis(n)[0]  # gamma_1 gamma_2 / 2
    R = vector_cover(mat_exp(t * B), n)
    # a spin angle t rotates vectors by 2 * (t / 2) = t in the (1, 2) plane
    assert np.isclose(abs(R[0, 1]), np.sin(t)) and np.isclose(R[0, 0], np.cos(t))
    assert np.allclose(R[2:, 2:], np.eye(n - 2))
    minus = mat_exp(2 * np.pi * B)
    assert np.allclose(minus, -np.eye(len(minus)), atol=1e-12)
    assert np.allclose(vector_cover(minus, n), np.eye(n), atol=1e-12)


def test_orbit_dimensions():
    v = unit(0)
    spin7 = parse_group_spec("Spin(7)").basis
    assert orbit_dimension(spin7, v) == 7
    assert transitive_sphere_check(spin7, v, samples=5)[0]
    g2 = g2_as_octonion_maps(g2_derivations())
    assert orbit_dimension(g2, unit(1)) == 6
    assert orbit_dimension(g2, unit(0)) == 0
    torus = parse_group_spec("T1").basis
    J = np.zeros((2, 2))
    J[0, 1], J[1, 0] = 1, -1
    ok, od = transitive_sphere_check([J], [1.0, 0.0], samples=3)
    assert ok and od == 1
    ok, od = transitive_sphere_check([np.kron(np.eye(2), J)], [1.0, 0, 0, 0], samples=3)
    assert not ok and od == 1
    assert len(torus) == 1


def test_stabilizer_in_spin7_is_g2():
    G = parse_group_spec("Spin(7)")
    assert len(stabilizer_coords(G, unit(0))) == 21 - 7

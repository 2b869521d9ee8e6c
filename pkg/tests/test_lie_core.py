import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from clifford_wolf.lie_core import (
    AlgebraElement, GroupElement, GroupSpec, adjoint, bracket, centralizer_algebra, conjugate_into_torus,
    jacobi_residual, parse_group_spec, product, random_algebra, random_element, rank, so_generator,
)

NAMES = ["SO(3)", "SO(5)", "SU(2)", "SU(3)", "U(2)", "Sp(1)", "Sp(2)", "Spin(7)", "G2", "SU(3)xSO(3)", "T2"]


@pytest.mark.parametrize("name,dim", [("SO(5)", 10), ("SU(3)", 8), ("Sp(2)", 10), ("U(3)", 9),
                                      ("Spin(9)", 36), ("G2", 14), ("SU(3)xSO(3)", 11), ("T3", 3)])
def test_dimensions(name, dim):
    G = parse_group_spec(name)
    assert G.dim == dim == len(G.basis)


@pytest.mark.parametrize("name", NAMES)
def test_basis_orthonormal(name):
    G = parse_group_spec(name)
    gram = np.array([[G.inner(a, b) for b in G.basis] for a in G.basis])
    assert np.abs(gram - np.eye(G.dim)).max() < 1e-12


@pytest.mark.parametrize("name", NAMES)
def test_jacobi_and_invariance(name):
    G = parse_group_spec(name)
    for i in range(5):
        X, Y, Z = (random_algebra(G, 11, 3 * i + j).matrix for j in range(3))
        assert jacobi_residual(X, Y, Z) < 1e-9
        XY, XZ = X @ Y - Y @ X, X @ Z - Z @ X
        assert abs(G.inner(XY, Z) + G.inner(Y, XZ)) < 1e-9


def test_so3_structure_constant():
    G = parse_group_spec("SO(3)")
    L12, L13, L23 = (AlgebraElement.from_matrix(G, so_generator(3, i, j)) for i, j in ((0, 1), (0, 2), (1, 2)))
    br = bracket(L12, L13).matrix
    assert np.allclose(br, so_generator(3, 1, 2)) or np.allclose(br, -so_generator(3, 1, 2))
    X = random_algebra(G, 1)
    assert np.allclose(bracket(X, X).coords, 0)


def test_su2_bracket_against_matrix():
    G = parse_group_spec("SU(2)")
    sz = AlgebraElement.from_matrix(G, 0.5j * np.diag([1, -1]))
    sx = AlgebraElement.from_matrix(G, 0.5j * np.array([[0, 1], [1, 0]]))
    direct = sz.matrix @ sx.matrix - sx.matrix @ sz.matrix
    assert np.allclose(bracket(sz, sx).matrix, direct)
    sy = 0.5j * np.array([[0, -1j], [1j, 0]])
    # [i sz/2, i sx/2] = -i sy/2
    assert np.allclose(direct, -sy)


def test_spec_mismatch():
    with pytest.raises(ValueError):
        bracket(random_algebra(parse_group_spec("SO(3)"), 0), random_algebra(parse_group_spec("SU(2)"), 0))


def test_adjoint_identity_and_norm():
    G = parse_group_spec("SU(3)")
    X = random_algebra(G, 5)
    assert np.allclose(adjoint(GroupElement.identity(G), X).coords, X.coords)
    g = random_element(G, 5)
    assert abs(adjoint(g, X).norm() - X.norm()) < 1e-10


def test_adjoint_quarter_turn_so3():
    G = parse_group_spec("SO(3)")
    Rz = np.array([[0.0, -1, 0], [1, 0, 0], [0, 0, 1]])
    L1 = AlgebraElement.from_matrix(G, so_generator(3, 1, 2))
    out = adjoint(GroupElement(G, Rz), L1).matrix
    L2 = so_generator(3, 0, 2)
    assert np.allclose(out, L2) or np.allclose(out, -L2)


@pytest.mark.parametrize("name,r", [("SU(3)", 2), ("SO(5)", 2), ("Sp(2)", 2), ("Sp(3)", 3),
                                    ("Spin(7)", 3), ("Spin(9)", 4), ("G2", 2), ("SU(3)xSO(3)", 3)])
def test_rank(name, r):
    assert rank(parse_group_spec(name)) == r


def test_rank_sp2_times_u1_equals_rank_sp3():
    # rank(sp(m) + u(1)) = m + 1 = rank sp(m + 1) for m = 2
    G = product(parse_group_spec("Sp(2)"), parse_group_spec("U(1)"))
    assert rank(G) == 3 == rank(parse_group_spec("Sp(3)"))


def test_rank_conjugation_invariant():
    from clifford_wolf.lie_core import subalgebra_rank
    G = parse_group_spec("SU(3)")
    for i in range(5):
        g = random_element(G, 2, i).matrix
        B = np.einsum("ij,bjk,lk->bil", g, G.basis, g.conj())
        assert subalgebra_rank(B, seed=i) == 2


def test_random_element_deterministic_and_valid():
    for name in NAMES:
        G = parse_group_spec(name)
        a, b = random_element(G, 3, 1), random_element(G, 3, 1)
        assert np.array_equal(a.matrix, b.matrix)
        assert a.residual() < 1e-10


def test_su2_trace_mean():
    G = parse_group_spec("SU(2)")
    tr = [np.trace(random_element(G, 0, i).matrix) for i in range(10_000)]
    assert abs(np.mean(tr)) < 0.05


def test_torus_conjugation():
    G = parse_group_spec("SO(3)")
    t0 = np.eye(3)
    t0[:2, :2] = [[np.cos(0.4), np.sin(0.4)], [-np.sin(0.4), np.cos(0.4)]]
    t, c = conjugate_into_torus(GroupElement(G, t0))
    assert np.allclose(t.matrix, t0) and np.allclose(c.matrix, np.eye(3))
    g = random_element(G, 9)
    t, c = conjugate_into_torus(g)
    assert np.abs(c.matrix @ g.matrix @ c.matrix.T - t.matrix).max() < 1e-10
    angle = np.arccos((np.trace(g.matrix) - 1) / 2)
    assert np.isclose(abs(np.arctan2(t.matrix[0, 1], t.matrix[0, 0])), angle)
    Ip = np.diag([-1.0, -1.0, 1.0])
    t, _ = conjugate_into_torus(GroupElement(G, Ip))
    assert np.allclose(t.matrix, Ip)


@pytest.mark.parametrize("name", ["SU(3)", "Sp(2)", "SO(4)", "U(2)"])
def test_torus_conjugation_random(name):
    G = parse_group_spec(name)
    for i in range(5):
        g = random_element(G, 4, i)
        t, c = conjugate_into_torus(g)
        assert c.residual() < 1e-10
        assert np.abs(c.matrix @ g.matrix @ c.matrix.conj().T - t.matrix).max() < 1e-10


def test_centralizer_examples():
    G = parse_group_spec("SO(6)")
    assert centralizer_algebra(G, []).dim == 15
    c, s = np.cos(2 * np.pi / 5), np.sin(2 * np.pi / 5)
    v = np.kron(np.eye(3), [[c, s], [-s, c]])
    assert centralizer_algebra(G, [(v, False)]).dim == 9
    assert centralizer_algebra(parse_group_spec("SO(4)"), [(-np.eye(4), False)]).dim == 6


@settings(max_examples=20, deadline=None)
@given(seed=st.integers(0, 1000))
def test_exp_log_inverse_on_algebra(seed):
    from clifford_wolf.lie_core import exp, log
    G = parse_group_spec("SU(3)")
    X = random_algebra(G, seed, scale=0.5)
    Y = log(exp(X))
    # small elements are their own minimal logarithm
    if X.norm() < np.pi / 2:
        assert np.allclose(X.coords, Y.coords, atol=1e-9)
    assert np.abs(exp(Y).matrix - exp(X).matrix).max() < 1e-10


def test_bad_specs():
    with pytest.raises(ValueError):
        parse_group_spec("F4")
    with pytest.raises(ValueError):
        GroupSpec("Spin", 12)

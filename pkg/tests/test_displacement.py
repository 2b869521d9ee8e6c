import numpy as np
import pytest

from clifford_wolf.catalog import build_entry, demo_deck_groups, lens_generator, vincent_generator
from clifford_wolf.displacement import (
    DeckGroup, Isometry, IsometryError, centralizer_transitive, constant_displacement_test, displacement,
    fixed_point, homogeneity_verdict, killing_norm, killing_spread, parse_angle, parse_isometry, vincent_matrix,
)
from clifford_wolf.homspace import CosetPoint
from clifford_wolf.lie_core import random_element, so_generator


def sphere(n):
    return build_entry(1, n=n).space


def test_identity_isometry():
    sp = sphere(3)
    x = sp.random_point(0)
    gam = Isometry.identity(sp)
    assert gam.apply(x) == x
    assert displacement(gam, x) < 1e-8
    res = constant_displacement_test(gam, samples=5)
    assert res.verdict == "constant" and res.delta_hat < 1e-8


def test_nu_squared_on_flag_manifold():
    sp = build_entry(7).space
    nu = Isometry(sp, sp.G.identity(), nu=True)
    for i in range(3):
        x = sp.random_point(1, i)
        assert np.allclose(nu.apply(nu.apply(x)).rep, x.rep)
    assert (nu @ nu).is_identity_form()


def test_right_translation_by_h_is_trivial():
    sp = sphere(3)
    k = np.eye(4)
    k[1:, 1:] = random_element(build_entry(1, n=2).space.G, 3).matrix
    gam = Isometry(sp, sp.G.identity(), k=k)
    x = sp.random_point(4)
    assert gam.apply(x) == x


def test_invalid_isometries():
    sp = sphere(3)
    with pytest.raises(IsometryError):
        Isometry(sp, 2 * np.eye(4))
    with pytest.raises(IsometryError):
        Isometry(sp, np.eye(4), nu=True)
    r = np.eye(4)
    r[:2, :2] = [[0, -1], [1, 0]]
    with pytest.raises(IsometryError):
        Isometry(sp, np.eye(4), k=r)


def test_compose_and_inverse():
    sp = build_entry(2, m=2).space
    a = Isometry(sp, random_element(sp.G, 0).matrix, nu=True)
    b = Isometry(sp, random_element(sp.G, 1).matrix)
    x = sp.random_point(2)
    assert (a @ b).apply(x) == a.apply(b.apply(x))
    assert a.inverse().apply(a.apply(x)) == x
    X = sp.G.basis[3]
    assert np.allclose((a @ b).algebra_action(X), a.algebra_action(b.algebra_action(X)))


def test_vincent_constant_displacement():
    for blocks in (2, 3):
        gam = vincent_generator(2 * np.pi / 5, blocks)
        for i in range(5):
            assert abs(displacement(gam, gam.space.random_point(7, i)) - 2 * np.pi / 5) < 1e-6
        res = constant_displacement_test(gam, samples=10, budget=10)
        assert res.constant and res.spread < 1e-6


def test_lens_non_constant():
    res = constant_displacement_test(lens_generator(2 * np.pi / 5, 4 * np.pi / 5), samples=20, budget=10)
    assert res.verdict == "non-constant" and res.spread > 0.1


def test_h_element_fixes_base_point():
    sp = sphere(4)
    g = np.eye(5)
    g[1:, 1:] = random_element(build_entry(1, n=3).space.G, 1).matrix
    gam = Isometry(sp, g)
    assert displacement(gam, sp.base_point()) < 1e-8
    assert fixed_point(gam).found


def test_killing_norm_sphere_examples():
    sp = sphere(2)
    xi = so_generator(3, 1, 2)  # rotation fixing the pole e0
    assert killing_norm(sp, xi, sp.base_point()) < 1e-12
    g = np.array([[0.0, -1, 0], [1, 0, 0], [0, 0, 1]])  # sends e0 to e1 on the equator
    assert abs(killing_norm(sp, xi, CosetPoint(sp, g)) - sp.G.norm(xi)) < 1e-10


def test_hopf_field_constant():
    sp = sphere(3)
    J = np.array([[0.0, 1], [-1, 0]])
    xi = np.kron(np.eye(2), J)
    vals = [killing_norm(sp, xi, sp.random_point(2, i)) for i in range(50)]
    assert np.ptp(vals) < 1e-10
    assert killing_spread(sp, xi, samples=200, budget=5)["spread"] < 1e-8
    assert killing_spread(sp, np.zeros((4, 4)))["spread"] == 0.0


def test_killing_norm_representative_independent():
    sp = build_entry(10).space
    xi = np.random.default_rng(0).standard_normal(sp.G.dim)
    x = sp.random_point(5)
    h = sp.h_exp(np.array([0.3, -1.1, 0.7]))
    assert abs(killing_norm(sp, xi, x) - killing_norm(sp, xi, CosetPoint(sp, x.rep @ h))) < 1e-10


def test_conjugation_covariance():
    sp = sphere(2)
    xi = so_generator(3, 0, 1)
    g = random_element(sp.G, 6).matrix
    a = killing_spread(sp, xi, samples=300, budget=10)
    b = killing_spread(sp, g @ xi @ g.T, samples=300, budget=10)
    # exact range is [0, |xi|] for a rotation field on S^2
    assert abs(a["spread"] - b["spread"]) < 1e-8
    assert abs(a["spread"] - sp.G.norm(xi)) < 1e-8


def test_centralizer_transitivity_examples():
    assert centralizer_transitive(DeckGroup([Isometry.identity(sphere(3))]))["transitive"]
    r = centralizer_transitive(DeckGroup([vincent_generator(2 * np.pi / 5, 3)]))
    assert r["transitive"] and r["centralizer_dim"] == 9
    r = centralizer_transitive(DeckGroup([lens_generator(2 * np.pi / 5, 4 * np.pi / 5)]))
    assert not r["transitive"] and max(r["orbit_dims"]) <= 2


def test_deck_group_closure():
    grp = DeckGroup([vincent_generator(2 * np.pi / 5, 2)])
    assert grp.order == 5 and grp.closed
    small = DeckGroup([vincent_generator(2 * np.pi / 7, 2)], bound=3)
    small.elements()
    assert not small.closed


def test_homogeneity_trivial_group():
    rep = homogeneity_verdict(DeckGroup([Isometry.identity(sphere(3))]))
    assert rep.passed and rep.metrics["homogeneous"]


def test_fixed_point_examples():
    sp = build_entry(6, m=1).space
    for i in range(3):
        assert fixed_point(Isometry(sp, random_element(sp.G, 8, i).matrix)).found
    fp = fixed_point(vincent_generator(2 * np.pi / 5, 2))
    assert not fp.found and abs(fp.floor - 2 * np.pi / 5) < 1e-6


def test_demo_groups_present():
    assert set(demo_deck_groups()) == {"vincent-S3-k5", "vincent-S5-k5", "lens-S3-5-(1,2)", "entry6-Jnu"}


@pytest.mark.parametrize("text,val", [("2pi/5", 2 * np.pi / 5), ("pi/3", np.pi / 3), ("pi", np.pi),
                                      ("0.25", 0.25), ("-pi/2", -np.pi / 2), (1, 1.0)])
def test_parse_angle(text, val):
    assert parse_angle(text) == pytest.approx(val)


def test_parse_angle_rejects_garbage():
    with pytest.raises(ValueError):
        parse_angle("tau")


def test_parse_isometry_literals():
    sp = sphere(5)
    gam = parse_isometry(sp, "vincent(theta=2pi/5, blocks=3)")
    assert np.allclose(gam.g, vincent_matrix(2 * np.pi / 5, 3))
    gam = parse_isometry(sp, {"inner": np.eye(6).tolist(), "outer": "none"})
    assert gam.is_identity_form()
    with pytest.raises(ValueError):
        parse_isometry(sp, {"inner": "rotate(1)"})
    with pytest.raises(ValueError):
        parse_isometry(sp, {"inner": "identity", "outer": "flip"})
    sp7 = build_entry(7).space
    assert parse_isometry(sp7, {"outer": "nu"}).nu

import numpy as np
import pytest

from clifford_wolf.catalog import build_entry
from clifford_wolf.homspace import (
    ConvergenceError, CosetPoint, HomSpace, MetricSpec, SpaceError, decompose_representation,
)
from clifford_wolf.lie_core import parse_group_spec


def sphere(n):
    return build_entry(1, n=n).space


def _unit_vectors(sp, pts):
    e0 = np.eye(sp.G.n)[0]
    return [p.rep @ e0 for p in pts]


@pytest.mark.parametrize("row,params,dim", [(1, {"n": 2}, 2), (10, {}, 7), (7, {}, 6), (5, {}, 6),
                                            (2, {"m": 2}, 4), (15, {"m": 2}, 5)])
def test_dimensions(row, params, dim):
    assert build_entry(row, **params).space.dim == dim


def test_isotropy_examples():
    d = build_entry(10).space.decompose_isotropy()
    assert d["block_dims"] == [7] and d["d_sym"] == 1
    d = build_entry(15, m=2).space.decompose_isotropy()
    assert sorted(d["block_dims"]) == [1, 4] and d["d_sym"] >= 2
    d = sphere(4).decompose_isotropy()
    assert d["block_dims"] == [4] and d["d_sym"] == 1


def test_trivial_isotropy_splits_into_lines():
    d = build_entry(15, m=1).space.decompose_isotropy()
    assert d["block_dims"] == [1, 1, 1] and d["d_sym"] == 6


def test_decompose_representation_oracle():
    # so(2) rotating the first plane of R^3: blocks {1, 2}, invariant forms a|x12|^2 + b x3^2
    J = np.zeros((3, 3))
    J[0, 1], J[1, 0] = 1, -1
    d = decompose_representation([J])
    assert d["block_dims"] == [1, 2] and d["d_sym"] == 2


def test_geodesic_period_and_speed():
    sp = sphere(2)
    x = sp.base_point()
    xi = np.array([1.0, 0.0])
    assert sp.distance(x, sp.geodesic(x, xi, 0.0)) < 1e-8
    assert sp.distance(x, sp.geodesic(x, xi, 2 * np.pi)) < 1e-8
    for t in (0.1, 0.5, 1.3):
        for v in (xi, np.array([0.6, 0.8]), np.array([1.2, -0.5])):
            assert abs(sp.distance(x, sp.geodesic(x, v, t)) - t * np.linalg.norm(v)) < 1e-6


def test_geodesic_unit_speed_on_row10():
    sp = build_entry(10).space
    x = sp.random_point(3)
    v = np.random.default_rng(0).standard_normal(sp.dim)
    v /= np.linalg.norm(v)
    assert abs(sp.distance(x, sp.geodesic(x, v, 0.2)) - 0.2) < 1e-6


@pytest.mark.parametrize("n", [2, 3, 5])
def test_sphere_distance_matches_arccos(n):
    sp = sphere(n)
    pts = [sp.random_point(11, i) for i in range(20)]
    vs = _unit_vectors(sp, pts)
    for i in range(0, 20, 2):
        d = sp.distance(pts[i], pts[i + 1])
        assert abs(d - np.arccos(np.clip(vs[i] @ vs[i + 1], -1, 1))) < 1e-8


def test_cp2_distance_matches_fubini_study():
    sp = build_entry(2, m=2).space
    e0 = np.eye(3)[2]  # H = U(2) stabilizes the last line
    for i in range(5):
        x, y = sp.random_point(2, 2 * i), sp.random_point(2, 2 * i + 1)
        u, w = x.rep @ e0, y.rep @ e0
        assert abs(sp.distance(x, y) - np.arccos(min(1.0, abs(np.vdot(u, w))))) < 1e-8


def test_distance_symmetric_and_triangle():
    sp = build_entry(7).space
    pts = [sp.random_point(5, i) for i in range(4)]
    d = np.array([[sp.distance(a, b) for b in pts] for a in pts])
    assert np.abs(d - d.T).max() < 1e-8
    assert np.abs(np.diag(d)).max() < 1e-6
    for i in range(4):
        for j in range(4):
            for k in range(4):
                assert d[i, k] <= d[i, j] + d[j, k] + 1e-7


def test_distance_independent_of_representative():
    sp = sphere(3)
    x = sp.random_point(1)
    h = np.eye(4)
    h[1:, 1:] = [[0, -1, 0], [1, 0, 0], [0, 0, 1.0]]
    y = CosetPoint(sp, x.rep @ h)
    assert x == y
    assert sp.distance(x, sp.random_point(2)) == pytest.approx(sp.distance(y, sp.random_point(2)), abs=1e-9)


def test_metric_scaling():
    sp = sphere(2)
    sp4 = sp.with_metric(MetricSpec(c=4.0))
    x, y = sp.random_point(0), sp.random_point(1)
    assert sp4.distance(CosetPoint(sp4, x.rep), CosetPoint(sp4, y.rep)) == pytest.approx(2 * sp.distance(x, y))
    assert sp4.sectional_curvature(sp4.base_point(), [1, 0], [0, 1]) == pytest.approx(0.25)
    with pytest.raises(SpaceError):
        MetricSpec(c=-1.0)


def test_sphere_curvature_is_one():
    for n in (2, 3, 4, 5):
        sp = sphere(n)
        rng = np.random.default_rng(n)
        for _ in range(20):
            K = sp.sectional_curvature(sp.base_point(), rng.standard_normal(n), rng.standard_normal(n))
            assert abs(K - 1) < 1e-8


def test_curvature_invariance_and_point_independence():
    sp = build_entry(2, m=2).space
    rng = np.random.default_rng(4)
    xi, eta = rng.standard_normal(4), rng.standard_normal(4)
    K = sp.sectional_curvature(sp.base_point(), xi, eta)
    assert sp.sectional_curvature(sp.random_point(9), xi, eta) == pytest.approx(K)
    # any basis of the same plane
    assert sp.sectional_curvature(sp.base_point(), 2 * xi + eta, xi - 3 * eta) == pytest.approx(K)
    assert 1 - 1e-9 <= K <= 4 + 1e-9


def test_degenerate_plane_rejected():
    sp = sphere(3)
    with pytest.raises(SpaceError):
        sp.sectional_curvature(sp.base_point(), [1, 0, 0], [2, 0, 0])


def test_non_normal_metric_refused():
    sp = build_entry(6).space.with_metric(MetricSpec(c=1.0, lam=0.5))
    x = sp.base_point()
    with pytest.raises(SpaceError):
        sp.geodesic(x, np.ones(sp.dim), 1.0)
    with pytest.raises(SpaceError):
        sp.distance(x, x)
    # the fiber-rescaled norm is still available
    assert sp.metric_norm(np.ones(sp.dim)) < np.sqrt(sp.dim)


def test_non_reductive_subalgebra_rejected():
    G = parse_group_spec("SU(2)")
    with pytest.raises(SpaceError):
        HomSpace.from_subalgebra(G, "bad", [G.basis[0], G.basis[1]])


def test_fibration_conditions_row7():
    rep = build_entry(7).space.fibration_conditions()
    assert rep.passed, rep.metrics


def test_tg_fiber_row6():
    assert build_entry(6).space.totally_geodesic_fiber_check(samples=20).passed


def test_rank_conditions():
    m = build_entry(8).space.rank_conditions().metrics
    assert m["rank_H_eq_rank_G"] and m["rank_K_eq_rank_G"]
    assert not build_entry(10).space.rank_conditions().metrics["rank_H_eq_rank_G"]


def test_convergence_error_carries_best():
    err = ConvergenceError("x", 0.5)
    assert err.best == 0.5 and isinstance(err, RuntimeError)

"""Octonions, g2 as a derivation algebra, and real spin representations.

Octonion multiplication is the Cayley-Dickson doubling of the quaternions,
``(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))``, on the basis
``1, e1..e7`` where ``(e1, e2, e3) = (i, j, k)`` in the first quaternion and
``e4..e7 = (0, 1), (0, i), (0, j), (0, k)``. The full table is printed by
:func:`multiplication_table`; for instance ``e1 e2 = e3`` and
``e1 e4 = e5``.

Spin(n) is realized on the smallest real Clifford module:

====  =====  ==========================================
n     dim    generators
====  =====  ==========================================
3     4      left multiplication by i, j, k on H
4-7   8      left multiplication by e1..en on O
8     16     gamma_9 gamma_i from the n = 9 set below
9     16     [[0, A_i^T], [A_i, 0]], A = (I, L_e1..L_e7);
             gamma_9 = diag(I, -I)
====  =====  ==========================================

For n <= 8 the generators square to -I; for n = 9 the 16-dimensional real
module only exists for generators squaring to +I. ``CliffordRep.sign``
records which, and the spin algebra spanned by ``gamma_i gamma_j / 2`` is
the same either way.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .lie_core import GroupSpec, _orthonormalize, _rng, null_space

# -- quaternions / octonions -------------------------------------------------


def quat_multiply(p, q) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array([
        a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
        a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
        a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
        a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
    ])


def _qconj(q):
    return np.array([q[0], -q[1], -q[2], -q[3]])


def octonion_multiply(x, y) -> np.ndarray:
    x, y = np.asarray(x, float), np.asarray(y, float)
    a, b, c, d = x[:4], x[4:], y[:4], y[4:]
    return np.concatenate([
        quat_multiply(a, c) - quat_multiply(_qconj(d), b),
        quat_multiply(d, a) + quat_multiply(b, _qconj(c)),
    ])


def octonion_conj(x) -> np.ndarray:
    x = np.asarray(x, float)
    return np.concatenate([[x[0]], -x[1:]])


def octonion_norm(x) -> float:
    return float(np.linalg.norm(x))


def unit(k: int) -> np.ndarray:
    e = np.zeros(8)
    e[k] = 1.0
    return e


@lru_cache(maxsize=None)
def _structure() -> np.ndarray:
    # C[a, b] = e_a e_b as an 8-vector
    C = np.array([[octonion_multiply(unit(a), unit(b)) for b in range(8)] for a in range(8)])
    C.setflags(write=False)
    return C


def multiplication_table() -> list[list[str]]:
    """Signed basis labels of ``e_a e_b`` (``e0`` is the unit)."""
    C = _structure()
    out = []
    for a in range(8):
        row = []
        for b in range(8):
            k = int(np.argmax(np.abs(C[a, b])))
            row.append(("-" if C[a, b, k] < 0 else "") + f"e{k}")
        out.append(row)
    return out


def left_mult(a) -> np.ndarray:
    """Matrix of x -> a x on R^8."""
    return np.einsum("i,ibk->kb", np.asarray(a, float), _structure())


def associator(x, y, z) -> np.ndarray:
    m = octonion_multiply
    return m(m(x, y), z) - m(x, m(y, z))


@lru_cache(maxsize=None)
def _g2_raw() -> np.ndarray:
    C = _structure()
    rows = []
    # unknown D acts on imaginary octonions: D (7x7), extended by D(1) = 0
    for a in range(1, 8):
        for b in range(1, 8):
            prod = C[a, b]
            eq = np.zeros((8, 7, 7))
            for p in range(7):
                for q in range(7):
                    D = np.zeros((8, 8))
                    D[1 + p, 1 + q] = 1.0
                    lhs = D @ prod
                    rhs = octonion_multiply(D[:, a], unit(b)) + octonion_multiply(unit(a), D[:, b])
                    eq[:, p, q] = lhs - rhs
            rows.append(eq.reshape(8, 49))
    A = np.vstack(rows)
    ns = null_space(A, tol=1e-10)
    return ns.reshape(-1, 7, 7)


def g2_derivations(kappa: float = 0.5) -> np.ndarray:
    """Orthonormal basis (under -kappa tr XY) of derivations of O on Im O.

    Matrices act on the imaginary octonions in the basis e1..e7.
    """
    B = _orthonormalize(_g2_raw(), kappa)
    return np.real(B)


def g2_as_octonion_maps(D) -> np.ndarray:
    """Extend a 7x7 derivation (or a stack of them) to 8x8 maps fixing the unit."""
    D = np.asarray(D)
    out = np.zeros(D.shape[:-2] + (8, 8))
    out[..., 1:, 1:] = D
    return out


def leibniz_residual(D) -> float:
    D8 = g2_as_octonion_maps(D)
    res = 0.0
    for a in range(8):
        for b in range(8):
            x, y = unit(a), unit(b)
            lhs = D8 @ octonion_multiply(x, y)
            rhs = octonion_multiply(D8 @ x, y) + octonion_multiply(x, D8 @ y)
            res = max(res, float(np.abs(lhs - rhs).max()))
    return res


# -- Clifford modules -------------------------------------------------------


@dataclass(frozen=True)
class CliffordRep:
    n: int
    gammas: np.ndarray
    sign: int  # gamma_i gamma_j + gamma_j gamma_i = 2 * sign * delta_ij * I

    @property
    def dim(self) -> int:
        return self.gammas.shape[1]

    def relation_residual(self) -> float:
        I = np.eye(self.dim)
        res = 0.0
        for i in range(self.n):
            for j in range(self.n):
                a = self.gammas[i] @ self.gammas[j] + self.gammas[j] @ self.gammas[i]
                res = max(res, float(np.abs(a - 2 * self.sign * (i == j) * I).max()))
        return res


def spin_rep_dim(n: int) -> int:
    if n == 3:
        return 4
    if 4 <= n <= 7:
        return 8
    if n in (8, 9):
        return 16
    raise ValueError("Spin(n) supported for 3 <= n <= 9")


def _nine_plus() -> np.ndarray:
    A = [np.eye(8)] + [left_mult(unit(k)) for k in range(1, 8)]
    gam = []
    for a in A:
        g = np.zeros((16, 16))
        g[:8, 8:] = a.T
        g[8:, :8] = a
        gam.append(g)
    g9 = np.diag([1.0] * 8 + [-1.0] * 8)
    gam.append(g9)
    return np.array(gam)


@lru_cache(maxsize=None)
def clifford_generators(n: int) -> CliffordRep:
    spin_rep_dim(n)
    if n == 3:
        gam = []
        for k in (1, 2, 3):
            e = np.zeros(4)
            e[k] = 1.0
            gam.append(np.array([quat_multiply(e, f) for f in np.eye(4)]).T)
        rep = CliffordRep(3, np.array(gam), -1)
    elif n <= 7:
        rep = CliffordRep(n, np.array([left_mult(unit(k)) for k in range(1, n + 1)]), -1)
    elif n == 8:
        g = _nine_plus()
        rep = CliffordRep(8, np.array([g[8] @ g[i] for i in range(8)]), -1)
    else:
        rep = CliffordRep(9, _nine_plus(), 1)
    rep.gammas.setflags(write=False)
    return rep


def spin_algebra_basis(n: int) -> np.ndarray:
    gam = clifford_generators(n).gammas
    return np.array([gam[i] @ gam[j] / 2 for i, j in itertools.combinations(range(n), 2)])


def spin_group(n: int, kappa: float = 0.5) -> GroupSpec:
    return GroupSpec("Spin", n, kappa)


def vector_cover(g, n: int) -> np.ndarray:
    """SO(n) image of a spin-group element: g gamma_i g^{-1} = sum_j R_ji gamma_j."""
    gam = clifford_generators(n).gammas
    g = np.asarray(g)
    imgs = np.einsum("ij,bjk,lk->bil", g, gam, g)
    norm2 = np.einsum("aij,aij->a", gam, gam)
    return np.einsum("aij,bij->ab", gam, imgs) / norm2[:, None]


# -- orbits on spheres --------------------------------------------------------


def orbit_dimension(mats, v, tol: float = 1e-8) -> int:
    vecs = np.array([np.real(m @ v) for m in mats])
    if len(vecs) == 0:
        return 0
    s = np.linalg.svd(vecs, compute_uv=False)
    return int(np.sum(s > tol * max(1.0, s.max())))


def transitive_sphere_check(mats, base_point, samples: int = 20, seed: int = 0):
    """(transitive, orbit_dim) for the algebra ``mats`` acting on R^d.

    orbit_dim is measured at ``base_point``; transitivity on the unit sphere
    requires orbit dimension d - 1 at ``samples`` random unit vectors too.
    """
    v0 = np.asarray(base_point, float)
    d = len(v0)
    od = orbit_dimension(mats, v0 / np.linalg.norm(v0))
    rng = _rng(seed, 7)
    ok = od == d - 1
    for _ in range(samples):
        v = rng.standard_normal(d)
        v /= np.linalg.norm(v)
        ok = ok and orbit_dimension(mats, v) == d - 1
    return bool(ok), od


def stabilizer_coords(spec: GroupSpec, v) -> np.ndarray:
    """Orthonormal coordinate rows of {X in g : X v = 0}."""
    v = np.asarray(v, float)
    A = np.array([np.real(b @ v) for b in spec.basis]).T
    return null_space(A)

"""Compact Lie groups as matrix groups with Ad-invariant inner products.

Every group is realized by matrices; its Lie algebra carries the inner
product ``<X, Y> = -kappa * Re tr(XY)`` (per factor for products) and a
fixed orthonormal basis, so algebra elements are stored as real coordinate
vectors.
"""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np
import scipy.linalg

from .matrix_core import TOL, exp_skew, min_norm_alg_log

FAMILIES = ("SO", "SU", "U", "Sp", "Spin", "G2", "T", "product")
DEFAULT_KAPPA = 0.5


@dataclass(frozen=True)
class GroupSpec:
    """A compact matrix group.

    ``kappa`` scales the trace form. With the default 1/2 the round spheres
    SO(n+1)/SO(n) and SU(2) come out with curvature 1.
    """

    family: str
    n: int = 0
    kappa: float = DEFAULT_KAPPA
    factors: tuple["GroupSpec", ...] = ()

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.kappa <= 0:
            raise ValueError("kappa must be positive")
        if self.family == "product":
            if len(self.factors) < 2:
                raise ValueError("product needs at least two factors")
        elif self.n < 1:
            raise ValueError("size parameter must be positive")
        if self.family == "Spin" and not 3 <= self.n <= 9:
            raise ValueError("Spin(n) supported for 3 <= n <= 9")

    # -- naming -------------------------------------------------------------
    @property
    def name(self) -> str:
        if self.family == "product":
            return "x".join(f.name for f in self.factors)
        if self.family == "G2":
            return "G2"
        if self.family == "T":
            return f"T{self.n}"
        return f"{self.family}({self.n})"

    def __str__(self):
        return self.name

    # -- sizes --------------------------------------------------------------
    @property
    def dim(self) -> int:
        f, n = self.family, self.n
        if f == "SO":
            return n * (n - 1) // 2
        if f == "SU":
            return n * n - 1
        if f == "U":
            return n * n
        if f == "Sp":
            return n * (2 * n + 1)
        if f == "Spin":
            return n * (n - 1) // 2
        if f == "G2":
            return 14
        if f == "T":
            return n
        return sum(x.dim for x in self.factors)

    @property
    def rep_dim(self) -> int:
        f, n = self.family, self.n
        if f in ("SO", "SU", "U", "T"):
            return n
        if f == "Sp":
            return 2 * n
        if f == "Spin":
            from .clifford_octonion import spin_rep_dim
            return spin_rep_dim(n)
        if f == "G2":
            return 7
        return sum(x.rep_dim for x in self.factors)

    @property
    def is_real(self) -> bool:
        if self.family == "product":
            return all(x.is_real for x in self.factors)
        return self.family in ("SO", "Spin", "G2")

    @property
    def dtype(self):
        return float if self.is_real else complex

    @property
    def log_kind(self) -> str:
        return {
            "SO": "real", "SU": "special", "U": "unitary", "T": "unitary",
            "Sp": "quaternionic", "Spin": "subalgebra", "G2": "subalgebra",
            "product": "product",
        }[self.family]

    @property
    def block_slices(self) -> tuple[slice, ...]:
        out, start = [], 0
        for f in self.factors:
            out.append(slice(start, start + f.rep_dim))
            start += f.rep_dim
        return tuple(out)

    # -- basis and coordinates ----------------------------------------------
    @property
    def basis(self) -> np.ndarray:
        return _basis(self)

    @property
    def basis_kappas(self) -> np.ndarray:
        if self.family != "product":
            return np.full(self.dim, self.kappa)
        return np.concatenate([f.basis_kappas for f in self.factors])

    def coords(self, X) -> np.ndarray:
        dual = _dual(self)
        return np.real(dual @ np.asarray(X).ravel())

    def coords_many(self, Xs) -> np.ndarray:
        Xs = np.asarray(Xs)
        return np.real(Xs.reshape(len(Xs), -1) @ _dual(self).T)

    def from_coords(self, c) -> np.ndarray:
        return np.tensordot(np.asarray(c, float), self.basis, axes=1)

    def inner(self, X, Y) -> float:
        if self.family == "product":
            return sum(f.inner(X[s, s], Y[s, s])
                       for f, s in zip(self.factors, self.block_slices))
        return float(-self.kappa * np.real(np.sum(np.asarray(X).T * np.asarray(Y))))

    def norm(self, X) -> float:
        return float(np.sqrt(max(self.inner(X, X), 0.0)))

    def membership_residual(self, X) -> float:
        X = np.asarray(X)
        return float(np.linalg.norm(X - self.from_coords(self.coords(X))))

    def identity(self) -> np.ndarray:
        return np.eye(self.rep_dim, dtype=self.dtype)

    def group_residual(self, g) -> float:
        return _group_residual(self, np.asarray(g))


def _orthonormalize(mats: Sequence[np.ndarray], kappa, tol=1e-10) -> np.ndarray:
    """Orthonormal basis of span(mats) for <X,Y> = -kappa Re tr(XY)."""
    mats = np.asarray(mats)
    if len(mats) == 0:
        return mats
    N = mats.shape[1]
    # <X,Y> = kappa Re tr(X^* Y) for skew-Hermitian X: use real embedding
    flat = mats.reshape(len(mats), N * N)
    real = np.concatenate([flat.real, flat.imag], axis=1) * np.sqrt(kappa)
    out: list[np.ndarray] = []
    outv: list[np.ndarray] = []
    for m, v in zip(mats, real):
        w = v.copy()
        for _ in range(2):
            for u in outv:
                w -= u * (u @ w)
        nrm = np.linalg.norm(w)
        if nrm < tol:
            continue
        outv.append(w / nrm)
        out.append(m)
    # rebuild matrices from the orthonormal real vectors
    res = []
    for u in outv:
        u = u / np.sqrt(kappa)
        re_, im_ = u[: N * N], u[N * N:]
        res.append((re_ + 1j * im_).reshape(N, N))
    res = np.array(res)
    if np.abs(res.imag).max(initial=0) == 0:
        res = res.real
    return res


def quaternionic_J(n: int) -> np.ndarray:
    """J-structure for Sp(n) on C^{2n}: g in Sp(n) iff g unitary and gJ = J conj(g)."""
    J = np.zeros((2 * n, 2 * n))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def so_generator(n: int, i: int, j: int) -> np.ndarray:
    """Unnormalized L_ij = e_j e_i^T - e_i e_j^T; L_12 = -J in the 2x2 block."""
    m = np.zeros((n, n))
    m[j, i] = 1.0
    m[i, j] = -1.0
    return m


def _raw_basis(spec: GroupSpec) -> list[np.ndarray]:
    f, n = spec.family, spec.n
    if f == "SO":
        return [so_generator(n, i, j) for i, j in itertools.combinations(range(n), 2)]
    if f in ("U", "SU", "T"):
        out = []
        if f == "T":
            for k in range(n):
                m = np.zeros((n, n), complex)
                m[k, k] = 1j
                out.append(m)
            return out
        if f == "U":
            for k in range(n):
                m = np.zeros((n, n), complex)
                m[k, k] = 1j
                out.append(m)
        else:
            for k in range(1, n):
                d = np.zeros(n)
                d[:k] = 1.0
                d[k] = -k
                out.append(np.diag(1j * d))
        for i, j in itertools.combinations(range(n), 2):
            a = np.zeros((n, n), complex)
            a[i, j], a[j, i] = 1.0, -1.0
            b = np.zeros((n, n), complex)
            b[i, j] = b[j, i] = 1j
            out += [a, b]
        return out
    if f == "Sp":
        out = []
        for A in _raw_basis(GroupSpec("U", n)):
            X = np.zeros((2 * n, 2 * n), complex)
            X[:n, :n] = A
            X[n:, n:] = A.conj()
            out.append(X)
        for i, j in itertools.combinations_with_replacement(range(n), 2):
            for z in (1.0, 1j):
                B = np.zeros((n, n), complex)
                B[i, j] = B[j, i] = z
                X = np.zeros((2 * n, 2 * n), complex)
                X[:n, n:] = B
                X[n:, :n] = -B.conj()
                out.append(X)
        return out
    if f == "Spin":
        from .clifford_octonion import spin_algebra_basis
        return list(spin_algebra_basis(n))
    if f == "G2":
        from .clifford_octonion import g2_derivations
        return list(g2_derivations())
    raise AssertionError(f)


@lru_cache(maxsize=None)
def _basis(spec: GroupSpec) -> np.ndarray:
    if spec.family == "product":
        N = spec.rep_dim
        dt = spec.dtype
        out = []
        for fac, sl in zip(spec.factors, spec.block_slices):
            for b in fac.basis:
                m = np.zeros((N, N), dtype=dt)
                m[sl, sl] = b
                out.append(m)
        return np.array(out)
    B = _orthonormalize(_raw_basis(spec), spec.kappa)
    if len(B) != spec.dim:
        raise RuntimeError(f"{spec.name}: basis has {len(B)} elements, expected {spec.dim}")
    if spec.is_real:
        B = np.real(B)
    B.setflags(write=False)
    return B


@lru_cache(maxsize=None)
def _dual(spec: GroupSpec) -> np.ndarray:
    B = spec.basis
    d = len(B)
    # coords_i = -kappa_i Re tr(B_i X) = Re sum_{jk} (-kappa_i B_i^T)_{jk} X_{jk}
    D = -(spec.basis_kappas[:, None, None] * np.transpose(B, (0, 2, 1)))
    D = D.reshape(d, -1)
    D.setflags(write=False)
    return D


def _group_residual(spec: GroupSpec, g: np.ndarray) -> float:
    if g.shape != (spec.rep_dim, spec.rep_dim):
        return np.inf
    f = spec.family
    if f == "product":
        res = 0.0
        mask = np.ones(g.shape, bool)
        for fac, sl in zip(spec.factors, spec.block_slices):
            res = max(res, fac.group_residual(g[sl, sl]))
            mask[sl, sl] = False
        return max(res, float(np.abs(g[mask]).max(initial=0.0)))
    I = np.eye(len(g))
    res = float(np.abs(g.conj().T @ g - I).max())
    if spec.is_real:
        res = max(res, float(np.abs(np.imag(g)).max(initial=0.0)))
    if f in ("SO", "SU", "Spin", "G2"):
        res = max(res, abs(np.linalg.det(g) - 1))
    if f == "T":
        res = max(res, float(np.abs(g - np.diag(np.diag(g))).max()))
    if f == "Sp":
        J = quaternionic_J(spec.n)
        res = max(res, float(np.abs(g @ J - J @ g.conj()).max()))
    if f == "Spin":
        from .clifford_octonion import clifford_generators
        gam = clifford_generators(spec.n).gammas
        flat = gam.reshape(len(gam), -1)
        P = flat.T @ np.linalg.pinv(flat.T)
        for c in gam:
            v = (g @ c @ g.T).ravel()
            res = max(res, float(np.linalg.norm(v - P @ v)))
    if f == "G2":
        from .clifford_octonion import octonion_multiply
        E = np.eye(8)
        G = np.eye(8)
        G[1:, 1:] = np.real(g)
        for a in range(1, 8):
            for b in range(1, 8):
                lhs = G @ octonion_multiply(E[a], E[b])
                rhs = octonion_multiply(G @ E[a], G @ E[b])
                res = max(res, float(np.abs(lhs - rhs).max()))
    return res


_NAME = re.compile(r"^\s*(SO|SU|U|Sp|Spin)\((\d+)\)\s*$|^\s*(G2)\s*$|^\s*T(\d+)\s*$")


def parse_group_spec(text: str, kappa: float = DEFAULT_KAPPA) -> GroupSpec:
    """Parse names such as ``SO(5)``, ``SU(3)xSO(3)``, ``Sp(2)``, ``G2``, ``U(1)``."""
    parts = [p for p in re.split(r"\s*[x×]\s*(?=[A-Z])", text.strip()) if p]
    specs = []
    for p in parts:
        m = _NAME.match(p)
        if not m:
            raise ValueError(f"cannot parse group name {p!r}")
        if m.group(1):
            specs.append(GroupSpec(m.group(1), int(m.group(2)), kappa))
        elif m.group(3):
            specs.append(GroupSpec("G2", 1, kappa))
        else:
            specs.append(GroupSpec("T", int(m.group(4)), kappa))
    if len(specs) == 1:
        return specs[0]
    return GroupSpec("product", 0, kappa, tuple(specs))


def G2_SPEC(kappa: float = DEFAULT_KAPPA) -> GroupSpec:
    return GroupSpec("G2", 1, kappa)


def product(*specs: GroupSpec) -> GroupSpec:
    return GroupSpec("product", 0, DEFAULT_KAPPA, tuple(specs))


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True)
class AlgebraElement:
    spec: GroupSpec
    coords: np.ndarray

    @classmethod
    def from_matrix(cls, spec: GroupSpec, X) -> "AlgebraElement":
        return cls(spec, spec.coords(X))

    @property
    def matrix(self) -> np.ndarray:
        return self.spec.from_coords(self.coords)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))

    def __add__(self, other):
        _same(self.spec, other.spec)
        return AlgebraElement(self.spec, self.coords + other.coords)

    def __mul__(self, t: float):
        return AlgebraElement(self.spec, t * self.coords)

    __rmul__ = __mul__


@dataclass(frozen=True)
class GroupElement:
    spec: GroupSpec
    matrix: np.ndarray = field(repr=False)

    def __matmul__(self, other: "GroupElement") -> "GroupElement":
        _same(self.spec, other.spec)
        return GroupElement(self.spec, self.matrix @ other.matrix)

    def inv(self) -> "GroupElement":
        return GroupElement(self.spec, self.matrix.conj().T)

    def residual(self) -> float:
        return self.spec.group_residual(self.matrix)

    @classmethod
    def identity(cls, spec: GroupSpec) -> "GroupElement":
        return cls(spec, spec.identity())


def _same(a: GroupSpec, b: GroupSpec):
    if a != b:
        raise ValueError(f"spec mismatch: {a.name} vs {b.name}")


def exp(X: AlgebraElement) -> GroupElement:
    return GroupElement(X.spec, exp_skew(X.matrix))


def log(g: GroupElement, bound: int = 2) -> AlgebraElement:
    """Minimal-norm logarithm of ``g`` as an algebra element."""
    return AlgebraElement.from_matrix(g.spec, min_norm_alg_log(g.matrix, g.spec, bound))


def bracket(X: AlgebraElement, Y: AlgebraElement) -> AlgebraElement:
    _same(X.spec, Y.spec)
    A, B = X.matrix, Y.matrix
    return AlgebraElement.from_matrix(X.spec, A @ B - B @ A)


def adjoint(g: GroupElement, X: AlgebraElement) -> AlgebraElement:
    _same(g.spec, X.spec)
    m = g.matrix
    return AlgebraElement.from_matrix(X.spec, m @ X.matrix @ m.conj().T)


def ad_matrix(spec: GroupSpec, X) -> np.ndarray:
    """Matrix of ad(X) on coordinates."""
    X = np.asarray(X)
    B = spec.basis
    comm = np.einsum("ij,bjk->bik", X, B) - np.einsum("bij,jk->bik", B, X)
    return spec.coords_many(comm).T


def Ad_matrix(spec: GroupSpec, g, conj: bool = False) -> np.ndarray:
    """Matrix of X -> g c(X) g^{-1} on coordinates, c = entrywise conjugation if ``conj``."""
    g = np.asarray(g)
    B = spec.basis.conj() if conj else spec.basis
    imgs = np.einsum("ij,bjk,lk->bil", g, B, g.conj())
    return spec.coords_many(imgs).T


# ---------------------------------------------------------------------------
# rank, tori, centralizers


def _rng(seed: int, *stream: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([int(seed), *map(int, stream)]))


def random_algebra(spec: GroupSpec, seed: int, index: int = 0, scale: float = 1.0) -> AlgebraElement:
    """Gaussian coordinates with standard deviation ``scale``; deterministic per (seed, index)."""
    c = _rng(seed, 0, index).standard_normal(spec.dim) * scale
    return AlgebraElement(spec, c)


def random_element(spec: GroupSpec, seed: int, index: int = 0) -> GroupElement:
    """Product of three exponentials of random algebra elements (std pi).

    Approximately spread over the group; not exact Haar measure.
    """
    g = spec.identity()
    for k in range(3):
        c = _rng(seed, 1, index, k).standard_normal(spec.dim) * np.pi
        g = g @ exp_skew(spec.from_coords(c))
    return GroupElement(spec, g)


def subalgebra_rank(basis_mats: np.ndarray, seed: int = 0, draws: int = 3, tol: float = 1e-8) -> int:
    """Rank of the Lie algebra spanned by ``basis_mats`` (a subalgebra).

    Computed as the centralizer dimension of random elements, majority over
    ``draws`` draws.
    """
    mats = np.asarray(basis_mats)
    d = len(mats)
    if d == 0:
        return 0
    flat = mats.reshape(d, -1)
    pinv = np.linalg.pinv(flat.T)
    rng = _rng(seed, 2)
    dims = []
    for _ in range(draws):
        c = rng.standard_normal(d)
        X = np.tensordot(c, mats, axes=1)
        comm = np.einsum("ij,bjk->bik", X, mats) - np.einsum("bij,jk->bik", mats, X)
        A = pinv @ comm.reshape(d, -1).T
        s = np.linalg.svd(A, compute_uv=False)
        scale = max(1.0, s.max(initial=0))
        dims.append(int(np.sum(s < tol * scale)))
    vals, counts = np.unique(dims, return_counts=True)
    if counts.max() < 2 and draws >= 3:
        raise RuntimeError(f"unstable rank estimate {dims}; resample")
    return int(vals[np.argmax(counts)])


def rank(spec: GroupSpec, seed: int = 0) -> int:
    return subalgebra_rank(spec.basis, seed)


def _in_torus(spec: GroupSpec, g: np.ndarray, tol=1e-10) -> bool:
    return np.abs(g - _torus_part(spec, g)).max() < tol


def _torus_part(spec: GroupSpec, g: np.ndarray) -> np.ndarray:
    f = spec.family
    if f in ("U", "SU", "T"):
        return np.diag(np.diag(g))
    if f == "Sp":
        return np.diag(np.diag(g))
    if f == "SO":
        out = np.zeros_like(g)
        n = len(g)
        for k in range(0, n - 1, 2):
            out[k:k + 2, k:k + 2] = g[k:k + 2, k:k + 2]
        if n % 2:
            out[-1, -1] = g[-1, -1]
        return out
    raise ValueError(f"no designated torus for {spec.name}")


def conjugate_into_torus(g: GroupElement) -> tuple[GroupElement, GroupElement]:
    """Return (t, c) with c g c^{-1} = t in the designated maximal torus.

    Tori: diagonal for U/SU/Sp (Sp as diag(z, conj z)), 2x2 rotation blocks
    R(theta) = [[cos, sin], [-sin, cos]] along the diagonal for SO (a
    trailing 1 for odd n). Elements already in the torus come back with
    c = I.
    """
    spec, m = g.spec, np.asarray(g.matrix)
    if spec.family == "product":
        T = np.zeros_like(m)
        C = np.zeros_like(m)
        for fac, sl in zip(spec.factors, spec.block_slices):
            t, c = conjugate_into_torus(GroupElement(fac, m[sl, sl]))
            T[sl, sl], C[sl, sl] = t.matrix, c.matrix
        return GroupElement(spec, T), GroupElement(spec, C)
    if spec.family in ("Spin", "G2"):
        raise ValueError(f"torus conjugation not implemented for {spec.name}")
    if _in_torus(spec, m):
        return GroupElement(spec, m.copy()), GroupElement.identity(spec)
    if spec.family == "SO":
        C = _so_torus_conjugator(m)
    elif spec.family == "Sp":
        C = _sp_torus_conjugator(m, spec.n)
    else:
        T, Z = scipy.linalg.schur(m.astype(complex), output="complex")
        if spec.family == "SU":
            Z[:, 0] /= np.linalg.det(Z)
        C = Z.conj().T
    t = C @ m @ C.conj().T
    if np.abs(t - _torus_part(spec, t)).max() > 1e-8:
        raise RuntimeError("defective numerical diagonalization")
    t = _torus_part(spec, t)
    return GroupElement(spec, t), GroupElement(spec, C)


def _so_torus_conjugator(m: np.ndarray) -> np.ndarray:
    n = len(m)
    T, Q = scipy.linalg.schur(m, output="real")
    cols_blocks, plus, minus = [], [], []
    i = 0
    while i < n:
        if i + 1 < n and abs(T[i + 1, i]) > 1e-12:
            cols_blocks.append([Q[:, i], Q[:, i + 1]])
            i += 2
        else:
            (minus if T[i, i] < 0 else plus).append(Q[:, i])
            i += 1
    for a, b in zip(minus[::2], minus[1::2]):
        cols_blocks.append([a, b])
    for a, b in zip(plus[: (len(plus) // 2) * 2: 2], plus[1: (len(plus) // 2) * 2: 2]):
        cols_blocks.append([a, b])
    cols = [c for blk in cols_blocks for c in blk]
    if len(plus) % 2:
        cols.append(plus[-1])
    W = np.array(cols).T
    if np.linalg.det(W) < 0:
        W[:, 0] *= -1
    return W.T


def _sp_torus_conjugator(m: np.ndarray, n: int) -> np.ndarray:
    J = quaternionic_J(n)
    T, Z = scipy.linalg.schur(m.astype(complex), output="complex")
    vals = np.diag(T)
    vs: list[np.ndarray] = []
    used: list[np.ndarray] = []
    order = np.argsort(-np.angle(vals), kind="stable")
    for idx in order:
        v = Z[:, idx].copy()
        for u in used:
            v -= u * (u.conj() @ v)
        nv = np.linalg.norm(v)
        if nv < 1e-6:
            continue
        v /= nv
        # v must be an eigenvector; project back onto its eigenspace
        w = -J @ v.conj()
        vs.append(v)
        used += [v, w]
        if len(vs) == n:
            break
    W = np.zeros((2 * n, 2 * n), complex)
    for p, v in enumerate(vs):
        W[:, p] = v
        W[:, n + p] = -J @ v.conj()
    return W.conj().T


@dataclass(frozen=True)
class Subspace:
    """Orthonormal coordinate basis (rows) of a subspace of an algebra."""

    spec: GroupSpec
    coords: np.ndarray

    @property
    def dim(self) -> int:
        return len(self.coords)

    @property
    def matrices(self) -> np.ndarray:
        if self.dim == 0:
            N = self.spec.rep_dim
            return np.zeros((0, N, N), dtype=self.spec.dtype)
        return np.tensordot(self.coords, self.spec.basis, axes=1)

    def elements(self) -> list[AlgebraElement]:
        return [AlgebraElement(self.spec, c) for c in self.coords]


def null_space(A: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal rows spanning ker A."""
    if A.size == 0:
        return np.eye(A.shape[1])
    u, s, vt = np.linalg.svd(A)
    scale = max(1.0, s.max(initial=0))
    r = int(np.sum(s > tol * scale))
    return vt[r:]


def centralizer_algebra(spec: GroupSpec, actions: Iterable) -> Subspace:
    """Fixed subalgebra {X : a(X) = X for all actions a}.

    Each action is either a callable on algebra matrices, a pair
    ``(g, conj)`` meaning X -> g c(X) g^{-1}, or an object with an
    ``algebra_action`` method.
    """
    d = spec.dim
    rows = []
    for a in actions:
        if hasattr(a, "algebra_action"):
            f = a.algebra_action
        elif callable(a):
            f = a
        else:
            g, conj = a
            g = np.asarray(g)
            f = (lambda X, g=g, conj=conj: g @ (X.conj() if conj else X) @ g.conj().T)
        imgs = np.array([f(b) for b in spec.basis])
        M = spec.coords_many(imgs).T
        rows.append(M - np.eye(d))
    if not rows:
        return Subspace(spec, np.eye(d))
    return Subspace(spec, null_space(np.vstack(rows)))


def jacobi_residual(X, Y, Z) -> float:
    def br(a, b):
        return a @ b - b @ a
    return float(np.abs(br(X, br(Y, Z)) + br(Y, br(Z, X)) + br(Z, br(X, Y))).max())

"""Homogeneous spaces G/H with normal (and fiber-rescaled) metrics.

The tangent space at the base point ``x0 = 1H`` is ``m``, the orthogonal
complement of ``h`` under the Ad-invariant inner product of G. A point
``gH`` is stored through a representative ``g``; tangent vectors at that
point are elements of ``m`` pushed forward by ``g``.

Normal-metric curvature uses the submersion formula for G -> G/H with G
bi-invariant (O'Neill), which for ``xi, eta`` in ``m`` reads

    K(xi, eta) * area^2 = 1/4 |[xi, eta]_m|^2 + |[xi, eta]_h|^2 .
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .lie_core import (
    GroupSpec, Subspace, _orthonormalize, _rng, null_space, random_element,
    subalgebra_rank,
)
from .matrix_core import exp_skew, min_log_sqnorms, min_norm_alg_log
from .report import CheckReport, FAIL, INCONCLUSIVE, PASS

POINT_TOL = 1e-8


class SpaceError(ValueError):
    pass


class ConvergenceError(RuntimeError):
    def __init__(self, msg, best):
        super().__init__(msg)
        self.best = best


@dataclass(frozen=True)
class MetricSpec:
    c: float = 1.0
    lam: float = 1.0

    def __post_init__(self):
        if self.c <= 0 or self.lam <= 0:
            raise SpaceError("metric scales must be positive")

    @property
    def is_normal(self) -> bool:
        return self.lam == 1.0


@dataclass(frozen=True)
class FibrationSpec:
    K_name: str
    k: Subspace
    m1: Subspace  # tangent of the base G/K
    m2: Subspace  # tangent of the fiber K/H


def _complement(spec: GroupSpec, rows: np.ndarray, within: Optional[np.ndarray] = None) -> np.ndarray:
    """Orthonormal rows spanning rows^perp (inside ``within`` if given)."""
    d = spec.dim
    W = np.eye(d) if within is None else within
    if len(rows) == 0:
        return W.copy()
    A = rows @ W.T
    ns = null_space(A)
    return ns @ W


def _span_rows(spec: GroupSpec, mats) -> np.ndarray:
    C = spec.coords_many(np.asarray(mats)) if len(mats) else np.zeros((0, spec.dim))
    if len(C) == 0:
        return C
    u, s, vt = np.linalg.svd(C, full_matrices=False)
    r = int(np.sum(s > 1e-9 * max(1.0, s.max())))
    return vt[:r]


def _proj(rows: np.ndarray, c: np.ndarray) -> np.ndarray:
    return rows.T @ (rows @ c)


class HomSpace:
    """G/H with an optional fibration H ⊂ K ⊂ G.

    ``outer`` maps names (``"nu"``) to automorphisms of G given as callables
    on matrices; they must preserve H.
    """

    def __init__(self, G: GroupSpec, H_name: str, h_coords: np.ndarray, *,
                 metric: MetricSpec = MetricSpec(), fibration: Optional[FibrationSpec] = None,
                 name: str = "", outer: Optional[dict] = None, check: bool = True):
        self.G = G
        self.H_name = H_name
        self.h = Subspace(G, np.asarray(h_coords, float).reshape(-1, G.dim))
        self.m = Subspace(G, _complement(G, self.h.coords))
        self.metric = metric
        self.fibration = fibration
        self.name = name or f"{G.name}/{H_name}"
        self.outer = dict(outer or {})
        self._hm = self.h.matrices
        self._mm = self.m.matrices
        if check:
            self._validate()

    # -- construction ---------------------------------------------------------
    @classmethod
    def reductive_split(cls, G: GroupSpec, H: GroupSpec, embed: Callable, **kw) -> "HomSpace":
        """Build G/H from an algebra homomorphism ``embed`` : h -> g (matrices)."""
        Hb = H.basis
        imgs = np.array([embed(b) for b in Hb])
        res = 0.0
        for a, b in itertools.combinations(range(len(Hb)), 2):
            lhs = embed(Hb[a] @ Hb[b] - Hb[b] @ Hb[a])
            rhs = imgs[a] @ imgs[b] - imgs[b] @ imgs[a]
            res = max(res, float(np.abs(lhs - rhs).max()))
        if res > 1e-10:
            raise SpaceError(f"embedding does not preserve brackets (residual {res:.2e})")
        off = max(G.membership_residual(m) for m in imgs) if len(imgs) else 0.0
        if off > 1e-10:
            raise SpaceError(f"embedding leaves the algebra of {G.name} (residual {off:.2e})")
        rows = _span_rows(G, imgs)
        kw.setdefault("name", f"{G.name}/{H.name}")
        space = cls(G, H.name, rows, **kw)
        space.H_spec = H
        space.embed = embed
        return space

    @classmethod
    def from_subalgebra(cls, G: GroupSpec, H_name: str, mats, **kw) -> "HomSpace":
        """Build G/H from matrices spanning h inside the algebra of G."""
        mats = np.asarray(mats)
        off = max((G.membership_residual(m) for m in mats), default=0.0)
        if off > 1e-10:
            raise SpaceError(f"subalgebra leaves the algebra of {G.name} (residual {off:.2e})")
        return cls(G, H_name, _span_rows(G, mats), **kw)

    def with_fibration(self, K_name: str, k_coords) -> "HomSpace":
        k = np.asarray(k_coords, float).reshape(-1, self.G.dim)
        m1 = _complement(self.G, k)
        m2 = _complement(self.G, self.h.coords, within=k)
        fib = FibrationSpec(K_name, Subspace(self.G, k), Subspace(self.G, m1), Subspace(self.G, m2))
        out = HomSpace(self.G, self.H_name, self.h.coords, metric=self.metric, fibration=fib,
                       name=self.name, outer=self.outer, check=False)
        out.__dict__.update({k_: v for k_, v in self.__dict__.items()
                             if k_ in ("H_spec", "embed")})
        return out

    def with_metric(self, metric: MetricSpec) -> "HomSpace":
        out = HomSpace(self.G, self.H_name, self.h.coords, metric=metric, fibration=self.fibration,
                       name=self.name, outer=self.outer, check=False)
        out.__dict__.update({k_: v for k_, v in self.__dict__.items() if k_ in ("H_spec", "embed")})
        return out

    def base_space(self) -> "HomSpace":
        if self.fibration is None:
            raise SpaceError("no fibration")
        return HomSpace(self.G, self.fibration.K_name, self.fibration.k.coords,
                        metric=MetricSpec(self.metric.c), name=f"{self.G.name}/{self.fibration.K_name}",
                        check=False)

    def _validate(self):
        G = self.G
        if self.m.dim != G.dim - self.h.dim:
            raise SpaceError("dim m != dim G - dim H")
        r = self.bracket_residual(self._hm, self._hm, self.h.coords)
        if r > 1e-9:
            raise SpaceError(f"h is not a subalgebra (residual {r:.2e})")
        r = self.bracket_residual(self._hm, self._mm, self.m.coords)
        if r > 1e-9:
            raise SpaceError(f"[h, m] not inside m (residual {r:.2e})")
        if self.metric.lam != 1.0 and self.fibration is None:
            raise SpaceError("fiber scale needs a fibration")

    def bracket_residual(self, A, B, target_rows) -> float:
        res = 0.0
        for a in A:
            for b in B:
                c = self.G.coords(a @ b - b @ a)
                res = max(res, float(np.linalg.norm(c - _proj(target_rows, c))))
        return res

    # -- basic data -------------------------------------------------------------
    @property
    def dim(self) -> int:
        return self.m.dim

    def __repr__(self):
        return f"HomSpace({self.name}, dim={self.dim})"

    def point(self, g) -> "CosetPoint":
        return CosetPoint(self, np.asarray(g))

    def base_point(self) -> "CosetPoint":
        return CosetPoint(self, self.G.identity())

    def random_point(self, seed: int, index: int = 0) -> "CosetPoint":
        return CosetPoint(self, random_element(self.G, seed, index).matrix)

    def h_exp(self, a) -> np.ndarray:
        return exp_skew(np.tensordot(np.asarray(a, float), self._hm, axes=1))

    def m_matrix(self, xi_m) -> np.ndarray:
        """Matrix of the m-vector with coordinates ``xi_m`` (in the m basis)."""
        return np.tensordot(np.asarray(xi_m, float), self._mm, axes=1)

    def m_coords(self, X) -> np.ndarray:
        return self.m.coords @ self.G.coords(X)

    def metric_sqrt(self) -> np.ndarray:
        """W with |W v| the metric norm of an m-vector v (m coordinates)."""
        W = np.sqrt(self.metric.c) * np.eye(self.dim)
        if self.metric.lam == 1.0 or self.fibration is None:
            return W
        B = self.m.coords @ self.fibration.m2.coords.T
        P2 = B @ B.T
        return W @ (np.eye(self.dim) + (np.sqrt(self.metric.lam) - 1.0) * P2)

    def metric_norm(self, xi_m) -> float:
        """Norm of an m-vector (m-basis coordinates) in the (c, lambda) metric."""
        xi_m = np.asarray(xi_m, float)
        c, lam = self.metric.c, self.metric.lam
        if lam == 1.0 or self.fibration is None:
            return float(np.sqrt(c) * np.linalg.norm(xi_m))
        full = self.m.coords.T @ xi_m
        a = self.fibration.m1.coords @ full
        b = self.fibration.m2.coords @ full
        return float(np.sqrt(c * (a @ a + lam * (b @ b))))

    # -- geometry ---------------------------------------------------------------
    def _require_normal(self, what):
        if not self.metric.is_normal:
            raise SpaceError(f"{what} needs the normal metric (lambda = 1)")

    def geodesic(self, x: "CosetPoint", xi_m, t: float) -> "CosetPoint":
        self._require_normal("geodesic")
        return CosetPoint(self, x.rep @ exp_skew(t * self.m_matrix(xi_m)))

    def _h_seeds(self, n_seeds: int, seed: int) -> np.ndarray:
        dh = self.h.dim
        # exponential coordinates spanning about a third of a turn per generator
        radii = np.array([np.abs(np.linalg.eigvals(b)).max() for b in self._hm])
        r = (2 * np.pi / 3) / radii
        if 3 ** dh <= n_seeds:
            grid = np.array(list(itertools.product((-1.0, 0.0, 1.0), repeat=dh)))
        else:
            rng = _rng(seed, 11, dh)
            grid = rng.uniform(-1.5, 1.5, size=(n_seeds - 1, dh))
            grid = np.vstack([np.zeros(dh), grid])
        return grid * r

    def _batch_h(self, coords: np.ndarray) -> np.ndarray:
        X = np.einsum("si,ijk->sjk", coords, self._hm)
        w, v = np.linalg.eigh(-1j * X)
        H = np.einsum("sij,sj,skj->sik", v, np.exp(1j * w), v.conj())
        return H.real if self.G.is_real else H

    def coset_distance(self, g, *, n_seeds: int = 200, refine: int = 4, seed: int = 0,
                       max_iter: int = 300, tol: float = 1e-13, with_h: bool = False):
        """min over h in H of |log(g h)| (unscaled), by seeded descent on H.

        The gradient of h -> |log(gh)|^2 in the direction of h exp(sZ) is
        2 <log(gh), Z>, so each step moves against the h-part of log(gh).
        """
        G = self.G
        g = np.asarray(g)
        if self.h.dim == 0:
            L = min_norm_alg_log(g, G)
            return (G.norm(L), np.eye(len(g))) if with_h else G.norm(L)
        seeds = self._h_seeds(n_seeds, seed)
        Hs = self._batch_h(seeds)
        scores = min_log_sqnorms(np.einsum("ij,sjk->sik", g, Hs), G)
        order = np.argsort(scores, kind="stable")
        best_val, best_h, converged = np.inf, None, False
        hrows = self.h.coords
        for idx in order[:refine]:
            h = Hs[idx]
            f = scores[idx]
            ok = False
            for _ in range(max_iter):
                L = min_norm_alg_log(g @ h, G)
                f = G.inner(L, L)
                a = hrows @ G.coords(L)
                gn = float(a @ a)
                if gn < tol * max(1.0, f) ** 0:
                    ok = True
                    break
                step = 1.0
                Z = np.tensordot(a, self._hm, axes=1)
                while True:
                    hn = h @ exp_skew(-step * Z)
                    fn = min_log_sqnorms((g @ hn)[None], G)[0]
                    if fn <= f - 1e-4 * step * gn or step < 1e-10:
                        break
                    step *= 0.5
                if step < 1e-10:
                    ok = gn < 1e-10
                    break
                h = hn
            val = float(np.sqrt(max(f, 0.0)))
            if val < best_val:
                best_val, best_h, converged = val, h, ok
        if not converged and best_val > 1e-6:
            raise ConvergenceError(f"distance refinement did not converge on {self.name}", best_val)
        return (best_val, best_h) if with_h else best_val

    def distance(self, x: "CosetPoint", y: "CosetPoint", **kw) -> float:
        self._require_normal("distance")
        if x.space is not self and x.space.G != self.G:
            raise SpaceError("points from different spaces")
        g = x.rep.conj().T @ y.rep
        return float(np.sqrt(self.metric.c) * self.coset_distance(g, **kw))

    def same_point(self, x: "CosetPoint", y: "CosetPoint") -> bool:
        return self.distance(x, y) < POINT_TOL

    def sectional_curvature(self, x: "CosetPoint", xi_m, eta_m) -> float:
        """Sectional curvature of the plane spanned by xi, eta (m coordinates at x).

        G-invariance makes the value independent of the point for vectors
        given relative to the representative of ``x``.
        """
        self._require_normal("sectional curvature")
        xi_m, eta_m = np.asarray(xi_m, float), np.asarray(eta_m, float)
        area2 = (xi_m @ xi_m) * (eta_m @ eta_m) - (xi_m @ eta_m) ** 2
        if area2 < 1e-14 * max(1.0, (xi_m @ xi_m) * (eta_m @ eta_m)):
            raise SpaceError("degenerate plane")
        A, B = self.m_matrix(xi_m), self.m_matrix(eta_m)
        c = self.G.coords(A @ B - B @ A)
        cm = self.m.coords @ c
        ch = self.h.coords @ c
        num = 0.25 * (cm @ cm) + ch @ ch
        return float(num / (self.metric.c * area2))

    # -- isotropy ---------------------------------------------------------------
    def isotropy_matrices(self) -> np.ndarray:
        """ad(Y) restricted to m, in m coordinates, for the h basis."""
        out = []
        for Y in self._hm:
            imgs = np.einsum("ij,bjk->bik", Y, self._mm) - np.einsum("bij,jk->bik", self._mm, Y)
            out.append(self.m.coords @ self.G.coords_many(imgs).T)
        return np.array(out).reshape(len(out), self.dim, self.dim)

    def decompose_isotropy(self, seed: int = 0) -> dict:
        return decompose_representation(self.isotropy_matrices(), seed, dim=self.dim)

    # -- fibration checks ---------------------------------------------------------
    def projection_rep(self, x: "CosetPoint") -> "CosetPoint":
        return CosetPoint(self.base_space(), x.rep)

    def fibration_conditions(self, tol: float = 1e-10) -> CheckReport:
        rep = CheckReport("fibration", "new-setup")
        fib = self.fibration
        if fib is None:
            rep.status = FAIL
            rep.metrics["error"] = "no fibration"
            return rep
        G = self.G
        k, m1, m2 = fib.k, fib.m1, fib.m2
        km, m1m, m2m = k.matrices, m1.matrices, m2.matrices
        rep.metrics["dims"] = {"G": G.dim, "H": self.h.dim, "K": k.dim, "m1": m1.dim, "m2": m2.dim}
        rep.require("m_split_dims", m1.dim + m2.dim == self.m.dim)
        ortho = float(np.abs(m1.coords @ m2.coords.T).max(initial=0.0))
        rep.check("m1_perp_m2", ortho, tol)
        h_in_k = float(np.linalg.norm(self.h.coords - self.h.coords @ k.coords.T @ k.coords)) if self.h.dim else 0.0
        rep.check("h_in_k", h_in_k, tol)
        rep.check("k_subalgebra", self.bracket_residual(km, km, k.coords), tol)
        rep.check("m1_bracket_in_k", self.bracket_residual(m1m, m1m, k.coords), tol)
        rep.check("m2_bracket_in_h", self.bracket_residual(m2m, m2m, self.h.coords), tol)
        return rep

    def totally_geodesic_fiber_check(self, samples: int = 100, seed: int = 0,
                                     tol: float = 1e-10) -> CheckReport:
        rep = CheckReport("tg-fiber", "new-go-space", seed=seed, samples=samples)
        fib = self.fibration
        if fib is None:
            rep.status = FAIL
            rep.metrics["error"] = "no fibration"
            return rep
        G = self.G
        rng = _rng(seed, 21)
        worst = 0.0
        m2m = fib.m2.matrices
        mm = self._mm
        for s in range(samples):
            xi = rng.standard_normal(fib.m2.dim) @ fib.m2.coords if fib.m2.dim else np.zeros(G.dim)
            rows = fib.m1.coords if s % 2 == 0 else fib.m2.coords
            eta = rng.standard_normal(len(rows)) @ rows if len(rows) else np.zeros(G.dim)
            A, B = G.from_coords(xi), G.from_coords(eta)
            brm = self.m.coords @ G.coords(A @ B - B @ A)
            xim = self.m.coords @ xi
            val = self._metric_inner_m(brm, xim)
            worst = max(worst, abs(val))
        rep.check("max_abs_bracket_xi", worst, tol)
        # fibers are preserved: pi(exp(t xi) x) = pi(x)
        base = self.base_space()
        fworst = 0.0
        for s in range(min(samples, 5)):
            x = self.random_point(seed, 100 + s)
            xi = rng.standard_normal(fib.m2.dim) @ fib.m2.coords if fib.m2.dim else np.zeros(G.dim)
            t = float(rng.uniform(-1.0, 1.0))
            y = x.rep @ exp_skew(t * G.from_coords(xi))
            fworst = max(fworst, base.distance(base.point(x.rep), base.point(y)))
        rep.check("fiber_preservation", fworst, 1e-8)
        return rep

    def _metric_inner_m(self, a_m, b_m) -> float:
        c, lam = self.metric.c, self.metric.lam
        if lam == 1.0 or self.fibration is None:
            return float(c * (a_m @ b_m))
        fa = self.m.coords.T @ a_m
        fb = self.m.coords.T @ b_m
        m1, m2 = self.fibration.m1.coords, self.fibration.m2.coords
        return float(c * ((m1 @ fa) @ (m1 @ fb) + lam * (m2 @ fa) @ (m2 @ fb)))

    def rank_conditions(self, seed: int = 0) -> CheckReport:
        rep = CheckReport("rank", "rank-equality", seed=seed)
        rg = subalgebra_rank(self.G.basis, seed)
        rh = subalgebra_rank(self._hm, seed) if self.h.dim else 0
        rep.metrics.update({"rank_G": rg, "rank_H": rh, "rank_H_eq_rank_G": rh == rg})
        if self.fibration is not None:
            rk = subalgebra_rank(self.fibration.k.matrices, seed)
            rep.metrics.update({"rank_K": rk, "rank_K_eq_rank_G": rk == rg})
        return rep


@dataclass(frozen=True)
class CosetPoint:
    space: HomSpace
    rep: np.ndarray = field(repr=False)

    def __eq__(self, other):
        return isinstance(other, CosetPoint) and self.space.same_point(self, other)

    __hash__ = None

    def translate(self, g) -> "CosetPoint":
        return CosetPoint(self.space, np.asarray(g) @ self.rep)


def _commutant(mats: list[np.ndarray], symmetric: bool, d_out: int | None = None,
               mats_out: list[np.ndarray] | None = None) -> np.ndarray:
    """Basis of {A : A R_k = S_k A} (S = R unless ``mats_out`` given)."""
    R = mats
    S = mats if mats_out is None else mats_out
    n = R[0].shape[0] if len(R) else (d_out or 0)
    m = n if d_out is None else d_out
    if symmetric:
        idx = [(i, j) for i in range(n) for j in range(i, n)]
        cols = []
        for i, j in idx:
            E = np.zeros((n, n))
            E[i, j] = E[j, i] = 1.0
            cols.append(E)
    else:
        cols = []
        for i in range(m):
            for j in range(n):
                E = np.zeros((m, n))
                E[i, j] = 1.0
                cols.append(E)
    if not len(R):
        return np.array(cols)
    A = np.array([np.concatenate([(E @ r - s @ E).ravel() for r, s in zip(R, S)]) for E in cols]).T
    ns = null_space(A, tol=1e-8)
    return np.tensordot(ns, np.array(cols), axes=1)


def decompose_representation(mats, seed: int = 0, tol: float = 1e-6, dim: int | None = None) -> dict:
    """Split a real orthogonal representation (skew generators) into irreducibles.

    Blocks are eigenspaces of a random symmetric intertwiner. Reports block
    dimensions, the endomorphism dimension of each block (1 real, 2 complex,
    4 quaternionic type), isotypic multiplicities and the dimension of the
    space of invariant symmetric bilinear forms.
    """
    mats = [np.asarray(m) for m in mats]
    n = mats[0].shape[0] if mats else (dim or 0)
    sym = _commutant(mats, symmetric=True, d_out=n)
    d_sym = len(sym)
    rng = _rng(seed, 31)
    A = np.tensordot(rng.standard_normal(d_sym), sym, axes=1) if d_sym else np.eye(n)
    w, v = np.linalg.eigh(A)
    blocks: list[np.ndarray] = []
    start = 0
    for i in range(1, n + 1):
        if i == n or abs(w[i] - w[i - 1]) > tol * max(1.0, np.abs(w).max()):
            blocks.append(v[:, start:i])
            start = i
    block_mats = [[b.T @ m @ b for m in mats] for b in blocks]
    ends = [len(_commutant(bm, symmetric=False)) if bm else b.shape[1] ** 2
            for bm, b in zip(block_mats, blocks)]
    iso = list(range(len(blocks)))
    for i, j in itertools.combinations(range(len(blocks)), 2):
        if blocks[i].shape[1] != blocks[j].shape[1] or iso[j] != j:
            continue
        if block_mats[i]:
            hom = _commutant(block_mats[i], symmetric=False, d_out=blocks[j].shape[1],
                             mats_out=block_mats[j])
            if len(hom):
                iso[j] = iso[i]
        else:
            iso[j] = iso[i]
    mult = [iso.count(iso[i]) for i in range(len(blocks))]
    out_blocks = [{"dim": int(b.shape[1]), "endomorphism_dim": int(e), "multiplicity": int(mu)}
                  for b, e, mu in zip(blocks, ends, mult)]
    out_blocks.sort(key=lambda r: (r["dim"], r["endomorphism_dim"]))
    return {"blocks": out_blocks, "block_dims": [b["dim"] for b in out_blocks],
            "d_sym": int(d_sym), "bases": blocks}

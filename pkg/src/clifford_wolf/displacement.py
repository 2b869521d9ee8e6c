"""Displacement functions, Killing-field norms and homogeneity verdicts.

An isometry is kept in the normal form ``x -> g sigma(x) k`` where
``sigma`` is either the identity or the space's outer automorphism ``nu``
(an automorphism of G preserving H) and ``k`` normalizes H. All verdicts
produced here are numerical evidence from sampling plus local search.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Optional

import numpy as np
from scipy.optimize import minimize

from .homspace import ConvergenceError, CosetPoint, HomSpace
from .lie_core import _rng, centralizer_algebra, conjugate_into_torus, GroupElement, random_element
from .matrix_core import exp_skew, min_norm_alg_log, parse_matrix_literal
from .report import CheckReport, FAIL, INCONCLUSIVE, PASS

CLOSURE_BOUND = 512
FIXED_TOL = 1e-6
CD_REL_TOL = 1e-5

# Oracle threshold for the SO(5)/SO(3) Killing spread: half the smallest
# normalized spread found by scripts/berger_killing_sweep.py
KILLING_THRESHOLD_10 = 0.2721
KILLING_PROVENANCE = {"file": "scripts/berger_killing_sweep.py", "date": "2026-10-16",
                      "sampled_min_spread": 0.544241, "threshold": KILLING_THRESHOLD_10}


class IsometryError(ValueError):
    pass


def _inv(g):
    return np.asarray(g).conj().T


@dataclass(frozen=True, eq=False)
class Isometry:
    space: HomSpace
    g: np.ndarray
    nu: bool = False
    k: Optional[np.ndarray] = None
    name: str = ""

    def __post_init__(self):
        G = self.space.G
        g = np.asarray(self.g, dtype=G.dtype)
        object.__setattr__(self, "g", g)
        if g.shape != (G.rep_dim, G.rep_dim) or G.group_residual(g) > 1e-9:
            raise IsometryError(f"inner part is not an element of {G.name}")
        if self.nu:
            if "nu" not in self.space.outer:
                raise IsometryError(f"no outer automorphism nu registered on {self.space.name}")
            r = _stability_residual(self.space, self.space.outer["nu"])
            if r > 1e-9:
                raise IsometryError(f"nu does not preserve H (residual {r:.2e})")
        if self.k is not None:
            k = np.asarray(self.k, dtype=G.dtype)
            object.__setattr__(self, "k", k)
            if G.group_residual(k) > 1e-9:
                raise IsometryError("right factor is not a group element")
            r = _stability_residual(self.space, lambda X: _inv(k) @ X @ k)
            if r > 1e-9:
                raise IsometryError(f"right factor does not normalize H (residual {r:.2e})")

    @property
    def sigma(self):
        return self.space.outer["nu"] if self.nu else (lambda X: X)

    def apply(self, x: CosetPoint) -> CosetPoint:
        r = self.g @ self.sigma(x.rep)
        if self.k is not None:
            r = r @ self.k
        return CosetPoint(self.space, r)

    __call__ = apply

    def compose(self, other: "Isometry") -> "Isometry":
        """self o other."""
        s = self.sigma
        g = self.g @ s(other.g)
        ks = [s(other.k)] if other.k is not None else []
        if self.k is not None:
            ks.append(self.k)
        k = None
        for m in ks:
            k = m if k is None else k @ m
        return Isometry(self.space, g, self.nu != other.nu, k)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "Isometry":
        s = self.sigma
        k = None if self.k is None else s(_inv(self.k))
        return Isometry(self.space, s(_inv(self.g)), self.nu, k)

    def algebra_action(self, X) -> np.ndarray:
        """Action on g of conjugating a left translation: Z -> g sigma(Z) g^-1."""
        return self.g @ self.sigma(X) @ _inv(self.g)

    @classmethod
    def identity(cls, space: HomSpace) -> "Isometry":
        return cls(space, space.G.identity(), name="identity")

    def is_identity_form(self, tol: float = 1e-12) -> bool:
        return (not self.nu and self.k is None
                and np.abs(self.g - np.eye(len(self.g))).max() < tol)


def _stability_residual(space: HomSpace, f) -> float:
    hrows = space.h.coords
    res = 0.0
    for Y in space.h.matrices:
        c = space.G.coords(f(Y))
        res = max(res, float(np.linalg.norm(c - hrows.T @ (hrows @ c))))
    return res


def displacement(gamma: Isometry, x: CosetPoint, **kw) -> float:
    return gamma.space.distance(x, gamma.apply(x), **kw)


def _sample_points(space: HomSpace, n: int, seed: int, stream: int = 0) -> list[CosetPoint]:
    return [CosetPoint(space, random_element(space.G, seed, 1000 * stream + i).matrix) for i in range(n)]


def _perturb(space: HomSpace, x: CosetPoint, xi_m, t: float) -> CosetPoint:
    return CosetPoint(space, x.rep @ exp_skew(t * space.m_matrix(xi_m)))


def _local_search(space: HomSpace, f, x: CosetPoint, sign: float, budget: int, rng,
                  step: float = 0.5) -> tuple[float, CosetPoint]:
    """Random-direction pattern search improving ``sign * f`` (sign -1: minimize)."""
    best = f(x)
    used = 1
    while used < budget and step > 1e-9:
        d = rng.standard_normal(space.dim)
        d /= np.linalg.norm(d)
        improved = False
        for t in (step, -step):
            y = _perturb(space, x, d, t)
            v = f(y)
            used += 1
            if sign * (v - best) > 0:
                best, x, improved = v, y, True
                break
        if not improved:
            step *= 0.5
    return best, x


@dataclass
class DisplacementResult:
    verdict: str  # "constant" | "non-constant" | "inconclusive"
    delta_hat: float
    spread: float
    minimum: float
    maximum: float
    diameter: float
    tolerance: float
    samples: int

    @property
    def constant(self) -> bool:
        return self.verdict == "constant"

    def metrics(self) -> dict:
        return {"verdict": self.verdict, "delta_hat": self.delta_hat, "spread": self.spread,
                "min": self.minimum, "max": self.maximum, "diameter_estimate": self.diameter,
                "cd_tolerance": self.tolerance}


def estimate_diameter(space: HomSpace, points: list[CosetPoint], extra=()) -> float:
    pts = points[:8]
    vals = [space.distance(a, b) for i, a in enumerate(pts) for b in pts[i + 1:]]
    return float(max(vals + list(extra), default=0.0))


def constant_displacement_test(gamma: Isometry, samples: int = 30, budget: int = 40, seed: int = 0,
                               rel_tol: float = CD_REL_TOL) -> DisplacementResult:
    """Sample the displacement, then push the 5 most extreme samples outward."""
    space = gamma.space
    pts = _sample_points(space, samples, seed, 3)
    try:
        vals = np.array([displacement(gamma, p) for p in pts])
        med = float(np.median(vals))
        order = np.argsort(-np.abs(vals - med), kind="stable")[:5]
        rng = _rng(seed, 41)
        lo, hi = float(vals.min()), float(vals.max())
        f = lambda y: displacement(gamma, y)
        for i in order:
            if budget <= 1 or hi - lo < 1e-12:
                break
            sign = 1.0 if vals[i] >= med else -1.0
            v, _ = _local_search(space, f, pts[i], sign, budget, rng)
            lo, hi = min(lo, v), max(hi, v)
        diam = estimate_diameter(space, pts, [hi])
    except ConvergenceError as e:
        return DisplacementResult("inconclusive", float("nan"), float("nan"), float("nan"),
                                  float(e.best), float("nan"), float("nan"), samples)
    tol = rel_tol * max(diam, 1e-12)
    spread = hi - lo
    verdict = "constant" if spread < tol else "non-constant"
    return DisplacementResult(verdict, float(np.mean(vals)), spread, lo, hi, diam, tol, samples)


# -- Killing fields -------------------------------------------------------------------


def _xi_coords(space: HomSpace, xi) -> np.ndarray:
    xi = np.asarray(xi)
    if xi.ndim == 2:
        return space.G.coords(xi)
    return xi.astype(float)


def killing_maps(space: HomSpace, reps) -> np.ndarray:
    """Stack of W P_m Ad(r^-1) as (N, dim m, dim g) arrays; X_{rH} = that @ xi."""
    G = space.G
    B = G.basis
    reps = np.asarray(reps)
    imgs = np.einsum("nji,bjk,nkl->nbil", reps.conj(), B, reps)
    N, d = imgs.shape[:2]
    C = G.coords_many(imgs.reshape((N * d,) + imgs.shape[2:])).reshape(N, d, G.dim)
    P = space.m.coords
    return np.einsum("am,mc,nbc->nab", space.metric_sqrt(), P, C)


def killing_norm(space: HomSpace, xi, x: CosetPoint) -> float:
    """Metric norm at x = gH of the Killing field generated by xi, i.e. of P_m Ad(g^-1) xi."""
    c = _xi_coords(space, xi)
    A = killing_maps(space, x.rep[None])[0]
    return float(np.linalg.norm(A @ c))


def _random_reps(space: HomSpace, n: int, seed: int, stream: int) -> np.ndarray:
    return np.array([random_element(space.G, seed, 10_000 * stream + i).matrix for i in range(n)])


def killing_spread(space: HomSpace, xi, samples: int = 1000, seed: int = 0, budget: int = 20) -> dict:
    """max - min of the Killing norm over G: samples plus local extremization."""
    c = _xi_coords(space, xi)
    if np.linalg.norm(c) == 0:
        return {"spread": 0.0, "min": 0.0, "max": 0.0}
    reps = _random_reps(space, samples, seed, 5)
    vals = np.linalg.norm(killing_maps(space, reps) @ c, axis=1)
    G = space.G
    lo, hi = float(vals.min()), float(vals.max())
    for sign, idx in ((1.0, np.argsort(-vals)[:5]), (-1.0, np.argsort(vals)[:5])):
        for i in idx:
            r = reps[i]
            # squared norm is smooth even where the field vanishes
            f = lambda z: -sign * float(np.sum((killing_maps(space, (r @ exp_skew(G.from_coords(z)))[None])[0] @ c) ** 2))
            res = minimize(f, np.zeros(G.dim), method="BFGS", options={"maxiter": budget, "gtol": 1e-12})
            best = float(np.sqrt(max(-sign * min(res.fun, f(np.zeros(G.dim))), 0.0)))
            lo, hi = (lo, max(hi, best)) if sign > 0 else (min(lo, best), hi)
    return {"spread": hi - lo, "min": lo, "max": hi}


def min_killing_spread(space: HomSpace, restarts: int = 50, samples: int = 1000, seed: int = 0,
                       steps: int = 60, budget: int = 20) -> dict:
    """Minimize spread(xi)/|xi| over the unit sphere of g by projected subgradient descent.

    The descent runs on a fixed sample of G; the best candidates are then
    re-scored on an independent sample with local extremization.
    """
    G = space.G
    A = killing_maps(space, _random_reps(space, samples, seed, 6))
    AtA = np.einsum("nmi,nmj->nij", A, A)
    rng = _rng(seed, 61)
    found = []
    for _ in range(restarts):
        xi = rng.standard_normal(G.dim)
        xi /= np.linalg.norm(xi)
        best = (np.inf, xi)
        for t in range(steps):
            q = np.einsum("i,nij,j->n", xi, AtA, xi)
            v = np.sqrt(np.maximum(q, 0.0))
            i, j = int(np.argmax(v)), int(np.argmin(v))
            s = v[i] - v[j]
            if s < best[0]:
                best = (s, xi.copy())
            grad = AtA[i] @ xi / max(v[i], 1e-12)
            if v[j] > 1e-12:
                grad -= AtA[j] @ xi / v[j]
            grad -= (grad @ xi) * xi
            xi = xi - 0.3 / np.sqrt(1.0 + t) * grad
            xi /= np.linalg.norm(xi)
        found.append(best)
    found.sort(key=lambda p: p[0])
    rescored = []
    for s, xi in found[:3]:
        r = killing_spread(space, xi, samples, seed + 1, budget)
        rescored.append((r["spread"], s, xi))
    rescored.sort(key=lambda p: p[0])
    spread, sample_spread, xi = rescored[0]
    return {"xi": xi, "spread": float(spread), "descent_spread": float(sample_spread),
            "restarts": restarts}


# -- deck groups, centralizers, verdicts ---------------------------------------------


def _same_isometry(a: Isometry, b: Isometry, probes: list[CosetPoint]) -> bool:
    if a.nu != b.nu:
        return False
    if (a.k is None) == (b.k is None) and np.abs(a.g - b.g).max() < 1e-9 and (
            a.k is None or np.abs(a.k - b.k).max() < 1e-9):
        return True
    space = a.space
    return all(space.distance(a.apply(p), b.apply(p)) < 1e-8 for p in probes)


@dataclass
class DeckGroup:
    generators: list
    name: str = ""
    bound: int = CLOSURE_BOUND
    _elements: list = field(default=None, init=False, repr=False)
    closed: bool = field(default=False, init=False)

    @property
    def space(self) -> HomSpace:
        return self.generators[0].space

    def elements(self) -> list[Isometry]:
        if self._elements is None:
            space = self.space
            probes = _sample_points(space, 3, 12345, 9)
            elems = [Isometry.identity(space)]
            frontier = list(elems)
            closed = True
            while frontier:
                nxt = []
                for e in frontier:
                    for s in self.generators:
                        c = s.compose(e)
                        if any(_same_isometry(c, f, probes) for f in elems):
                            continue
                        if len(elems) >= self.bound:
                            closed = False
                            break
                        elems.append(c)
                        nxt.append(c)
                frontier = nxt if closed else []
            self._elements, self.closed = elems, closed
        return self._elements

    @property
    def order(self) -> int:
        return len(self.elements())

    def nontrivial(self) -> list[Isometry]:
        return self.elements()[1:]


def centralizer_transitive(gamma_group: DeckGroup, points: int = 20, seed: int = 0) -> dict:
    """Transitivity of the centralizer of the group in G, via orbit dimensions."""
    space = gamma_group.space
    z = centralizer_algebra(space.G, gamma_group.generators)
    dims = []
    if z.dim:
        reps = _random_reps(space, points, seed, 7)
        A = killing_maps(space, reps)
        for Ai in A:
            M = Ai @ z.coords.T
            s = np.linalg.svd(M, compute_uv=False)
            dims.append(int(np.sum(s > 1e-8 * max(1.0, s.max()))))
    else:
        dims = [0] * points
    return {"transitive": bool(min(dims) == space.dim), "orbit_dims": dims, "centralizer_dim": z.dim}


def homogeneity_verdict(gamma_group: DeckGroup, samples: int = 20, budget: int = 30,
                        seed: int = 0) -> CheckReport:
    rep = CheckReport("homogeneity", "homogeneity-conjecture", seed=seed, samples=samples)
    elems = gamma_group.elements()
    rep.metrics.update({"group": gamma_group.name, "space": gamma_group.space.name,
                        "order": len(elems), "closed": gamma_group.closed, "evidence": "numerical"})
    if not gamma_group.closed:
        rep.status = INCONCLUSIVE
        return rep
    results = [constant_displacement_test(g, samples, budget, seed) for g in gamma_group.nontrivial()]
    if any(r.verdict == "inconclusive" for r in results):
        rep.status = INCONCLUSIVE
    all_const = all(r.constant for r in results)
    floor = min((r.minimum for r in results), default=float("inf"))
    free = floor > FIXED_TOL
    tr = centralizer_transitive(gamma_group, seed=seed)
    consistent = all_const == tr["transitive"]
    rep.metrics.update({
        "element_spreads": [r.spread for r in results],
        "element_delta_hat": [r.delta_hat for r in results],
        "all_constant": all_const,
        "free_on_samples": free,
        "min_displacement": floor if results else 0.0,
        "centralizer_dim": tr["centralizer_dim"],
        "min_orbit_dim": min(tr["orbit_dims"]),
        "transitive": tr["transitive"],
        "homogeneous": all_const and tr["transitive"],
        "conjecture_consistent": consistent,
        "conjecture_inconsistency_flag": not consistent,
    })
    if not consistent:
        rep.status = FAIL
    return rep


def easy_half_check(gamma_group: DeckGroup, points: int = 50, seed: int = 0, tol: float = 1e-6) -> CheckReport:
    """delta_gamma(z x) = delta_gamma(x) for z in the identity component of the centralizer."""
    rep = CheckReport("easy-half", "easy-half", seed=seed, samples=points)
    space = gamma_group.space
    G = space.G
    z = centralizer_algebra(G, gamma_group.generators)
    rng = _rng(seed, 91)
    pts = _sample_points(space, points, seed, 10)
    worst = 0.0
    for gam in gamma_group.nontrivial()[:2]:
        for p in pts:
            Z = G.from_coords(rng.standard_normal(z.dim) @ z.coords * np.pi) if z.dim else 0 * G.identity()
            zx = CosetPoint(space, exp_skew(Z) @ p.rep)
            worst = max(worst, abs(displacement(gam, zx) - displacement(gam, p)))
    rep.metrics.update({"group": gamma_group.name, "centralizer_dim": z.dim})
    rep.check("max_displacement_change", worst, tol)
    return rep


@dataclass
class FixedPointResult:
    point: Optional[CosetPoint]
    floor: float

    @property
    def found(self) -> bool:
        return self.point is not None


def midpoint(space: HomSpace, x: CosetPoint, y: CosetPoint) -> CosetPoint:
    g = _inv(x.rep) @ y.rep
    _, h = space.coset_distance(g, with_h=True)
    L = min_norm_alg_log(g @ h, space.G)
    return CosetPoint(space, x.rep @ exp_skew(0.5 * L))


def fixed_point(gamma: Isometry, budget: int = 30, samples: int = 8, seed: int = 0) -> FixedPointResult:
    """Minimize the displacement of gamma.

    Candidates are x0, sampled points and (for left translations) the
    torus-conjugation candidate; the best are improved by midpoint steps
    x -> mid(x, gamma x), which fix involutions in one step.
    """
    space = gamma.space
    cands = [space.base_point()] + _sample_points(space, samples, seed, 8)
    if not gamma.nu and gamma.k is None:
        try:
            _, c = conjugate_into_torus(GroupElement(space.G, gamma.g))
            cands.insert(0, CosetPoint(space, _inv(c.matrix)))
        except (ValueError, RuntimeError):
            pass
    scored = sorted(((displacement(gamma, p), i) for i, p in enumerate(cands)))
    best_val, best_pt = scored[0][0], cands[scored[0][1]]
    for _, i in scored[:3]:
        x = cands[i]
        v = displacement(gamma, x)
        for _ in range(budget):
            if v < FIXED_TOL * 1e-3:
                break
            y = midpoint(space, x, gamma.apply(x))
            w = displacement(gamma, y)
            if w >= v - 1e-15:
                break
            x, v = y, w
        if v < best_val:
            best_val, best_pt = v, x
    return FixedPointResult(best_pt if best_val < FIXED_TOL else None, float(best_val))


# -- literals -----------------------------------------------------------------------------

_VINCENT = re.compile(r"^\s*vincent\((.*)\)\s*$")


def parse_angle(text) -> float:
    """'2pi/5', 'pi/3', 'pi', '0.25' -> radians."""
    if isinstance(text, (int, float)):
        return float(text)
    t = str(text).replace(" ", "").lower()
    m = re.fullmatch(r"([-+]?\d*\.?\d*)\*?(pi)?(?:/(\d+\.?\d*))?", t)
    if not m or (not m.group(1) and not m.group(2)):
        raise ValueError(f"cannot parse angle {text!r}")
    coef = m.group(1)
    c = float(coef) if coef not in ("", "+", "-") else (-1.0 if coef == "-" else 1.0)
    val = c * (np.pi if m.group(2) else 1.0)
    if m.group(3):
        val /= float(m.group(3))
    return float(val)


def vincent_matrix(theta: float, blocks: int) -> np.ndarray:
    if blocks < 1:
        raise ValueError("blocks must be positive")
    c, s = np.cos(theta), np.sin(theta)
    R = np.array([[c, s], [-s, c]])
    return np.kron(np.eye(blocks), R)


def parse_isometry(space: HomSpace, obj) -> Isometry:
    """{inner: matrix | "vincent(theta=..., blocks=...)", outer: "none" | "nu" | {right: matrix}}."""
    if isinstance(obj, str):
        obj = {"inner": obj}
    inner = obj.get("inner", "identity")
    if isinstance(inner, str):
        if inner == "identity":
            g = space.G.identity()
        else:
            m = _VINCENT.match(inner)
            if not m:
                raise ValueError(f"unknown named generator {inner!r}")
            args = dict(p.split("=", 1) for p in m.group(1).replace(" ", "").split(",") if p)
            g = vincent_matrix(parse_angle(args.get("theta", "0")), int(args.get("blocks", 1)))
    else:
        g = parse_matrix_literal(inner)
    outer = obj.get("outer", "none")
    if outer in ("none", None):
        return Isometry(space, g)
    if outer == "nu":
        return Isometry(space, g, nu=True)
    if isinstance(outer, dict) and "right" in outer:
        return Isometry(space, g, k=parse_matrix_literal(outer["right"]))
    raise ValueError(f"unknown outer part {outer!r}")


# -- certificates ---------------------------------------------------------------------------


def _semidirect_mul(a, b):
    """(g1, g2, nu) products in (SU(3) x SO(3)) x| {1, nu}, nu = conj on SU(3), id on SO(3)."""
    a1, a2, an = a
    b1, b2, bn = b
    return (a1 @ (b1.conj() if an else b1), a2 @ b2, an != bn)


def entry12_certificates() -> CheckReport:
    """Exact matrix identities behind the N_{1,1} argument."""
    from .catalog import alpha, beta, build_entry, entry12_embed

    rep = CheckReport("entry12-cert", "entry-12")
    I3 = np.eye(3, dtype=complex)
    Ip = np.diag([-1.0, -1.0, 1.0]).astype(complex)
    Ipp = np.diag([-1.0, 1.0, -1.0]).astype(complex)
    I2pp = np.diag([-1.0, 1.0]).astype(complex)
    worst = 0.0

    def res(a, b):
        nonlocal worst
        r = float(np.abs(np.asarray(a) - np.asarray(b)).max())
        worst = max(worst, r)
        return r

    # (a) gamma^2 = (g1^2, g2^2) for g_i in {I3, I'3}
    sq = {}
    for n1, g1 in (("I3", I3), ("I'3", Ip)):
        for n2, g2 in (("I3", I3), ("I'3", Ip)):
            gam = (g1, g2, True)
            s = _semidirect_mul(gam, gam)
            r = max(res(s[0], g1 @ g1), res(s[1], g2 @ g2), res(s[0], I3), res(s[1], I3))
            sq[f"({n1},{n2})"] = r
            rep.require(f"gamma_sq_is_identity_({n1},{n2})", not s[2] and r < 1e-12)
    rep.metrics["gamma_sq_residuals"] = sq

    # (b) H nu memberships via explicit U(2) preimages
    cases = {"(I3,I3)": (np.eye(2), I3, I3), "(I'3,I3)": (-np.eye(2), Ip, I3),
             "(I''3,I''3)": (I2pp, Ipp, Ipp)}
    memb = {}
    for name, (h, g1, g2) in cases.items():
        memb[name] = max(res(alpha(h), g1), res(beta(h), g2))
    rep.metrics["h_nu_membership_residuals"] = memb
    rep.metrics["alpha_I2_exact"] = bool(np.array_equal(alpha(np.eye(2)), I3))

    # (c) (D, I)(I3, I'3)nu(D, I)^-1 = (I'3, I'3)nu with D = diag(i, i, -1)
    D = np.diag([1j, 1j, -1.0])
    Dinv = (np.linalg.inv(D), I3, False)
    lhs = _semidirect_mul(_semidirect_mul((D, I3, False), (I3, Ip, True)), Dinv)
    mid = _semidirect_mul((D, I3, False), (I3, Ip, False))
    mid = (mid[0] @ D, mid[1], True)
    conj_res = max(res(lhs[0], Ip), res(lhs[1], Ip), res(mid[0], Ip), res(mid[1], Ip))
    rep.metrics["conjugation_residual"] = conj_res
    rep.require("conjugation_outer_part_nu", lhs[2])
    rep.metrics["D_in_SU3_residual"] = res(np.linalg.det(D), 1.0)

    # (d) I''3 = P I'3 P^T with P in SO(3); (P, P) commutes with nu and carries (I'3, I'3)nu to (I''3, I''3)nu
    P = np.array([[1.0, 0, 0], [0, 0, -1.0], [0, 1.0, 0]])
    rep.metrics["so3_conjugate_residual"] = max(res(P @ Ip @ P.T, Ipp), res(np.linalg.det(P), 1.0),
                                                res(P @ P.T, np.eye(3)))
    Pc = (P.astype(complex), P.astype(complex), False)
    Pci = (P.T.astype(complex), P.T.astype(complex), False)
    moved = _semidirect_mul(_semidirect_mul(Pc, (Ip, Ip, True)), Pci)
    rep.metrics["conjugate_to_h_nu_residual"] = max(res(moved[0], Ipp), res(moved[1], Ipp))

    # embedding facts: alpha is a homomorphism into SU(3), beta kills the center
    rng = _rng(0, 71)
    hom = 0.0
    for _ in range(5):
        a = scipy_unitary(rng, 2)
        b = scipy_unitary(rng, 2)
        hom = max(hom, float(np.abs(alpha(a @ b) - alpha(a) @ alpha(b)).max()),
                  float(abs(np.linalg.det(alpha(a)) - 1)), float(np.abs(beta(a @ b) - beta(a) @ beta(b)).max()))
        z = np.exp(1j * rng.uniform(0, 2 * np.pi))
        hom = max(hom, float(np.abs(beta(z * np.eye(2)) - np.eye(3)).max()))
    rep.metrics["alpha_beta_homomorphism_residual"] = hom
    worst = max(worst, hom)
    sp = build_entry(12).space
    rep.metrics["nu_preserves_H_residual"] = _stability_residual(sp, sp.outer["nu"])
    rep.metrics["max_residual"] = worst
    rep.check("max_residual_check", worst, 1e-12)
    return rep


def scipy_unitary(rng, n: int) -> np.ndarray:
    from scipy.stats import unitary_group
    return unitary_group.rvs(n, random_state=rng)


def entry6_certificates(seed: int = 0) -> CheckReport:
    """P^3(C) = Sp(2)/(Sp(1) x U(1)): the symmetric and the J cases of g nu."""
    from .catalog import build_entry
    from .lie_core import quaternionic_J

    rep = CheckReport("entry6-cert", "entry-6", seed=seed)
    sp = build_entry(6, m=1).space
    G = sp.G
    rng = _rng(seed, 81)

    # (a) symmetric case g = O D O^T with O real in Sp(2)
    u = scipy_unitary(rng, 2)
    O = np.block([[u.real, u.imag], [-u.imag, u.real]])
    ang = rng.uniform(-np.pi, np.pi, 2)
    Dg = np.diag(np.exp(1j * np.concatenate([ang, -ang])))
    g = O @ Dg @ O.T
    rep.metrics["symmetric_g_residual"] = float(np.abs(g - g.T).max())
    rep.metrics["symmetric_g_in_G_residual"] = G.group_residual(g)
    diag_res = O.T @ g @ O
    rep.metrics["real_diagonalizer_residual"] = float(np.abs(diag_res - np.diag(np.diag(diag_res))).max())
    rep.metrics["real_diagonalizer_in_G_residual"] = G.group_residual(O.astype(complex))
    gam = Isometry(sp, g, nu=True)
    a = O @ np.diag(np.exp(0.5j * np.concatenate([ang, -ang])))
    alg = displacement(gam, CosetPoint(sp, a))
    rep.check("algebraic_fixed_point_displacement", alg, 1e-10)
    fp = fixed_point(gam, seed=seed)
    rep.check("symmetric_fixed_point_displacement", fp.floor, FIXED_TOL)
    fp_id = fixed_point(Isometry(sp, G.identity(), nu=True), seed=seed)
    rep.check("identity_nu_fixed_point_displacement", fp_id.floor, FIXED_TOL)

    # (b) g = J
    J = quaternionic_J(2)
    gj = Isometry(sp, J, nu=True)
    sq = gj.compose(gj)
    # the square is (J conj(J), no outer part) = (-I, 1): central in Sp(2) and inside H
    sq_res = float(np.abs(sq.g + np.eye(4)).max())
    rep.metrics["square_inner_is_minus_identity_residual"] = sq_res
    rep.require("square_has_no_outer_part", not sq.nu and sq.k is None)
    central = max(float(np.abs(sq.g @ b - b @ sq.g).max()) for b in G.basis)
    rep.metrics["square_central_residual"] = central
    pts = _sample_points(sp, 5, seed, 4)
    act = max(sp.distance(p, sq.apply(p)) for p in pts)
    rep.metrics["square_action_residual"] = act
    rep.require("square_acts_as_identity", sq_res == 0.0 and central == 0.0)
    adres = max(float(np.abs(gj.algebra_action(b) - b).max()) for b in G.basis)
    rep.check("Ad_g_nu_fixes_basis_residual", adres, 1e-12)
    fpj = fixed_point(gj, seed=seed)
    rep.metrics["J_nu_fixed_point_found"] = fpj.found
    rep.check("J_nu_fixed_point_floor", fpj.floor, 0.1, below=False)
    return rep

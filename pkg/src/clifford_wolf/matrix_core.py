"""Dense matrix engine: exponential, normal eigendecomposition, logarithms.

Group elements of compact groups are unitary (or real orthogonal) matrices,
so every logarithm here goes through a Schur form. The minimal-norm
logarithm picks, among the branch shifts ``angle -> angle + 2*pi*m`` that
keep the result inside a given Lie algebra, one of least norm.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

import numpy as np
import scipy.linalg

TOL = 1e-10
_TIE = 1e-9


class BranchError(ValueError):
    """No admissible logarithm branch within the requested shift bound."""


@dataclass(frozen=True)
class EigenDecomp:
    unitary: np.ndarray
    values: np.ndarray

    def reconstruct(self) -> np.ndarray:
        u = self.unitary
        return (u * self.values) @ u.conj().T


def _square(a) -> np.ndarray:
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    return a


def mat_exp(X) -> np.ndarray:
    """Matrix exponential ``e^X``."""
    X = _square(X)
    return scipy.linalg.expm(X)


def exp_skew(X) -> np.ndarray:
    """``e^X`` for skew-Hermitian ``X`` via a Hermitian eigensolve.

    Faster than :func:`mat_exp` for the small skew matrices used in sampling
    loops, and exactly unitary up to rounding.
    """
    X = _square(X)
    w, v = np.linalg.eigh(-1j * X)
    out = (v * np.exp(1j * w)) @ v.conj().T
    if np.isrealobj(X):
        return out.real
    return out


def eig_normal(A, tol: float = TOL) -> EigenDecomp:
    """Unitary eigendecomposition of a normal matrix via complex Schur form."""
    A = _square(A).astype(complex)
    T, Z = scipy.linalg.schur(A, output="complex")
    off = np.triu(T, 1)
    scale = max(1.0, np.abs(T).max())
    if np.abs(off).max(initial=0.0) > tol * scale * 10:
        raise ValueError("matrix is not normal within tolerance")
    return EigenDecomp(Z, np.diag(T).copy())


def _snap_angles(values: np.ndarray) -> np.ndarray:
    ang = np.angle(values)
    # eigen-angle pi tie-break: +pi
    ang[ang <= -np.pi + _TIE] = np.pi
    return ang


def principal_log(U, tol: float = TOL, return_ambiguous: bool = False):
    """Principal logarithm of a unitary matrix, eigen-angles in (-pi, pi].

    Eigenvalue -1 is branch-ambiguous; it is resolved to angle +pi and, when
    ``return_ambiguous`` is set, reported as a second return value.
    """
    dec = eig_normal(U, tol)
    mod = np.abs(dec.values)
    if np.abs(mod - 1).max() > 1e3 * tol:
        raise ValueError("matrix is not unitary: spectrum off the unit circle")
    ang = _snap_angles(dec.values)
    L = (dec.unitary * (1j * ang)) @ dec.unitary.conj().T
    ambiguous = bool(np.any(np.abs(ang - np.pi) < 1e-7))
    if np.isrealobj(U) and not ambiguous:
        L = L.real
    if return_ambiguous:
        return L, ambiguous
    return L


# ---------------------------------------------------------------------------
# minimal-norm logarithm inside a Lie algebra
#
# ``algebra`` is duck-typed (see lie_core.GroupSpec): it provides
# ``log_kind`` in {"unitary", "special", "real", "quaternionic", "subalgebra",
# "product"}, ``kappa``, ``coords(X)``, ``membership_residual(X)`` and, for
# products, ``factors`` and ``block_slices``.


def enumerate_branch_angles(angles: Sequence[float], bound: int, trace_zero: bool):
    """All shifted angle vectors ``angles + 2*pi*m`` with ``|m_k| <= bound``.

    Brute-force reference used by tests and by callers who want the full
    candidate list; ``trace_zero`` keeps only shifts whose angles sum to 0.
    """
    angles = np.asarray(angles, float)
    out = []
    for m in itertools.product(range(-bound, bound + 1), repeat=len(angles)):
        phi = angles + 2 * np.pi * np.asarray(m)
        if trace_zero and abs(phi.sum()) > 1e-8:
            continue
        out.append(phi)
    return out


def _special_shift_candidates(ang: np.ndarray, bound: int) -> list[np.ndarray]:
    """Least-norm zero-sum shifts of principal angles (ties enumerated)."""
    total = ang.sum()
    j = int(round(total / (2 * np.pi)))
    if j == 0:
        return [ang.copy()]
    if bound < 1:
        raise BranchError("no zero-trace branch with |m| <= 0")
    step = -np.sign(j)
    cnt = abs(j)
    order = np.argsort(-ang * np.sign(j), kind="stable")
    cut = ang[order[cnt - 1]]
    # indices strictly beyond the cut must shift; tied ones are a free choice
    key = ang * np.sign(j)
    must = [i for i in range(len(ang)) if key[i] > cut * np.sign(j) + _TIE]
    tied = [i for i in range(len(ang)) if abs(key[i] - cut * np.sign(j)) <= _TIE]
    need = cnt - len(must)
    out = []
    for pick in itertools.combinations(tied, need):
        phi = ang.copy()
        for i in list(must) + list(pick):
            phi[i] += 2 * np.pi * step
        out.append(phi)
    return out


def _lex_least(cands: list[np.ndarray], algebra) -> np.ndarray:
    if len(cands) == 1:
        return cands[0]
    keys = [tuple(np.round(algebra.coords(c), 9)) for c in cands]
    return cands[min(range(len(cands)), key=lambda i: keys[i])]


def _log_complex(g: np.ndarray, algebra, bound: int, special: bool) -> np.ndarray:
    dec = eig_normal(g)
    ang = _snap_angles(dec.values)
    Z = dec.unitary
    if special:
        angle_sets = _special_shift_candidates(ang, bound)
    else:
        angle_sets = [ang]
    mats = [(Z * (1j * phi)) @ Z.conj().T for phi in angle_sets]
    norms = [float(np.sum(phi * phi)) for phi in angle_sets]
    best = min(norms)
    ties = [m for m, v in zip(mats, norms) if v <= best + _TIE * max(1.0, best)]
    return _lex_least(ties, algebra)


def _real_blocks(g: np.ndarray):
    """Real Schur form of an orthogonal matrix as (Q, [(index pair, angle)])."""
    T, Q = scipy.linalg.schur(g, output="real")
    n = g.shape[0]
    blocks = []
    minus = []
    i = 0
    while i < n:
        if i + 1 < n and abs(T[i + 1, i]) > 1e-12:
            B = T[i:i + 2, i:i + 2]
            theta = np.arctan2((B[0, 1] - B[1, 0]) / 2, (B[0, 0] + B[1, 1]) / 2)
            blocks.append(((i, i + 1), theta))
            i += 2
        else:
            if T[i, i] < 0:
                minus.append(i)
            i += 1
    if len(minus) % 2:
        raise BranchError("odd multiplicity of eigenvalue -1: not in SO(n)")
    for a, b in zip(minus[::2], minus[1::2]):
        blocks.append(((a, b), np.pi))
    return Q, blocks


def _log_real(g: np.ndarray, algebra, bound: int) -> np.ndarray:
    if np.iscomplexobj(g):
        if np.abs(g.imag).max() > 1e-9:
            raise ValueError("real-family element has complex entries")
        g = g.real
    Q, blocks = _real_blocks(g)
    n = g.shape[0]
    pis = [k for k, (_, th) in enumerate(blocks) if abs(abs(th) - np.pi) < 1e-7]
    cands = []
    for signs in itertools.product((1.0, -1.0), repeat=len(pis)):
        L = np.zeros((n, n))
        for k, ((a, b), th) in enumerate(blocks):
            if k in pis:
                th = np.pi * signs[pis.index(k)]
            L[a, b], L[b, a] = th, -th
        cands.append(Q @ L @ Q.T)
    if algebra.log_kind == "subalgebra":
        res = [algebra.membership_residual(c) for c in cands]
        ok = [c for c, r in zip(cands, res) if r < 1e-8]
        if not ok:
            raise BranchError("principal branch leaves the subalgebra")
        cands = ok
    return _lex_least(cands, algebra)


def _quat_J(n2: int) -> np.ndarray:
    n = n2 // 2
    J = np.zeros((n2, n2))
    J[:n, n:] = np.eye(n)
    J[n:, :n] = -np.eye(n)
    return J


def _log_quaternionic(g: np.ndarray, algebra, bound: int) -> np.ndarray:
    dec = eig_normal(g)
    ang = _snap_angles(dec.values)
    Z = dec.unitary
    near = np.abs(ang - np.pi) < 1e-7
    L = (Z[:, ~near] * (1j * ang[~near])) @ Z[:, ~near].conj().T
    if near.any():
        # split the -1 eigenspace into quaternionic pairs (v, J conj v)
        J = _quat_J(g.shape[0])
        E = Z[:, near]
        basis: list[np.ndarray] = []
        for col in E.T:
            v = col.copy()
            for b in basis:
                v -= b * (b.conj() @ v)
            nv = np.linalg.norm(v)
            if nv < 1e-6:
                continue
            v /= nv
            w = J @ v.conj()
            L += 1j * np.pi * (np.outer(v, v.conj()) - np.outer(w, w.conj()))
            basis += [v, w]
    return L


def min_norm_alg_log(g, algebra, bound: int = 2) -> np.ndarray:
    """Logarithm of ``g`` inside ``algebra`` of least norm over branch shifts.

    Returns the matrix of the algebra element. Ties between equal-norm
    branches keep angle +pi first, then the lexicographically least
    coordinate vector (coordinates rounded to 1e-9).
    """
    g = _square(g)
    kind = algebra.log_kind
    if kind == "product":
        out = np.zeros(g.shape, dtype=np.result_type(g.dtype, float))
        for fac, sl in zip(algebra.factors, algebra.block_slices):
            block = min_norm_alg_log(g[sl, sl], fac, bound)
            if np.iscomplexobj(block) and not np.iscomplexobj(out):
                out = out.astype(complex)
            out[sl, sl] = block
        return out
    if kind in ("unitary", "special"):
        L = _log_complex(g.astype(complex), algebra, bound, special=kind == "special")
    elif kind in ("real", "subalgebra"):
        L = _log_real(g, algebra, bound)
    elif kind == "quaternionic":
        L = _log_quaternionic(g.astype(complex), algebra, bound)
    else:
        raise ValueError(f"unknown logarithm kind {kind!r}")
    return L


def min_log_sqnorms(mats: np.ndarray, algebra) -> np.ndarray:
    """Squared norms of minimal logarithms for a stack of group elements.

    Eigenvalue-only fast path used to score optimizer seeds; agrees with
    ``norm(min_norm_alg_log(g))**2`` because the norm depends only on the
    chosen eigen-angles.
    """
    mats = np.asarray(mats)
    kind = algebra.log_kind
    if kind == "product":
        tot = np.zeros(len(mats))
        for fac, sl in zip(algebra.factors, algebra.block_slices):
            tot += min_log_sqnorms(mats[:, sl, sl], fac)
        return tot
    ang = np.angle(np.linalg.eigvals(mats))
    if kind == "special":
        j = np.rint(ang.sum(axis=1) / (2 * np.pi)).astype(int)
        srt = np.sort(ang, axis=1)
        n = ang.shape[1]
        for idx in np.nonzero(j)[0]:
            k = j[idx]
            if k > 0:
                srt[idx, n - k:] -= 2 * np.pi
            else:
                srt[idx, :-k] += 2 * np.pi
        ang = srt
    return algebra.kappa * np.sum(ang * ang, axis=1)


# ---------------------------------------------------------------------------
# literal format: nested rows of [re, im] pairs


def parse_matrix_literal(obj) -> np.ndarray:
    """Matrix from nested rows of ``[re, im]`` pairs (plain numbers allowed)."""
    rows = []
    for row in obj:
        out = []
        for e in row:
            if isinstance(e, (list, tuple)):
                if len(e) != 2:
                    raise ValueError(f"bad complex entry {e!r}")
                out.append(complex(float(e[0]), float(e[1])))
            else:
                out.append(complex(float(e)))
        rows.append(out)
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("ragged or empty matrix literal")
    m = np.array(rows, dtype=complex)
    if not np.isfinite(m).all():
        raise ValueError("non-finite matrix entry")
    if np.abs(m.imag).max() == 0:
        return m.real
    return m


def matrix_literal(m) -> list:
    m = np.asarray(m, dtype=complex)
    return [[[float(z.real), float(z.imag)] for z in row] for row in m]

"""Brute-force sweep of Killing-field length spread on SO(5)/SO(3).

Independent of the package: builds so(5), the 5-dim irreducible SO(3)
action on symmetric traceless 3x3 matrices and Haar samples (QR of a
Gaussian matrix) from scratch.

For a unit torus direction xi(phi) = cos(phi) L12 + sin(phi) L34 the
Killing field length at gH is |proj_m(g^T xi g)|. Its spread over G only
depends on the adjoint orbit of xi, so sweeping phi over the Weyl chamber
[0, pi/4] covers every direction of so(5). Sampled spreads under-estimate
the true spread, so the recorded threshold is half the smallest sampled
value.

    python3 scripts/berger_killing_sweep.py [--samples 20000] [--grid 41]
"""
import argparse
import datetime
import itertools

import numpy as np


def so_basis(n):
    out = []
    for i, j in itertools.combinations(range(n), 2):
        m = np.zeros((n, n))
        m[j, i], m[i, j] = 1.0, -1.0
        out.append(m)
    return out


def sym0_basis():
    mats = []
    for i, j in itertools.combinations(range(3), 2):
        m = np.zeros((3, 3))
        m[i, j] = m[j, i] = 1 / np.sqrt(2)
        mats.append(m)
    mats.append(np.diag([1, -1, 0]) / np.sqrt(2))
    mats.append(np.diag([1, 1, -2]) / np.sqrt(6))
    return mats


def so3_in_so5(Y, basis):
    # matrix of S -> YS - SY in the orthonormal basis of Sym0(3)
    return np.array([[np.sum(b * (Y @ s - s @ Y)) for s in basis] for b in basis])


def haar_so(n, rng, count):
    z = rng.standard_normal((count, n, n))
    q, r = np.linalg.qr(z)
    d = np.sign(np.diagonal(r, axis1=1, axis2=2))
    q = q * d[:, None, :]
    neg = np.linalg.det(q) < 0
    q[neg, :, 0] *= -1
    return q


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--samples", type=int, default=20000)
    ap.add_argument("--grid", type=int, default=41)
    ap.add_argument("--seed", type=int, default=20261016)
    args = ap.parse_args()

    sb = sym0_basis()
    h = [so3_in_so5(Y, sb) for Y in so_basis(3)]
    # orthonormal basis of h under <X,Y> = -1/2 tr(XY) == Frobenius/2
    H = np.array([m.ravel() for m in h]).T
    Qh, _ = np.linalg.qr(H)
    rng = np.random.default_rng(args.seed)
    gs = haar_so(5, rng, args.samples)

    L = so_basis(5)
    l12, l34 = L[0], L[7]  # (0,1) and (2,3) planes
    assert np.allclose(l34, np.array(L[7])) and L[7][3, 2] == 1.0

    rows = []
    for phi in np.linspace(0.0, np.pi / 4, args.grid):
        xi = np.cos(phi) * l12 + np.sin(phi) * l34  # unit: -1/2 tr(xi^2) = 1
        ad = np.einsum("sji,jk,skl->sil", gs, xi, gs)  # g^T xi g
        flat = ad.reshape(len(gs), -1)
        hpart = flat @ Qh
        sq_total = 0.5 * np.sum(flat * flat, axis=1)
        sq_h = 0.5 * np.sum(hpart * hpart, axis=1)
        norms = np.sqrt(np.maximum(sq_total - sq_h, 0.0))
        rows.append((phi, norms.max() - norms.min(), norms.min(), norms.max()))

    for phi, spread, lo, hi in rows:
        print(f"phi={phi:.4f} spread={spread:.6f} min={lo:.6f} max={hi:.6f}")
    worst = min(r[1] for r in rows)
    print(f"min sampled spread = {worst:.6f}")
    print(f"threshold (half)   = {0.5 * worst:.6f}")
    print(f"date = {datetime.date.today().isoformat()}")


if __name__ == "__main__":
    main()

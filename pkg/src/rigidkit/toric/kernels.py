"""Lattice scan kernels for line-bundle cohomology on toric surfaces.

For each character m in the box |m|_inf <= bound, the set of rays with
<m, u_rho> < -a_rho is a union of arcs on the circle of fan directions.
Empty set -> one section (h0); k >= 2 arcs -> k - 1 classes in h1; every ray
-> one class in h2.  Both kernels return the same int64 tallies
``(h0, h1, h2, shell)`` where ``shell`` counts contributions found on the
outer boundary |m|_inf == bound.
"""

from __future__ import annotations

import numpy as np

from .._accel import HAS_NUMBA, njit


@njit(cache=True)
def _scan_numba(rays, coeffs, bound):
    r = rays.shape[0]
    h0 = 0
    h1 = 0
    h2 = 0
    shell = 0
    inside = np.zeros(r, dtype=np.bool_)
    for m0 in range(-bound, bound + 1):
        for m1 in range(-bound, bound + 1):
            count = 0
            for i in range(r):
                s = m0 * rays[i, 0] + m1 * rays[i, 1]
                inside[i] = s < -coeffs[i]
                if inside[i]:
                    count += 1
            contrib = 0
            if count == 0:
                h0 += 1
                contrib = 1
            elif count == r:
                h2 += 1
                contrib = 1
            else:
                arcs = 0
                for i in range(r):
                    if inside[i] and not inside[i - 1]:
                        arcs += 1
                if arcs > 1:
                    h1 += arcs - 1
                    contrib = 1
            if contrib and (m0 == bound or m0 == -bound or m1 == bound or m1 == -bound):
                shell += 1
    return h0, h1, h2, shell


def _scan_numpy(rays, coeffs, bound, chunk=512):
    h0 = h1 = h2 = shell = 0
    r = rays.shape[0]
    m1 = np.arange(-bound, bound + 1, dtype=np.int64)
    for start in range(-bound, bound + 1, chunk):
        m0 = np.arange(start, min(start + chunk, bound + 1), dtype=np.int64)
        M0, M1 = np.meshgrid(m0, m1, indexing="ij")
        M0 = M0.ravel()
        M1 = M1.ravel()
        pairing = np.outer(M0, rays[:, 0]) + np.outer(M1, rays[:, 1])
        inside = pairing < -coeffs[None, :]
        count = inside.sum(axis=1)
        arcs = (inside & ~np.roll(inside, 1, axis=1)).sum(axis=1)
        is0 = count == 0
        is2 = count == r
        is1 = ~is0 & ~is2 & (arcs > 1)
        h0 += int(is0.sum())
        h2 += int(is2.sum())
        h1 += int((arcs[is1] - 1).sum())
        edge = (np.abs(M0) == bound) | (np.abs(M1) == bound)
        shell += int((edge & (is0 | is2 | is1)).sum())
    return h0, h1, h2, shell


def scan_box(rays, coeffs, bound: int, backend: str | None = None) -> tuple:
    """Cohomology tallies over the box; ``backend`` is ``"numba"``, ``"numpy"`` or auto."""
    rays = np.ascontiguousarray(rays, dtype=np.int64)
    coeffs = np.ascontiguousarray(coeffs, dtype=np.int64)
    if backend is None:
        backend = "numba" if HAS_NUMBA else "numpy"
    if backend == "numba":
        if not HAS_NUMBA:
            raise RuntimeError("numba backend requested but numba is unavailable")
        return tuple(int(x) for x in _scan_numba(rays, coeffs, int(bound)))
    if backend == "numpy":
        return _scan_numpy(rays, coeffs, int(bound))
    raise ValueError(f"unknown backend {backend!r}")

"""Exhaustive sign-assignment search kernels.

The hot loop enumerates all 2**n uniform sign vectors over the double points
of a diagram, ascending in the mask order where +1 sorts before -1 and the
first point occupies the most significant bit, and returns the first vector
whose weighted sums hit every component target.

Two interchangeable implementations are provided: a numba-compiled scalar
loop with incremental sum updates, and a chunked vectorized numpy sweep.  Set
SURFCOB_BACKEND=numpy to force the fallback; the default prefers numba when
it imports cleanly.
"""

from __future__ import annotations

import os

import numpy as np

_CHUNK_BITS = 16


def _search_numpy(p: np.ndarray, targets: np.ndarray) -> int:
    """Vectorized ascending sweep in chunks; returns the first satisfying
    mask, or -1."""
    m, n = p.shape
    if n == 0:
        return 0 if bool(np.all(targets == 0)) else -1
    total = 1 << n
    chunk = min(total, 1 << _CHUNK_BITS)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    pt = p.T.astype(np.int64)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        bits = (masks[:, None] >> shifts[None, :]) & 1
        signs = 1 - 2 * bits
        sums = signs @ pt
        hits = np.nonzero(np.all(sums == targets[None, :], axis=1))[0]
        if hits.size:
            return int(masks[hits[0]])
    return -1


def _search_python(p: np.ndarray, targets: np.ndarray) -> int:
    """Scalar reference loop, identical order; used when numba is absent and
    as the compilation source."""
    m, n = p.shape
    sums = np.zeros(m, dtype=np.int64)
    for c in range(m):
        acc = 0
        for i in range(n):
            acc += p[c, i]
        sums[c] = acc
    ok = True
    for c in range(m):
        if sums[c] != targets[c]:
            ok = False
            break
    if ok:
        return 0
    total = 1 << n
    for mask in range(1, total):
        # mask-1 -> mask flips the trailing run of ones plus the next zero
        t = 0
        while (mask >> t) & 1 == 0:
            t += 1
        for b in range(t):
            # bit b drops from 1 back to 0: the sign returns to +1
            point = n - 1 - b
            for c in range(m):
                sums[c] += 2 * p[c, point]
        point = n - 1 - t
        for c in range(m):
            sums[c] -= 2 * p[c, point]
        ok = True
        for c in range(m):
            if sums[c] != targets[c]:
                ok = False
                break
        if ok:
            return mask
    return -1


def _load_numba_kernel():
    from numba import njit

    return njit(cache=True, nogil=True)(_search_python)


_BACKEND = os.environ.get("SURFCOB_BACKEND", "numba").strip().lower()
if _BACKEND not in ("numba", "numpy"):
    _BACKEND = "numba"

if _BACKEND == "numba":
    try:
        _numba_search = _load_numba_kernel()
    except Exception:
        _BACKEND = "numpy"
        _numba_search = None
else:
    _numba_search = None


def active_backend() -> str:
    """Name of the search implementation in use: "numba" or "numpy"."""
    return _BACKEND


def search_uniform_mask(p: np.ndarray, targets: np.ndarray) -> int:
    """First mask in 0..2**n-1 whose sign vector satisfies every component
    sum, or -1 when none does.

    Bit j of the mask (counting from the most significant of n bits) chooses
    the sign of point j: 0 is +1, 1 is -1.  The weighted sum over row c of p
    must equal targets[c] for every c.
    """
    p = np.ascontiguousarray(p, dtype=np.int64)
    targets = np.ascontiguousarray(targets, dtype=np.int64)
    if _BACKEND == "numba":
        return int(_numba_search(p, targets))
    return int(_search_numpy(p, targets))


def mask_to_signs(mask: int, n: int) -> tuple[int, ...]:
    """Decode a mask into the sign vector it denotes."""
    return tuple(1 - 2 * ((mask >> (n - 1 - j)) & 1) for j in range(n))

"""Max-plus batch kernel for tropical values.

T[q, i] = max over points mu of coordinate i of lam_q . mu, with all data
int64 (the entries stay far below 2**62 for the boxes used here, so the
result is exact).  A numba version is used when available; setting
BOUNDEDRATIOS_DISABLE_NUMBA=1 selects the pure-numpy path.
"""
from __future__ import annotations

import os

import numpy as np

DISABLE_NUMBA = os.environ.get("BOUNDEDRATIOS_DISABLE_NUMBA", "") not in ("", "0")

try:
    import numba

    # the bundled TBB is too old and warns on every import; workqueue is always present
    if os.environ.get("NUMBA_THREADING_LAYER") is None:
        numba.config.THREADING_LAYER = "workqueue"
except ImportError:  # pragma: no cover
    numba = None


def tropical_values_numpy(lams: np.ndarray, points: np.ndarray, offsets: np.ndarray) -> np.ndarray:
    prods = lams @ points.T
    out = np.empty((lams.shape[0], len(offsets) - 1), dtype=np.int64)
    for i in range(len(offsets) - 1):
        out[:, i] = prods[:, offsets[i]:offsets[i + 1]].max(axis=1)
    return out


def _tropical_values_loop(lams, points, offsets):
    k, d = lams.shape
    ncoord = offsets.shape[0] - 1
    out = np.empty((k, ncoord), dtype=np.int64)
    for q in numba.prange(k):
        for i in range(ncoord):
            best = np.iinfo(np.int64).min
            for p in range(offsets[i], offsets[i + 1]):
                s = 0
                for t in range(d):
                    s += lams[q, t] * points[p, t]
                if s > best:
                    best = s
            out[q, i] = best
    return out


if numba is not None:
    tropical_values_numba = numba.njit(parallel=True, cache=True)(_tropical_values_loop)
else:  # pragma: no cover
    tropical_values_numba = None

NUMBA_ACTIVE = tropical_values_numba is not None and not DISABLE_NUMBA


def tropical_values(lams, points, offsets) -> np.ndarray:
    lams = np.ascontiguousarray(lams, dtype=np.int64)
    points = np.ascontiguousarray(points, dtype=np.int64)
    offsets = np.ascontiguousarray(offsets, dtype=np.int64)
    if NUMBA_ACTIVE:
        return tropical_values_numba(lams, points, offsets)
    return tropical_values_numpy(lams, points, offsets)


def set_threads(n: int | None) -> None:
    if n and numba is not None:
        numba.set_num_threads(max(1, min(n, numba.config.NUMBA_NUM_THREADS)))

"""State-sum kernel for the bracket polynomial.

Endpoints of a c-crossing code are numbered ``4*i + k`` with local slots
``0 = over-in, 1 = over-out, 2 = under-in, 3 = under-out``.  Arc edges join
each passage's out-endpoint to the next passage's in-endpoint along the
component; a smoothing choice pairs the four endpoints of each crossing two
ways.  State loops are the cycles of the union of both matchings.

The per-state loop count is accumulated into a histogram over
``(number of B-smoothings, loop count)`` so the polynomial can be assembled
exactly afterwards.  The hot path is a numba kernel; a pure-Python twin with
the same contract serves as fallback.
"""

from __future__ import annotations

import numpy as np

from .gausscodes import GaussCode

# Local smoothing permutations, indexed [positive?][bit] -> list 4->4.
# bit 0 = A-smoothing, bit 1 = B-smoothing.
# Positive crossing: A joins over-in/under-out and over-out/under-in.
_SM_POS = ((3, 2, 1, 0), (2, 3, 0, 1))
_SM_NEG = (_SM_POS[1], _SM_POS[0])


def build_tables(code: GaussCode) -> tuple[int, np.ndarray, np.ndarray, int]:
    """Return ``(c, arc, smooth, extra_loops)`` for the state walk.

    ``arc`` is the involution of arc edges on the 4c endpoints, ``smooth`` the
    per-crossing local permutations of shape ``(c, 2, 4)``, ``extra_loops``
    the number of crossing-free components.
    """
    ids = sorted({p.crossing for comp in code.components for p in comp})
    index = {cid: i for i, cid in enumerate(ids)}
    c = len(ids)
    arc = np.full(4 * c, -1, dtype=np.int32)
    extra = code.free_loops
    signs = [0] * c
    for comp in code.components:
        if not any(True for _ in comp):
            continue
        ends = []
        for p in comp:
            i = index[p.crossing]
            signs[i] = p.sign
            base = 4 * i
            if p.over:
                ends.append((base + 0, base + 1))
            else:
                ends.append((base + 2, base + 3))
        for t, (_, out_e) in enumerate(ends):
            in_next = ends[(t + 1) % len(ends)][0]
            arc[out_e] = in_next
            arc[in_next] = out_e
    smooth = np.zeros((c, 2, 4), dtype=np.int8)
    for i in range(c):
        table = _SM_POS if signs[i] > 0 else _SM_NEG
        for bit in (0, 1):
            for k in range(4):
                smooth[i, bit, k] = table[bit][k]
    return c, arc, smooth, extra


def _loops_python(c: int, arc: np.ndarray, smooth: np.ndarray, state: int) -> int:
    total = 4 * c
    seen = [False] * total
    loops = 0
    for start in range(total):
        if seen[start]:
            continue
        loops += 1
        e = start
        while True:
            seen[e] = True
            e2 = arc[e]
            seen[e2] = True
            i = e2 >> 2
            bit = (state >> i) & 1
            e = (i << 2) + smooth[i, bit, e2 & 3]
            if e == start:
                break
    return loops


def histogram_python(c: int, arc: np.ndarray, smooth: np.ndarray) -> np.ndarray:
    # Loop count is bounded by crossings plus components, and components
    # never exceed 2c for a c-crossing code.
    hist = np.zeros((c + 1, 3 * c + 2), dtype=np.int64)
    for state in range(1 << c):
        loops = _loops_python(c, arc, smooth, state)
        hist[bin(state).count("1"), loops] += 1
    return hist


try:  # pragma: no cover - exercised indirectly
    import numba

    @numba.njit(parallel=True, cache=True)
    def _histogram_numba(c, arc, smooth):  # type: ignore[no-redef]
        nstates = 1 << c
        nblocks = 64 if nstates >= 64 else 1
        block = nstates // nblocks
        hists = np.zeros((nblocks, c + 1, 3 * c + 2), dtype=np.int64)
        for b in numba.prange(nblocks):
            stamp = np.full(4 * c, -1, dtype=np.int64)
            lo = b * block
            hi = nstates if b == nblocks - 1 else lo + block
            for state in range(lo, hi):
                loops = 0
                pop = 0
                s = state
                while s:
                    pop += s & 1
                    s >>= 1
                for start in range(4 * c):
                    if stamp[start] == state:
                        continue
                    loops += 1
                    e = start
                    while True:
                        stamp[e] = state
                        e2 = arc[e]
                        stamp[e2] = state
                        i = e2 >> 2
                        bit = (state >> i) & 1
                        e = (i << 2) + smooth[i, bit, e2 & 3]
                        if e == start:
                            break
                hists[b, pop, loops] += 1
        return hists

    HAVE_NUMBA = True
except Exception:  # pragma: no cover
    HAVE_NUMBA = False


def state_histogram(code: GaussCode) -> tuple[int, np.ndarray, int]:
    """Histogram ``H[b, loops]`` over the 2^c states, plus crossing-free loops."""
    c, arc, smooth, extra = build_tables(code)
    if c == 0:
        hist = np.zeros((1, 2), dtype=np.int64)
        hist[0, 0] = 1
        return 0, hist, extra
    if HAVE_NUMBA and c >= 10:
        hist = np.asarray(_histogram_numba(c, arc, smooth)).sum(axis=0)
    else:
        hist = histogram_python(c, arc, smooth)
    return c, hist, extra

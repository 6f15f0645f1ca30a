"""Loop kernels for the colour-coding DP, compiled with numba.

Layout shared with ``_kernels_numpy``:

* ``blk_h[b]`` A prefix length before block ``b`` (0-based start),
  ``blk_end[b]`` prefix length after it, ``blk_q[b]`` 0-based B start,
  ``blk_len[b]`` number of duos; blocks sorted by ``blk_end``.
* ``coloring`` int64 colours ``0..c-1`` for B positions ``0..n-2``.
* strict tables hold the minimum number of blocks per (prefix, colour mask),
  127 meaning unreachable; paper tables are 0/1.
"""
import numpy as np

from .._accel import njit

INF = 127


@njit
def popcounts(nbits):
    size = 1 << nbits
    pc = np.zeros(size, dtype=np.int64)
    for m in range(1, size):
        pc[m] = pc[m >> 1] + (m & 1)
    return pc


@njit
def block_masks(coloring, blk_q, blk_len, n, strict, star_bit):
    """Colour mask of each block's B positions, -1 when not rainbow."""
    nb = blk_q.shape[0]
    out = np.empty(nb, dtype=np.int64)
    for b in range(nb):
        q = blk_q[b]
        last = q + blk_len[b] if strict else q + blk_len[b] - 1
        m = 0
        ok = True
        for p in range(q, last + 1):
            if p == n - 1:
                bit = 1 << star_bit
            else:
                bit = 1 << coloring[p]
            if m & bit:
                ok = False
                break
            m |= bit
        out[b] = m if ok else -1
    return out


@njit
def strict_table(n, blk_h, blk_end, masks, nbits, k, want_back, stop_early):
    size = 1 << nbits
    pc = popcounts(nbits)
    best = np.full((n + 1, size), INF, dtype=np.int8)
    back = np.full((n + 1, size) if want_back else (1, 1), -1, dtype=np.int32)
    best[0, 0] = 0
    nb = blk_h.shape[0]
    b = 0
    for i in range(1, n + 1):
        for m in range(size):
            best[i, m] = best[i - 1, m]
        while b < nb and blk_end[b] == i:
            cs = masks[b]
            if cs >= 0:
                h = blk_h[b]
                for m in range(size):
                    v = best[h, m]
                    if v == INF or (m & cs) != 0:
                        continue
                    t = m | cs
                    if v + 1 < best[i, t]:
                        best[i, t] = v + 1
                        if want_back:
                            back[i, t] = b
                        if stop_early and pc[t] - (v + 1) >= k:
                            return True, best, back
            b += 1
    for m in range(size):
        if best[n, m] != INF and pc[m] - best[n, m] >= k:
            return True, best, back
    return False, best, back


@njit
def paper_table(n, blk_h, blk_end, masks, k, want_back, stop_early):
    size = 1 << k
    full = size - 1
    table = np.zeros((n + 1, size), dtype=np.int8)
    back = np.full((n + 1, size) if want_back else (1, 1), -1, dtype=np.int32)
    table[0, 0] = 1
    nb = blk_h.shape[0]
    b = 0
    for i in range(1, n + 1):
        for m in range(size):
            table[i, m] = table[i - 1, m]
        while b < nb and blk_end[b] == i:
            cs = masks[b]
            if cs >= 0 and cs < size:
                h = blk_h[b]
                for m in range(size):
                    if table[h, m] == 0 or (m & cs) != 0:
                        continue
                    t = m | cs
                    if table[i, t] == 0:
                        table[i, t] = 1
                        if want_back:
                            back[i, t] = b
                        if stop_early and t == full:
                            return True, table, back
            b += 1
    return table[n, full] == 1, table, back


@njit
def search_colorings(colorings, n, blk_h, blk_end, blk_q, blk_len, k, c, strict):
    """Index of the first colouring whose DP answers YES, or -1."""
    nbits = c + 1 if strict else c
    for r in range(colorings.shape[0]):
        masks = block_masks(colorings[r], blk_q, blk_len, n, strict, c)
        if strict:
            ok, _, _ = strict_table(n, blk_h, blk_end, masks, nbits, k, False, True)
        else:
            ok, _, _ = paper_table(n, blk_h, blk_end, masks, k, False, True)
        if ok:
            return r
    return -1

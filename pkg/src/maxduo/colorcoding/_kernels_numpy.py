"""Pure-numpy counterparts of ``_kernels_numba`` (same signatures and results).

Blocks are visited in Python; each block update is vectorised over the
colour masks that are disjoint from the block's mask.
"""
import numpy as np

INF = 127


def popcounts(nbits):
    size = 1 << nbits
    m = np.arange(size, dtype=np.int64)
    pc = np.zeros(size, dtype=np.int64)
    for bit in range(nbits):
        pc += (m >> bit) & 1
    return pc


def block_masks(coloring, blk_q, blk_len, n, strict, star_bit):
    nb = blk_q.shape[0]
    out = np.full(nb, -1, dtype=np.int64)
    if nb == 0:
        return out
    colbits = np.empty(n, dtype=np.int64)
    colbits[: n - 1] = np.left_shift(1, np.asarray(coloring, dtype=np.int64))
    colbits[n - 1] = 1 << star_bit
    width = blk_len + (1 if strict else 0)
    maxw = int(width.max())
    acc = np.zeros(nb, dtype=np.int64)
    for d in range(maxw):
        active = d < width
        bits = np.where(active, colbits[np.minimum(blk_q + d, n - 1)], 0)
        acc |= bits
    pc = np.zeros(nb, dtype=np.int64)
    for bit in range(int(acc.max()).bit_length()):
        pc += (acc >> bit) & 1
    ok = pc == width
    out[ok] = acc[ok]
    return out


def _disjoint_index(size):
    cache = {}
    allm = np.arange(size, dtype=np.int64)

    def get(cs):
        idx = cache.get(cs)
        if idx is None:
            idx = allm[(allm & cs) == 0]
            cache[cs] = idx
        return idx

    return get


def strict_table(n, blk_h, blk_end, masks, nbits, k, want_back, stop_early):
    size = 1 << nbits
    pc = popcounts(nbits)
    best = np.full((n + 1, size), INF, dtype=np.int16)
    back = np.full((n + 1, size) if want_back else (1, 1), -1, dtype=np.int32)
    best[0, 0] = 0
    disjoint = _disjoint_index(size)
    b, nb = 0, len(blk_h)
    for i in range(1, n + 1):
        best[i] = best[i - 1]
        while b < nb and blk_end[b] == i:
            cs = int(masks[b])
            if cs >= 0:
                src = disjoint(cs)
                vals = best[blk_h[b], src]
                live = vals != INF
                src, vals = src[live], vals[live] + 1
                tgt = src | cs
                better = vals < best[i, tgt]
                if better.any():
                    best[i, tgt[better]] = vals[better]
                    if want_back:
                        back[i, tgt[better]] = b
                    if stop_early and np.any(pc[tgt[better]] - vals[better] >= k):
                        return True, best.astype(np.int8), back
            b += 1
    row = best[n]
    ok = bool(np.any((row != INF) & (pc - row >= k)))
    return ok, best.astype(np.int8), back


def paper_table(n, blk_h, blk_end, masks, k, want_back, stop_early):
    size = 1 << k
    full = size - 1
    table = np.zeros((n + 1, size), dtype=np.int8)
    back = np.full((n + 1, size) if want_back else (1, 1), -1, dtype=np.int32)
    table[0, 0] = 1
    disjoint = _disjoint_index(size)
    b, nb = 0, len(blk_h)
    for i in range(1, n + 1):
        table[i] = table[i - 1]
        while b < nb and blk_end[b] == i:
            cs = int(masks[b])
            if 0 <= cs < size:
                src = disjoint(cs)
                src = src[table[blk_h[b], src] == 1]
                tgt = src | cs
                new = tgt[table[i, tgt] == 0]
                if new.size:
                    table[i, new] = 1
                    if want_back:
                        back[i, new] = b
                    if stop_early and table[i, full]:
                        return True, table, back
            b += 1
    return bool(table[n, full] == 1), table, back


def search_colorings(colorings, n, blk_h, blk_end, blk_q, blk_len, k, c, strict):
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

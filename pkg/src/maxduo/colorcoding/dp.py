"""Subset DP over colour classes for a single colouring of B.

Two modes share the block machinery:

``paper``  k colours on B positions 1..n-1. A block A[h+1..i] onto B[q..r]
           consumes the colours of q..r-1, one per duo; the answer is
           whether all k colours can be consumed. Two blocks may share a
           boundary position of B, so YES does not always come with a valid
           mapping.

``strict`` 2k colours on B positions 1..n-1 plus a reserved colour for
           position n. A block consumes the colours of every position q..r,
           so chosen blocks are position-disjoint in B. The table keeps the
           fewest blocks per colour set; the duo count of a set C' reached
           with b blocks is |C'| - b.

Rows are A prefix lengths 0..n with the empty prefix as the base case, so a
block may start at A position 1.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from enum import Enum
from types import ModuleType
from typing import Sequence

import numpy as np

from .. import _accel
from ..core import PartialMapping, RelatedPair, count_preserved
from ..errors import PositionOutOfRange, WitnessInvalid


class Mode(str, Enum):
    STRICT = "strict"
    PAPER = "paper"


STAR = 0  # colour of B position n in strict mode (1-based API)


def colours_for(mode: Mode | str, k: int) -> int:
    return 2 * k if Mode(mode) is Mode.STRICT else k


def kernels(backend: str | None = None) -> ModuleType:
    backend = backend or _accel.BACKEND
    if backend == "numba":
        from . import _kernels_numba as mod
    else:
        from . import _kernels_numpy as mod
    return mod


@dataclass(frozen=True)
class ColorAssignment:
    """Colours ``1..c`` for B positions ``1..n-1``."""

    colors: tuple[int, ...]
    c: int

    def __post_init__(self):
        if any(not 1 <= x <= self.c for x in self.colors):
            raise ValueError(f"colours must lie in 1..{self.c}")

    @classmethod
    def from_zero_based(cls, row: Sequence[int], c: int) -> "ColorAssignment":
        return cls(tuple(int(x) + 1 for x in row), c)

    def zero_based(self) -> np.ndarray:
        return np.asarray(self.colors, dtype=np.int64) - 1

    def color_of(self, pos: int, n: int) -> int:
        """1-based colour of B position ``pos``; position n gets ``STAR``."""
        return STAR if pos == n else self.colors[pos - 1]


@dataclass(frozen=True)
class Blocks:
    """Every occurrence A[s..s+L] = B[q..q+L] with 1 <= L <= max_len (0-based)."""

    h: np.ndarray
    end: np.ndarray
    q: np.ndarray
    length: np.ndarray

    def __len__(self) -> int:
        return int(self.h.shape[0])


def common_extension(pair: RelatedPair) -> np.ndarray:
    """``lce[s, t]`` = length of the longest common prefix of A[s:] and B[t:]."""
    a, b, n = pair.a_array, pair.b_array, pair.n
    eq = a[:, None] == b[None, :]
    lce = np.zeros((n + 1, n + 1), dtype=np.int32)
    for s in range(n - 1, -1, -1):
        lce[s, :n] = np.where(eq[s], lce[s + 1, 1:] + 1, 0)
    return lce


def occurrence_blocks(pair: RelatedPair, max_len: int) -> Blocks:
    n = pair.n
    if n < 2 or max_len < 1:
        empty = np.zeros(0, dtype=np.int64)
        return Blocks(empty, empty, empty, empty)
    lce = common_extension(pair)[:n, :n]
    hs, qs, ls = [], [], []
    for length in range(1, min(max_len, n - 1) + 1):
        s, t = np.nonzero(lce >= length + 1)
        hs.append(s)
        qs.append(t)
        ls.append(np.full(s.shape, length))
    h = np.concatenate(hs).astype(np.int64)
    q = np.concatenate(qs).astype(np.int64)
    length = np.concatenate(ls).astype(np.int64)
    end = h + length + 1
    order = np.lexsort((q, h, end))
    return Blocks(h[order], end[order], q[order], length[order])


def block_occurrence_check(
    pair: RelatedPair,
    coloring: ColorAssignment,
    h1: int,
    i: int,
    cs: set[int] | frozenset[int],
    mode: Mode | str = Mode.STRICT,
) -> bool:
    """Reference evaluation of one block query (1-based positions).

    True iff some B[q..r] equals A[h1..i] and the colours of the block's
    positions are pairwise distinct and equal ``cs`` as a set. Paper mode
    looks at positions q..r-1; strict mode at q..r, position n carrying
    ``STAR``.
    """
    n = pair.n
    if not (1 <= h1 < i <= n):
        raise PositionOutOfRange(f"block A[{h1}..{i}] needs 1 <= h1 < i <= {n}")
    strict = Mode(mode) is Mode.STRICT
    length = i - h1
    target = pair.a[h1 - 1 : i]
    cs = set(cs)
    for q in range(1, n - length + 1):
        r = q + length
        if pair.b[q - 1 : r] != target:
            continue
        last = r if strict else r - 1
        cols = [coloring.color_of(p, n) for p in range(q, last + 1)]
        if len(set(cols)) == len(cols) and set(cols) == cs:
            return True
    return False


@dataclass
class DPState:
    pair: RelatedPair
    coloring: ColorAssignment
    k: int
    mode: Mode
    blocks: Blocks
    masks: np.ndarray
    table: np.ndarray
    back: np.ndarray
    answer: bool

    @property
    def entries(self) -> int:
        return int(self.table.size)


def max_block_len(mode: Mode, k: int) -> int:
    return colours_for(mode, k) if mode is Mode.STRICT else k


def dp_decide(
    pair: RelatedPair,
    coloring: ColorAssignment,
    k: int,
    mode: Mode | str = Mode.STRICT,
    blocks: Blocks | None = None,
    backend: str | None = None,
) -> tuple[bool, DPState]:
    mode = Mode(mode)
    c = colours_for(mode, k)
    if coloring.c != c:
        raise ValueError(f"{mode.value} mode with k={k} needs {c} colours, got {coloring.c}")
    if len(coloring.colors) != pair.n - 1:
        raise ValueError("colouring must cover B positions 1..n-1")
    if blocks is None:
        blocks = occurrence_blocks(pair, max_block_len(mode, k))
    K = kernels(backend)
    strict = mode is Mode.STRICT
    masks = K.block_masks(
        coloring.zero_based(), blocks.q, blocks.length, pair.n, strict, c
    )
    if strict:
        ok, table, back = K.strict_table(
            pair.n, blocks.h, blocks.end, masks, c + 1, k, True, False
        )
    else:
        ok, table, back = K.paper_table(pair.n, blocks.h, blocks.end, masks, k, True, False)
    return bool(ok), DPState(pair, coloring, k, mode, blocks, masks, table, back, bool(ok))


def _trace(state: DPState) -> list[int]:
    """Block ids on the backpointer path of the accepting cell."""
    n, table, back = state.pair.n, state.table, state.back
    if state.mode is Mode.STRICT:
        size = table.shape[1]
        pc = np.array([bin(m).count("1") for m in range(size)])
        row = table[n].astype(np.int64)
        gain = np.where(row == 127, -1, pc - row)
        m = int(np.argmax(gain))
        if gain[m] < state.k:
            raise ValueError("DP did not accept; no witness to extract")
    else:
        m = table.shape[1] - 1
        if not table[n, m]:
            raise ValueError("DP did not accept; no witness to extract")
    i, path = n, []
    while i > 0:
        b = int(back[i, m])
        if b < 0:
            i -= 1
            continue
        path.append(b)
        m ^= int(state.masks[b])
        i = int(state.blocks.h[b])
    assert m == 0
    return path[::-1]


def extract_witness(state: DPState) -> PartialMapping:
    """Partial mapping realising the accepting DP cell.

    Strict-mode witnesses are always valid. A paper-mode witness that sends
    two A positions to one B position raises :class:`WitnessInvalid`.
    """
    blocks = state.blocks
    claims: dict[int, list[int]] = defaultdict(list)
    pairs = []
    for b in _trace(state):
        s, q, length = int(blocks.h[b]), int(blocks.q[b]), int(blocks.length[b])
        for d in range(length + 1):
            pairs.append((s + d + 1, q + d + 1))
            claims[q + d + 1].append(s + d + 1)
    clash = [(j, src) for j, src in sorted(claims.items()) if len(src) > 1]
    if clash:
        raise WitnessInvalid(clash, pairs)
    m = PartialMapping.from_pairs(pairs)
    assert count_preserved(state.pair, m) >= state.k
    return m

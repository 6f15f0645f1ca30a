"""Colouring families: exhaustive (up to renaming), random, and file-supplied."""
from __future__ import annotations

import math
from functools import lru_cache
from pathlib import Path
from typing import Iterator

import numpy as np

from ..errors import MalformedFamilyFile


def success_probability(c: int) -> float:
    """Chance that a uniform c-colouring makes a fixed c-set rainbow."""
    return math.factorial(c) / c**c


def required_trials(c: int, delta: float) -> int:
    """``ceil(e^c ln(1/delta))``: enough rounds for one-sided error <= delta."""
    if not 0 < delta < 1:
        raise ValueError("delta must lie in (0, 1)")
    return math.ceil(math.exp(c) * math.log(1 / delta))


def miss_probability(c: int, trials: int) -> float:
    return (1 - success_probability(c)) ** trials


@lru_cache(maxsize=None)
def stirling2(n: int, k: int) -> int:
    if n == k:
        return 1
    if n == 0 or k == 0:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def count_canonical(npos: int, c: int, exact: bool) -> int:
    """Number of colourings of ``npos`` positions modulo colour renaming."""
    if npos == 0:
        return 1
    if exact:
        return stirling2(npos, c)
    return sum(stirling2(npos, j) for j in range(1, min(c, npos) + 1))


def canonical_colorings(npos: int, c: int, exact: bool) -> np.ndarray:
    """Restricted-growth strings: one representative per colour partition.

    The DP is symmetric under renaming colours, so these cover every one of
    the ``c ** npos`` colourings. ``exact`` keeps only strings using all
    ``c`` colours.
    """
    rows: list[list[int]] = []
    if npos == 0:
        return np.zeros((1, 0), dtype=np.int64)
    cur = [0] * npos

    def rec(pos: int, used: int) -> None:
        if pos == npos:
            if not exact or used == c:
                rows.append(cur.copy())
            return
        if exact and used + (npos - pos) < c:
            return
        for col in range(min(used + 1, c)):
            cur[pos] = col
            rec(pos + 1, max(used, col + 1))

    rec(0, 0)
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), npos)


def random_batches(
    npos: int, c: int, trials: int, seed: int, batch: int = 256
) -> Iterator[np.ndarray]:
    rng = np.random.default_rng(seed)
    left = trials
    while left > 0:
        size = min(batch, left)
        yield rng.integers(0, c, size=(size, npos), dtype=np.int64)
        left -= size


def load_family(path: str | Path, npos: int, c: int) -> np.ndarray:
    """Read one colouring per line, ``npos`` integers in ``1..c``.

    Blank lines and ``#`` comments are skipped. Returns 0-based colours.
    """
    rows = []
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            vals = [int(tok) for tok in line.split()]
        except ValueError as exc:
            raise MalformedFamilyFile(f"line {lineno}: {exc}") from None
        if len(vals) != npos:
            raise MalformedFamilyFile(
                f"line {lineno}: expected {npos} colours, got {len(vals)}"
            )
        if any(not 1 <= v <= c for v in vals):
            raise MalformedFamilyFile(f"line {lineno}: colour outside 1..{c}")
        rows.append([v - 1 for v in vals])
    if not rows:
        raise MalformedFamilyFile("family file holds no colourings")
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), npos)


def write_family(path: str | Path, colorings: np.ndarray) -> None:
    lines = [" ".join(str(int(v) + 1) for v in row) for row in colorings]
    Path(path).write_text("\n".join(lines) + "\n")

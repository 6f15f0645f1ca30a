from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from ..core import Answer, PartialMapping, RelatedPair, trivial_answer
from ..errors import BudgetExceeded, WitnessInvalid
from . import families
from .dp import (
    ColorAssignment,
    Mode,
    colours_for,
    dp_decide,
    extract_witness,
    kernels,
    max_block_len,
    occurrence_blocks,
)

STRATEGIES = ("exhaustive", "randomized", "family-file")
DEFAULT_BUDGET = 200_000


@dataclass
class CCResult:
    answer: Answer
    k: int
    mode: Mode
    strategy: str
    colours: int
    witness: PartialMapping | None = None
    witness_error: WitnessInvalid | None = None
    error_bound: float | None = None
    colorings_tried: int = 0
    table_entries: int = 0
    exact: bool = True
    coloring: ColorAssignment | None = None


def _table_entries(mode: Mode, n: int, c: int) -> int:
    return (n + 1) * (1 << (c + 1 if mode is Mode.STRICT else c))


def solve(
    pair: RelatedPair,
    k: int,
    strategy: str = "randomized",
    mode: Mode | str = Mode.STRICT,
    trials: int | None = None,
    seed: int = 0,
    delta: float = 0.01,
    family: str | Path | np.ndarray | None = None,
    budget: int = DEFAULT_BUDGET,
    backend: str | None = None,
) -> CCResult:
    """Decide whether ``k`` duos can be preserved, by colour-coding.

    ``exhaustive`` walks every colouring up to colour renaming (exact);
    ``randomized`` draws ``trials`` uniform colourings (default
    ``required_trials(c, delta)``) and reports the miss probability of a NO;
    ``family-file`` iterates a supplied family, exact when it is perfect.
    In strict mode with at least n-1 colours one injective colouring is
    already exact, and every strategy uses it.
    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}")
    mode = Mode(mode)
    n = pair.n
    c = colours_for(mode, k) if k > 0 else 1
    res = CCResult(Answer.NO, k, mode, strategy, c)
    settled = trivial_answer(pair, k)
    if settled is not None:
        res.answer = Answer.YES if settled else Answer.NO
        if settled:
            res.witness = PartialMapping(())
        return res
    res.table_entries = _table_entries(mode, n, c)
    npos = n - 1
    blocks = occurrence_blocks(pair, max_block_len(mode, k))
    if len(blocks) == 0:
        return res

    if strategy == "family-file":
        if family is None:
            raise ValueError("family-file strategy needs a family")
        if isinstance(family, np.ndarray):
            batches = [family.astype(np.int64)]
        else:
            batches = [families.load_family(family, npos, c)]
    elif mode is Mode.STRICT and c >= npos:
        batches = [np.arange(npos, dtype=np.int64)[None, :]]
    elif strategy == "exhaustive":
        exact_count = mode is Mode.PAPER
        total = families.count_canonical(npos, c, exact_count)
        if total > budget:
            raise BudgetExceeded(f"{total} canonical colourings exceed budget {budget}")
        batches = [families.canonical_colorings(npos, c, exact_count)]
    else:
        trials = trials if trials is not None else families.required_trials(c, delta)
        batches = families.random_batches(npos, c, trials, seed)
        res.exact = False

    K = kernels(backend)
    strict = mode is Mode.STRICT
    for batch in batches:
        hit = K.search_colorings(
            batch, n, blocks.h, blocks.end, blocks.q, blocks.length, k, c, strict
        )
        if hit < 0:
            res.colorings_tried += batch.shape[0]
            continue
        res.colorings_tried += hit + 1
        coloring = ColorAssignment.from_zero_based(batch[hit], c)
        ok, state = dp_decide(pair, coloring, k, mode, blocks, backend)
        assert ok
        res.answer, res.coloring, res.exact = Answer.YES, coloring, True
        try:
            res.witness = extract_witness(state)
        except WitnessInvalid as exc:
            res.witness_error = exc
        res.error_bound = None
        return res

    if not res.exact:
        res.error_bound = families.miss_probability(c, res.colorings_tried)
    return res

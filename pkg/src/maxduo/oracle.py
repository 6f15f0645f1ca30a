"""Exact reference solver for the maximum number of preserved duos.

The preserved duos of any total mapping group into maximal blocks: A[s..s+L]
sent onto B[t..t+L] with equal strings, pairwise position-disjoint on both
sides. Conversely any set of disjoint blocks extends to a total mapping
(the strings are related), and the extension never loses a preserved duo.
So the optimum is the best set of disjoint blocks, which is what the search
below enumerates: A positions left to right, each either left free or opened
as the first position of a block on some free B position.

Total mapping with ``n - c`` preserved duos is the same thing as a common
string partition into ``c`` blocks; the search stays on mappings.
"""
from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass

from .core import PartialMapping, RelatedPair, count_preserved
from .duograph import build_duo_graph, maximum_matching
from .errors import InstanceTooLarge

DEFAULT_LIMIT = 12
EXHAUSTIVE_LIMIT = 8


@dataclass(frozen=True)
class OracleResult:
    opt: int
    witness: PartialMapping
    nodes: int


class _Found(Exception):
    pass


class _BlockSearch:
    def __init__(self, pair: RelatedPair, matching_bound: bool = False):
        self.a, self.b, self.n = pair.a, pair.b, pair.n
        # B duo starts per A duo, sorted; only these can open a block
        starts: dict[tuple[int, int], list[int]] = defaultdict(list)
        for j in range(self.n - 1):
            starts[(self.b[j], self.b[j + 1])].append(j)
        self.cand = [
            starts.get((self.a[i], self.a[i + 1]), []) for i in range(self.n - 1)
        ]
        # suffix upper bounds: remaining A duos that still have a partner
        live = [1 if c else 0 for c in self.cand] + [0]
        self.suffix = [0] * (self.n + 1)
        for i in range(self.n - 2, -1, -1):
            self.suffix[i] = self.suffix[i + 1] + live[i]
        self.cap = len(maximum_matching(build_duo_graph(pair))) if matching_bound else None
        self.memo: dict[tuple[int, int], int] = {}
        self.nodes = 0
        self.target: int | None = None

    def bound(self, i: int) -> int:
        return self.suffix[i] if i < self.n else 0

    def best(self, i: int, used: int, acc: int) -> int:
        """Max duos obtainable from A positions ``i..`` given used B bits."""
        if i >= self.n - 1:
            return 0
        key = (i, used)
        hit = self.memo.get(key)
        if hit is not None:
            return hit
        self.nodes += 1
        a, b, n = self.a, self.b, self.n
        ub = self.bound(i)
        val = self.best(i + 1, used, acc)
        for j in self.cand[i]:
            if val >= ub:
                break
            if used >> j & 3:
                continue
            bits = used | (1 << j)
            length = 0
            x, y = i + 1, j + 1
            while x < n and y < n and a[x] == b[y] and not used >> y & 1:
                bits |= 1 << y
                length += 1
                # a block may stop at any length; shorter ones leave room
                cand = length + self.best(x + 1, bits, acc + length)
                if cand > val:
                    val = cand
                    if self.target is not None and acc + val >= self.target:
                        raise _Found
                x += 1
                y += 1
        self.memo[key] = val
        if self.target is not None and acc + val >= self.target:
            raise _Found
        return val

    def blocks(self) -> list[tuple[int, int, int]]:
        """Re-walk the memo table to recover (a_start, b_start, length)."""
        out = []
        i, used = 0, 0
        a, b, n = self.a, self.b, self.n
        while i < n - 1:
            want = self.best(i, used, 0)
            if want == self.best(i + 1, used, 0):
                i += 1
                continue
            found = False
            for j in self.cand[i]:
                if used >> j & 3:
                    continue
                bits = used | (1 << j)
                length = 0
                x, y = i + 1, j + 1
                while x < n and y < n and a[x] == b[y] and not used >> y & 1:
                    bits |= 1 << y
                    length += 1
                    if length + self.best(x + 1, bits, 0) == want:
                        out.append((i, j, length))
                        i, used, found = x + 1, bits, True
                        break
                    x += 1
                    y += 1
                if found:
                    break
            assert found, "memo table inconsistent"
        return out


def _complete(pair: RelatedPair, blocks: list[tuple[int, int, int]]) -> PartialMapping:
    """Turn disjoint blocks (0-indexed) into a total 1-indexed mapping."""
    m: dict[int, int] = {}
    for s, t, length in blocks:
        for d in range(length + 1):
            m[s + d] = t + d
    used = set(m.values())
    free_b: dict[int, list[int]] = defaultdict(list)
    for j in range(pair.n):
        if j not in used:
            free_b[pair.b[j]].append(j)
    for sym in free_b:
        free_b[sym].reverse()
    for i in range(pair.n):
        if i not in m:
            m[i] = free_b[pair.a[i]].pop()
    return PartialMapping.from_pairs((i + 1, j + 1) for i, j in m.items())


def _check_size(pair: RelatedPair, limit: int | None) -> None:
    if limit is not None and pair.n > limit:
        raise InstanceTooLarge(f"n={pair.n} exceeds oracle limit {limit}")


def exact_max_duo(
    pair: RelatedPair,
    limit: int | None = DEFAULT_LIMIT,
    exhaustive: bool = False,
    matching_bound: bool = False,
) -> OracleResult:
    """Maximum number of preserved duos over all total mappings, with witness.

    ``exhaustive=True`` enumerates every symbol-respecting bijection instead
    (no pruning); it exists to cross-check the block search on n <= 8.
    """
    _check_size(pair, limit)
    if exhaustive:
        return _enumerate(pair)
    search = _BlockSearch(pair, matching_bound)
    opt = search.best(0, 0, 0)
    if search.cap is not None:
        assert opt <= search.cap
    witness = _complete(pair, search.blocks())
    got = count_preserved(pair, witness)
    assert got == opt, (got, opt)
    return OracleResult(opt, witness, search.nodes)


def exact_decide(pair: RelatedPair, k: int, limit: int | None = DEFAULT_LIMIT) -> bool:
    _check_size(pair, limit)
    if k <= 0:
        return True
    if k > pair.n - 1:
        return False
    search = _BlockSearch(pair)
    if search.bound(0) < k:
        return False
    search.target = k
    try:
        search.best(0, 0, 0)
    except _Found:
        return True
    return False


def _enumerate(pair: RelatedPair) -> OracleResult:
    if pair.n > EXHAUSTIVE_LIMIT:
        raise InstanceTooLarge(f"exhaustive mode supports n <= {EXHAUSTIVE_LIMIT}")
    pos_a: dict[int, list[int]] = defaultdict(list)
    pos_b: dict[int, list[int]] = defaultdict(list)
    for i, s in enumerate(pair.a):
        pos_a[s].append(i)
    for j, s in enumerate(pair.b):
        pos_b[s].append(j)
    syms = sorted(pos_a)
    best, best_map, nodes = -1, None, 0
    for choice in itertools.product(*(itertools.permutations(pos_b[s]) for s in syms)):
        nodes += 1
        m = [0] * pair.n
        for s, perm in zip(syms, choice):
            for i, j in zip(pos_a[s], perm):
                m[i] = j
        cnt = sum(1 for i in range(pair.n - 1) if m[i + 1] == m[i] + 1)
        if cnt > best:
            best, best_map = cnt, m
    witness = PartialMapping.from_pairs((i + 1, j + 1) for i, j in enumerate(best_map))
    return OracleResult(best, witness, nodes)

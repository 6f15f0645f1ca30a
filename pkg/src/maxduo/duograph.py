"""Bipartite duo graph, maximum matching and conflict-free submatchings.

Two duos are preservable exactly when their two-symbol strings are equal, so
the duo graph is a disjoint union of complete bipartite blocks, one per duo
string. A maximum matching therefore pairs, inside every block, as many A
duos with B duos as the smaller side allows.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from math import ceil
from typing import Iterator

from .core import (
    Answer,
    PartialMapping,
    RelatedPair,
    Side,
    check_mapping,
    count_preserved,
)
from .errors import ConflictDetected

Edge = tuple[int, int]


@dataclass(frozen=True)
class DuoGraph:
    """Duo graph stored as its complete bipartite blocks.

    ``groups`` maps a duo string (pair of symbol codes) to the sorted duo
    positions of A and of B carrying it. Edges are enumerated on demand,
    which keeps memory linear even when the explicit edge set is quadratic.
    """

    n: int
    groups: dict[tuple[int, int], tuple[tuple[int, ...], tuple[int, ...]]]

    @property
    def left(self) -> range:
        return range(1, self.n)

    @property
    def right(self) -> range:
        return range(1, self.n)

    def edges(self) -> Iterator[Edge]:
        out = []
        for left, right in self.groups.values():
            out.extend((i, j) for i in left for j in right)
        return iter(sorted(out))

    def num_edges(self) -> int:
        return sum(len(l) * len(r) for l, r in self.groups.values())

    def has_edge(self, i: int, j: int) -> bool:
        for left, right in self.groups.values():
            if i in left:
                return j in right
        return False


def build_duo_graph(pair: RelatedPair) -> DuoGraph:
    left: dict[tuple[int, int], list[int]] = defaultdict(list)
    right: dict[tuple[int, int], list[int]] = defaultdict(list)
    a, b = pair.a, pair.b
    for i in range(1, pair.n):
        left[(a[i - 1], a[i])].append(i)
        right[(b[i - 1], b[i])].append(i)
    groups = {
        key: (tuple(left[key]), tuple(right[key]))
        for key in sorted(left.keys() & right.keys())
    }
    return DuoGraph(pair.n, groups)


@dataclass(frozen=True)
class Matching:
    edges: tuple[Edge, ...] = ()

    def __len__(self) -> int:
        return len(self.edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self.edges)

    def left(self) -> set[int]:
        return {i for i, _ in self.edges}

    def right(self) -> set[int]:
        return {j for _, j in self.edges}


def maximum_matching(g: DuoGraph) -> Matching:
    """Lexicographically smallest maximum matching.

    Within each block the i-th smallest A duo is paired with the i-th
    smallest B duo; no augmenting path can exist across blocks.
    """
    edges = []
    for left, right in g.groups.values():
        edges.extend(zip(left, right))
    return Matching(tuple(sorted(edges)))


def conflicts(e1: Edge, e2: Edge) -> bool:
    """True when two matching edges cannot live in one partial mapping."""
    (i, j), (i2, j2) = sorted((e1, e2))
    if i2 == i:
        return True
    if i2 == i + 1:
        return j2 != j + 1
    return abs(j - j2) <= 1


def conflict_graph(m: Matching) -> dict[Edge, list[Edge]]:
    by_a = {i: (i, j) for i, j in m}
    by_b = {j: (i, j) for i, j in m}
    adj: dict[Edge, list[Edge]] = {}
    for e in m:
        i, j = e
        cand = {by_a.get(i - 1), by_a.get(i + 1), by_b.get(j - 1), by_b.get(j + 1)}
        cand.discard(None)
        cand.discard(e)
        adj[e] = sorted(x for x in cand if conflicts(e, x))
    return adj


def split_submatchings(g: DuoGraph, m: Matching) -> list[Matching]:
    """Partition ``m`` into conflict-free classes, largest first.

    Greedy colouring in A order: an edge has at most three conflict neighbours
    earlier in that order (one A neighbour, two B neighbours), so four classes
    always suffice. ``len(result) <= 4`` is still reported by callers rather
    than assumed.
    """
    if not len(m):
        return []
    adj = conflict_graph(m)
    colour: dict[Edge, int] = {}
    for e in sorted(m.edges):
        taken = {colour[x] for x in adj[e] if x in colour}
        c = 0
        while c in taken:
            c += 1
        colour[e] = c
    classes: dict[int, list[Edge]] = defaultdict(list)
    for e, c in colour.items():
        classes[c].append(e)
    out = [Matching(tuple(sorted(v))) for v in classes.values()]
    out.sort(key=lambda cl: (-len(cl), cl.edges[0]))
    return out


def mapping_from_submatching(pair: RelatedPair, cls: Matching) -> PartialMapping:
    d: dict[int, int] = {}
    inv: dict[int, int] = {}
    for i, j in cls:
        for x, y in ((i, j), (i + 1, j + 1)):
            if d.get(x, y) != y or inv.get(y, x) != x:
                raise ConflictDetected(f"edge ({i}, {j}) clashes at A{x}/B{y}")
            d[x] = y
            inv[y] = x
    m = PartialMapping.from_dict(d)
    check_mapping(pair, m)
    return m


def extend_blocks(pair: RelatedPair, m: PartialMapping) -> PartialMapping:
    """Grow every mapped block left and right while symbols keep agreeing.

    Only free positions are used, so the result stays a valid partial
    mapping and preserves at least as many duos as ``m``.
    """
    d = m.as_dict()
    used = set(d.values())
    a, b, n = pair.a, pair.b, pair.n
    changed = True
    while changed:
        changed = False
        for i, j in sorted(d.items()):
            for step in (1, -1):
                x, y = i + step, j + step
                while (
                    1 <= x <= n
                    and 1 <= y <= n
                    and x not in d
                    and y not in used
                    and a[x - 1] == b[y - 1]
                ):
                    d[x] = y
                    used.add(y)
                    changed = True
                    x, y = x + step, y + step
    return PartialMapping.from_dict(d)


@dataclass
class BoundResult:
    answer: Answer
    matching_size: int
    class_sizes: list[int]
    best_preserved: int
    witness: PartialMapping | None = None
    matching: Matching = field(default_factory=Matching)

    @property
    def four_sufficed(self) -> bool:
        return len(self.class_sizes) <= 4


def best_submatching_mapping(
    pair: RelatedPair, g: DuoGraph | None = None, m: Matching | None = None
) -> tuple[Matching, list[Matching], PartialMapping | None, int]:
    g = build_duo_graph(pair) if g is None else g
    m = maximum_matching(g) if m is None else m
    classes = split_submatchings(g, m)
    best_map, best = None, 0
    for cl in classes:
        mp = extend_blocks(pair, mapping_from_submatching(pair, cl))
        cnt = count_preserved(pair, mp)
        if best_map is None or cnt > best:
            best_map, best = mp, cnt
    return m, classes, best_map, best


def matching_bound_decide(pair: RelatedPair, k: int) -> BoundResult:
    """NO below the matching bound, YES from a constructive class, else UNKNOWN.

    ``|M| >= 4k`` also answers YES: with at most four classes one of them
    holds at least ``k`` edges.
    """
    m, classes, best_map, best = best_submatching_mapping(pair)
    sizes = [len(c) for c in classes]
    res = BoundResult(Answer.UNKNOWN, len(m), sizes, best, matching=m)
    if len(m) < k:
        res.answer = Answer.NO
    elif best >= k:
        res.answer, res.witness = Answer.YES, best_map
    elif len(m) >= 4 * k:
        res.answer = Answer.YES
    return res


def lower_bound_from_split(matching_size: int, n_classes: int) -> int:
    return ceil(matching_size / n_classes) if n_classes else 0


__all__ = [
    "BoundResult",
    "DuoGraph",
    "Matching",
    "Side",
    "best_submatching_mapping",
    "build_duo_graph",
    "conflict_graph",
    "conflicts",
    "extend_blocks",
    "lower_bound_from_split",
    "mapping_from_submatching",
    "matching_bound_decide",
    "maximum_matching",
    "split_submatchings",
]

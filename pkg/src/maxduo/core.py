"""Instance model and duo/mapping semantics.

Positions are 1-indexed at this API boundary. Symbols are interned to small
integers once, when a :class:`RelatedPair` is built; every algorithm works on
the integer codes and only the CLI ever looks at the original tokens.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Hashable, Iterable, Iterator, Mapping, NamedTuple, Sequence

import numpy as np

from .errors import (
    InvalidMapping,
    LengthMismatch,
    MixedSides,
    NotPermutation,
    PositionOutOfRange,
)


class Side(str, Enum):
    A = "A"
    B = "B"

    @property
    def other(self) -> "Side":
        return Side.B if self is Side.A else Side.A


class Answer(str, Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"


class Duo(NamedTuple):
    side: Side
    pos: int


class DuoRun(NamedTuple):
    """Consecutive duos ``p, ..., q-1`` of one string, i.e. substring ``S[p..q]``."""

    side: Side
    p: int
    q: int

    @property
    def length(self) -> int:
        return self.q - self.p

    def duo_positions(self) -> range:
        return range(self.p, self.q)

    def duos(self) -> list[Duo]:
        return [Duo(self.side, i) for i in range(self.p, self.q)]


@dataclass(frozen=True)
class RelatedPair:
    """Two strings of equal length, one a permutation of the other.

    ``a`` and ``b`` hold interned symbol codes; ``symbols[c]`` is the token
    for code ``c``. Build instances through :func:`validate_related`.
    """

    a: tuple[int, ...]
    b: tuple[int, ...]
    symbols: tuple[Hashable, ...]

    @property
    def n(self) -> int:
        return len(self.a)

    def string(self, side: Side) -> tuple[int, ...]:
        return self.a if side is Side.A else self.b

    def tokens(self, side: Side) -> list[Hashable]:
        return [self.symbols[c] for c in self.string(side)]

    def symbol_at(self, side: Side, pos: int) -> int:
        _check_pos(pos, 1, self.n)
        return self.string(side)[pos - 1]

    def duo_key(self, side: Side, i: int) -> tuple[int, int]:
        s = self.string(side)
        return s[i - 1], s[i]

    @cached_property
    def a_array(self) -> np.ndarray:
        return np.asarray(self.a, dtype=np.int64)

    @cached_property
    def b_array(self) -> np.ndarray:
        return np.asarray(self.b, dtype=np.int64)

    def swapped(self) -> "RelatedPair":
        return RelatedPair(self.b, self.a, self.symbols)


def _check_pos(pos: int, lo: int, hi: int) -> None:
    if not lo <= pos <= hi:
        raise PositionOutOfRange(f"position {pos} outside [{lo}, {hi}]")


def intern_pair(
    a: Sequence[Hashable], b: Sequence[Hashable], symbols: Sequence[Hashable] = ()
) -> RelatedPair:
    """Intern tokens without checking relatedness.

    ``symbols`` pre-seeds the table so that codes are stable across pairs that
    share an alphabet; unseen tokens get codes in order of first appearance
    in ``a`` then ``b``.
    """
    table: dict[Hashable, int] = {}
    order: list[Hashable] = []
    for tok in list(symbols) + list(a) + list(b):
        if tok not in table:
            table[tok] = len(order)
            order.append(tok)
    return RelatedPair(
        tuple(table[t] for t in a), tuple(table[t] for t in b), tuple(order)
    )


def validate_related(
    a: Sequence[Hashable], b: Sequence[Hashable], symbols: Sequence[Hashable] = ()
) -> RelatedPair:
    """Check that ``b`` is a permutation of ``a`` and return the interned pair.

    Strings are accepted directly (each character is a symbol).
    """
    if len(a) != len(b):
        raise LengthMismatch(f"|A|={len(a)} but |B|={len(b)}")
    if len(a) == 0:
        raise LengthMismatch("strings must be non-empty")
    ca, cb = Counter(a), Counter(b)
    if ca != cb:
        for tok in list(dict.fromkeys(list(a) + list(b))):
            if ca[tok] != cb[tok]:
                raise NotPermutation(tok, ca[tok], cb[tok])
    return intern_pair(a, b, symbols)


def is_preservable(pair: RelatedPair, da: Duo, db: Duo) -> bool:
    if da.side is not Side.A or db.side is not Side.B:
        raise MixedSides("expected a duo of A and a duo of B")
    _check_pos(da.pos, 1, pair.n - 1)
    _check_pos(db.pos, 1, pair.n - 1)
    return pair.duo_key(Side.A, da.pos) == pair.duo_key(Side.B, db.pos)


@dataclass(frozen=True)
class PartialMapping:
    """Injective, symbol-respecting map from positions of A to positions of B.

    Stored as sorted ``(i, j)`` pairs. Construction does not check the pair;
    use :func:`check_mapping` for that.
    """

    pairs: tuple[tuple[int, int], ...]

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, int]]) -> "PartialMapping":
        return cls(tuple(sorted((int(i), int(j)) for i, j in pairs)))

    @classmethod
    def from_dict(cls, m: Mapping[int, int]) -> "PartialMapping":
        return cls.from_pairs(m.items())

    @classmethod
    def identity(cls, n: int) -> "PartialMapping":
        return cls(tuple((i, i) for i in range(1, n + 1)))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)

    def inverse(self) -> "PartialMapping":
        return PartialMapping.from_pairs((j, i) for i, j in self.pairs)


def check_mapping(pair: RelatedPair, m: PartialMapping) -> None:
    seen_a: set[int] = set()
    seen_b: set[int] = set()
    n = pair.n
    for i, j in m:
        if not (1 <= i <= n and 1 <= j <= n):
            raise InvalidMapping(f"pair ({i}, {j}) out of range 1..{n}")
        if i in seen_a:
            raise InvalidMapping(f"A position {i} mapped twice")
        if j in seen_b:
            raise InvalidMapping(f"B position {j} used twice")
        if pair.a[i - 1] != pair.b[j - 1]:
            raise InvalidMapping(f"A[{i}] != B[{j}]")
        seen_a.add(i)
        seen_b.add(j)


def preserved_duos(pair: RelatedPair, m: PartialMapping) -> frozenset[Duo]:
    """Duos ``(A, i)`` with ``m(i+1) = m(i) + 1``. Validates ``m`` first."""
    check_mapping(pair, m)
    d = m.as_dict()
    return frozenset(
        Duo(Side.A, i) for i, j in d.items() if d.get(i + 1) == j + 1
    )


def count_preserved(pair: RelatedPair, m: PartialMapping) -> int:
    return len(preserved_duos(pair, m))


def inducing_b_positions(pair: RelatedPair, m: PartialMapping) -> frozenset[int]:
    """Positions ``j`` of B that induce a preserved duo under ``m``."""
    check_mapping(pair, m)
    d = m.as_dict()
    return frozenset(j for i, j in d.items() if d.get(i + 1) == j + 1)


def maximal_runs(duos: Iterable[Duo]) -> list[DuoRun]:
    duos = list(duos)
    if not duos:
        return []
    sides = {d.side for d in duos}
    if len(sides) > 1:
        raise MixedSides("duos from both strings")
    side = sides.pop()
    positions = sorted({d.pos for d in duos})
    runs = []
    start = prev = positions[0]
    for p in positions[1:]:
        if p != prev + 1:
            runs.append(DuoRun(side, start, prev + 1))
            start = p
        prev = p
    runs.append(DuoRun(side, start, prev + 1))
    return runs


def window_around(i: int, k: int, n: int, side: Side = Side.A) -> DuoRun:
    """Duos of ``S[max(1, i-k) .. min(n, i+k)]``."""
    _check_pos(i, 1, n - 1)
    if k < 1:
        raise PositionOutOfRange(f"k={k} must be >= 1")
    return DuoRun(side, max(1, i - k), min(n, i + k))


def trivial_answer(pair: RelatedPair, k: int) -> bool | None:
    """Resolve degenerate parameters: k <= 0 is YES, k > n-1 is NO."""
    if k <= 0:
        return True
    if k > pair.n - 1:
        return False
    return None


@dataclass(frozen=True)
class Instance:
    pair: RelatedPair
    k: int

    @property
    def n(self) -> int:
        return self.pair.n

"""Seeded instance generators.

Randomness comes from SplitMix64 reduced to bounded integers by rejection
sampling, so a seed gives the same instance on every platform and in any
language that implements the same few lines.
"""
from __future__ import annotations

import string
from dataclasses import dataclass

from .core import PartialMapping, RelatedPair, count_preserved, validate_related
from .errors import SpecInfeasible

_TWO64 = 1 << 64
_MASK = _TWO64 - 1


@dataclass(frozen=True)
class GenSpec:
    n: int
    sigma: int
    seed: int = 0
    blocks: int = 0
    block_len: int = 0

    def __post_init__(self):
        if self.n < 1 or self.sigma < 1:
            raise SpecInfeasible("need n >= 1 and sigma >= 1")
        if self.blocks < 0 or self.block_len < 0:
            raise SpecInfeasible("planted sizes must be non-negative")
        if self.blocks * self.block_len > self.n:
            raise SpecInfeasible(
                f"{self.blocks} blocks of length {self.block_len} exceed n={self.n}"
            )


@dataclass(frozen=True)
class Generated:
    pair: RelatedPair
    spec: GenSpec
    witness: PartialMapping | None = None
    planted_duos: int = 0


class _Stream:
    """SplitMix64."""

    def __init__(self, seed: int):
        self._state = seed & _MASK

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        """Uniform integer in ``[0, bound)``."""
        limit = _TWO64 - _TWO64 % bound
        while True:
            x = self.next_u64()
            if x < limit:
                return x % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]


def symbol_names(sigma: int) -> list[str]:
    if sigma <= 26:
        return list(string.ascii_lowercase[:sigma])
    return [f"s{i}" for i in range(sigma)]


def _alphabet(a: list[str], names: list[str]) -> list[str]:
    rank = {name: i for i, name in enumerate(names)}
    return sorted(set(a), key=rank.__getitem__)


def gen_random(spec: GenSpec) -> Generated:
    rng = _Stream(spec.seed)
    names = symbol_names(spec.sigma)
    a = [names[rng.below(spec.sigma)] for _ in range(spec.n)]
    b = list(a)
    rng.shuffle(b)
    return Generated(validate_related(a, b, symbols=_alphabet(a, names)), spec)


def gen_planted(spec: GenSpec) -> Generated:
    """A = b distinct blocks of length L then filler; B reorders whole units.

    Each block stays contiguous in B, so the returned total mapping
    preserves at least b*(L-1) duos.
    """
    b, length = spec.blocks, spec.block_len
    if b == 0 or length == 0:
        return gen_random(spec)
    if spec.sigma**length < b:
        raise SpecInfeasible(f"cannot draw {b} distinct blocks of length {length}")
    rng = _Stream(spec.seed)
    names = symbol_names(spec.sigma)
    blocks: list[tuple[str, ...]] = []
    while len(blocks) < b:
        word = tuple(names[rng.below(spec.sigma)] for _ in range(length))
        if word not in blocks:
            blocks.append(word)
    filler = [names[rng.below(spec.sigma)] for _ in range(spec.n - b * length)]
    units: list[tuple[int, list[str]]] = []
    start = 1
    for word in blocks:
        units.append((start, list(word)))
        start += length
    for tok in filler:
        units.append((start, [tok]))
        start += 1
    a = [tok for _, word in units for tok in word]
    rng.shuffle(units)
    b_str, pairs, pos = [], [], 1
    for src, word in units:
        for d, tok in enumerate(word):
            b_str.append(tok)
            pairs.append((src + d, pos))
            pos += 1
    pair = validate_related(a, b_str, symbols=_alphabet(a, names))
    witness = PartialMapping.from_pairs(pairs)
    planted = b * (length - 1)
    assert count_preserved(pair, witness) >= planted
    return Generated(pair, spec, witness, planted)


def generate(spec: GenSpec) -> Generated:
    return gen_planted(spec) if spec.blocks else gen_random(spec)

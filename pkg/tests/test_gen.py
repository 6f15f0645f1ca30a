import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxduo.core import Side, count_preserved, validate_related
from maxduo.errors import SpecInfeasible
from maxduo.gen import GenSpec, _Stream, gen_planted, gen_random, generate, symbol_names
from maxduo.oracle import exact_max_duo


def toks(g):
    return g.pair.tokens(Side.A), g.pair.tokens(Side.B)


def test_single_symbol():
    for seed in (0, 5, 99):
        assert toks(gen_random(GenSpec(1, 1, seed))) == (["a"], ["a"])


def test_deterministic():
    spec = GenSpec(20, 3, 11)
    assert gen_random(spec).pair == gen_random(spec).pair
    assert gen_random(GenSpec(20, 3, 12)).pair != gen_random(spec).pair


# published SplitMix64 outputs for seed 1234567
SPLITMIX_REF = [
    6457827717110365317,
    3203168211198807973,
    9817491932198370423,
    4593380528125082431,
    16408922859458223821,
]


def test_splitmix_reference_vector():
    s = _Stream(1234567)
    assert [s.next_u64() for _ in range(5)] == SPLITMIX_REF
    s = _Stream(1234567)
    # rejection never triggers for these values, so bounded draws are plain residues
    assert [s.below(1000) for _ in range(5)] == [v % 1000 for v in SPLITMIX_REF]


def test_frozen_instance():
    # n=8, sigma=2, seed=7: A from 8 draws, then a Fisher-Yates pass over a copy
    assert toks(gen_random(GenSpec(8, 2, 7))) == (
        list("baababaa"),
        list("baaababa"),
    )


def test_related():
    g = gen_random(GenSpec(8, 2, 7))
    validate_related(*toks(g))


def test_symbol_names():
    assert symbol_names(3) == ["a", "b", "c"]
    assert symbol_names(30)[:2] == ["s0", "s1"]


def test_planted_examples():
    g = gen_planted(GenSpec(6, 3, 1, 1, 6))
    a, b = toks(g)
    assert a == b and exact_max_duo(g.pair).opt == 5
    g = gen_planted(GenSpec(8, 2, 4, 2, 3))
    assert g.planted_duos == 4
    assert count_preserved(g.pair, g.witness) >= 4
    assert exact_max_duo(g.pair).opt >= 4
    plain = generate(GenSpec(8, 2, 4))
    assert plain.witness is None and plain.pair == gen_random(GenSpec(8, 2, 4)).pair


def test_infeasible():
    with pytest.raises(SpecInfeasible):
        GenSpec(5, 2, 0, 2, 3)
    with pytest.raises(SpecInfeasible):
        gen_planted(GenSpec(9, 2, 0, 3, 1))
    with pytest.raises(SpecInfeasible):
        GenSpec(0, 2)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 40), st.integers(1, 6), st.integers(0, 2**40), st.integers(0, 4), st.integers(1, 4))
def test_planted_properties(n, sigma, seed, b, length):
    if b * length > n or sigma**length < b:
        return
    g = generate(GenSpec(n, sigma, seed, b, length))
    validate_related(*toks(g))
    if b:
        assert count_preserved(g.pair, g.witness) >= b * (length - 1)
        assert len(g.witness) == n


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 200), st.integers(1, 2**63))
def test_below_in_range(bound, seed):
    s = _Stream(seed)
    assert all(0 <= s.below(bound) < bound for _ in range(20))

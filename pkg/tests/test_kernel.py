from hypothesis import given, settings
from hypothesis import strategies as st

from maxduo.core import Answer, Side, validate_related
from maxduo.duograph import build_duo_graph, maximum_matching
from maxduo.kernel import (
    CANDIDATE_CONSTANT,
    KERNEL_CONSTANT,
    CandidateSets,
    ExtendedSymbol,
    Tag,
    common_block_check,
    confinement_violations,
    decide_kernel,
    kernelize,
    phase2_build,
    rule1,
    rule2,
    rule3,
    trivial_kernel,
    unmatched_conflicts,
)
from maxduo.oracle import exact_decide

from test_core import related_pairs


def oracle(pair, k):
    return exact_decide(pair, k, limit=None)


def test_common_block_check():
    assert common_block_check(validate_related("abc", "abc"), 2) == (1, 1)
    assert common_block_check(validate_related("ab", "ba"), 1) is None
    worked = validate_related("abcabbc", "acbbcab")
    # "bcab" is common, so the worked pair is settled at k = 3
    assert common_block_check(worked, 3) == (2, 4)
    assert common_block_check(worked, 4) is None


def test_rule1_examples():
    res, m = rule1(validate_related("ab", "ba"), 1)
    assert res is Answer.NO and len(m) == 0
    res, _ = rule1(validate_related("ab", "ab"), 1)
    assert res.c_a == {1: Tag.RULE1} and res.c_b == {1: Tag.RULE1}
    res, m = rule1(validate_related("abcde", "abcde"), 1)
    assert res is Answer.YES and len(m) == 4


def test_rule2_examples():
    cs = CandidateSets({1: Tag.RULE1}, {})
    assert rule2(validate_related("ab", "ab"), 1, cs).c_a == {1: Tag.RULE1}
    pair = validate_related("xaby", "yabx")
    out = rule2(pair, 1, CandidateSets({2: Tag.RULE1}, {}))
    # the window S[1..3] holds duos 1 and 2
    assert out.c_a == {1: Tag.RULE2, 2: Tag.RULE1}
    assert rule2(pair, 1, CandidateSets()).sizes() == (0, 0)


def test_rule3_examples():
    cs = CandidateSets({1: Tag.RULE1}, {1: Tag.RULE1})
    assert rule3(validate_related("ab", "ab"), 1, cs).c_b == {1: Tag.RULE1}
    out = rule3(validate_related("aabb", "abab"), 1, CandidateSets({2: Tag.RULE1}, {}))
    assert out.c_b == {1: Tag.RULE3, 3: Tag.RULE3}
    out = rule3(validate_related("abba", "baab"), 1, CandidateSets({1: Tag.RULE1}, {}))
    assert out.c_b == {3: Tag.RULE3}
    out = rule3(validate_related("abc", "cba"), 1, CandidateSets({1: Tag.RULE1}, {}))
    assert out.c_b == {}


def test_phase2_small():
    pair = validate_related("ab", "ab")
    out = phase2_build(pair, 1, CandidateSets({1: Tag.RULE1}, {1: Tag.RULE1}))
    assert [str(t) for t in out.pair.tokens(Side.A)] == ["a", "b", "e_A_1", "e_B_1"]
    assert [str(t) for t in out.pair.tokens(Side.B)] == ["a", "b", "e_B_1", "e_A_1"]
    assert out.stats["pad_pairs"] == 0
    assert oracle(out.pair, 1) == oracle(pair, 1)


def test_phase2_pads():
    # candidate runs "aab" on A and "ab" on B leave one extra 'a' on A
    pair = validate_related("aabx", "xaba")
    out = phase2_build(pair, 1, CandidateSets({1: Tag.RULE1, 2: Tag.RULE1}, {2: Tag.RULE1}))
    a = [str(t) for t in out.pair.tokens(Side.A)]
    b = [str(t) for t in out.pair.tokens(Side.B)]
    assert a == ["a", "a", "b", "e_A_1", "e_B_1", "g_a"]
    assert b == ["a", "b", "e_B_1", "e_A_1", "g_a", "a"]
    assert out.stats["pad_pairs"] == 1
    assert str(ExtendedSymbol("sep", "A", 3)) == "e_A_3"


def test_phase2_full_cover_keeps_answers():
    pair = validate_related("abcabbc", "acbbcab")
    full = CandidateSets(
        {i: Tag.RULE1 for i in range(1, 7)}, {j: Tag.RULE1 for j in range(1, 7)}
    )
    out = phase2_build(pair, 3, full)
    assert out.length == 9
    for k in range(1, 7):
        assert oracle(out.pair, k) == oracle(pair, k)


def test_kernelize_examples():
    out = kernelize(validate_related("ab", "ba"), 1)
    assert out.kind == "trivial-no"
    assert out.pair.tokens(Side.A) == ["a", "b"] and out.pair.tokens(Side.B) == ["b", "a"]
    out = kernelize(validate_related("aaaa", "aaaa"), 2)
    assert decide_kernel(out, oracle) is True
    worked = validate_related("abcabbc", "acbbcab")
    out = kernelize(worked, 3)
    assert out.kind == "trivial-yes" and out.stats["stage"] == "common-block"
    out = kernelize(worked, 4)
    assert out.kind == "reduced"
    assert " ".join(map(str, out.pair.tokens(Side.A))) == "a b c a b b c e_A_1 e_B_1"
    assert " ".join(map(str, out.pair.tokens(Side.B))) == "a c b b c a b e_B_1 e_A_1"
    assert decide_kernel(out, oracle) is False
    assert confinement_violations(out) == []


def test_trivial_kernels_decide_correctly():
    for k in range(1, 5):
        assert oracle(trivial_kernel(True, k).pair, k)
        assert not oracle(trivial_kernel(False, k).pair, k)


def test_kernelize_parameter_edges():
    pair = validate_related("abc", "cab")
    assert kernelize(pair, 0).kind == "trivial-yes"
    assert kernelize(pair, 3).kind == "trivial-no"


def test_constants_cover_the_size_argument():
    # |C_S| <= 32 k^6 and |A'| <= 7|C_A| + 5|C_B|
    assert CANDIDATE_CONSTANT * 12 == KERNEL_CONSTANT


@settings(max_examples=300, deadline=None)
@given(related_pairs(max_n=12, max_sigma=5), st.integers(1, 4))
def test_kernel_preserves_answers(pair, k):
    out = kernelize(pair, k)
    assert decide_kernel(out, oracle) == oracle(pair, k)
    assert confinement_violations(out) == []
    if out.kind == "reduced":
        s = out.stats
        assert max(s["rule1_sizes"]) < 4 * k
        assert max(s["rule2_growth"]) <= 8 * k * k
        assert max(s["rule3_sizes"]) <= CANDIDATE_CONSTANT * k**6
        assert out.length <= KERNEL_CONSTANT * k**6
        # the kernel is related and every source position is consistent
        for side in Side:
            src = out.source(side)
            toks = out.pair.tokens(side)
            orig = pair.tokens(side)
            for pos, x in enumerate(src):
                if x:
                    assert toks[pos] == orig[x - 1]


@settings(max_examples=200, deadline=None)
@given(related_pairs(max_n=12, max_sigma=4))
def test_maximum_matching_leaves_no_unmatched_pair(pair):
    m = maximum_matching(build_duo_graph(pair))
    assert unmatched_conflicts(pair, m) == []

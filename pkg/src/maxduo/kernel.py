"""Polynomial kernel: candidate duo sets (rules 1-3) and the reduced instance.

Size constants, with M the maximum duo matching and 2 <= k:

* rule 1 keeps |M| < 4k duos per side, each rule-2 window holds at most 2k
  duos, so |C_S| < 8k^2 after rule 2;
* rule 3 looks at fewer than 8k^3 sub-runs; each adds at most 3k^3 duos
  (k^2+1 disjoint occurrences of <= k duos, or occurrences all overlapping
  one of <= k^2 greedy picks, each pick covering a 3k-duo span);
* hence |C_S| <= 32 k^6, and |A'| <= 7|C_A| + 5|C_B| <= 384 k^6.
"""
from __future__ import annotations

import time
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Hashable

from .core import (
    Answer,
    Duo,
    DuoRun,
    RelatedPair,
    Side,
    maximal_runs,
    trivial_answer,
    validate_related,
    window_around,
)
from .duograph import DuoGraph, Matching, build_duo_graph, maximum_matching
from .errors import InternalImbalance

CANDIDATE_CONSTANT = 32
KERNEL_CONSTANT = 384


class Tag(str, Enum):
    RULE1 = "rule1"
    RULE2 = "rule2"
    RULE3 = "rule3"


@dataclass(frozen=True)
class ExtendedSymbol:
    """Separator ``e_{S,i}`` or pad ``g_a`` added to the alphabet by the kernel."""

    kind: str  # "sep" or "pad"
    side: str = ""
    index: int = 0
    base: Hashable = None

    def __str__(self) -> str:
        if self.kind == "sep":
            return f"e_{self.side}_{self.index}"
        return f"g_{self.base}"


@dataclass
class CandidateSets:
    """Duo positions per side with the rule that first added each one."""

    c_a: dict[int, Tag] = field(default_factory=dict)
    c_b: dict[int, Tag] = field(default_factory=dict)

    def of(self, side: Side) -> dict[int, Tag]:
        return self.c_a if side is Side.A else self.c_b

    def duos(self, side: Side) -> set[Duo]:
        return {Duo(side, i) for i in self.of(side)}

    def copy(self) -> "CandidateSets":
        return CandidateSets(dict(self.c_a), dict(self.c_b))

    def sizes(self) -> tuple[int, int]:
        return len(self.c_a), len(self.c_b)

    def tagged(self, side: Side, tag: Tag) -> set[int]:
        return {i for i, t in self.of(side).items() if t is tag}


def common_block_check(pair: RelatedPair, k: int) -> tuple[int, int] | None:
    """1-based starts of a common substring of length k+1, or None.

    Such a substring is k consecutive duos preservable in one block, which
    settles the instance as YES.
    """
    width = k + 1
    n = pair.n
    if width > n:
        return None
    seen: dict[tuple[int, ...], int] = {}
    a, b = pair.a, pair.b
    for s in range(n - width + 1):
        seen.setdefault(a[s : s + width], s + 1)
    for t in range(n - width + 1):
        s = seen.get(b[t : t + width])
        if s is not None:
            return s, t + 1
    return None


def rule1(
    pair: RelatedPair, k: int, g: DuoGraph | None = None
) -> tuple[CandidateSets | Answer, Matching]:
    """Matched duos as candidates; shortcut NO when |M| < k, YES when |M| >= 4k."""
    g = build_duo_graph(pair) if g is None else g
    m = maximum_matching(g)
    if len(m) < k:
        return Answer.NO, m
    if len(m) >= 4 * k:
        return Answer.YES, m
    cs = CandidateSets(
        {i: Tag.RULE1 for i, _ in m.edges}, {j: Tag.RULE1 for _, j in m.edges}
    )
    return cs, m


def rule2(pair: RelatedPair, k: int, cs: CandidateSets) -> CandidateSets:
    out = cs.copy()
    for side in Side:
        target = out.of(side)
        for i in sorted(cs.tagged(side, Tag.RULE1)):
            win = window_around(i, k, pair.n, side)
            for d in win.duo_positions():
                target.setdefault(d, Tag.RULE2)
    return out


def _greedy_disjoint(starts: list[int], length: int) -> list[int]:
    chosen, last_end = [], 0
    for t in starts:
        if t > last_end:
            chosen.append(t)
            last_end = t + length
    return chosen


def rule3(pair: RelatedPair, k: int, cs: CandidateSets) -> CandidateSets:
    """Copy short candidate runs of one side onto their occurrences in the other.

    Every contiguous sub-run of 1..k duos inside the current candidate runs
    is considered (only its string matters). If its occurrences in the other
    string contain k^2+1 position-disjoint ones (greedy leftmost), the duos
    of those k^2+1 are added; otherwise the duos of all occurrences are.
    """
    out = cs.copy()
    cap = k * k + 1
    for side in Side:
        src, dst = pair.string(side), pair.string(side.other)
        target = out.of(side.other)
        wanted: set[tuple[int, ...]] = set()
        for run in maximal_runs(cs.duos(side)):
            for p in range(run.p, run.q):
                for length in range(1, min(k, run.q - p) + 1):
                    wanted.add(src[p - 1 : p + length])
        by_len: dict[int, dict[tuple[int, ...], list[int]]] = {}
        for word in sorted(wanted):
            width = len(word)
            index = by_len.get(width)
            if index is None:
                index = defaultdict(list)
                for t in range(len(dst) - width + 1):
                    index[dst[t : t + width]].append(t + 1)
                by_len[width] = index
            occ = index.get(word, [])
            if not occ:
                continue
            chosen = _greedy_disjoint(occ, width - 1)
            picks = chosen[:cap] if len(chosen) >= cap else occ
            for t in picks:
                for d in range(t, t + width - 1):
                    target.setdefault(d, Tag.RULE3)
    return out


@dataclass
class KernelOutput:
    kind: str  # "reduced", "trivial-yes" or "trivial-no"
    pair: RelatedPair
    k: int
    src_a: tuple[int, ...] = ()
    src_b: tuple[int, ...] = ()
    candidates: CandidateSets | None = None
    runs_a: list[DuoRun] = field(default_factory=list)
    runs_b: list[DuoRun] = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    @property
    def length(self) -> int:
        return self.pair.n

    @property
    def trivial(self) -> bool:
        return self.kind != "reduced"

    def source(self, side: Side) -> tuple[int, ...]:
        return self.src_a if side is Side.A else self.src_b


def phase2_build(pair: RelatedPair, k: int, cs: CandidateSets) -> KernelOutput:
    """Reduced instance over the extended alphabet.

    A' = t_{1,A} e_{A,1} ... t_{qA,A} e_{A,qA} e_{B,1} ... e_{B,qB} pads,
    B' symmetric; pads restore equal symbol counts, appended per symbol in
    interning order: (g_a)^d on the side with more occurrences of ``a``
    inside its runs, (g_a a)^d on the other.
    """
    runs = {side: maximal_runs(cs.duos(side)) for side in Side}
    if not runs[Side.A] or not runs[Side.B]:
        raise ValueError("phase 2 needs candidate duos on both sides")
    body: dict[Side, list] = {}
    src: dict[Side, list[int]] = {}
    counts: dict[Side, Counter] = {}
    for side in Side:
        s = pair.string(side)
        toks, origin, cnt = [], [], Counter()
        for idx, run in enumerate(runs[side], 1):
            for pos in range(run.p, run.q + 1):
                toks.append(pair.symbols[s[pos - 1]])
                origin.append(pos)
                cnt[s[pos - 1]] += 1
            toks.append(ExtendedSymbol("sep", side.value, idx))
            origin.append(0)
        body[side], src[side], counts[side] = toks, origin, cnt
    for side in Side:
        other = side.other
        for idx in range(1, len(runs[other]) + 1):
            body[side].append(ExtendedSymbol("sep", other.value, idx))
            src[side].append(0)
    pads = 0
    for code in range(len(pair.symbols)):
        d = counts[Side.A][code] - counts[Side.B][code]
        if d == 0:
            continue
        tok = pair.symbols[code]
        g = ExtendedSymbol("pad", base=tok)
        more, less = (Side.A, Side.B) if d > 0 else (Side.B, Side.A)
        for _ in range(abs(d)):
            body[more].append(g)
            src[more].append(0)
            body[less].extend((g, tok))
            src[less].extend((0, 0))
        pads += abs(d)
    try:
        kp = validate_related(body[Side.A], body[Side.B], symbols=pair.symbols)
    except Exception as exc:  # pragma: no cover - construction guarantees relatedness
        raise InternalImbalance(str(exc)) from exc
    out = KernelOutput(
        "reduced",
        kp,
        k,
        tuple(src[Side.A]),
        tuple(src[Side.B]),
        cs,
        runs[Side.A],
        runs[Side.B],
    )
    out.stats.update(
        q_a=len(runs[Side.A]),
        q_b=len(runs[Side.B]),
        pad_pairs=pads,
        kernel_len=kp.n,
    )
    return out


def trivial_kernel(answer: bool, k: int, symbols=("a", "b")) -> KernelOutput:
    """Canonical stand-ins: a^{k+1} twice for YES, ("ab", "ba") for NO."""
    if answer:
        kp = validate_related([symbols[0]] * (k + 1), [symbols[0]] * (k + 1))
        return KernelOutput("trivial-yes", kp, k)
    kp = validate_related([symbols[0], symbols[1]], [symbols[1], symbols[0]])
    return KernelOutput("trivial-no", kp, k)


def kernelize(pair: RelatedPair, k: int) -> KernelOutput:
    stats: dict = {"n": pair.n, "k": k}
    clock = time.perf_counter

    def done(out: KernelOutput, stage: str) -> KernelOutput:
        stats["stage"] = stage
        stats.setdefault("kernel_len", out.pair.n)
        out.stats = {**stats, **out.stats}
        out.stats["kernel_len"] = out.pair.n
        out.stats["trivial"] = out.trivial
        return out

    settled = trivial_answer(pair, k)
    if settled is not None:
        return done(trivial_kernel(settled, k), "parameter")
    t0 = clock()
    hit = common_block_check(pair, k)
    stats["time_common_block_ms"] = (clock() - t0) * 1e3
    if hit is not None:
        stats["common_block_starts"] = hit
        return done(trivial_kernel(True, k), "common-block")

    t0 = clock()
    cs, m = rule1(pair, k)
    stats["time_rule1_ms"] = (clock() - t0) * 1e3
    stats["matching_size"] = len(m)
    if cs is Answer.NO:
        return done(trivial_kernel(False, k), "rule1-no")
    if cs is Answer.YES:
        return done(trivial_kernel(True, k), "rule1-yes")
    stats["rule1_sizes"] = cs.sizes()

    t0 = clock()
    cs2 = rule2(pair, k, cs)
    stats["time_rule2_ms"] = (clock() - t0) * 1e3
    stats["rule2_sizes"] = cs2.sizes()
    stats["rule2_growth"] = tuple(b - a for a, b in zip(cs.sizes(), cs2.sizes()))

    t0 = clock()
    cs3 = rule3(pair, k, cs2)
    stats["time_rule3_ms"] = (clock() - t0) * 1e3
    stats["rule3_sizes"] = cs3.sizes()

    t0 = clock()
    out = phase2_build(pair, k, cs3)
    stats["time_phase2_ms"] = (clock() - t0) * 1e3
    return done(out, "reduced")


def decide_kernel(out: KernelOutput, decide: Callable[[RelatedPair, int], bool]) -> bool:
    if out.kind == "trivial-yes":
        return True
    if out.kind == "trivial-no":
        return False
    return decide(out.pair, out.k)


def confinement_violations(out: KernelOutput) -> list[tuple[int, int]]:
    """Preservable duo pairs of (A', B') that do not come from C_A x C_B."""
    if out.kind != "reduced":
        return []
    bad = []
    cand = out.candidates
    for i, j in build_duo_graph(out.pair).edges():
        ok = True
        for side, pos in ((Side.A, i), (Side.B, j)):
            src = out.source(side)
            x, y = src[pos - 1], src[pos]
            if not (x and y == x + 1 and x in cand.of(side)):
                ok = False
        if not ok:
            bad.append((i, j))
    return bad


def unmatched_conflicts(pair: RelatedPair, m: Matching) -> list[tuple[int, int]]:
    """Duo strings left unmatched on both sides (must be empty for a maximum M)."""
    left_a = Counter(pair.duo_key(Side.A, i) for i in range(1, pair.n))
    left_b = Counter(pair.duo_key(Side.B, j) for j in range(1, pair.n))
    used_a = Counter(pair.duo_key(Side.A, i) for i in m.left())
    used_b = Counter(pair.duo_key(Side.B, j) for j in m.right())
    return sorted(
        key
        for key in left_a.keys() & left_b.keys()
        if left_a[key] > used_a[key] and left_b[key] > used_b[key]
    )

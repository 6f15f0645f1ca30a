"""Command-line interface.

Instance files hold two non-comment lines, A then B. In token mode (the
default) symbols are whitespace-separated tokens; with ``--chars`` every
character of a line is a symbol. Blank lines and lines starting with ``#``
are ignored.

``solve`` prints one JSON object and exits 0 for yes, 1 for no. ``bench``
prints CSV. Any error exits 2 with a JSON error object on standard error;
standard output then stays empty.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
import time
from pathlib import Path
from typing import Sequence

from . import __version__
from .colorcoding import Mode, solve
from .colorcoding.solve import DEFAULT_BUDGET, STRATEGIES
from .core import Answer, PartialMapping, RelatedPair, Side, check_mapping, count_preserved, validate_related
from .duograph import matching_bound_decide
from .errors import MaxDuoError, ParseError
from .gen import GenSpec, generate
from .kernel import CANDIDATE_CONSTANT, KERNEL_CONSTANT, kernelize
from .oracle import DEFAULT_LIMIT, exact_max_duo

EXIT_YES, EXIT_NO, EXIT_ERROR = 0, 1, 2
ALGOS = ("oracle", "cc-strict", "cc-paper")
BENCH_ALGOS = ALGOS + ("matching", "kernel")
CSV_COLUMNS = (
    "algo", "mode", "n", "k", "seed", "answer",
    "wall_ms", "table_entries", "matching_size", "kernel_len",
)


# -- instance files ---------------------------------------------------------

def parse_instance(text: str, chars: bool = False) -> RelatedPair:
    lines = [
        ln.rstrip("\r\n") for ln in text.splitlines()
        if ln.strip() and not ln.lstrip().startswith("#")
    ]
    if len(lines) != 2:
        raise ParseError(f"expected 2 instance lines (A, B), found {len(lines)}")
    if chars:
        a, b = (list(ln.strip()) for ln in lines)
    else:
        a, b = (ln.split() for ln in lines)
    return validate_related(a, b)


def read_instance(path: str | Path, chars: bool = False) -> RelatedPair:
    try:
        text = sys.stdin.read() if str(path) == "-" else Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return parse_instance(text, chars)


def render_instance(
    pair: RelatedPair, chars: bool = False, header: Sequence[str] = ()
) -> str:
    toks = {side: [str(t) for t in pair.tokens(side)] for side in Side}
    for side in Side:
        seq = toks[side]
        if chars and any(len(t) != 1 or t.isspace() for t in seq):
            raise ParseError("char mode needs single non-space characters")
        if not chars and any(not t or any(ch.isspace() for ch in t) for t in seq):
            raise ParseError("tokens must be non-empty and contain no whitespace")
        if seq[0].startswith("#"):
            raise ParseError("a line may not start with '#'")
    sep = "" if chars else " "
    out = [f"# {h}" for h in header]
    out += [sep.join(toks[Side.A]), sep.join(toks[Side.B])]
    return "\n".join(out) + "\n"


# -- records ----------------------------------------------------------------

def _witness_pairs(pair: RelatedPair, m: PartialMapping | None, k: int) -> list | None:
    if m is None:
        return None
    check_mapping(pair, m)
    got = count_preserved(pair, m)
    if got < k:
        raise MaxDuoError(f"witness preserves {got} < {k} duos")
    return [[i, j] for i, j in m]


def _emit(obj, stream=None) -> None:
    stream = stream or sys.stdout
    stream.write(json.dumps(obj, sort_keys=False) + "\n")


def run_solve(pair: RelatedPair, k: int, algo: str, **opts) -> dict:
    t0 = time.perf_counter()
    rec = {"answer": None, "k": k, "algorithm": algo, "mode": None, "witness": None,
           "error_bound": None, "stats": {"n": pair.n}}
    if algo == "oracle":
        res = exact_max_duo(pair, limit=opts.get("limit", DEFAULT_LIMIT))
        yes = res.opt >= k
        rec["answer"] = (Answer.YES if yes else Answer.NO).value
        if yes:
            rec["witness"] = _witness_pairs(pair, res.witness, k)
        rec["stats"].update(opt=res.opt, nodes=res.nodes)
    elif algo in ("cc-strict", "cc-paper"):
        mode = Mode.STRICT if algo == "cc-strict" else Mode.PAPER
        res = solve(
            pair, k,
            strategy=opts.get("strategy", "randomized"),
            mode=mode,
            trials=opts.get("trials"),
            seed=opts.get("seed", 0),
            delta=opts.get("delta", 0.01),
            family=opts.get("family"),
            budget=opts.get("budget", DEFAULT_BUDGET),
        )
        rec["mode"] = mode.value
        rec["answer"] = res.answer.value
        rec["error_bound"] = res.error_bound
        if res.witness is not None:
            rec["witness"] = _witness_pairs(pair, res.witness, k)
        if res.witness_error is not None:
            rec["witness_error"] = {
                "type": "WitnessInvalid",
                "message": str(res.witness_error),
                "reused_b_positions": res.witness_error.reused_b_positions,
            }
        rec["stats"].update(
            strategy=res.strategy,
            colours=res.colours,
            colorings_tried=res.colorings_tried,
            table_entries=res.table_entries,
            exact=res.exact,
        )
    else:
        raise ValueError(f"unknown algorithm {algo!r}")
    rec["stats"]["wall_ms"] = (time.perf_counter() - t0) * 1e3
    return rec


def matching_record(pair: RelatedPair) -> dict:
    res = matching_bound_decide(pair, 1)
    return {
        "matching_size": res.matching_size,
        "matching": [[i, j] for i, j in res.matching],
        "class_sizes": res.class_sizes,
        "num_classes": len(res.class_sizes),
        "best_preserved": res.best_preserved,
        "witness": _witness_pairs(pair, res.witness, res.best_preserved)
        if res.witness is not None and res.best_preserved else None,
    }


def kernel_stats(out) -> dict:
    stats = dict(out.stats)
    stats["kind"] = out.kind
    stats["constants"] = {"candidate": CANDIDATE_CONSTANT, "kernel": KERNEL_CONSTANT}
    stats["kernel_bound"] = KERNEL_CONSTANT * out.k**6
    return stats


# -- bench ------------------------------------------------------------------

_SWEEP = re.compile(r"^\s*k\s*=\s*(\d+)\s*(?:\.\.\s*(\d+))?\s*$")


def parse_sweep(text: str) -> list[int]:
    m = _SWEEP.match(text)
    if not m:
        raise ParseError(f"bad sweep {text!r}; expected k=A..B or k=A")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise ParseError(f"empty sweep {text!r}")
    return list(range(lo, hi + 1))


def _int_list(text: str, what: str) -> list[int]:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise ParseError(f"bad {what} list {text!r}") from exc
    if not vals:
        raise ParseError(f"empty {what} list")
    return vals


def bench_rows(
    ks: Sequence[int], ns: Sequence[int], algos: Sequence[str], reps: int = 1,
    seed: int = 0, sigma: int = 4, strategy: str = "randomized",
) -> list[dict]:
    for a in algos:
        if a not in BENCH_ALGOS:
            raise ParseError(f"unknown algorithm {a!r}")
    rows = []
    for algo in algos:
        for n in ns:
            for k in ks:
                for rep in range(reps):
                    s = seed + rep
                    pair = generate(GenSpec(n, sigma, s)).pair
                    msize = matching_bound_decide(pair, k).matching_size
                    row = dict.fromkeys(CSV_COLUMNS, "")
                    row.update(algo=algo, n=n, k=k, seed=s, matching_size=msize)
                    t0 = time.perf_counter()
                    if algo == "matching":
                        row["answer"] = matching_bound_decide(pair, k).answer.value
                    elif algo == "kernel":
                        out = kernelize(pair, k)
                        row["answer"] = {"trivial-yes": "yes", "trivial-no": "no"}.get(
                            out.kind, "unknown")
                        row["kernel_len"] = out.length
                    else:
                        rec = run_solve(pair, k, algo, strategy=strategy, seed=s)
                        row["answer"] = rec["answer"]
                        row["mode"] = rec["mode"] or ""
                        row["table_entries"] = rec["stats"].get("table_entries", "")
                    row["wall_ms"] = f"{(time.perf_counter() - t0) * 1e3:.3f}"
                    rows.append(row)
    return rows


def render_csv(rows: Sequence[dict]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()


# -- commands ---------------------------------------------------------------

def cmd_solve(args) -> int:
    if args.k < 0:
        raise ParseError("k must be non-negative")
    pair = read_instance(args.file, args.chars)
    rec = run_solve(
        pair, args.k, args.algo,
        strategy=args.strategy, trials=args.trials, seed=args.seed,
        delta=args.delta, family=args.family, budget=args.budget,
        limit=None if args.limit <= 0 else args.limit,
    )
    _emit(rec)
    return EXIT_YES if rec["answer"] == "yes" else EXIT_NO


def cmd_kernelize(args) -> int:
    if args.k < 0:
        raise ParseError("k must be non-negative")
    pair = read_instance(args.file, args.chars)
    out = kernelize(pair, args.k)
    stats = kernel_stats(out)
    text = render_instance(out.pair, header=[f"kernel kind={out.kind} k={args.k}"])
    if args.output:
        path = Path(args.output)
        path.write_text(text)
        Path(str(path) + ".stats.json").write_text(json.dumps(stats, indent=2) + "\n")
        _emit(stats)
    else:
        a, b = text.splitlines()[-2:]
        _emit({**stats, "kernel": {"a": a, "b": b}})
    return EXIT_YES


def cmd_matching(args) -> int:
    pair = read_instance(args.file, args.chars)
    _emit(matching_record(pair))
    return EXIT_YES


def cmd_gen(args) -> int:
    blocks = length = 0
    if args.planted:
        vals = _int_list(args.planted, "planted")
        if len(vals) != 2:
            raise ParseError("--planted expects b,L")
        blocks, length = vals
    g = generate(GenSpec(args.n, args.sigma, args.seed, blocks, length))
    header = [f"gen n={args.n} sigma={args.sigma} seed={args.seed}"]
    if g.witness is not None:
        header.append(f"planted b={blocks} L={length} planted_witness_duos={g.planted_duos}")
        header.append("witness " + " ".join(f"{i}:{j}" for i, j in g.witness))
    sys.stdout.write(render_instance(g.pair, chars=args.chars, header=header))
    return EXIT_YES


def cmd_bench(args) -> int:
    rows = bench_rows(
        parse_sweep(args.sweep),
        _int_list(args.n, "n"),
        [a.strip() for a in args.algo.split(",") if a.strip()],
        reps=args.reps, seed=args.seed, sigma=args.sigma, strategy=args.strategy,
    )
    sys.stdout.write(render_csv(rows))
    return EXIT_YES


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse would exit with status 2 anyway
        raise ParseError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="maxduo", description="Maximum duo preservation toolkit")
    p.add_argument("--version", action="version", version=f"maxduo {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="decide whether k duos can be preserved")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--algo", choices=ALGOS, default="cc-strict")
    s.add_argument("--strategy", choices=STRATEGIES, default="randomized")
    s.add_argument("--trials", type=int)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--delta", type=float, default=0.01)
    s.add_argument("--family", help="colouring family file (family-file strategy)")
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    s.add_argument("--limit", type=int, default=DEFAULT_LIMIT,
                   help="largest n the oracle accepts; 0 removes the cap")
    s.add_argument("--chars", action="store_true")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("kernelize", help="reduce to an O(k^6) kernel")
    s.add_argument("file")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("-o", "--output")
    s.add_argument("--chars", action="store_true")
    s.set_defaults(func=cmd_kernelize)

    s = sub.add_parser("matching", help="duo-graph matching and its split")
    s.add_argument("file")
    s.add_argument("--chars", action="store_true")
    s.set_defaults(func=cmd_matching)

    s = sub.add_parser("gen", help="print a seeded random instance")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--sigma", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--planted", help="b,L")
    s.add_argument("--chars", action="store_true")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("bench", help="CSV timing sweep")
    s.add_argument("--sweep", required=True, help="k=A..B")
    s.add_argument("--n", required=True, help="comma-separated lengths")
    s.add_argument("--algo", default="cc-strict", help="comma-separated algorithms")
    s.add_argument("--reps", type=int, default=1)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--sigma", type=int, default=4)
    s.add_argument("--strategy", choices=STRATEGIES[:2], default="randomized")
    s.set_defaults(func=cmd_bench)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except (MaxDuoError, ValueError) as exc:
        _emit({"error": type(exc).__name__, "message": str(exc)}, sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())

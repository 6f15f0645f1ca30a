import csv
import io
import json
import shutil
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from maxduo.cli import (
    CSV_COLUMNS,
    main,
    parse_instance,
    parse_sweep,
    render_instance,
)
from maxduo.core import PartialMapping, Side, count_preserved, validate_related
from maxduo.errors import ParseError
from maxduo.kernel import KERNEL_CONSTANT


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        p = tmp_path / name
        p.write_text(text)
        return str(p)

    return _write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_parse_modes():
    p = parse_instance("# comment\nab ba c\n\nc ab ba\n")
    assert p.tokens(Side.A) == ["ab", "ba", "c"]
    p = parse_instance("abc\n#x\ncab\n", chars=True)
    assert p.tokens(Side.B) == list("cab")
    with pytest.raises(ParseError):
        parse_instance("a b\n")
    with pytest.raises(ParseError):
        parse_instance("a\nb\nc\n")


@settings(max_examples=100, deadline=None)
@given(st.lists(st.sampled_from(["a", "b", "xy", "e_A_1", "g_a"]), min_size=1, max_size=10), st.randoms())
def test_round_trip_tokens(a, rnd):
    b = list(a)
    rnd.shuffle(b)
    pair = validate_related(a, b)
    back = parse_instance(render_instance(pair, header=["h"]))
    assert back.tokens(Side.A) == a and back.tokens(Side.B) == b


@settings(max_examples=100, deadline=None)
@given(st.text(alphabet="abc#d", min_size=1, max_size=10), st.randoms())
def test_round_trip_chars(a, rnd):
    b = list(a)
    rnd.shuffle(b)
    pair = validate_related(list(a), b)
    if a[0] == "#" or b[0] == "#":
        with pytest.raises(ParseError):
            render_instance(pair, chars=True)
        return
    back = parse_instance(render_instance(pair, chars=True), chars=True)
    assert back.tokens(Side.A) == list(a) and back.tokens(Side.B) == b


def test_render_rejects_multichar_in_char_mode():
    with pytest.raises(ParseError):
        render_instance(validate_related(["ab"], ["ab"]), chars=True)


def test_solve_oracle(capsys, write):
    code, out, err = run(capsys, "solve", write("ab.txt", "a b\na b\n"), "--k", "1", "--algo", "oracle")
    rec = json.loads(out)
    assert code == 0 and err == ""
    assert rec["answer"] == "yes" and rec["witness"] == [[1, 1], [2, 2]]
    fig = write("worked.txt", "abcabbc\nacbbcab\n")
    code, out, _ = run(capsys, "solve", fig, "--chars", "--k", "3", "--algo", "oracle")
    assert code == 0 and json.loads(out)["answer"] == "yes"
    code, out, _ = run(capsys, "solve", fig, "--chars", "--k", "4", "--algo", "oracle")
    assert code == 1 and json.loads(out)["answer"] == "no"


def test_solve_gap_instance(capsys, write):
    f = write("gap.txt", "abba\nabab\n")
    code, out, _ = run(capsys, "solve", f, "--chars", "--k", "2", "--algo", "cc-paper", "--strategy", "exhaustive")
    rec = json.loads(out)
    assert code == 0 and rec["answer"] == "yes" and rec["witness"] is None
    assert rec["witness_error"]["type"] == "WitnessInvalid"
    assert rec["witness_error"]["reused_b_positions"]
    code, out, _ = run(capsys, "solve", f, "--chars", "--k", "2", "--algo", "cc-strict", "--strategy", "exhaustive")
    assert code == 1 and json.loads(out)["answer"] == "no"


def test_solve_witness_revalidates(capsys, write):
    f = write("worked.txt", "abcabbc\nacbbcab\n")
    pair = validate_related("abcabbc", "acbbcab")
    for algo in ("oracle", "cc-strict"):
        code, out, _ = run(capsys, "solve", f, "--chars", "--k", "3", "--algo", algo)
        rec = json.loads(out)
        m = PartialMapping.from_pairs(map(tuple, rec["witness"]))
        assert count_preserved(pair, m) >= 3


def test_solve_errors(capsys, write, tmp_path):
    code, out, err = run(capsys, "solve", str(tmp_path / "missing"), "--k", "1")
    assert code == 2 and out == "" and json.loads(err)["error"] == "ParseError"
    f = write("bad.txt", "a b\na a\n")
    code, out, err = run(capsys, "solve", f, "--k", "1")
    assert code == 2 and json.loads(err)["error"] == "NotPermutation"
    big = write("big.txt", "a " * 13 + "\n" + "a " * 13 + "\n")
    code, out, err = run(capsys, "solve", big, "--k", "1", "--algo", "oracle")
    assert code == 2 and json.loads(err)["error"] == "InstanceTooLarge"
    code, out, err = run(capsys, "solve", big, "--k", "2", "--algo", "cc-strict",
                         "--strategy", "exhaustive", "--budget", "3")
    assert code == 2 and json.loads(err)["error"] == "BudgetExceeded"
    code, out, err = run(capsys, "solve", f)
    assert code == 2 and out == ""


def test_kernelize_cmd(capsys, write, tmp_path):
    code, out, _ = run(capsys, "kernelize", write("ba.txt", "a b\nb a\n"), "--k", "1")
    rec = json.loads(out)
    assert code == 0 and rec["kind"] == "trivial-no"
    assert rec["kernel"] == {"a": "a b", "b": "b a"}
    fig = write("worked.txt", "abcabbc\nacbbcab\n")
    dest = tmp_path / "k.txt"
    code, out, _ = run(capsys, "kernelize", fig, "--chars", "--k", "4", "-o", str(dest))
    stats = json.loads(out)
    assert stats["kind"] == "reduced" and stats["kernel_len"] == 9
    assert json.loads((tmp_path / "k.txt.stats.json").read_text()) == stats
    assert dest.read_text().splitlines()[1:] == [
        "a b c a b b c e_A_1 e_B_1",
        "a c b b c a b e_B_1 e_A_1",
    ]
    code, out, _ = run(capsys, "solve", str(dest), "--k", "4", "--algo", "oracle")
    assert code == 1


def test_matching_cmd(capsys, write):
    _, out, _ = run(capsys, "matching", write("worked.txt", "abcabbc\nacbbcab\n"), "--chars")
    rec = json.loads(out)
    assert rec["matching_size"] == 4 and rec["class_sizes"] == [2, 2]
    assert rec["best_preserved"] == 3
    _, out, _ = run(capsys, "matching", write("ba.txt", "a b\nb a\n"))
    assert json.loads(out)["matching_size"] == 0
    _, out, _ = run(capsys, "matching", write("ab.txt", "a b\na b\n"))
    rec = json.loads(out)
    assert (rec["matching_size"], rec["num_classes"], rec["best_preserved"]) == (1, 1, 1)


def test_gen_cmd(capsys):
    _, out, _ = run(capsys, "gen", "--n", "1", "--sigma", "1")
    assert [ln for ln in out.splitlines() if not ln.startswith("#")] == ["a", "a"]
    _, first, _ = run(capsys, "gen", "--n", "12", "--sigma", "3", "--seed", "4")
    _, second, _ = run(capsys, "gen", "--n", "12", "--sigma", "3", "--seed", "4")
    assert first == second
    _, out, _ = run(capsys, "gen", "--n", "8", "--sigma", "2", "--planted", "2,3")
    assert "planted_witness_duos=4" in out
    pair = parse_instance(out)
    wline = next(ln for ln in out.splitlines() if ln.startswith("# witness"))
    m = PartialMapping.from_pairs(tuple(map(int, x.split(":"))) for x in wline.split()[2:])
    assert count_preserved(pair, m) >= 4
    code, out, err = run(capsys, "gen", "--n", "4", "--sigma", "2", "--planted", "2,3")
    assert code == 2 and json.loads(err)["error"] == "SpecInfeasible"


def test_bench_grid(capsys):
    assert parse_sweep("k=2..4") == [2, 3, 4] and parse_sweep("k=3") == [3]
    for bad in ("k=4..2", "n=1", "k=a"):
        with pytest.raises(ParseError):
            parse_sweep(bad)
    _, out, _ = run(capsys, "bench", "--sweep", "k=2", "--n", "8")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert out.splitlines()[0] == ",".join(CSV_COLUMNS) and len(rows) == 1
    _, out, _ = run(capsys, "bench", "--sweep", "k=2..4", "--n", "8,10",
                    "--algo", "cc-strict,kernel,matching")
    rows = list(csv.DictReader(io.StringIO(out)))
    assert len(rows) == 18
    assert [r["algo"] for r in rows] == ["cc-strict"] * 6 + ["kernel"] * 6 + ["matching"] * 6
    for r in rows:
        if r["algo"] == "kernel":
            assert int(r["kernel_len"]) <= KERNEL_CONSTANT * int(r["k"]) ** 6
    code, _, err = run(capsys, "bench", "--sweep", "k=1", "--n", "5", "--algo", "magic")
    assert code == 2


@pytest.mark.skipif(shutil.which("maxduo") is None, reason="console script not installed")
def test_console_script(tmp_path):
    f = tmp_path / "ab.txt"
    f.write_text("a b\na b\n")
    proc = subprocess.run(["maxduo", "solve", str(f), "--k", "1", "--algo", "oracle"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["answer"] == "yes"
    proc = subprocess.run([sys.executable, "-m", "maxduo.cli", "matching", str(f)],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout)["matching_size"] == 1

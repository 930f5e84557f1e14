"""End-to-end checks of the command-line front end."""

import csv
import io
import json
import shutil
import subprocess
import sys

import pytest

from dnfenum.cli import ALGOS, generate, main
from dnfenum.core import bits_from_mask, brute_force_models, mask_from_bits, parse_dnf
from dnfenum.setunion import SetFamily

EXAMPLE = "p dnf 3 2\n1 2 0\n-3 0\n"  # (x1 & x2) | ~x3, five models
EXAMPLE_MODELS = {"110", "111", "000", "010", "100"}

STAT_KEYS = {
    "total_steps",
    "n_models",
    "max_delay_steps",
    "avg_delay_steps",
    "precompute_steps",
    "wall_ns",
    "peak_aux_memory_estimate",
}


@pytest.fixture
def example_file(tmp_path):
    f = tmp_path / "example.dnf"
    f.write_text(EXAMPLE)
    return str(f)


def replay_flips(n: int, text: str) -> list[str]:
    """Rebuild the bits stream from a flips stream."""
    lines = text.splitlines()
    out = [lines[0]]
    mask = mask_from_bits(lines[0])
    for line in lines[1:]:
        for pos in map(int, line.split()):
            mask ^= 1 << (n - pos)
        out.append(bits_from_mask(mask, n))
    return out


def test_count_on_example(example_file, capsys):
    assert main(["--algo", "flashlight", "--count", example_file]) == 0
    assert capsys.readouterr().out == "5\n"


def test_bits_stream_is_the_model_set(example_file, capsys):
    assert main(["--algo", "union-ordered", example_file]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert set(lines) == EXAMPLE_MODELS
    assert lines == sorted(lines)  # this algorithm promises ascending order


@pytest.mark.parametrize("algo", [a for a in ALGOS if a not in ("term-gray", "setunion")])
def test_every_dnf_algorithm_passes_its_oracle(example_file, algo, capsys):
    argv = ["--algo", algo, "--check-oracle", example_file]
    if algo == "kdnf":
        argv += ["--k", "2"]
    assert main(argv) == 0
    capsys.readouterr()


def test_avg_slow_mode(example_file, capsys):
    assert main(["--algo", "avg", "--mode", "t10", "--check-oracle", example_file]) == 0
    capsys.readouterr()


def test_stats_record_keys(example_file, capsys):
    assert main(["--algo", "flashlight", "--stats", "--count", example_file]) == 0
    err = capsys.readouterr().err
    rec = json.loads(err)
    assert set(rec) == STAT_KEYS
    assert rec["n_models"] == 5
    assert rec["total_steps"] == rec["precompute_steps"] + round(
        rec["avg_delay_steps"] * rec["n_models"]
    )


def test_flips_replay(example_file, capsys):
    assert main(["--algo", "flashlight", example_file]) == 0
    bits = capsys.readouterr().out
    assert main(["--algo", "flashlight", "--format", "flips", example_file]) == 0
    flips = capsys.readouterr().out
    assert replay_flips(3, flips) == bits.splitlines()


def test_term_gray_flips_one_position_per_line(tmp_path, capsys):
    f = tmp_path / "one.dnf"
    f.write_text("p dnf 4 1\n2 -3 0\n")
    assert main(["--algo", "term-gray", "--format", "flips", str(f)]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4  # two free variables
    assert all(len(line.split()) == 1 for line in lines[1:])
    d = parse_dnf(f.read_text())
    assert {mask_from_bits(b) for b in replay_flips(4, "\n".join(lines))} == set(
        brute_force_models(d)
    )


def test_limit_truncates_stream(example_file, capsys):
    assert main(["--algo", "flashlight", "--limit", "2", example_file]) == 0
    assert len(capsys.readouterr().out.splitlines()) == 2


def test_limit_zero(example_file, capsys):
    assert main(["--algo", "flashlight", "--limit", "0", example_file]) == 0
    assert capsys.readouterr().out == ""


def test_stdin_dash(monkeypatch, capsys):
    monkeypatch.setattr(sys, "stdin", io.StringIO(EXAMPLE))
    assert main(["--algo", "flashlight", "--count", "-"]) == 0
    assert capsys.readouterr().out == "5\n"


# -- usage and input errors ---------------------------------------------------


def test_unknown_algo_is_usage_error(example_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--algo", "nope", example_file])
    assert exc.value.code == 2
    capsys.readouterr()


def test_check_oracle_rejects_limit(example_file, capsys):
    with pytest.raises(SystemExit) as exc:
        main(["--algo", "flashlight", "--check-oracle", "--limit", "3", example_file])
    assert exc.value.code == 2
    capsys.readouterr()


def test_missing_file(capsys):
    assert main(["--algo", "flashlight", "/no/such/file.dnf"]) == 3
    assert "cannot read" in capsys.readouterr().err


def test_malformed_file(tmp_path, capsys):
    f = tmp_path / "bad.dnf"
    f.write_text("p dnf 2 1\n5 0\n")
    assert main(["--algo", "flashlight", str(f)]) == 3
    assert "dnfenum:" in capsys.readouterr().err


def test_setunion_rejects_dnf_file(example_file, capsys):
    assert main(["--algo", "setunion", example_file]) == 3
    capsys.readouterr()


def test_dnf_algo_rejects_sets_file(tmp_path, capsys):
    f = tmp_path / "fam.sets"
    f.write_text("p sets 3 1\n1 2 0\n")
    assert main(["--algo", "flashlight", str(f)]) == 3
    capsys.readouterr()


def test_term_gray_needs_single_term(example_file, capsys):
    assert main(["--algo", "term-gray", example_file]) == 3
    assert "exactly one term" in capsys.readouterr().err


def test_kdnf_k_below_width(example_file, capsys):
    assert main(["--algo", "kdnf", "--k", "1", example_file]) == 3
    assert "below the maximum term width" in capsys.readouterr().err


def test_monotone_rejects_mixed_polarity(tmp_path, capsys):
    f = tmp_path / "mixed.dnf"
    f.write_text("p dnf 2 2\n1 0\n-1 0\n")
    assert main(["--algo", "monotone-rs", str(f)]) == 3
    capsys.readouterr()


# -- gen ----------------------------------------------------------------------


def test_gen_monotone_round_trips(tmp_path, capsys):
    out = tmp_path / "g.dnf"
    assert main(["gen", "--kind", "monotone", "--n", "6", "--m", "5", "--seed", "7",
                 "-o", str(out)]) == 0
    d = parse_dnf(out.read_text())
    assert d.n == 6 and d.m == 5
    assert all(all(lit > 0 for lit in t) for t in d.terms)


def test_gen_is_seed_deterministic(capsys):
    argv = ["gen", "--kind", "random", "--n", "8", "--m", "6", "--seed", "3"]
    assert main(argv) == 0
    first = capsys.readouterr().out
    assert main(argv) == 0
    assert capsys.readouterr().out == first
    assert main(["gen", "--kind", "random", "--n", "8", "--m", "6", "--seed", "4"]) == 0
    assert capsys.readouterr().out != first


def test_gen_kdnf_respects_width(capsys):
    assert main(["gen", "--kind", "kdnf", "--n", "10", "--m", "12", "--k", "2"]) == 0
    d = parse_dnf(capsys.readouterr().out)
    assert max(len(t) for t in d.terms) <= 2


def test_gen_feasibility(capsys):
    # only 3 distinct positive terms exist over 2 variables
    assert main(["gen", "--kind", "monotone", "--n", "2", "--m", "4"]) == 3
    assert "exceeds the number of distinct" in capsys.readouterr().err


def test_gen_all_terms_m_is_fixed(capsys):
    assert main(["gen", "--kind", "all-terms", "--n", "2", "--m", "9"]) == 3
    capsys.readouterr()
    assert main(["gen", "--kind", "all-terms", "--n", "2"]) == 0
    d = parse_dnf(capsys.readouterr().out)
    assert d.m == 8  # one term per nonempty sign pattern


def test_gen_needs_m(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["gen", "--kind", "random", "--n", "4"])
    assert exc.value.code == 2
    capsys.readouterr()


def test_gen_sets_pipeline(tmp_path, capsys):
    fam_file = tmp_path / "fam.sets"
    assert main(["gen", "--kind", "sets", "--n", "6", "--m", "5", "--seed", "1",
                 "-o", str(fam_file)]) == 0
    assert main(["--algo", "setunion", "--check-oracle", "--count", str(fam_file)]) == 0
    out = capsys.readouterr().out
    assert int(out) >= 5


def test_generate_api_matches_kinds():
    d = generate("random", 6, 4, seed=2)
    assert d.n == 6 and d.m == 4
    fam = generate("sets", 5, 3, seed=2)
    assert isinstance(fam, SetFamily) and fam.m == 3
    with pytest.raises(ValueError):
        generate("random", 6, None)
    with pytest.raises(ValueError):
        generate("bogus", 6, 4)


# -- sweep ---------------------------------------------------------------------


def test_sweep_csv(capsys):
    assert main(["sweep", "--algo", "flashlight", "--n", "6", "--sizes", "4,8",
                 "--check-oracle"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows[0] == ["m", "n", "n_models", "avg_delay_steps", "max_delay_steps", "wall_ns"]
    assert len(rows) == 3
    assert [r[0] for r in rows[1:]] == ["4", "8"]
    assert all(int(r[2]) > 0 for r in rows[1:])


def test_sweep_header_only(capsys):
    assert main(["sweep", "--algo", "avg", "--n", "6", "--sizes", ""]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert rows == [["m", "n", "n_models", "avg_delay_steps", "max_delay_steps", "wall_ns"]]


def test_sweep_setunion_default_kind(capsys):
    assert main(["sweep", "--algo", "setunion", "--n", "5", "--sizes", "3,6",
                 "--check-oracle"]) == 0
    rows = list(csv.reader(io.StringIO(capsys.readouterr().out)))
    assert len(rows) == 3


def test_sweep_bad_sizes(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["sweep", "--algo", "avg", "--n", "6", "--sizes", "4,x"])
    assert exc.value.code == 2
    capsys.readouterr()


# -- determinism through the real executable -----------------------------------


def run_cli(args, **kw):
    exe = shutil.which("dnfenum")
    assert exe, "console script not installed"
    return subprocess.run([exe, *args], capture_output=True, text=True, **kw)


def test_repeat_runs_are_byte_identical(tmp_path):
    f = tmp_path / "inst.dnf"
    r = run_cli(["gen", "--kind", "kdnf", "--n", "14", "--m", "30", "--k", "3",
                 "-o", str(f)])
    assert r.returncode == 0, r.stderr
    runs = [run_cli(["--algo", "kdnf", "--stats", str(f)]) for _ in range(2)]
    assert all(r.returncode == 0 for r in runs)
    assert runs[0].stdout == runs[1].stdout and runs[0].stdout
    recs = [json.loads(r.stderr) for r in runs]
    assert recs[0]["total_steps"] == recs[1]["total_steps"]
    assert recs[0]["n_models"] == recs[1]["n_models"]
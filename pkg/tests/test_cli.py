import json
import shutil
from pathlib import Path

import pytest

from segstab import io
from segstab.cli import bench, format_bench, main
from segstab.exact import solve_exact
from segstab.geometry import Variant, verify

GOLDEN = Path(__file__).parent / "golden"


@pytest.fixture
def files(tmp_path):
    for name in ("e1.stab", "one_sided_seed7.stab", "gen_seed42.stab", "mono3.cnf", "cycle1.cnf"):
        shutil.copy(GOLDEN / name, tmp_path / name)
    return tmp_path


def test_solve_dp_one_sided(files, capsys):
    out = files / "sol.txt"
    assert main(["solve", str(files / "one_sided_seed7.stab"), "--algo", "dp",
                 "--out", str(out)]) == 0
    inst = io.parse((files / "one_sided_seed7.stab").read_text())
    sol = io.parse_solution(out.read_text())
    assert verify(inst, sol) == [] and sol.objective == solve_exact(inst).objective
    report = json.loads((files / "sol.txt.json").read_text())
    assert report["algo"] == "dp" and report["verified"] and report["objective"] == sol.objective
    assert "table" in report["diagnostics"]
    assert f"objective  {sol.objective}" in capsys.readouterr().out


def test_solve_lp5_e1(files):
    out, rep = files / "sol.txt", files / "rep.json"
    assert main(["solve", str(files / "e1.stab"), "--algo", "lp5", "--out", str(out),
                 "--report", str(rep)]) == 0
    assert out.read_text() == "CHOSEN 2\nWITNESS 0 2\nWITNESS 1 2\n"
    report = json.loads(rep.read_text())
    assert report["objective"] == 1 and report["diagnostics"]["lp_value"] == "1"


@pytest.mark.parametrize("algo", ["exact", "lp5", "ls", "merge7", "merge3e"])
def test_solve_e1_every_compatible_algo(files, algo):
    out = files / "sol.txt"
    assert main(["solve", str(files / "e1.stab"), "--algo", algo, "--out", str(out)]) == 0
    assert io.parse_solution(out.read_text()).objective == 1


def test_variant_mismatch_exit_2(files, capsys):
    assert main(["solve", str(files / "e1.stab"), "--algo", "dp"]) == 2
    assert "variant mismatch" in capsys.readouterr().err


def test_missing_file_exit_2(files):
    assert main(["solve", str(files / "nope.stab")]) == 2


def test_verify(files, capsys):
    inst = files / "e1.stab"
    good, bad = files / "good.txt", files / "bad.txt"
    good.write_text("CHOSEN 2\nWITNESS 0 2\nWITNESS 1 2\n")
    bad.write_text("CHOSEN 2\nWITNESS 0 2\n")
    assert main(["verify", str(inst), str(good)]) == 0
    assert capsys.readouterr().out.strip() == "ok"
    assert main(["verify", str(inst), str(bad)]) == 1
    assert capsys.readouterr().out.strip()


def test_generate_is_byte_identical(files):
    a, b = files / "a.stab", files / "b.stab"
    assert main(["generate", "--seed", "42", "--out", str(a)]) == 0
    assert main(["generate", "--seed", "42", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes() == (GOLDEN / "gen_seed42.stab").read_bytes()
    c = files / "c.stab"
    assert main(["generate", "--seed", "7", "--n-h", "6", "--n-v", "6", "--variant", "HV/V",
                 "--left-fraction", "0", "--out", str(c)]) == 0
    assert c.read_bytes() == (GOLDEN / "one_sided_seed7.stab").read_bytes()


def test_generate_bad_variant(files):
    assert main(["generate", "--seed", "1", "--variant", "X/Y"]) == 2


@pytest.mark.parametrize("kind,cnf,golden", [("monotone", "mono3.cnf", "mono3.stab"),
                                             ("vgadget", "mono3.cnf", "mono3_vgadget.stab"),
                                             ("cycle", "cycle1.cnf", "cycle1.stab")])
def test_reduce(files, kind, cnf, golden):
    out = files / "out.stab"
    assert main(["reduce", str(files / cnf), "--kind", kind, "--out", str(out)]) == 0
    assert out.read_bytes() == (GOLDEN / golden).read_bytes()


def test_reduce_kind_mismatch(files):
    assert main(["reduce", str(files / "cycle1.cnf"), "--kind", "monotone"]) == 2


def test_exact_on_cycle_reports_exactly_once(files):
    inst, out = files / "cycle.stab", files / "sol.txt"
    shutil.copy(GOLDEN / "cycle1.stab", inst)
    assert main(["solve", str(inst), "--out", str(out)]) == 0
    report = json.loads((files / "sol.txt.json").read_text())
    assert report["diagnostics"]["exactly_once_at_objective"] is True


def test_bench_deterministic(files, capsys):
    args = ["bench", "--variant", "HV/H", "--algos", "lp5,ls,merge7", "--count", "8",
            "--seed", "3"]
    assert main(args + ["--out", str(files / "a.json")]) == 0
    first = capsys.readouterr().out
    assert main(args + ["--out", str(files / "b.json")]) == 0
    assert capsys.readouterr().out == first
    assert (files / "a.json").read_bytes() == (files / "b.json").read_bytes()


def test_bench_table():
    result = bench(Variant.HV_V, ["dp", "merge2"], 0, 6, 4, 4, left_fraction=1.0)
    assert result["algorithms"]["dp"]["max_ratio"] == "1"
    text = format_bench(result)
    assert text.splitlines()[1].split() == ["algo", "n", "max", "mean"]


def test_bench_rejects_mismatch(capsys):
    assert main(["bench", "--variant", "HV/H", "--algos", "dp"]) == 2

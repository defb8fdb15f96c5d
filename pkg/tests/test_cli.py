"""Command-line interface: parsing, exit codes, reports, reproducibility."""

from fractions import Fraction

import pytest

import turbobound.cli as cli
from turbobound.cli import argv_from_metadata, entrypoint
from turbobound.oracle import CaseResult, GridCase, VerificationReport
from turbobound.pccc import PcccConfig, p2_approximation
from turbobound.puncture import PcccPunctureSet
from turbobound.rsc import RscCode


def run(capsys, *argv):
    code = entrypoint(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_version_and_usage_errors():
    with pytest.raises(SystemExit) as exc:
        entrypoint(["--version"])
    assert exc.value.code == 0
    for argv in ([], ["frobnicate"], ["bound", "--does-not-exist"],
                 ["bound", "--gr1", "15", "--gf1", "17"]):
        with pytest.raises(SystemExit) as exc:
            entrypoint(argv)
        assert exc.value.code == 1


@pytest.mark.parametrize("argv,fragment", [
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--snr", "nope"], "START:STOP:STEP"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--snr", "5:1:1"], "must not precede"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--snr", "1:5:0"], "step must be positive"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "7"], "--n must lie"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "2000000"], "--n must lie"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--wmax", "9"], "--wmax"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--dmax", "0"], "--dmax"),
    (["bound", "--gr1", "19", "--gf1", "17", "--n", "100"], "octal"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--pseudo", "A", "--sys", "1"], "not both"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--pseudo", "A", "--keep-zero", "3"], "only applies"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--keep-zero", "3"], "only applies"),
    (["bound", "--gr1", "15", "--gf1", "17", "--n", "100",
      "--sys", "1", "--par1", "1"], "all three"),
    (["patterns", "--gr1", "17", "--gf1", "15", "--pseudo", "A"],
     "not primitive"),
])
def test_domain_errors_exit_2(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert "turbobound: error:" in err
    assert fragment in err


def test_bound_stdout_w2(capsys):
    code, out, _ = run(capsys, "bound", "--gr1", "15", "--gf1", "17",
                       "--pseudo", "A", "--n", "1000", "--snr", "4",
                       "--wmax", "2")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "# turbobound 0.1.0"
    assert "# subcommand = bound" in lines
    assert "# code_rate = 1/2" in lines
    assert "# d_free_eff = 10" in lines
    header = next(l for l in lines if not l.startswith("#"))
    assert header == "ebn0_db,p2,p2_clamped"
    fields = lines[-1].split(",")
    assert fields[0] == "4" and fields[2] == "0"
    assert float(fields[1]) == pytest.approx(1.0028892141423305e-9, rel=1e-11)


def test_bound_w3_columns(capsys):
    code, out, _ = run(capsys, "bound", "--gr1", "15", "--gf1", "17",
                       "--pseudo", "B", "--n", "100", "--snr", "2:4:1")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0] == "ebn0_db,p2,truncated_bound,ratio,p2_clamped,bound_clamped"
    assert len(lines) == 4
    for row in lines[1:]:
        db, p2, tb, ratio, c1, c2 = row.split(",")
        assert 0.0 < float(ratio) <= 1.0
        assert float(p2) <= float(tb)
        assert c1 == "0" and c2 == "0"
    assert "# terms_dropped = 0" in out


def test_bound_deterministic_and_atomic(tmp_path, capsys):
    target = tmp_path / "curve.csv"
    argv = ("bound", "--gr1", "15", "--gf1", "17", "--pseudo", "A",
            "--n", "300", "--snr", "0:6:0.5", "--out", str(target))
    assert run(capsys, *argv)[0] == 0
    first = target.read_bytes()
    assert run(capsys, *argv)[0] == 0
    assert target.read_bytes() == first
    assert b"\r" not in first
    assert first.endswith(b"\n")
    assert not list(tmp_path.glob(".tb-*"))  # no temp files left behind


def test_bound_metadata_round_trip(tmp_path, capsys):
    target = tmp_path / "curve.csv"
    assert run(capsys, "bound", "--gr1", "15", "--gf1", "17", "--pseudo", "B",
               "--n", "250", "--snr", "1:5:0.5", "--wmax", "3",
               "--dmax", "100", "--out", str(target))[0] == 0
    first = target.read_text()
    argv = argv_from_metadata(first)
    assert argv[0] == "bound"
    assert run(capsys, *argv, "--out", str(target))[0] == 0
    assert target.read_text() == first


def test_argv_from_metadata_rejects_headerless():
    with pytest.raises(ValueError, match="no subcommand"):
        argv_from_metadata("ebn0_db,p2\n1,0.5\n")


PATTERNS_A_BODY = """\
sys  = [1000101]
par1 = [0111010]
par2 = [1111111]
period = 7
rate = 1/2
constituent 1 (15/17): Normal
  core_weights = [4, 2, 2, 2, 2, 2, 2]
  d_min = 4, z_min = 2
constituent 2 (15/17): Normal
  core_weights = [4, 4, 4, 4, 4, 4, 4]
  z_min = 6
d_free_eff = 10
"""

PATTERNS_B_BODY = """\
sys  = [1111101]
par1 = [0111010]
par2 = [0111010]
period = 7
rate = 1/2
constituent 1 (15/17): Normal
  core_weights = [4, 2, 2, 2, 2, 2, 2]
  d_min = 4, z_min = 2
constituent 2 (15/17): Normal
  core_weights = [4, 2, 2, 2, 2, 2, 2]
  z_min = 2
d_free_eff = 6
"""


@pytest.mark.parametrize("variant,body", [("A", PATTERNS_A_BODY),
                                          ("B", PATTERNS_B_BODY)])
def test_patterns_pseudo_reports(capsys, variant, body):
    code, out, _ = run(capsys, "patterns", "--gr1", "15", "--gf1", "17",
                       "--pseudo", variant)
    assert code == 0
    assert out.endswith(body)
    assert "# n_probe = 29" in out


def test_patterns_keep_zero(capsys):
    code, out, _ = run(capsys, "patterns", "--gr1", "15", "--gf1", "17",
                       "--pseudo", "B", "--keep-zero", "2")
    assert code == 0
    assert "sys  = [1011111]" in out


def test_patterns_all_punctured_still_reports(capsys):
    code, out, _ = run(capsys, "patterns", "--gr1", "15", "--gf1", "17",
                       "--sys", "0000000", "--par1", "0000000",
                       "--par2", "0000000")
    assert code == 0
    assert "rate = undefined" in out
    assert out.count("Catastrophic") == 2
    assert "d_free_eff = 0" in out


def test_patterns_unpunctured_default(capsys):
    # no rows and no --pseudo: the rate-1/3 base code
    code, out, _ = run(capsys, "patterns", "--gr1", "15", "--gf1", "17")
    assert code == 0
    assert "rate = 1/3" in out
    assert "d_free_eff = 14" in out


def test_patterns_round_trip(tmp_path, capsys):
    target = tmp_path / "report.txt"
    assert run(capsys, "patterns", "--gr1", "7", "--gf1", "5",
               "--pseudo", "B", "--out", str(target))[0] == 0
    first = target.read_text()
    assert run(capsys, *argv_from_metadata(first), "--out", str(target))[0] == 0
    assert target.read_text() == first


def test_search_period2(capsys):
    code, out, _ = run(capsys, "search", "--gr1", "15", "--gf1", "17",
                       "--rate", "1/2", "--period", "2", "--n", "200",
                       "--snr", "6", "--top", "5")
    assert code == 0
    lines = [l for l in out.splitlines() if not l.startswith("#")]
    assert lines[0] == "rank,sys,par1,par2,d_free_eff,p2"
    rows = [l.split(",") for l in lines[1:]]
    assert [r[0] for r in rows] == ["1", "2", "3", "4", "5"]
    dists = [int(r[4]) for r in rows]
    assert dists == sorted(dists, reverse=True)
    # within one distance class P(2) is ascending
    for a, b in zip(rows, rows[1:]):
        if a[4] == b[4]:
            assert float(a[5]) <= float(b[5])
    assert "# candidates = 15" in out
    assert "# top = 5" in out


def test_search_reports_known_pattern(capsys):
    # the fixed (11, 10, 01) rate-1/2 pattern must appear with its
    # library P(2) value
    code, out, _ = run(capsys, "search", "--gr1", "15", "--gf1", "17",
                       "--rate", "1/2", "--period", "2", "--n", "200",
                       "--snr", "6", "--top", "15")
    assert code == 0
    row = next(l for l in out.splitlines() if ",11,10,01," in l)
    cfg = PcccConfig(RscCode.from_octals("15", "17"),
                     RscCode.from_octals("15", "17"),
                     PcccPunctureSet((1, 1), (1, 0), (0, 1)), 200)
    want = p2_approximation(cfg, (6.0,)).points[0].raw
    assert row.split(",")[5] == f"{want:.11e}"
    assert row.split(",")[4] == "6"


def test_search_deterministic(tmp_path, capsys):
    target = tmp_path / "rank.csv"
    argv = ("search", "--gr1", "7", "--gf1", "5", "--rate", "1/2",
            "--period", "3", "--n", "120", "--snr", "5", "--top", "10",
            "--out", str(target))
    assert run(capsys, *argv)[0] == 0
    first = target.read_bytes()
    assert run(capsys, *argv)[0] == 0
    assert target.read_bytes() == first


def test_search_round_trip(tmp_path, capsys):
    target = tmp_path / "rank.csv"
    assert run(capsys, "search", "--gr1", "7", "--gf1", "5", "--rate", "2/3",
               "--period", "2", "--n", "100", "--snr", "4",
               "--out", str(target))[0] == 0
    first = target.read_text()
    assert run(capsys, *argv_from_metadata(first), "--out", str(target))[0] == 0
    assert target.read_text() == first


def test_search_infeasible_rate(capsys):
    code, _, err = run(capsys, "search", "--gr1", "15", "--gf1", "17",
                       "--rate", "3/7", "--period", "2")
    assert code == 2
    assert "no pattern of period 2 meets rate 3/7" in err
    # rate below 1/3 would need more than 3 kept bits per column
    code, _, err = run(capsys, "search", "--gr1", "15", "--gf1", "17",
                       "--rate", "1/4", "--period", "2")
    assert code == 2


@pytest.mark.parametrize("argv,fragment", [
    (["search", "--gr1", "15", "--gf1", "17", "--rate", "1/2",
      "--period", "12"], "exceeds"),
    (["search", "--gr1", "15", "--gf1", "17", "--rate", "1/2",
      "--period", "0"], "--period"),
    (["search", "--gr1", "15", "--gf1", "17", "--rate", "1/2",
      "--period", "2", "--snr", "2:6:2"], "single"),
    (["search", "--gr1", "15", "--gf1", "17", "--rate", "1/2",
      "--period", "2", "--top", "0"], "--top"),
    (["search", "--gr1", "15", "--gf1", "17", "--rate", "7/2",
      "--period", "2"], "--rate"),
    (["search", "--gr1", "15", "--gf1", "17", "--rate", "x",
      "--period", "2"], "--rate"),
])
def test_search_rejects(capsys, argv, fragment):
    code, _, err = run(capsys, *argv)
    assert code == 2
    assert fragment in err


def fake_report(ok):
    case = GridCase("7", "5", "1", "1", 20)
    detail = "" if ok else "closed vs trellis: (u=2,z=4): 1 vs 2"
    return VerificationReport((CaseResult(case, ok, True, detail),))


def test_verify_pass(monkeypatch, tmp_path, capsys):
    monkeypatch.setattr(cli, "run_verification",
                        lambda jobs: fake_report(True))
    target = tmp_path / "verify.txt"
    code, out, _ = run(capsys, "verify", "--out", str(target))
    assert code == 0
    assert out == "# result = PASS (1/1)\n"
    assert target.read_text().splitlines()[0] == "PASS 7/5 pu=1 pz=1 n=20"


def test_verify_fail_exit_3(monkeypatch, capsys):
    monkeypatch.setattr(cli, "run_verification",
                        lambda jobs: fake_report(False))
    code, out, _ = run(capsys, "verify")
    assert code == 3
    assert "FAIL" in out and "# result = FAIL (0/1)" in out


def test_parse_snr_grid():
    assert cli._parse_snr("3") == (3.0,)
    grid = cli._parse_snr("0:8:0.5")
    assert len(grid) == 17
    assert grid[0] == 0.0 and grid[-1] == 8.0
    assert cli._parse_snr("2:2:1") == (2.0,)


def test_parse_rate():
    assert cli._parse_rate("1/2") == Fraction(1, 2)
    assert cli._parse_rate("4/6") == Fraction(2, 3)
    for bad in ("0/5", "5/5", "7/5", "1/0", "half"):
        with pytest.raises(ValueError):
            cli._parse_rate(bad)

import subprocess
import sys

import pytest

from lrscodec import cli

GOOD = """# reliability campaign
[field]
q0 = 3
m = 2

[code]
shape = 2,2
k = 2

[campaign]
kind = reliability
trials = 6
seed = 11
"""


def write(tmp_path, text, name="c.ini"):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_validate_ok(tmp_path, capsys):
    assert cli.main(["validate", write(tmp_path, GOOD)]) == 0
    assert "reliability" in capsys.readouterr().out


@pytest.mark.parametrize(
    "text,line,col,fragment",
    [
        (GOOD.replace("k = 2", "k = two"), 8, 5, "integer"),
        (GOOD.replace("seed = 11", "colour = red"), 13, 10, "unknown key"),
        (GOOD.replace("shape = 2,2", "shape = 2,2,2"), 7, 9, "1 <= l <= q-1"),
        (GOOD.replace("shape = 2,2", "shape = 3,2"), 7, 9, "n_i"),
        (GOOD.replace("q0 = 3", "q0 = 6"), 3, 6, "prime power"),
        (GOOD.replace("kind = reliability", "kind = magic"), 11, 8, "kind"),
        ("q0 = 3\n" + GOOD, 1, 1, "section"),
        (GOOD.replace("[code]", "[codes]"), 6, 1, "unknown section"),
        (GOOD + "oops\n", 14, 1, "key = value"),
    ],
)
def test_config_errors_carry_position(tmp_path, capsys, text, line, col, fragment):
    path = write(tmp_path, text)
    assert cli.main(["validate", path]) == 2
    err = capsys.readouterr().err
    assert f"{path}:{line}:{col}:" in err
    assert fragment in err


def test_missing_file_is_config_error(tmp_path, capsys):
    assert cli.main(["run", str(tmp_path / "absent.ini")]) == 2


def test_run_is_byte_identical_across_reruns_and_workers(tmp_path):
    cfg = write(tmp_path, GOOD)
    outs = []
    for workers in (1, 2, 1):
        out = tmp_path / f"r{len(outs)}.csv"
        assert cli.main(["run", cfg, "--workers", str(workers), "--out", str(out)]) == 0
        outs.append(out.read_bytes())
    assert outs[0] == outs[1] == outs[2]
    lines = outs[0].decode().splitlines()
    assert lines[0] == ",".join(cli.COLUMNS["reliability"])
    row = dict(zip(lines[0].split(","), lines[1].split(",")))
    assert row["t"] == "0" and row["trials"] == "6" and row["successes"] == "6"


def test_seed_and_trial_overrides(tmp_path, capsys):
    cfg = write(tmp_path, GOOD)
    assert cli.main(["run", cfg, "--workers", "1", "--trials", "3", "--seed", "4"]) == 0
    out = capsys.readouterr().out
    assert out.splitlines()[1].split(",")[3] == "3"
    assert cli.main(["run", cfg, "--trials", "0"]) == 2


def test_breach_exit_code(tmp_path, monkeypatch):
    monkeypatch.setattr(cli, "reliability_trial", lambda job: (False, 0))
    assert cli.main(["run", write(tmp_path, GOOD), "--workers", "1", "--out", str(tmp_path / "o.csv")]) == 1


def test_float_formatting():
    from fractions import Fraction

    assert cli.fmt(1 / 3) == "0.333333"
    assert cli.fmt(12345678.9) == "1.23457e+07"
    assert cli.fmt(7) == "7"
    assert cli.fmt(True) == "1"
    assert cli.fmt(Fraction(1, 4)) == "1/4"
    assert cli.fmt(None) == ""


def test_bounds_campaign(tmp_path, capsys):
    cfg = write(tmp_path, "[field]\nq0 = 4\nm = 2\n[code]\nshape = 2,2\n[campaign]\nkind = bounds\n")
    assert cli.main(["run", cfg]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].startswith("t,rho,mu,capacity")
    assert all(line.split(",")[3] == line.split(",")[4] for line in lines[1:])


def test_secrecy_campaign(tmp_path, capsys):
    cfg = write(
        tmp_path,
        "[field]\nq0 = 3\nm = 2\n[code]\nshape = 2,1\n[channel]\nmu = 1\nt = 0\nrho = 0\n[campaign]\nkind = secrecy\ntrials = 5\n",
    )
    assert cli.main(["run", cfg]) == 0
    lines = capsys.readouterr().out.splitlines()
    rows = [dict(zip(lines[0].split(","), line.split(","))) for line in lines[1:]]
    assert rows[1]["max_leakage_formula"] == "0" and rows[1]["mismatches"] == "0"


def test_complexity_campaign(tmp_path, capsys):
    cfg = write(tmp_path, "[field]\nq0 = 17\nm = 4\n[code]\nshape = 4\n[campaign]\nkind = complexity\ntrials = 1\nsizes = 8,16,32\n")
    assert cli.main(["run", cfg]) == 0
    captured = capsys.readouterr()
    assert "decode_fit" in captured.out and "multiplications" in captured.err


def test_complexity_size_validation(tmp_path):
    cfg = write(tmp_path, "[field]\nq0 = 5\nm = 2\n[code]\nshape = 2\n[campaign]\nkind = complexity\nsizes = 8,16\n")
    assert cli.main(["validate", cfg]) == 2


def test_bench_command(capsys):
    assert cli.main(["bench", "--max-n", "8", "--trials", "1"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("backend,n,k,seconds")
    assert cli.main(["bench", "--max-n", "4"]) == 2


def test_console_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "lrscodec", "validate", write(tmp_path, GOOD)], capture_output=True, text=True)
    assert proc.returncode == 0
    proc = subprocess.run([sys.executable, "-m", "lrscodec", "--help"], capture_output=True, text=True)
    assert "CSV columns" in proc.stdout

import json
import subprocess
import sys

import pytest

from barylef.cli import main
from barylef.facet_io import read_facets, read_subdivided


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return str(p)


@pytest.fixture
def two(tmp_path):
    return write(tmp_path, "two.txt", "# two triangles\n1 2 3\n2 3 4\n")


@pytest.fixture
def skel(tmp_path):
    from itertools import combinations

    return write(tmp_path, "skel.txt", "".join(" ".join(map(str, c)) + "\n" for c in combinations(range(1, 6), 3)))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_vectors(capsys, two, skel):
    assert run(capsys, "hvec", skel)[:2] == (0, "# command=hvec prime=32003 trials=5 seed=0 budget=10000000\n(1,2,3,4)\n")
    assert run(capsys, "fvec", two)[1].endswith("(1,4,5,2)\n")
    assert run(capsys, "gvec", two)[1].endswith("(1,0)\n")
    assert run(capsys, "hvec", "--sd", skel)[1].endswith("(1,22,33,4)\n")
    assert run(capsys, "hvec", "--sd", two)[1].endswith("(1,8,3,0)\n")


def test_json_echoes_config(capsys, two):
    code, out, _ = run(capsys, "hvec", "--format", "json", "--seed", "7", two)
    data = json.loads(out)
    assert code == 0 and data["hvec"] == [1, 1, 0, 0]
    assert data["config"] == {"command": "hvec", "prime": 32003, "trials": 5, "seed": 7, "budget": 10**7}


def test_sd_writes_sidecar(capsys, tmp_path, two):
    target = str(tmp_path / "sd.txt")
    code, out, _ = run(capsys, "sd", "-o", target, two)
    assert code == 0
    sd = read_subdivided(target)
    assert len(sd.base.facets) == 12  # 3! chains per triangle
    assert read_facets(target) == sd.base
    assert sd.level[5] == 2


def test_shell(capsys, two, tmp_path):
    code, out, _ = run(capsys, "shell", two)
    assert code == 0 and "h = (1,1,0,0)" in out
    bowtie = write(tmp_path, "bowtie.txt", "1 2 3\n3 4 5\n")
    assert run(capsys, "shell", bowtie)[0] == 1
    sd = write(tmp_path, "bd3.txt", "1 2 3\n1 2 4\n1 3 4\n2 3 4\n")
    code, out, _ = run(capsys, "shell", "--sd", "--budget", "3", "--format", "json", sd)
    assert code == 1 and json.loads(out)["status"] == "budget exhausted"


def test_lefschetz_and_verify_certificate(capsys, two, tmp_path):
    code, out, _ = run(capsys, "lefschetz", "--sd", "--format", "json", two)
    assert code == 0
    record = tmp_path / "cert.json"
    record.write_text(out)
    assert run(capsys, "verify", "certificate", str(record))[:2] == (0, "# command=verify prime=32003 trials=5 seed=0 budget=10000000\nverified\n")
    data = json.loads(out)
    data["certificate"]["ranks"][0]["rank"] -= 1
    record.write_text(json.dumps(data))
    assert run(capsys, "verify", "certificate", str(record))[0] == 1


def test_lefschetz_inconclusive(capsys, tmp_path):
    bowtie = write(tmp_path, "bowtie.txt", "1 2 3\n3 4 5\n")
    code, out, _ = run(capsys, "lefschetz", "--trials", "1", bowtie)
    assert code == 1 and "inconclusive" in out


def test_eulerian(capsys):
    code, out, _ = run(capsys, "eulerian", "--d", "3")
    assert code == 0 and out.splitlines()[1:] == ["i,j=1,j=2,j=3", "0,1,0,0", "1,1,2,1", "2,0,0,1"]
    code, out, _ = run(capsys, "verify", "eulerian", "--d", "6")
    assert code == 0
    assert "column 3: 60 vs 48" in out and "column 4: 48 vs 60" in out
    code, out, _ = run(capsys, "verify", "eulerian", "--d", "6", "--format", "json")
    assert json.loads(out)["pass"] is True


def test_report(capsys, two, tmp_path):
    code, out, _ = run(capsys, "report", "--format", "json", two)
    data = json.loads(out)
    assert code == 0 and data["pass"] and data["h_sd"] == [1, 8, 3, 0]
    assert data["hypothesis"] == "shellable"
    bowtie = write(tmp_path, "bowtie.txt", "1 2 3\n3 4 5\n")
    code, out, _ = run(capsys, "report", bowtie)
    assert code == 1 and "REJECTED" in out


@pytest.mark.parametrize(
    "argv_tail, text",
    [
        (["hvec"], None),
        (["hvec", "BAD"], "1 2\nx 3\n"),
        (["hvec", "BAD"], "# nothing\n"),
        (["shell", "BAD"], "1 2 3\n3 4\n"),
        (["lefschetz", "BAD"], "1 2 3\n3 4\n"),
        (["eulerian"], None),
        (["verify", "sideways"], None),
        (["hvec", "--prime", "32004", "BAD"], "1 2\n"),
        (["hvec", "/nonexistent/file"], None),
    ],
    ids=["missing", "parse", "empty", "shell-nonpure", "lef-nonpure", "no-d", "target", "prime", "missing-file"],
)
def test_usage_errors(capsys, tmp_path, argv_tail, text):
    argv = list(argv_tail)
    if text is not None:
        argv[argv.index("BAD")] = write(tmp_path, "bad.txt", text)
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert "error" in err


def test_parse_error_names_line(capsys, tmp_path):
    bad = write(tmp_path, "bad.txt", "1 2\n\n2 -3\n")
    assert "line 3" in run(capsys, "hvec", bad)[2]


def test_argparse_errors_exit_two():
    with pytest.raises(SystemExit) as exc:
        main(["nosuch"])
    assert exc.value.code == 2


def test_repeated_runs_are_byte_identical(tmp_path, two):
    cmd = [sys.executable, "-m", "barylef", "report", "--format", "json", two]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second

import json
import subprocess
import sys

import pytest

from factorum.cli import main


@pytest.fixture
def trap_file(tmp_path, capsys):
    p = tmp_path / "trap.txt"
    assert main(["gen", "--trap", "-o", str(p)]) == 0
    return p


def write(tmp_path, name, text):
    p = tmp_path / name
    p.write_text(text)
    return p


def test_solve_trap(trap_file, capsys):
    assert main(["solve", str(trap_file), "--stats"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("weight 6\n")
    assert sum(1 for line in out.splitlines() if line.startswith("f ")) == 14
    assert "# dec_calls" in out


def test_solve_json_and_trace(trap_file, capsys):
    assert main(["solve", str(trap_file), "--json", "--trace"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["status"] == "optimum" and doc["weight"] == "6" and len(doc["edges"]) == 14
    assert doc["trace"]


def test_solve_brute_oracle(trap_file, capsys):
    assert main(["solve", str(trap_file), "--oracle", "brute"]) == 0
    assert capsys.readouterr().out.startswith("weight 6")


def test_infeasible_exit_code(tmp_path, capsys):
    p = write(tmp_path, "tri.txt", "vertices 3\nv 0 set 1\nv 1 set 1\nv 2 set 1\ne 0 1 1\ne 1 2 1\ne 0 2 1\n")
    assert main(["solve", str(p)]) == 2
    assert capsys.readouterr().out.strip() == "No"


def test_malformed_constraint(tmp_path, capsys):
    p = write(tmp_path, "bad.txt", "vertices 2\nv 0 interval 0 1\nv 1 interval 3 1\ne 0 1 1\n")
    assert main(["solve", str(p)]) == 1
    assert "line 3" in capsys.readouterr().err


def test_missing_file(capsys):
    assert main(["solve", "/nonexistent/file"]) == 1


def test_check_roundtrip(trap_file, tmp_path, capsys):
    main(["solve", str(trap_file)])
    fac = write(tmp_path, "fac.txt", capsys.readouterr().out)
    assert main(["check", str(trap_file), str(fac)]) == 0
    # drop one edge: its endpoints lose feasibility
    lines = fac.read_text().splitlines()
    short = write(tmp_path, "short.txt", "\n".join(lines[:-1]) + "\n")
    assert main(["check", str(trap_file), str(short)]) != 0
    assert "vertex" in capsys.readouterr().out
    wrong = write(tmp_path, "wrong.txt", "\n".join(["weight 5"] + lines[1:]) + "\n")
    assert main(["check", str(trap_file), str(wrong)]) != 0


def test_check_no_claim(tmp_path, capsys):
    tri = write(tmp_path, "tri.txt", "vertices 3\nv 0 set 1\nv 1 set 1\nv 2 set 1\ne 0 1 1\ne 1 2 1\ne 0 2 1\n")
    no = write(tmp_path, "no.txt", "No\n")
    assert main(["check", str(tri), str(no)]) == 0


def test_terminal_backup(tmp_path, capsys):
    pair = write(tmp_path, "pair.txt", "vertices 2\nt 0\nt 1\ne 0 1 4\n")
    assert main(["terminal-backup", str(pair), "--solve"]) == 0
    out = capsys.readouterr().out
    assert "f 0 1" in out and out.strip().endswith("cost 4")
    star = write(tmp_path, "star.txt", "vertices 4\nt 1\nt 2\nt 3\ne 0 1 1\ne 0 2 1\ne 0 3 1\n")
    assert main(["terminal-backup", str(star), "--solve"]) == 0
    assert capsys.readouterr().out.count("f 0 ") == 3
    apart = write(tmp_path, "apart.txt", "vertices 3\nt 0\nt 2\ne 0 1 1\ne 1 2 1\n")
    assert main(["terminal-backup", str(apart)]) == 0
    assert "set 0,1" not in capsys.readouterr().out
    lonely = write(tmp_path, "lonely.txt", "vertices 4\nt 0\nt 1\ne 1 2 1\ne 2 3 1\n")
    assert main(["terminal-backup", str(lonely), "--solve"]) == 2
    unreachable = write(tmp_path, "unr.txt", "vertices 4\nt 0\nt 3\ne 0 1 1\ne 2 3 1\n")
    assert main(["terminal-backup", str(unreachable), "--solve"]) == 2


def test_gen_is_deterministic(capsys, monkeypatch):
    main(["gen", "--n", "6", "--m", "9", "--seed", "1"])
    a = capsys.readouterr().out
    main(["gen", "--n", "6", "--m", "9", "--seed", "1"])
    assert capsys.readouterr().out == a
    monkeypatch.setenv("FACTORUM_SEED", "1")
    main(["gen", "--n", "6", "--m", "9"])
    assert capsys.readouterr().out == a
    assert main(["gen", "--n", "3", "--m", "9"]) == 1
    assert main(["gen", "--n", "6", "--m", "3", "--classes", "bogus"]) == 1


def test_gadget_and_reduce(trap_file, tmp_path, capsys):
    assert main(["gadget", "interval 1 2", "--arity", "3"]) == 0
    assert "realized interval 1 2" in capsys.readouterr().out
    assert main(["gadget", "set 0,1,3", "--arity", "3"]) == 0
    assert "not-realizable" in capsys.readouterr().out
    small = write(tmp_path, "s.txt", "vertices 2\nv 0 interval 0 1\nv 1 interval 0 1\ne 0 1 2\n")
    assert main(["reduce", str(small), "--compact"]) == 0
    out = capsys.readouterr().out
    assert "vertices" in out and "e " in out


def test_matching_command(tmp_path, capsys):
    p = write(tmp_path, "m.txt", "vertices 4\ne 0 1 1\ne 2 3 1\ne 0 2 5\ne 1 3 -1\n")
    assert main(["matching", str(p)]) == 0
    assert capsys.readouterr().out.startswith("weight 4")


def test_verify_gadgets_json(capsys):
    assert main(["verify", "--suite", "gadgets", "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["passed"] and {c["name"] for c in doc["checks"]} >= {"gadget-realizability", "obstruction"}


def test_verify_structural_small(capsys):
    assert main(["verify", "--suite", "structural", "--cases", "20", "--seed", "3"]) == 0
    assert "trap-negative-control" in capsys.readouterr().out


def test_entry_point_installed():
    r = subprocess.run([sys.executable, "-m", "factorum.cli", "--version"], capture_output=True, text=True)
    assert r.returncode == 0 and "factorum" in r.stdout

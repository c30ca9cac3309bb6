import json
import subprocess
import sys

import pytest

from pkrkit import formats
from pkrkit.cli import main

SAMPLE_QBF = "exists: x1 x2\nforall: y1 y2\nx1 y2\n-x1 -x2 -y1\n-y1 -x2 -y2\n-x1 -x2\n"


@pytest.fixture
def write(tmp_path):
    def make(name, text):
        path = tmp_path / name
        path.write_text(text)
        return str(path)
    return make


@pytest.fixture
def run(capsys):
    def call(*argv):
        code = main([str(a) for a in argv])
        out, err = capsys.readouterr()
        return code, out, err
    return call


class TestSolve:
    def test_pl(self, run, write):
        kb = write("kb.pl", "p | q\n~q\n")
        assert run("solve", "pl", kb, "--query", "p") == (0, "true\n", "")
        assert run("solve", "pl", kb, "--query", "q")[0] == 1

    def test_circ_and_gcwa(self, run, write):
        circ = write("kb.circ", "atoms: p q\nminimize: p q\np | q\n")
        assert run("solve", "circ", circ, "--query", "~(p & q)")[0] == 0
        gcwa = write("kb.gcwa", "atoms: p q r\np | q\n")
        assert run("solve", "gcwa", gcwa, "--query", "~r")[0] == 0

    def test_default_modes(self, run, write):
        dt = write("choice.default", "D:\n: p / p\n: ~p / ~p\n")
        assert run("solve", "default", dt, "--query", "p")[0] == 1
        assert run("solve", "default-credulous", dt, "--query", "p")[0] == 0

    def test_stable_and_revision(self, run, write):
        lp = write("p.lp", "r :- not s.\ns :- not r.\n")
        assert run("solve", "sm", lp, "--query", "r | s")[0] == 0
        rev = write("r.rev", "K:\na\n~a | b\n~b\nA:\na\n")
        assert run("solve", "sbr", rev, "--query", "b")[0] == 1
        assert run("solve", "widtio", rev, "--query", "a")[0] == 0

    def test_records(self, run, write):
        kb = write("kb.pl", "p\n")
        code, out, _ = run("solve", "pl", kb, "--query", "p", "--format", "records")
        assert json.loads(out) == {"command": "solve", "formalism": "pl", "query": "p", "verdict": True}


class TestModelCheck:
    def test_verdicts(self, run, write):
        circ = write("lunch.circ", "atoms: p q\nminimize: p q\np | q\n")
        assert run("model-check", "circ", circ, "--model", "p")[0] == 0
        assert run("model-check", "circ", circ, "--model", "p q")[0] == 1
        assert run("model-check", "circ", circ, "--model", "")[0] == 1

    def test_unknown_atom_is_usage_error(self, run, write):
        kb = write("kb.pl", "p\n")
        code, _, err = run("model-check", "pl", kb, "--model", "z")
        assert code == 2
        assert "z" in err


class TestTranslate:
    def test_etherington_files(self, run, write, tmp_path):
        src = write("pfn.default", "D:\n: ~p / ~p\n")
        out = tmp_path / "out"
        code, text, _ = run("translate", "etherington", src, "--out", out)
        assert code == 0
        assert sorted(p.name for p in out.iterdir()) == ["circuit.txt", "target.circ"]
        target = formats.parse_circ((out / "target.circ").read_text())
        assert target.minimized == {"a1"}
        assert "wrote" in text

    def test_stdout_records(self, run, write):
        g = write("g.graph", "2\n1 2\n2 1\n")
        code, out, _ = run("translate", "kernel", g, "--format", "records")
        records = [json.loads(line) for line in out.splitlines()]
        assert [r["file"] for r in records] == ["program.lp", "query.txt"]
        assert records[1]["content"] == "~r12 | ~r21 | r11 | r22\n"

    def test_short_qbf_clauses_need_padding(self, run, write):
        q = write("sample.qbf", SAMPLE_QBF)
        assert run("translate", "qbf-skeptical", q, "--pad")[0] == 0
        assert run("translate", "qbf-skeptical", q)[0] == 4


class TestVerify:
    def test_etherington_round_trip(self, run, write, tmp_path):
        src = write("pfn.default", "D:\n: ~p / ~p\n")
        out = tmp_path / "out"
        run("translate", "etherington", src, "--out", out)
        code, text, _ = run("verify", "--left", f"default:{src}", "--right", f"circ:{out / 'target.circ'}",
                            "--circuit", out / "circuit.txt")
        assert code == 0
        assert "verdict: pass" in text

    def test_broken_circuit(self, run, write, tmp_path):
        src = write("pfn.default", "D:\n: ~p / ~p\n")
        out = tmp_path / "out"
        run("translate", "etherington", src, "--out", out)
        broken = write("broken.txt", "inputs: p\noutputs: p=in(p) a1=g1\ng1 = NOT in(p)\n")
        code, out_text, _ = run("verify", "--left", f"default:{src}", "--right", f"circ:{out / 'target.circ'}",
                                "--circuit", broken, "--format", "records")
        assert code == 1
        summary, cx = [json.loads(line) for line in out_text.splitlines()]
        assert summary["verdict"] == "fail"
        assert cx == {"item": [], "left": True, "right": False}

    def test_theorem_mode_deterministic(self, run, write):
        left = write("t.circ", "atoms: p q\nminimize: p q\np | q\n")
        right = write("t.default", "W:\np | q\nD:\n: ~p / ~p\n: ~q / ~q\n")
        args = ("verify", "--left", f"circ:{left}", "--right", f"default:{right}", "--mode", "theorem",
                "--seed", "7")
        first = run(*args)
        assert first[0] == 0
        assert run(*args) == first

    def test_bad_side(self, run, write):
        kb = write("kb.pl", "p\n")
        assert run("verify", "--left", kb, "--right", f"pl:{kb}")[0] == 2


class TestOracle:
    def test_kernel(self, run, write):
        assert run("oracle", "kernel", write("c.graph", "2\n1 2\n2 1\n")) == (0, "kernel: true\nwitness: 1\n", "")
        assert run("oracle", "kernel", write("l.graph", "1\n1 1\n"))[0] == 1

    def test_qbf_sample(self, run, write):
        q = write("sample.qbf", SAMPLE_QBF)
        assert run("oracle", "qbf", q, "--pad") == (0, "valid: true\nwitness: x1 x2\n", "")
        assert run("oracle", "qbf", q)[0] == 4


class TestSweep:
    def test_kernel_atoms(self, run):
        code, out, _ = run("sweep", "kernel", "--param", "n=1..3", "--format", "records")
        assert code == 0
        assert [json.loads(line)["atoms"] for line in out.splitlines()] == [3, 10, 21]

    def test_text_table(self, run):
        code, out, _ = run("sweep", "clause-universe", "--param", "n=3..4")
        lines = out.splitlines()
        assert lines[0].split() == ["n", "input", "output", "atoms", "items"]
        assert [line.split()[-1] for line in lines[1:]] == ["8", "32"]

    def test_bad_param(self, run):
        assert run("sweep", "kernel", "--param", "n=3..1")[0] == 2
        assert run("sweep", "kernel", "--param", "k=3")[0] == 2


class TestExitCodes:
    def test_usage(self, run):
        assert run("solve")[0] == 2
        assert run("solve", "pl", "/nonexistent/kb", "--query", "p")[0] == 2
        assert run("--help")[0] == 0

    def test_parse_error_names_file(self, run, write):
        kb = write("bad.pl", "p\nq &\n")
        code, _, err = run("solve", "pl", kb, "--query", "p")
        assert code == 4
        assert f"{kb}: line 2, column 4" in err

    def test_capacity(self, run, write):
        kb = write("kb.pl", "atoms: p q r s\np\n")
        code, _, err = run("solve", "pl", kb, "--query", "p", "--model-cap", "3")
        assert code == 3
        assert "--model-cap" in err

    def test_negative_cap(self, run, write):
        kb = write("kb.pl", "p\n")
        assert run("solve", "pl", kb, "--query", "p", "--model-cap", "-1")[0] == 2


class TestSelftest:
    def test_single_criterion(self, run):
        code, out, _ = run("selftest", "--only", "3")
        assert code == 0
        assert out.startswith("[PASS] criterion 3")

    def test_bad_only(self, run):
        assert run("selftest", "--only", "x")[0] == 2


def test_module_entry_point(write):
    kb = write("kb.pl", "p\n")
    proc = subprocess.run([sys.executable, "-m", "pkrkit.cli", "solve", "pl", kb, "--query", "p"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout == "true\n"

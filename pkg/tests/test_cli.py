import subprocess
import sys

import pytest

from goldens import CASES, GOLDEN, run
from hopflab.cli import main

FAST = [name for name in CASES if not name.startswith("magma")]


@pytest.mark.parametrize("name", FAST)
def test_golden_reports(name):
    code, out = run(CASES[name])
    assert code == 0
    assert out.encode("utf-8") == (GOLDEN / name).read_bytes()


def test_reports_are_deterministic():
    argv = ["tensor-s", "--p", "3", "--r", "2", "--trials", "4", "--seed", "11"]
    assert run(argv) == run(argv)


@pytest.mark.parametrize("argv,code", [
    (["badhopf", "--alpha", "1"], 3),
    (["badhopf", "--alpha", "0"], 3),
    (["badhopf", "--alpha", "t+1"], 0),
    (["verify", "hopf-axioms", "--p", "7"], 3),
    (["verify", "resolutions", "--r", "4"], 3),
    (["verify", "nothing"], 3),
    (["tensor-s", "--trials", "-1"], 3),
    (["module", "lzeta", "--p", "3", "--r", "2", "--class", "z1 + e1"], 3),
    (["module", "lzeta", "--p", "3", "--r", "2", "--class", "0*z1"], 4),
    (["module", "lzeta", "--p", "3", "--r", "2"], 3),
    (["module", "show"], 3),
    (["module", "show", "/nonexistent/file.mod"], 3),
])
def test_exit_codes(argv, code, capsys):
    assert exit_code(argv) == code


def exit_code(argv) -> int:
    try:
        return main(argv)
    except SystemExit as e:
        return e.code


def test_parse_errors_exit_3_via_argparse(capsys):
    assert exit_code(["bogus"]) == 3
    assert exit_code(["verify", "phi", "--p", "two"]) == 3


def test_module_files(tmp_path, capsys):
    mod = tmp_path / "l.mod"
    assert main(["module", "lzeta", "--p", "3", "--r", "2", "--class", "z1+2*z2", "--out", str(mod)]) == 0
    copy = tmp_path / "copy.mod"
    assert main(["module", "write", str(mod), "--out", str(copy)]) == 0
    assert copy.read_bytes() == mod.read_bytes()
    assert main(["module", "read", str(mod)]) == 0
    assert "dim 9" in capsys.readouterr().out
    assert main(["module", "tensor", str(mod), str(mod), "--hopf", "both"]) == 0
    assert "isomorphic: yes" in capsys.readouterr().out
    assert main(["module", "decompose", str(mod)]) == 0
    assert "certified" in capsys.readouterr().out
    bad = tmp_path / "bad.mod"
    bad.write_text(mod.read_text().replace('"dim": 9', '"dim": 8'))
    assert main(["module", "show", str(bad)]) == 3
    assert "generators[0] must have 8 rows" in capsys.readouterr().err
    broken = tmp_path / "broken.mod"
    text = mod.read_text()
    broken.write_text(text[:text.index("[0]")] + "[1]" + text[text.index("[0]") + 3:])
    assert main(["module", "show", str(broken)]) == 4


def test_console_script_help():
    out = subprocess.run([sys.executable, "-m", "hopflab.cli", "--help"], capture_output=True, text=True)
    assert out.returncode == 0 and "magma-replay" in out.stdout

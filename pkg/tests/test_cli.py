import subprocess
import sys

from dwlink.cli import main


def test_usage_errors(capsys):
    assert _exit(["modperms", "--pair", "9,9"]) == 1
    assert _exit(["frobnicate"]) == 1
    assert main(["quandle", "--link", "99_99"]) == 1


def _exit(argv):
    try:
        return main(argv)
    except SystemExit as e:
        return e.code


def test_quandle_command(capsys):
    assert main(["quandle", "--link", "4_1"]) == 0
    assert "k=1:11 k=2:121 k=3:121 k=4:11" in capsys.readouterr().out


def test_modperms_check(capsys):
    assert main(["modperms", "--pair", "2,3", "--check", "--emit-table"]) == 0
    out = capsys.readouterr().out
    assert "2359296 T-respecting candidates, 8 modular permutations" in out
    assert "reference table: match" in out


def test_classify_and_report(tmp_path, capsys):
    assert main(["classify", "--link", "5_2", "--store", str(tmp_path), "--check"]) == 0
    assert "5_2\tweak=1\tstrong=1" in capsys.readouterr().out
    assert main(["report", "--link", "4_1", "--format", "tsv", "--check"]) == 0


def test_invariants_json(capsys):
    assert main(["invariants", "--link", "4_1", "--u", "0", "--format", "json"]) == 0
    assert '"link": "4_1"' in capsys.readouterr().out


def test_verify_single_u(capsys):
    assert main(["verify", "--u", "1", "--oracle", "--link", "5_2"]) == 0


def test_mismatch_exit_code(tmp_path, capsys):
    bad = tmp_path / "cat.tsv"
    bad.write_text("6_2\tAbAb\t3\n")  # figure-eight word under another id
    assert main(["classify", "--catalog", str(bad), "--check"]) == 2


def test_console_script():
    r = subprocess.run([sys.executable, "-m", "dwlink.cli", "quandle", "--link", "5_2", "--k", "1"], capture_output=True, text=True)
    assert r.returncode == 0 and "5_2 k=1:121" in r.stdout

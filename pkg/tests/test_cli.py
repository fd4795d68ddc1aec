import json
import subprocess
import sys

import pytest

from bookknots.cli import EXIT_CAPACITY, EXIT_FAILED, EXIT_OK, EXIT_USAGE, main


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_embed_even(capsys):
    code, out, _ = run(capsys, "embed", "--n", "8")
    assert code == EXIT_OK
    lines = out.splitlines()
    assert lines[0] == "K8: 4 sheets"
    assert all("(7 edges)" in line for line in lines[1:])


def test_embed_odd_json(capsys):
    code, out, _ = run(capsys, "embed", "--n", "9", "--output", "json")
    data = json.loads(out)
    assert [len(s["edges"]) for s in data["sheets"]] == [8, 8, 8, 8, 4]


def test_embed_small(capsys):
    code, out, _ = run(capsys, "embed", "--n", "3", "--output", "csv")
    assert code == EXIT_OK
    assert out.splitlines() == ["sheet,a,b", "1,1,2", "1,1,3", "2,2,3"]


@pytest.mark.parametrize("n,cycle,knot", [
    ("7", "(1,3,5,7,2,4,6)", "3_1"),
    ("9", "(1,3,5,7,9,2,4,6,8)", "5_1"),
    ("8", "(1,2,3,4,5,6,7,8)", "unknot"),
])
def test_identify(capsys, n, cycle, knot):
    code, out, _ = run(capsys, "identify", "--n", n, "--cycle", cycle)
    assert code == EXIT_OK
    assert out.splitlines()[0] == f"knot: {knot}"


def test_identify_outputs_codes(capsys):
    code, out, _ = run(capsys, "identify", "--n", "7", "--cycle", "(1,3,5,7,2,4,6)")
    lines = out.splitlines()
    assert "dt: -4,-6,-2" in lines
    pd_at = lines.index("pd:")
    assert len(lines[pd_at + 1:]) == 3
    assert all(len(line.split(",")) == 4 for line in lines[pd_at + 1:])
    code, out, _ = run(capsys, "identify", "--cycle", "(1,3,5,7,2,4,6)", "--output", "json")
    data = json.loads(out)
    assert data["knot"] == "3_1" and data["dt"] == [-4, -6, -2] and data["n"] == 7


def test_identify_parse_error(capsys):
    code, _, err = run(capsys, "identify", "--cycle", "(1,2,x)")
    assert code == EXIT_USAGE
    assert "position 5" in err


def test_identify_unidentified_exit_code(capsys):
    # without the bracket this unknot cannot be certified
    argv = ["identify", "--n", "9", "--cycle", "(1,2,4,6,8,3,5,9,7)", "--bracket-threshold", "0"]
    code, out, _ = run(capsys, *argv)
    assert code == EXIT_FAILED
    assert out.startswith("knot: unidentified[")
    code, _, _ = run(capsys, *argv, "--no-strict")
    assert code == EXIT_OK


def test_usage_errors(capsys):
    assert run(capsys, "embed", "--n", "2")[0] == EXIT_USAGE
    assert run(capsys, "embed")[0] == EXIT_USAGE
    assert run(capsys, "frobnicate")[0] == EXIT_USAGE
    assert run(capsys, "verify", "--theorem", "nope")[0] == EXIT_USAGE
    assert run(capsys, "census", "--n", "8", "--workers", "0")[0] == EXIT_USAGE


def test_capacity_error(capsys):
    code, _, err = run(capsys, "census", "--n", "13")
    assert code == EXIT_CAPACITY
    assert "capacity" in err


def test_census_csv(capsys):
    code, out, _ = run(capsys, "census", "--n", "8", "--output", "csv")
    assert code == EXIT_OK
    assert "8,3_1,21" in out.splitlines()
    assert "8,total_knotted,29" in out.splitlines()


def test_census_text_and_workers_are_deterministic(capsys):
    a = run(capsys, "census", "--n", "8")[1]
    b = run(capsys, "census", "--n", "8", "--workers", "2")[1]
    assert a == b
    assert a.splitlines()[-1] == "n=8: 3_1 21; f=21; total=29"


def test_census_checkpoint(capsys, tmp_path):
    path = tmp_path / "ck.json"
    code, out, _ = run(capsys, "census", "--n", "8", "--checkpoint", str(path), "--output", "json")
    assert code == EXIT_OK and path.exists()
    again = run(capsys, "census", "--n", "8", "--checkpoint", str(path), "--output", "json")[1]
    assert again == out
    path.write_text("{broken")
    assert run(capsys, "census", "--n", "8", "--checkpoint", str(path))[0] == EXIT_FAILED


def test_census_strict_failure(capsys):
    code, out, err = run(capsys, "census", "--n", "9", "--bracket-threshold", "0")
    assert code == EXIT_FAILED
    assert "unidentified" in err
    code, out, _ = run(capsys, "census", "--n", "9", "--bracket-threshold", "0", "--no-strict")
    assert code == EXIT_OK
    assert "unidentified" in out


@pytest.mark.parametrize("theorem", ["torus", "composite", "family", "lemmas"])
def test_verify(capsys, theorem):
    code, out, _ = run(capsys, "verify", "--theorem", theorem)
    assert code == EXIT_OK
    lines = out.splitlines()
    assert all(line.startswith("PASS") for line in lines[:-1])
    assert lines[-1].startswith(f"{theorem}: all passed")


def test_verify_torus_lists_instances(capsys):
    out = run(capsys, "verify", "--theorem", "torus")[1]
    for p, q in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)]:
        assert f"torus ({p},{q})" in out


def test_verify_extension_seeded(capsys):
    a = run(capsys, "verify", "--theorem", "extension", "--seed", "5", "--output", "json")
    b = run(capsys, "verify", "--theorem", "extension", "--seed", "5", "--output", "json")
    assert a == b and a[0] == EXIT_OK
    assert json.loads(a[1])["passed"] is True


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "bookknots", "embed", "--n", "4"],
                          capture_output=True, text=True)
    assert proc.returncode == 0
    assert proc.stdout.startswith("K4: 2 sheets")

import json
import subprocess
import sys

import pytest

from oblivround.cli import main

PENNIES = "2 2\n1 0\n0 1\n"
TRIANGLE = "3\n1 2\n2 3\n1 3\n"
DIAMOND = "source s\nsink t\ns a 3\ns b 1\na t 2\nb t 5\na b 4\n"


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text)
        return path

    return _write


def invoke(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


def test_game_matching_pennies(write, capsys):
    code, out, _ = invoke(capsys, "game", write("p.txt", PENNIES), "--eps", "0.1")
    assert code == 0
    doc = json.loads(out)
    assert doc["primal_value"] <= 0.6
    assert doc["support_size"] == 35 == doc["iterations"]
    assert sum(row["count"] for row in doc["support"]) == 35
    assert {row["index"] for row in doc["support"]} <= {1, 2}
    assert doc["gap"] <= 0.1 + 1e-9


def test_setcover_triangle(write, capsys):
    code, out, _ = invoke(capsys, "setcover", write("t.txt", TRIANGLE))
    doc = json.loads(out)
    assert code == 0
    assert doc["cover"] == [1, 2] and doc["size"] == 2
    assert doc["certificate"] == [[3, 2], [1, 1]]
    assert doc["harmonic_mean_dual"] > doc["dual_lower_bound"]


def test_pack_and_cover(write, capsys):
    code, out, _ = invoke(capsys, "pack", write("d.txt", DIAMOND), "--eps", "0.2")
    doc = json.loads(out)
    assert code == 0
    # max flow of the diamond is 4, set by the arcs leaving s
    assert doc["flow_value"] <= 4 + 1e-9
    assert doc["flow_value"] >= 4 / 1.2 - 1e-9
    assert all("path" in row for row in doc["support"])

    code, out, _ = invoke(capsys, "cover", write("t.txt", TRIANGLE), "--eps", "0.2")
    doc = json.loads(out)
    assert code == 0
    assert doc["primal_value"] >= 0.8 * doc["best_dual"] - 1e-9
    assert doc["fractional_cover_size"] >= 1.5 - 1e-9


def test_fixed_iterations(write, capsys):
    code, out, _ = invoke(capsys, "pack", write("p.txt", PENNIES), "--s", "7")
    assert code == 0
    assert json.loads(out)["iterations"] == 7


def test_integer_commands(write, capsys):
    # two elements keep m <= exp(b(-0.99)); the triangle's three do not
    path = write("s.txt", "2\n1\n1 2\n2\n")
    code, out, _ = invoke(capsys, "int-cover", path, "--eps", "0.99")
    assert code == 0
    doc = json.loads(out)
    assert doc["min_constraint_sum"] >= 0.01
    assert doc["size"] == 1 and doc["support"][0]["index"] == 2
    code, _, _ = invoke(capsys, "int-cover", write("t.txt", TRIANGLE), "--eps", "0.99")
    assert code == 6


def test_int_pack_infeasible(write, capsys):
    code, out, err = invoke(capsys, "int-pack", write("p.txt", PENNIES), "--eps", "0.1")
    assert code == 6
    assert out == ""
    assert err.startswith("error[6] PreconditionError")


@pytest.mark.parametrize(
    "command, text, extra, code",
    [
        ("game", "2 2\n1 0\n0 y\n", [], 3),
        ("game", "2 2\n1 0\n", [], 4),
        ("setcover", "3\n1 2\n", [], 8),
        ("setcover", PENNIES, [], 3),
        ("game", PENNIES, ["--eps", "0"], 6),
        ("int-pack", PENNIES, ["--delta1", "0.1"], 6),
    ],
)
def test_error_codes(write, capsys, command, text, extra, code):
    got, _, err = invoke(capsys, command, write("x.txt", text), *extra)
    assert got == code
    assert err.startswith(f"error[{code}]")


def test_missing_file(tmp_path, capsys):
    code, _, _ = invoke(capsys, "game", tmp_path / "absent.txt")
    assert code == 3


def test_out_flag_matches_stdout(write, capsys, tmp_path):
    path = write("p.txt", PENNIES)
    _, out, _ = invoke(capsys, "game", path)
    target = tmp_path / "result.json"
    code, printed, _ = invoke(capsys, "game", path, "--out", target)
    assert code == 0 and printed == ""
    assert target.read_text() == out


def test_perturbed_run_is_reproducible(write, capsys):
    path = write("p.txt", "3 3\n0.2 0.9 0.4\n0.7 0.1 0.5\n0.3 0.6 0.8\n")
    args = ("game", path, "--delta1", "0.05", "--delta2", "0.02", "--seed", "4")
    first = invoke(capsys, *args)
    second = invoke(capsys, *args)
    assert first == second and first[0] == 0
    doc = json.loads(first[1])
    assert doc["delta1"] == 0.05 and doc["seed"] == 4
    other = invoke(capsys, *args[:-1], "5")
    assert other[1] != first[1]


def test_module_entry_point(write):
    path = write("t.txt", TRIANGLE)
    runs = [
        subprocess.run([sys.executable, "-m", "oblivround", "setcover", str(path)],
                       capture_output=True, check=True).stdout
        for _ in range(2)
    ]
    assert runs[0] == runs[1]
    assert json.loads(runs[0])["size"] == 2

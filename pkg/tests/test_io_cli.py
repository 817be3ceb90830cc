import json
import shutil
import subprocess
from pathlib import Path

import numpy as np
import pytest
from hypothesis import given
from strategies import algebra_and_rng

from kleislian.algebra import Algebra, matrix_algebra
from kleislian.cli import main
from kleislian.io import (
    FormatError,
    algebra_from_json,
    algebra_to_json,
    element_from_json,
    element_to_json,
    load_map,
    map_from_json,
    map_to_json,
    save_map,
)
from kleislian.maps import ShapeMismatchError
from kleislian.zoo import depolarizing, random_cpu_map, transpose_map

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


# round trips ----------------------------------------------------------------------

@given(algebra_and_rng())
def test_element_round_trip(data):
    A, rng = data
    a = A.random(rng)
    back = element_from_json(json.loads(json.dumps(element_to_json(a))))
    assert back.equals(a)


def test_algebra_round_trip():
    A = Algebra((3, 1, 2))
    assert algebra_from_json(algebra_to_json(A)) == A
    assert algebra_from_json([2, 2]) == Algebra((2, 2))


def test_map_round_trip(tmp_path, rng):
    f = random_cpu_map(Algebra((2, 1)), matrix_algebra(3), rng)
    save_map(f, tmp_path / "f.json")
    g = load_map(tmp_path / "f.json")
    assert np.array_equal(f.matrix, g.matrix)
    assert g.dom == f.dom and g.cod == f.cod and g.name == f.name


def test_element_accepts_nested_rows_and_numbers():
    a = element_from_json({"algebra": [2], "blocks": [[[1, [0, 2]], [3, 4]]]})
    assert np.array_equal(a.blocks[0], [[1, 2j], [3, 4]])


@pytest.mark.parametrize("bad", [
    {"blocks": [0]},
    {"blocks": [2.5]},
    {"blocks": "M2"},
    {"blocks": [True]},
])
def test_bad_algebras(bad):
    with pytest.raises(FormatError):
        algebra_from_json(bad)


def test_bad_elements():
    with pytest.raises(FormatError):
        element_from_json({"algebra": [2], "blocks": [[1, 2, 3]]})
    with pytest.raises(FormatError):
        element_from_json({"algebra": [2], "blocks": [[1, 2, 3, "x"]]})
    with pytest.raises(FormatError):
        element_from_json({"blocks": [[1]]})
    with pytest.raises(ShapeMismatchError):
        element_from_json({"algebra": [1], "blocks": [[1]]}, matrix_algebra(2))


def test_bad_maps():
    obj = map_to_json(transpose_map(2))
    obj["basis_images"] = obj["basis_images"][:3]
    with pytest.raises(ShapeMismatchError):
        map_from_json(obj)
    with pytest.raises(FormatError):
        map_from_json({"dom": [2]})


# command line ---------------------------------------------------------------------

def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def report(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.mark.parametrize("name, label", [
    ("transpose_m2.json", "PU"),
    ("unitary_conjugation.json", "MIU"),
    ("depolarizing.json", "CPU"),
])
def test_demo_map_labels(capsys, name, label):
    code, rep = report(capsys, "map", "classify", str(DATA / name))
    assert code == 0
    assert rep["classification"]["label"] == label


def test_transpose_choi_spectrum(capsys):
    code, rep = report(capsys, "map", "choi", str(DATA / "transpose_m2.json"))
    assert code == 0
    assert np.allclose(rep["choi"]["eigenvalues"][0], [-1, 1, 1, 1])
    assert rep["choi"]["completely_positive"]["passed"] is False


def test_algebra_and_element_checks(capsys):
    for name in ("m2_plus_c.json", "element.json"):
        code, rep = report(capsys, "algebra", "check", str(DATA / name))
        assert code == 0 and rep["passed"]


@pytest.mark.parametrize("example", ["c", "c3", "stat-c2", "product", "equaliser"])
def test_verify_examples_pass(capsys, example):
    code, rep = report(capsys, "verify", example)
    assert code == 0 and rep["passed"]


def test_verify_c2_small(capsys):
    code, rep = report(capsys, "verify", "c2", "--trials", "5", "--codomain", "M2+C")
    assert code == 0 and rep["passed"]


@pytest.mark.parametrize("channel", ["unitary", "depolarizing"])
def test_verify_covariance_channels(capsys, channel):
    code, rep = report(capsys, "verify", "covariance", "--channel", channel)
    assert code == 0


def test_category_laws(capsys):
    code, rep = report(capsys, "category", "laws", "powerset", "--max-size", "1")
    assert code == 0 and rep["passed"]
    code, rep = report(capsys, "category", "laws", "option-neg", "--max-size", "1")
    assert code == 0
    assert rep["facts"]["L isomorphism"]["passed"] is False


def test_failing_report_exits_one(capsys):
    # zero tolerance exposes the floating point gap in |a*a| = |a|^2
    code, rep = report(capsys, "algebra", "check", str(DATA / "element.json"), "--tol", "0")
    assert code == 1 and rep["passed"] is False
    failed = [v for v in rep["verdicts"] if not v["passed"]]
    assert failed and all(v["name"] for v in failed)


@pytest.mark.parametrize("argv", [
    ["verify", "nope"],
    ["category", "laws", "bogus"],
    ["category", "laws", "powerset", "--max-size", "9"],
    ["map", "classify", "does-not-exist.json"],
])
def test_bad_input_exits_two(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == ""
    assert "error" in json.loads(err)


def test_corrupted_files_exit_two(capsys, tmp_path):
    broken = tmp_path / "broken.json"
    broken.write_text("{not json")
    assert run(capsys, "map", "classify", str(broken))[0] == 2
    short = map_to_json(depolarizing(2))
    short["basis_images"].pop()
    path = tmp_path / "short.json"
    path.write_text(json.dumps(short))
    assert run(capsys, "map", "choi", str(path))[0] == 2
    bad_alg = tmp_path / "alg.json"
    bad_alg.write_text(json.dumps({"blocks": [2, 0]}))
    assert run(capsys, "algebra", "check", str(bad_alg))[0] == 2


def _without_timing(text: str) -> str:
    data = json.loads(text)
    data.pop("timing")
    return json.dumps(data, sort_keys=True)


@pytest.mark.parametrize("argv", [
    ["map", "classify", str(DATA / "transpose_m2.json")],
    ["verify", "covariance", "--channel", "depolarizing"],
    ["category", "laws", "option", "--max-size", "1"],
])
def test_same_seed_same_bytes(capsys, argv):
    _, a, _ = run(capsys, *argv, "--seed", "7")
    _, b, _ = run(capsys, *argv, "--seed", "7")
    assert _without_timing(a) == _without_timing(b)


def test_seed_from_environment(capsys, monkeypatch):
    monkeypatch.setenv("WORKBENCH_SEED", "123")
    _, rep = report(capsys, "verify", "c")
    assert rep["seed"] == 123
    monkeypatch.delenv("WORKBENCH_SEED")
    _, rep = report(capsys, "verify", "c")
    assert rep["seed"] == 42
    _, rep = report(capsys, "verify", "c", "--seed", "5")
    assert rep["seed"] == 5


def test_pretty_table(capsys):
    code, out, _ = run(capsys, "verify", "c", "--pretty")
    assert code == 0 and "ALL PASS" in out


@pytest.mark.skipif(shutil.which("kleislian") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["kleislian", "verify", "c3"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["passed"]

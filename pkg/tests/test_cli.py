import io
import json
import subprocess
import sys

import pytest

from gensolve.affine import ParamMatrix
from gensolve.cli import run
from gensolve.io import (
    DimensionError,
    EntryParseError,
    MalformedJSONError,
    RaggedRowsError,
    dumps,
    parse_matrix,
    parse_matrix_file,
)
from gensolve.matrix import Matrix
from gensolve.oracle import AffineSet, affine_sets_equal, solution_to_affine_set
from gensolve.solve import Solution, Status

from conftest import FIXTURES, col, mat

INPUTS = FIXTURES / "inputs"


def invoke(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run([str(a) for a in argv], out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def write(tmp_path, name, m):
    path = tmp_path / name
    path.write_text(dumps(m.to_json()))
    return path


def solution_set(payload):
    general = ParamMatrix.from_json(payload["general"])
    particular = parse_matrix(payload["particular"])
    sol = Solution(Status.CONSISTENT, general, general.params(), particular)
    return solution_to_affine_set(sol)


# -- parsing -----------------------------------------------------------------


def test_parse_basic():
    m = parse_matrix({"rows": 2, "cols": 2, "data": [["1", "2"], ["3", "4"]]})
    assert m == mat([[1, 2], [3, 4]])
    m = parse_matrix({"rows": 1, "cols": 1, "data": [["-2/3"]]})
    assert m[0, 0] == col("-2/3")[0, 0]


@pytest.mark.parametrize(
    "obj, error",
    [
        ({"rows": 2, "cols": 2, "data": [["1", "2"], ["3"]]}, RaggedRowsError),
        ({"rows": 3, "cols": 2, "data": [["1", "2"]]}, DimensionError),
        ({"rows": -1, "cols": 2, "data": []}, DimensionError),
        ({"cols": 2, "data": []}, DimensionError),
        ({"rows": 1, "cols": 1, "data": [["1.5"]]}, EntryParseError),
        ({"rows": 1, "cols": 1, "data": [["2/0"]]}, EntryParseError),
        ([[1, 2]], DimensionError),
    ],
)
def test_parse_errors_are_distinct(obj, error):
    with pytest.raises(error):
        parse_matrix(obj)


def test_malformed_json_reports_position(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"rows": 1,\n "cols": 1,\n "data": [["1"]\n')
    with pytest.raises(MalformedJSONError) as info:
        parse_matrix_file(path)
    assert info.value.line == 4


def test_entry_error_names_field():
    with pytest.raises(EntryParseError, match=r"data\[1\]\[0\]"):
        parse_matrix({"rows": 2, "cols": 1, "data": [["1"], ["x"]]})


def test_fixture_round_trip():
    for path in sorted(INPUTS.glob("*.json")):
        m = parse_matrix_file(path)
        raw = json.loads(path.read_text())
        canonical = {"rows": raw["rows"], "cols": raw["cols"], "data": [[str(col(x)[0, 0]) for x in row] for row in raw["data"]]}
        assert dumps(m.to_json()) == dumps(canonical)
        assert parse_matrix(m.to_json()) == m


# -- commands ----------------------------------------------------------------


def test_solve_example_two():
    code, out, _ = invoke("solve", "--system", "axc", INPUTS / "ex1_A.json", INPUTS / "ex2_c.json")
    assert code == 0
    payload = json.loads(out)
    assert payload["status"] == "consistent" and payload["witness"] is None
    expected = AffineSet(col("-19/3", "20/3", 0), (col(1, -2, 1),))
    assert affine_sets_equal(solution_set(payload), expected)


def test_rnf_zero_matrix(tmp_path):
    path = write(tmp_path, "z.json", Matrix.zeros(2, 3))
    code, out, _ = invoke("rnf", path)
    assert code == 0
    payload = json.loads(out)
    assert payload["rank"] == 0
    assert parse_matrix(payload["Q"]) == Matrix.identity(2)
    assert set(payload) == {"rank", "Q", "P", "Qinv", "Pinv"}


def test_solve_two_sided_example():
    code, out, _ = invoke("solve", "--system", "axb-c", INPUTS / "axb_A.json", INPUTS / "axb_B.json", INPUTS / "axb_C.json")
    assert code == 0
    assert len(json.loads(out)["params"]) == 5


def test_inconsistent_exit_code(tmp_path):
    a = write(tmp_path, "a.json", mat([[1, 2, 3], [2, 4, 6]]))
    c = write(tmp_path, "c.json", col(1, 3))
    code, out, _ = invoke("solve", "--system", "axc", a, c)
    assert code == 2
    payload = json.loads(out)
    assert payload["status"] == "inconsistent"
    assert payload["witness"] == [1, 0]
    assert payload["general"] is None


@pytest.mark.parametrize(
    "system, operands, unknown_shape",
    [
        ("xbd", [mat([[1, 4], [2, 5], [3, 6]]), mat([[7, 8]])], (1, 3)),
        ("ax-c", [mat([[1, -2], [-2, 4]]), mat([[1, 2, 1], [-2, -4, -2]])], (2, 3)),
        ("xb-d", [mat([[1, 2, 1]] * 3), mat([[3, 6, 3]])], (1, 3)),
    ],
)
def test_other_systems(tmp_path, system, operands, unknown_shape):
    paths = [write(tmp_path, f"m{i}.json", m) for i, m in enumerate(operands)]
    code, out, _ = invoke("solve", "--system", system, *paths)
    assert code == 0
    payload = json.loads(out)
    assert (payload["general"]["rows"], payload["general"]["cols"]) == unknown_shape
    code, out, _ = invoke("check", "--system", system, *paths, "--against-oracle")
    assert code == 0 and json.loads(out)["agrees"] is True


def test_short_form_flag():
    code, out, _ = invoke("solve", "--system", "axc", "--short-form", INPUTS / "ex1_A.json", INPUTS / "ex2_c.json")
    assert code == 0
    assert json.loads(out)["params"] == ["v_1_1", "v_1_2"]
    code, _, err = invoke("solve", "--system", "axb-c", "--short-form", INPUTS / "axb_A.json", INPUTS / "axb_B.json", INPUTS / "axb_C.json")
    assert code == 1 and "short-form" in err


def test_ginverse_output():
    code, out, _ = invoke("ginverse", INPUTS / "ex1_A.json")
    assert code == 0
    payload = json.loads(out)
    assert payload["blocks"] == {"U": [2, 0], "V": [1, 2], "W": [1, 0]}
    assert payload["inverse"]["params"] == ["v_1_1", "v_1_2"]
    code, out, _ = invoke("ginverse", "--row-side", INPUTS / "axb_B.json")
    assert len(json.loads(out)["inverse"]["params"]) == 8


def test_pretty_output():
    code, out, _ = invoke("solve", "--system", "axc", INPUTS / "ex1_A.json", INPUTS / "ex2_c.json", "--output", "pretty")
    assert code == 0
    assert "x = [ -19/3 + 1*t_1 ]" in out
    code, out, _ = invoke("rnf", INPUTS / "axb_A.json", "--output", "pretty")
    assert out.startswith("rank = 1\n")


def test_usage_errors(tmp_path):
    assert invoke("solve", "--system", "axc", INPUTS / "ex1_A.json")[0] == 1
    assert invoke("bogus")[0] == 1
    assert invoke("rnf", tmp_path / "missing.json")[0] == 1
    code, _, err = invoke("solve", "--system", "axc", INPUTS / "ex1_A.json", INPUTS / "axb_A.json")
    assert code == 1 and "2x2" in err


def test_shape_error_names_operands(tmp_path):
    c = write(tmp_path, "c.json", col(1, 2, 3))
    code, _, err = invoke("solve", "--system", "axc", INPUTS / "ex1_A.json", c)
    assert code == 1
    assert "2x3" in err and "3x1" in err


def test_seed_env_var_accepted(monkeypatch):
    monkeypatch.setenv("GENSOLVE_SEED", "12345")
    code, out, _ = invoke("check", "--system", "axc", INPUTS / "ex1_A.json", INPUTS / "ex2_c.json")
    assert code == 0 and json.loads(out)["rohde_identity"] is True


def test_deterministic_bytes():
    argv = ("solve", "--system", "axb-c", INPUTS / "axb_A.json", INPUTS / "axb_B.json", INPUTS / "axb_C.json")
    assert invoke(*argv)[1] == invoke(*argv)[1]


def test_module_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "gensolve", "rnf", str(INPUTS / "axb_A.json")],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["rank"] == 1

import io
import json
from contextlib import redirect_stdout

import pytest

from tracesim import Field, Matrix, MatrixTuple, UnitSystem, dump_tuple, load_tuple
from tracesim.cli import main
from tracesim.tupleio import tuple_from_dict, tuple_to_dict

FQ = Field.rational()
FR = Field.real64()


def run_cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def write_tuple(tmp_path, name, x):
    path = tmp_path / name
    path.write_text(dump_tuple(x))
    return str(path)


@pytest.fixture
def diag_files(tmp_path):
    x = MatrixTuple.of(Matrix.diagonal(FQ, [1, 2, 2]))
    y = MatrixTuple.of(Matrix.diagonal(FQ, [1, 1, 2]))
    return write_tuple(tmp_path, "x.json", x), write_tuple(tmp_path, "y.json", y)


# -- round trips -----------------------------------------------------------------

def test_tuple_file_round_trip_rational(tmp_path):
    x = MatrixTuple.of(Matrix.from_rows(FQ, [[1, 2], [-1, 3]]))
    doc = tuple_to_dict(x)
    assert tuple_from_dict(doc) == x
    p = write_tuple(tmp_path, "t.json", x)
    assert load_tuple(p) == x


def test_tuple_file_round_trip_all_kinds(tmp_path):
    from fractions import Fraction
    xs = [
        MatrixTuple.of(Matrix.from_rows(FQ, [[Fraction(1, 3), 2], [-1, Fraction(7, 5)]])),
        MatrixTuple.of(Matrix.from_rows(FR, [[0.5, -1.25], [3.0, 2.0]])),
        MatrixTuple.of(Matrix.from_rows(Field.complex128(), [[1 + 2j, 0], [0, -1j]])),
    ]
    for i, x in enumerate(xs):
        p = write_tuple(tmp_path, "t%d.json" % i, x)
        assert load_tuple(p) == x
        # parse -> print -> parse is the identity at the byte level too
        assert dump_tuple(load_tuple(p)) == dump_tuple(x)


def test_malformed_rational_entry_rejected(tmp_path):
    from tracesim import TupleFileError
    for bad in ("1/-2", "1/0", "0.5", 1.5):
        path = tmp_path / "bad.json"
        path.write_text(json.dumps({"field": "rational", "n": 1, "d": 1,
                                    "matrices": [[bad]]}))
        with pytest.raises(TupleFileError):
            load_tuple(str(path))


# -- fingerprint command -------------------------------------------------------------

def test_fingerprint_line_output(diag_files):
    x, _ = diag_files
    code, out = run_cli("fingerprint", x, "-D", "1")
    assert code == 0
    assert out == "x1 = 5\n"


def test_fingerprint_zero_tuple(tmp_path):
    z = write_tuple(tmp_path, "z.json", MatrixTuple.of(Matrix.zeros(FQ, 2, 2)))
    code, out = run_cli("fingerprint", z, "-D", "2")
    assert code == 0
    for line in out.strip().splitlines():
        assert line.endswith("= 0")


def test_fingerprint_budget_diagnostic(tmp_path, capsys):
    z = write_tuple(tmp_path, "z.json", MatrixTuple.of(Matrix.zeros(FQ, 2, 2), Matrix.zeros(FQ, 2, 2)))
    code = main(["fingerprint", z, "-D", "12", "--budget", "100"])
    captured = capsys.readouterr()
    assert code != 0
    assert "enumeration budget exceeded" in captured.err


def test_fingerprint_deterministic_output(diag_files):
    x, _ = diag_files
    a = run_cli("fingerprint", x, "-D", "3")
    b = run_cli("fingerprint", x, "-D", "3")
    assert a == b


def test_fingerprint_json_output(diag_files):
    x, _ = diag_files
    code, out = run_cli("fingerprint", x, "-D", "2", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["entries"] == [["x1", "5"], ["x1 x1", "9"], ["x1 x1*", "9"]]


# -- similar command -------------------------------------------------------------------

def test_similar_not_similar(diag_files):
    x, y = diag_files
    code, out = run_cli("similar", x, y)
    assert code == 0
    assert out.strip() == "not-similar"


def test_similar_orthogonal_round_trip_with_witness(tmp_path):
    from conftest import pythagorean_rotation
    o0 = pythagorean_rotation(3, 2)
    x = MatrixTuple.of(Matrix.from_rows(FQ, [[1, 2], [2, 5]]))
    y = x.star_conjugated(o0)
    fx = write_tuple(tmp_path, "x.json", x)
    fy = write_tuple(tmp_path, "y.json", y)
    code, out = run_cli("similar", fx, fy, "--orthogonal", "--witness")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "similar"
    assert "witness:" in lines


def test_similar_json_output(diag_files):
    x, y = diag_files
    code, out = run_cli("similar", x, y, "--json")
    doc = json.loads(out)
    assert code == 0 and doc["verdict"] == "not-similar"


def test_similar_shape_mismatch_fails(tmp_path, diag_files, capsys):
    x, _ = diag_files
    small = write_tuple(tmp_path, "s.json", MatrixTuple.of(Matrix.identity(FQ, 2)))
    code = main(["similar", x, small])
    captured = capsys.readouterr()
    assert code != 0 and "error:" in captured.err


def test_similar_seeded_runs_are_byte_identical(tmp_path):
    import random
    from conftest import rand_rational_tuple, rand_invertible_int
    rng = random.Random(0)
    x = rand_rational_tuple(rng, 3, 2)
    p = rand_invertible_int(rng, FQ, 3)
    y = x.conjugated(p)
    fx = write_tuple(tmp_path, "x.json", x)
    fy = write_tuple(tmp_path, "y.json", y)
    runs = {run_cli("similar", fx, fy, "--mode", "monte-carlo", "--seed", "3",
                    "--witness")
            for _ in range(3)}
    assert len(runs) == 1
    code, out = next(iter(runs))
    assert code == 0 and out.startswith("similar")


# -- units command ---------------------------------------------------------------------

def test_units_ok_and_center(tmp_path):
    u = UnitSystem.standard(FQ, 2)
    f = write_tuple(tmp_path, "u.json", MatrixTuple.of(*u.flat()))
    code, out = run_cli("units", f, "--center")
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "epsilon: ok"
    assert lines[1] == "center basis (dim 1):"
    assert lines[2:] == ["1 0", "0 1"]


def test_units_violation_report(tmp_path):
    u = UnitSystem.standard(FQ, 2)
    mats = list(u.flat())
    mats[0] = Matrix.zeros(FQ, 2, 2)
    f = write_tuple(tmp_path, "u.json", MatrixTuple.of(*mats))
    code, out = run_cli("units", f)
    assert code == 0
    assert out.startswith("epsilon: zero unit at (i,j)=(0,0)")


def test_units_json_output(tmp_path):
    u = UnitSystem.standard(FQ, 2)
    f = write_tuple(tmp_path, "u.json", MatrixTuple.of(*u.flat()))
    code, out = run_cli("units", f, "--center", "--json")
    doc = json.loads(out)
    assert code == 0
    assert doc["epsilon"] == "ok"
    assert doc["center_basis"] == [["1", "0", "0", "1"]]


def test_units_requires_square_count(tmp_path, capsys):
    f = write_tuple(tmp_path, "u.json",
                    MatrixTuple.of(Matrix.identity(FQ, 2), Matrix.identity(FQ, 2)))
    code = main(["units", f])
    captured = capsys.readouterr()
    assert code != 0 and "N^2" in captured.err


# -- sylvester command --------------------------------------------------------------------

def test_sylvester_solve_output(tmp_path):
    a = write_tuple(tmp_path, "a.json", MatrixTuple.of(Matrix.diagonal(FQ, [1, 2])))
    b = write_tuple(tmp_path, "b.json", MatrixTuple.of(Matrix.from_rows(FQ, [[3]])))
    cpath = tmp_path / "c.json"
    cpath.write_text(json.dumps({"field": "rational", "n": 2, "cols": 1, "d": 1,
                                 "matrices": [["1", "1"]]}))
    code, out = run_cli("sylvester", a, b, str(cpath))
    assert code == 0
    assert out.splitlines() == ["solution:", "-1/2", "-1"]


def test_sylvester_unique_flag(tmp_path):
    a = write_tuple(tmp_path, "a.json", MatrixTuple.of(Matrix.diagonal(FQ, [1, 2])))
    b = write_tuple(tmp_path, "b.json", MatrixTuple.of(Matrix.from_rows(FQ, [[3]])))
    code, out = run_cli("sylvester", a, b, "--unique")
    assert code == 0 and out.strip() == "unique: yes"
    z = write_tuple(tmp_path, "z.json", MatrixTuple.of(Matrix.from_rows(FQ, [[0]])))
    code, out = run_cli("sylvester", z, z, "--unique")
    assert code == 0 and out.strip() == "unique: no"


# -- corpus command -----------------------------------------------------------------------

def test_corpus_list_and_run():
    code, out = run_cli("corpus", "list")
    assert code == 0 and "no-trace" in out
    code, out = run_cli("corpus", "run")
    assert code == 0
    assert all(line.endswith(": ok") for line in out.strip().splitlines())


def test_corpus_run_single(capsys):
    code, out = run_cli("corpus", "run", "no-trace")
    assert code == 0 and out.strip() == "fixture no-trace: ok"
    code = main(["corpus", "run", "nonexistent"])
    captured = capsys.readouterr()
    assert code != 0 and "unknown fixture" in captured.err

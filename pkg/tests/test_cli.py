import csv
import json
import subprocess
import sys

import pytest

from subzeta.cli import SCHEMAS, main, validate, validator


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


def test_schemas_are_valid():
    for name in SCHEMAS:
        validator(name).check_schema(validator(name).schema)


def test_count_heisenberg(capsys, tmp_path):
    path = tmp_path / "counts.csv"
    code, doc = run_json(capsys, "count", "heisenberg", "--p", "2", "--kmax", "3", "--csv", str(path))
    assert code == 0 and doc["counts"] == [[0, 1], [1, 3], [2, 7], [3, 19]]
    rows = list(csv.reader(path.open()))
    assert rows == [["k", "a_k"], ["0", "1"], ["1", "3"], ["2", "7"], ["3", "19"]]


def test_count_thread_independent(capsys, monkeypatch):
    outs = []
    for threads in ("1", "3"):
        monkeypatch.setenv("SUBZETA_THREADS", threads)
        outs.append(run(capsys, "count", "M:3", "--p", "2", "--kmax", "3", "--compact")[1])
    outs.append(run(capsys, "count", "M:3", "--p", "2", "--kmax", "3", "--compact", "--threads", "4")[1])
    assert outs[0] == outs[1] == outs[2]


def test_reduced_2(capsys):
    code, doc = run_json(capsys, "reduced", "2")
    assert code == 0
    assert doc["series"] == "1/((1-T)^2*(1-T^3))"
    assert doc["fe"] == {"sign": -1, "k": 5}
    assert doc["beta"] == [[2, 2, 1]]
    assert doc["coefficients"][:4] == [1, 2, 3, 5]


def test_reduced_not_near_rectangle(capsys):
    code, doc = run_json(capsys, "reduced", "3,2", "--kmax", "4")
    assert code == 0 and doc["fe"] is None and not doc["near_rectangle"] and len(doc["beta"]) >= 2


def test_info(capsys):
    code, doc = run_json(capsys, "info", "fil4")
    v = doc["condition"]["violation"]
    assert code == 0 and not doc["condition"]["ok"]
    assert v["generator"] == 2 and v["entry"] == [3, 5] and v["block"] == [2, 4]
    assert doc["class"] == 4 and doc["Z_ranks"][:4] == [0, 1, 2, 3]
    code, doc = run_json(capsys, "info", "heisenberg")
    assert doc["condition"]["ok"] and doc["N"] == [3, 2, 0]


def test_catalog(capsys):
    code, doc = run_json(capsys, "catalog")
    names = {r["name"]: r for r in doc}
    assert code == 0 and names["heisenberg"]["condition"] == "ok"
    assert names["fil4"]["condition"].startswith("violation")


def test_series_and_funeq(capsys):
    code, doc = run_json(capsys, "series", "c1", "--n", "2", "--kmax", "3")
    assert code == 0 and doc["series"] == ["1", "1+q", "1+q+q^2", "1+q+q^2+q^3"]
    assert doc["value"] == "1/((1-t)*(1-q*t))" and doc["shape"] == {"sign": 1, "qexp": 1, "texp": 2}
    code, doc = run_json(capsys, "check-funeq", "abelian-inert", "--n", "2")
    assert code == 0 and doc["ok"]
    code, doc = run_json(capsys, "check-funeq", "c1", "--n", "3", "--shape", "1,3,3")
    assert code == 1 and not doc["ok"] and "witness" in doc


def test_funeq_from_file(capsys, tmp_path):
    from subzeta.formulas import zeta_abelian_inert
    f = tmp_path / "w.json"
    f.write_text(json.dumps(zeta_abelian_inert(1).to_json()))
    code, doc = run_json(capsys, "check-funeq", "--file", str(f), "--shape", "1,1,3")
    assert code == 0 and doc["ok"]
    f.write_text('{"num": "oops"}')
    assert run(capsys, "check-funeq", "--file", str(f), "--shape", "1,1,3")[0] == 5


def test_algebra_file(capsys, tmp_path):
    f = tmp_path / "a.json"
    f.write_text(json.dumps({"rank": 3, "brackets": [[0, 1, [[2, 1]]]], "grading": [2, 1]}))
    code, doc = run_json(capsys, "count", "--file", str(f), "--p", "3", "--kmax", "2")
    assert code == 0 and doc["counts"] == [[0, 1], [1, 4], [2, 13]]
    f.write_text(json.dumps({"rank": 3, "brackets": [[0, 1, [[9, 1]]]]}))
    assert run(capsys, "info", "--file", str(f))[0] == 5
    f.write_text("[1, 2")
    assert run(capsys, "info", "--file", str(f))[0] == 5
    assert run(capsys, "info", "--file", str(tmp_path / "missing.json"))[0] == 5


@pytest.mark.parametrize("argv,code", [
    (["info", "nonesuch"], 3),
    (["series", "nonesuch", "--n", "2"], 3),
    (["verify", "nonesuch"], 3),
    (["reduced", "2,3"], 4),
    (["reduced", "x"], 4),
    (["info", "L:1,2"], 4),
])
def test_error_codes(capsys, argv, code):
    got, _, err = run(capsys, *argv)
    assert got == code and err.startswith("subzeta:")


def test_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["count", "heisenberg"])
    assert exc.value.code == 2


def test_verify_suite(capsys):
    code, doc = run_json(capsys, "verify", "worked-example")
    assert code == 0 and doc["ok"]
    validate("verdict", doc)
    code, out, _ = run(capsys, "verify", "interior", "--text")
    assert code == 0 and out.startswith("[PASS]")


def test_entry_point():
    r = subprocess.run([sys.executable, "-m", "subzeta", "reduced", "1", "--compact"],
                       capture_output=True, text=True, check=True)
    assert json.loads(r.stdout)["series"] == "1/(1-T)^2"

import json

import pytest

from stretchcert.cli import main


def run(argv, capsys):
    status = main(argv)
    out, err = capsys.readouterr()
    return status, (json.loads(out) if out.strip() else None), err


def test_classify(capsys):
    status, doc, _ = run(["classify", "x^4-x^3-x^2-x+1"], capsys)
    assert status == 0 and doc["verdict"] == "Salem"
    assert doc["trace_polynomial"] == "x^2-x-3"
    assert doc["salem_root"]["decimal"].startswith("1.72208")


def test_classify_bad_input(capsys):
    status, doc, err = run(["classify", "x^2+y"], capsys)
    assert status == 2 and doc is None and "error" in err


def test_certify_and_verify(tmp_path, capsys):
    path = tmp_path / "cert.json"
    status, _, _ = run(["certify", "x^4-x^3-x^2-x+1", "--out", str(path)], capsys)
    assert status == 0
    doc = json.loads(path.read_text())
    assert doc["k"] == 3 and doc["thurston"]["verdict"] == "pseudoAnosov"
    assert doc["thurston"]["stretch_is_power"] == {"power": 6, "passed": True}
    status, ver, _ = run(["certify", "--verify", str(path)], capsys)
    assert status == 0 and ver["passed"]
    doc["Qk"][0][0] = "4"
    path.write_text(json.dumps(doc))
    status, ver, _ = run(["certify", "--verify", str(path)], capsys)
    assert status == 1 and not ver["passed"]


def test_certify_not_salem(capsys):
    status, _, _ = run(["certify", "x^3-x-1"], capsys)
    assert status == 2


def test_certify_search_exhausted(capsys):
    # trace polynomial t - 40 needs an entry of size 40
    status, _, err = run(["certify", "x^2-40x+1", "--search-bound", "6"], capsys)
    assert status == 3 and "bound" in err


def test_surface(tmp_path, capsys):
    dump = tmp_path / "s.txt"
    status, doc, _ = run(["surface", "--matrix", "[[2,3],[3,2]]", "--dump", str(dump)], capsys)
    assert status == 0
    assert doc["report"]["genus"] == 3 and doc["report"]["intersection"] == [[2, 3], [3, 2]]
    assert dump.read_text().strip()


def test_surface_routing_file(tmp_path, capsys):
    plan = {"strips": [[0, 0, 1], [0, 1, 1]], "routes": [[[0, 0], [0, 1], [1, 0]], [[0, 0], [1, 0], [1, 1]]],
            "twists": [[True, False, False], [False, False, False]]}
    f = tmp_path / "plan.json"
    f.write_text(json.dumps(plan))
    status, doc, _ = run(["surface", "--matrix", "[[2,1],[1,2]]", "--routing", str(f)], capsys)
    assert status == 0 and doc["report"]["orientable"] is False


def test_thurston_product(capsys):
    status, doc, _ = run(["thurston", "--matrix", "[[8,4],[4,6]]", "--pf-product"], capsys)
    assert status == 0
    assert doc["pf"]["nu"]["minpoly"] == "x^2-14x+32"
    assert doc["report"]["stretch"]["decimal"].startswith("9.01214")
    assert doc["veech"]["passed"]


def test_thurston_weights(capsys):
    status, doc, _ = run(["thurston", "--matrix", "[[1,2],[2,1]]", "--m-weights", "1,2", "--n-weights", "2,1",
                          "--word", "C^2 D"], capsys)
    assert status == 0 and "heights" in doc["pf"]
    status, _, _ = run(["thurston", "--matrix", "[[1,2],[2,1]]", "--m-weights", "1,0"], capsys)
    assert status == 2


def test_pipeline_field(capsys):
    status, doc, _ = run(["pipeline-field", "x^2-5"], capsys)
    assert status == 0 and doc["field_equality"]["passed"]
    status, doc, _ = run(["pipeline-field", "x^3-3x+1", "--units", "x", "--units", "x-1"], capsys)
    assert status == 0 and doc["field_equality"]["passed"]


def test_missing_file(capsys):
    status, _, _ = run(["certify", "--verify", "/nonexistent.json"], capsys)
    assert status == 2


def test_no_command():
    with pytest.raises(SystemExit):
        main([])

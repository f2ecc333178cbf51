import json

import pytest

from icequiver import ParseError
from icequiver.cli import run_command
from icequiver.io import (dimer_to_document, dumps_canonical, parse_iqp,
                          serialize_iqp)
from icequiver.samples import pentagon_disk_dimer

TRIANGLE_DOC = {
    "vertices": [{"id": 1, "frozen": True}, {"id": 2, "frozen": False},
                 {"id": 3, "frozen": True}],
    "arrows": [{"id": "a1", "tail": 1, "head": 2, "frozen": False},
               {"id": "a2", "tail": 2, "head": 3, "frozen": False},
               {"id": "a3", "tail": 3, "head": 1, "frozen": True}],
    "potential": [{"coeff": "1", "cycle": ["a3", "a2", "a1"]}],
}

REDUCTION_DOC = {
    "vertices": [{"id": 1, "frozen": True}, {"id": 2, "frozen": False},
                 {"id": 3, "frozen": True}],
    "arrows": [{"id": "g1", "tail": 2, "head": 1, "frozen": False},
               {"id": "g2", "tail": 3, "head": 2, "frozen": False},
               {"id": "g3", "tail": 1, "head": 3, "frozen": False},
               {"id": "g4", "tail": 3, "head": 1, "frozen": True}],
    "potential": [{"coeff": "1", "cycle": ["g1", "g2", "g3"]},
                  {"coeff": "1", "cycle": ["g3", "g4"]}],
}

BABA_DOC = {
    "vertices": [{"id": 1, "frozen": False}, {"id": 2, "frozen": False}],
    "arrows": [{"id": "a", "tail": 1, "head": 2, "frozen": False},
               {"id": "b", "tail": 2, "head": 1, "frozen": False}],
    "potential": [{"coeff": "1", "cycle": ["b", "a", "b", "a"]}],
}


@pytest.fixture
def triangle_file(tmp_path):
    path = tmp_path / "triangle.json"
    path.write_text(json.dumps(TRIANGLE_DOC))
    return str(path)


@pytest.fixture
def reduction_file(tmp_path):
    path = tmp_path / "reduction.json"
    path.write_text(json.dumps(REDUCTION_DOC))
    return str(path)


@pytest.fixture
def baba_file(tmp_path):
    path = tmp_path / "baba.json"
    path.write_text(json.dumps(BABA_DOC))
    return str(path)


# -- document round trips ---------------------------------------------------------

def test_parse_triangle_matches_fixture(triangle, triangle_file):
    q, w = parse_iqp(open(triangle_file).read())
    assert q == triangle[0]
    assert w == triangle[1]


def test_round_trip_identity(triangle):
    q, w = triangle
    text = serialize_iqp(q, w)
    q2, w2 = parse_iqp(text)
    assert (q2, w2) == (q, w)
    assert serialize_iqp(q2, w2) == text


def test_parse_empty_document():
    q, w = parse_iqp("{}")
    assert q.vertices == () and q.arrows == ()
    assert w.is_zero()


def test_parse_noncomposable_cycle():
    doc = dict(TRIANGLE_DOC)
    doc["potential"] = [{"coeff": "1", "cycle": ["a3", "a1", "a2"]}]
    with pytest.raises(ParseError):
        parse_iqp(json.dumps(doc))


def test_parse_bad_json_position():
    with pytest.raises(ParseError) as err:
        parse_iqp("{\n  broken\n}")
    assert "line" in str(err.value)


# -- commands -----------------------------------------------------------------------

def test_cli_validate_ok(triangle_file):
    code, out = run_command(["validate", triangle_file])
    assert code == 0
    assert json.loads(out) == {"valid": True, "violations": []}


def test_cli_validate_failure(tmp_path):
    doc = {
        "vertices": [{"id": 1, "frozen": True}, {"id": 2, "frozen": False}],
        "arrows": [{"id": "f", "tail": 1, "head": 2, "frozen": True}],
        "potential": [],
    }
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, out = run_command(["validate", str(path)])
    assert code == 1
    payload = json.loads(out)
    assert not payload["valid"]
    assert payload["violations"]


def test_cli_parse_error(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text("{nope")
    code, out = run_command(["validate", str(path)])
    assert code == 2
    assert "parse error" in out


def test_cli_reduce_matches_expected(reduction_file):
    code, out = run_command(["reduce", reduction_file])
    assert code == 0
    doc = json.loads(out)
    assert [a["id"] for a in doc["arrows"]] == ["g1", "g2", "g3"]
    assert [a for a in doc["arrows"] if a["id"] == "g3"][0]["frozen"] is True
    assert doc["potential"] == [{"coeff": "1", "cycle": ["g1", "g2", "g3"]}]


def test_cli_mutate_triangle(triangle_file):
    code, out = run_command(["mutate", triangle_file, "--at", "2"])
    assert code == 0
    doc = json.loads(out)
    arrows = {(a["id"], a["tail"], a["head"], a["frozen"]) for a in doc["arrows"]}
    assert arrows == {("[a2,a1]", 1, 3, True), ("a1*", 2, 1, False),
                      ("a2*", 3, 2, False)}
    assert doc["potential"] == [{"coeff": "1", "cycle": ["[a2,a1]", "a1*", "a2*"]}]


def test_cli_mutate_sequence_recovers(triangle_file):
    code, out = run_command(["mutate", triangle_file, "--seq", "2,2"])
    assert code == 0
    doc = json.loads(out)
    arrows = {(a["id"], a["tail"], a["head"], a["frozen"]) for a in doc["arrows"]}
    assert arrows == {("a1", 1, 2, False), ("a2", 2, 3, False),
                      ("[a1*,a2*]", 3, 1, True)}


def test_cli_mutate_precondition(triangle_file):
    code, out = run_command(["mutate", triangle_file, "--at", "1"])
    assert code == 3
    assert "precondition" in out


def test_cli_jacobian_total(triangle_file):
    code, out = run_command(["jacobian", triangle_file, "--truncate", "6"])
    assert code == 0
    payload = json.loads(out)
    assert payload["total"] == 7
    assert payload["truncation"] == 6
    assert payload["vertices"] == [1, 2, 3]


def test_cli_rigid_baba(baba_file):
    code, out = run_command(["rigid", baba_file, "--truncate", "6"])
    assert code == 0
    payload = json.loads(out)
    assert payload["rigid"] is False
    assert payload["witness"] == ["b", "a"]
    code, text = run_command(["rigid", baba_file, "--truncate", "6",
                              "--format", "text"])
    assert text == "NotRigid(ba)\n"


def test_cli_involution(triangle_file):
    code, out = run_command(["involution", triangle_file, "--at", "2"])
    assert code == 0
    assert json.loads(out) == {"quiver_match": True, "potential_match": True,
                               "dims_match": True}


def test_cli_nondeg(triangle_file):
    code, out = run_command(["nondeg", triangle_file, "--depth", "2"])
    assert code == 0
    payload = json.loads(out)
    assert payload["ok_to_depth"] is True


def test_cli_fz(triangle_file):
    code, out = run_command(["fz", triangle_file, "--at", "2"])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["arrows"]) == 3


def test_cli_dimer_import(tmp_path):
    path = tmp_path / "dimer.json"
    path.write_text(dumps_canonical(dimer_to_document(pentagon_disk_dimer())))
    code, out = run_command(["dimer-import", str(path)])
    assert code == 0
    doc = json.loads(out)
    assert len(doc["vertices"]) == 7
    assert sum(1 for v in doc["vertices"] if v["frozen"]) == 5
    assert len(doc["arrows"]) == 14
    assert sum(1 for a in doc["arrows"] if a["frozen"]) == 5
    pos = sum(1 for t in doc["potential"] if not t["coeff"].startswith("-"))
    neg = sum(1 for t in doc["potential"] if t["coeff"].startswith("-"))
    assert (pos, neg) == (5, 3)


def test_cli_determinism(triangle_file):
    outputs = {run_command(["mutate", triangle_file, "--at", "2"])[1]
               for _ in range(3)}
    assert len(outputs) == 1
    outputs = {run_command(["jacobian", triangle_file, "--truncate", "6"])[1]
               for _ in range(3)}
    assert len(outputs) == 1

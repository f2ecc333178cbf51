"""Regenerate the frontend test fixtures from the real backend.

Captures actual session-API responses and the matching CLI outputs, so the
frontend tests compare against genuine server bytes.  Run from the repo root:

    python3 frontend/fixtures/make_fixtures.py
"""

import json
import pathlib

from fastapi.testclient import TestClient

from icequiver.cli import run_command
from icequiver.service import create_app

HERE = pathlib.Path(__file__).parent

TRIANGLE = {
    "vertices": [{"id": 1, "frozen": True}, {"id": 2, "frozen": False},
                 {"id": 3, "frozen": True}],
    "arrows": [{"id": "a1", "tail": 1, "head": 2, "frozen": False},
               {"id": "a2", "tail": 2, "head": 3, "frozen": False},
               {"id": "a3", "tail": 3, "head": 1, "frozen": True}],
    "potential": [{"coeff": "1", "cycle": ["a3", "a2", "a1"]}],
}


def strip_ids(payload: dict) -> dict:
    out = dict(payload)
    out["id"] = "SESSION"
    return out


def main() -> None:
    client = TestClient(create_app())
    sid = client.post("/sessions", json={"iqp": TRIANGLE, "truncate": 8}).json()["id"]
    initial = client.get(f"/sessions/{sid}").json()
    analysis = client.get(f"/sessions/{sid}/analysis").json()
    frozen_error = client.post(f"/sessions/{sid}/mutate", json={"vertex": 1})
    mutated = client.post(f"/sessions/{sid}/mutate", json={"vertex": 2}).json()
    undone = client.post(f"/sessions/{sid}/undo").json()
    remutated = client.post(f"/sessions/{sid}/mutate", json={"vertex": 2}).json()
    mutated2 = client.post(f"/sessions/{sid}/mutate", json={"vertex": 2}).json()

    (HERE / "triangle.doc.json").write_text(json.dumps(TRIANGLE, indent=2) + "\n")
    (HERE / "state.initial.json").write_text(
        json.dumps(strip_ids(initial), indent=2) + "\n")
    (HERE / "state.mutated.json").write_text(
        json.dumps(strip_ids(mutated), indent=2) + "\n")
    (HERE / "state.undone.json").write_text(
        json.dumps(strip_ids(undone), indent=2) + "\n")
    (HERE / "state.remutated.json").write_text(
        json.dumps(strip_ids(remutated), indent=2) + "\n")
    (HERE / "state.mutated2.json").write_text(
        json.dumps(strip_ids(mutated2), indent=2) + "\n")
    (HERE / "error.frozen.json").write_text(
        json.dumps({"status": frozen_error.status_code,
                    "body": frozen_error.json()}, indent=2) + "\n")
    (HERE / "analysis.json").write_text(json.dumps(analysis, indent=2) + "\n")

    # a session opened on the imported five-leg disk dimer, for render tests
    from icequiver.io import dimer_to_document, dumps_canonical
    from icequiver.samples import pentagon_disk_dimer
    import tempfile
    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(dumps_canonical(dimer_to_document(pentagon_disk_dimer())))
        dimer_path = fh.name
    code, out = run_command(["dimer-import", dimer_path])
    assert code == 0
    dimer_sid = client.post("/sessions",
                            json={"iqp": json.loads(out)}).json()["id"]
    dimer_state = client.get(f"/sessions/{dimer_sid}").json()
    (HERE / "state.dimer.json").write_text(
        json.dumps(strip_ids(dimer_state), indent=2) + "\n")

    with tempfile.NamedTemporaryFile("w", suffix=".json", delete=False) as fh:
        fh.write(json.dumps(TRIANGLE))
        path = fh.name
    code, out = run_command(["mutate", path, "--truncate", "8", "--at", "2"])
    assert code == 0
    (HERE / "cli.mutate2.txt").write_text(out)
    code, out = run_command(["mutate", path, "--truncate", "8", "--seq", "2,2"])
    assert code == 0
    (HERE / "cli.mutate22.txt").write_text(out)
    code, out = run_command(["reduce", path, "--truncate", "8"])
    assert code == 0
    (HERE / "cli.initial.txt").write_text(out)
    print("fixtures written to", HERE)


if __name__ == "__main__":
    main()

"""CLI and HTTP surfaces: byte-stable outputs, session endpoints, bisimulation."""

import json

import pytest
from fastapi.testclient import TestClient

from chromacut.cli import main
from chromacut.constructions import cone, icosahedron
from chromacut.graphs import SimplicialGraph
from chromacut.refine import RefinementSession, parse_move
from chromacut.server import create_app


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_gen_check_pipeline(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "gen", "octahedron")
    assert code == 0
    graph_file = tmp_path / "octa.json"
    graph_file.write_text(out)
    code, out, _ = run_cli(capsys, "check", str(graph_file))
    assert code == 0
    report = json.loads(out)
    assert report["kind"] == "Sphere" and report["dim"] == 2 and report["euler"] == 2
    assert report["gauss_bonnet_ok"]


def test_gen_byte_stable(capsys):
    outs = set()
    for _ in range(2):
        code, out, _ = run_cli(capsys, "gen", "torus:4,4")
        assert code == 0
        outs.add(out)
    assert len(outs) == 1


def test_gen_unknown_name(capsys):
    code, _, err = run_cli(capsys, "gen", "hyperbolic")
    assert code == 1
    assert "error" in err


def test_chromatic_fisk(tmp_path, capsys):
    code, out, _ = run_cli(capsys, "gen", "fisk", "--out", str(tmp_path / "fisk.json"))
    assert code == 0
    code, out, _ = run_cli(capsys, "chromatic", str(tmp_path / "fisk.json"))
    assert code == 0
    assert out.strip() == "5"


def test_chromatic_polynomial_cli(tmp_path, capsys):
    path = tmp_path / "moebius.json"
    run_cli(capsys, "gen", "moebius", "--out", str(path))
    code, out, _ = run_cli(capsys, "chromatic", str(path), "--polynomial")
    assert code == 0
    coeffs = json.loads(out)
    assert coeffs[-1] == 1 and len(coeffs) == 8


def test_hodge_cli(tmp_path, capsys):
    path = tmp_path / "moebius.json"
    run_cli(capsys, "gen", "moebius", "--out", str(path))
    code, out, _ = run_cli(capsys, "hodge", str(path), "--betti", "--mckean", "1.0")
    assert code == 0
    doc = json.loads(out)
    assert doc["betti"] == [1, 1, 0]
    assert abs(doc["mckean_singer"]["supertrace"]) < 1e-8


def test_hodge_operator_export(tmp_path, capsys):
    path = tmp_path / "moebius.json"
    run_cli(capsys, "gen", "moebius", "--out", str(path))
    code, out, _ = run_cli(capsys, "hodge", str(path), "--operator", "0")
    assert code == 0
    rows = [line.split() for line in out.strip().splitlines()]
    assert len(rows) == 14 and all(len(r) == 7 for r in rows)
    assert all(sorted(r) .count("-1") == 1 for r in rows)
    code, out, _ = run_cli(capsys, "hodge", str(path), "--laplacian", "0")
    assert code == 0
    first = out.strip().splitlines()[0].split()
    assert first == ["4", "-1", "0", "-1", "-1", "0", "-1"]


def test_color_boundary_cli(tmp_path, capsys):
    path = tmp_path / "octa.json"
    run_cli(capsys, "gen", "octahedron", "--out", str(path))
    code, out, _ = run_cli(capsys, "color", str(path), "--method", "boundary",
                           "--strategy", "cone", "--driver", "greedy")
    assert code == 0
    doc = json.loads(out)
    assert set(doc["colors"]) == {str(v) for v in range(6)}


def test_color_exact_failure_exit_code(tmp_path, capsys):
    path = tmp_path / "fisk.json"
    run_cli(capsys, "gen", "fisk", "--out", str(path))
    code, _, err = run_cli(capsys, "color", str(path), "--method", "exact", "--colors", "4")
    assert code == 1
    assert "not 4-colorable" in err


def test_refine_script_driver(tmp_path, capsys):
    host_path = tmp_path / "host.json"
    run_cli(capsys, "gen", "cone:icosahedron", "--out", str(host_path))
    script = tmp_path / "moves.txt"
    script.write_text("cut 0 12\n")
    out_path = tmp_path / "refined.json"
    code, _, err = run_cli(capsys, "refine", str(host_path), "--driver", f"script:{script}",
                           "--out", str(out_path), "--trace", str(tmp_path / "trace.csv"),
                           "--log", str(tmp_path / "log.txt"))
    assert code == 0
    assert "outcome=" in err
    refined = SimplicialGraph.from_json(out_path.read_text())
    assert len(refined) == 14
    assert (tmp_path / "trace.csv").read_text().startswith("step,phi,oddcount")
    assert (tmp_path / "log.txt").read_text() == "cut 0 12\n"


def test_refine_anneal_byte_stable(tmp_path, capsys):
    host_path = tmp_path / "host.json"
    run_cli(capsys, "gen", "cone:icosahedron", "--out", str(host_path))
    outputs = []
    for run in range(2):
        out_path = tmp_path / f"refined{run}.json"
        code, _, _ = run_cli(capsys, "refine", str(host_path), "--driver", "anneal",
                             "--steps", "150", "--seed", "7", "--out", str(out_path))
        assert code == 0
        outputs.append(out_path.read_text())
    assert outputs[0] == outputs[1]


def test_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        main(["color", "nowhere.json"])  # missing required --method
    assert info.value.code == 2


# -- HTTP service ------------------------------------------------------------------------


@pytest.fixture()
def client():
    return TestClient(create_app())


def make_session(client, construction="icosahedron", strategy="cone"):
    resp = client.post("/sessions", json={"construction": construction, "strategy": strategy})
    assert resp.status_code == 200
    return resp.json()


def test_session_lifecycle(client):
    doc = make_session(client)
    sid = doc["id"]
    graph = client.get(f"/sessions/{sid}/graph").json()
    assert graph["revision"] == 0
    assert graph["boundary"] == list(range(12))
    assert set(graph["layout"]) == {str(v) for v in graph["graph"]["vertices"]}

    odd = client.get(f"/sessions/{sid}/odd-edges").json()
    assert odd["odd_count"] == 12 and odd["phi"] == 12

    cut = client.post(f"/sessions/{sid}/cut", json={"a": 0, "b": 12})
    assert cut.status_code == 200
    body = cut.json()
    assert body["revision"] == 1
    assert body["parity_delta"]

    undo = client.post(f"/sessions/{sid}/undo")
    assert undo.status_code == 200 and undo.json()["revision"] == 2
    again = client.get(f"/sessions/{sid}/graph").json()
    assert again["graph"] == graph["graph"]


def test_odd_edges_match_curvature_module(client):
    from chromacut.curvature import odd_edge_set

    doc = make_session(client)
    sid = doc["id"]
    odd = client.get(f"/sessions/{sid}/odd-edges").json()
    expected = odd_edge_set(cone(icosahedron()).graph)
    assert {tuple(item["edge"]) for item in odd["odd"]} == expected


def test_unknown_session_404(client):
    assert client.get("/sessions/nope/graph").status_code == 404


def test_illegal_cut_422(client):
    sid = make_session(client)["id"]
    resp = client.post(f"/sessions/{sid}/cut", json={"a": 0, "b": 1})
    assert resp.status_code == 422


def test_stale_revision_409(client):
    sid = make_session(client)["id"]
    ok = client.post(f"/sessions/{sid}/cut", json={"a": 0, "b": 12},
                     headers={"If-Match-Revision": "0"})
    assert ok.status_code == 200
    stale = client.post(f"/sessions/{sid}/cut", json={"a": 1, "b": 12},
                        headers={"If-Match-Revision": "0"})
    assert stale.status_code == 409


def test_anneal_endpoint_and_coloring(client):
    sid = make_session(client, "octahedron")["id"]
    coloring = client.get(f"/sessions/{sid}/coloring").json()
    assert coloring["status"] == "proper"
    assert set(coloring["boundary_colors"]) == {str(v) for v in range(6)}
    out = client.post(f"/sessions/{sid}/anneal-step", json={"n": 5, "seed": 0}).json()
    assert out["outcome"] == "Solved"


def test_http_bisimulation_with_apply_script(client):
    # mutations through the API replayed through apply_script give a
    # byte-identical host
    sid = make_session(client)["id"]
    for a, b in ((0, 12), (2, 13), (3, 14)):
        assert client.post(f"/sessions/{sid}/cut", json={"a": a, "b": b}).status_code == 200
    client.post(f"/sessions/{sid}/undo")
    log_text = client.get(f"/sessions/{sid}/log").json()["log"]
    final_graph = client.get(f"/sessions/{sid}/graph").json()["graph"]

    replay = RefinementSession(cone(icosahedron()))
    replay.apply_script([parse_move(line) for line in log_text.splitlines()])
    assert replay.graph.to_doc() == final_graph

    trace = client.get(f"/sessions/{sid}/trace").json()["trace"]
    assert trace[0] == {"step": 0, "phi": 12, "odd": 12}

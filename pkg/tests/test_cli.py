import json
import os
import subprocess
import sys

import pytest

from momentcat import cli, dendro, momentkit, operadkit
from momentcat.skeletons import delta, gamma, parse_morphism


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def payload(capsys, *argv):
    code, out, _ = run(capsys, *argv)
    return code, json.loads(out)


@pytest.fixture
def one_binary(tmp_path):
    path = tmp_path / "one-binary.json"
    path.write_text(json.dumps({"schema": "momentcat/1", "kind": "collection", "generators": {"2": ["m"]}}))
    return str(path)


def test_verify_delta_mc_fails(capsys):
    code, data = payload(capsys, "verify", "delta", "--bound", "4", "--axioms", "M")
    assert code == 1 and data["schema"] == "momentcat/1"
    status = {r["axiom"]: r["passed"] for r in data["reports"]}
    assert status == {"factorisation": True, "M1": True, "M2": True, "MC": False}


def test_verify_counterexamples_refail(capsys):
    D = delta()
    _, data = payload(capsys, "verify", "delta", "--bound", "3", "--axioms", "M,MC")
    witnesses = [w for r in data["reports"] if r["axiom"] == "MC" for w in r["counterexamples"]]
    assert witnesses
    for w in witnesses:
        r = parse_morphism(D, w[0])
        assert D.is_active(r) and len(D.inert_sections(r)) > 1
        assert D.target(r) == 0


def test_verify_gamma_passes(capsys):
    code, data = payload(capsys, "verify", "gamma", "--bound", "3", "--axioms", "m,M,MC,hyper,ext,coop")
    assert code == 0 and data["passed"]


def test_verify_strong_unitality_of_gamma_fails(capsys):
    code, _ = payload(capsys, "verify", "gamma", "--bound", "2", "--axioms", "segal")
    assert code == 1
    code, _ = payload(capsys, "verify", "plus:gamma", "--bound", "3", "--axioms", "segal")
    assert code == 0


def test_verify_omega_not_rigid(capsys):
    code, data = payload(capsys, "verify", "omega", "--bound", "3", "--axioms", "coop")
    assert code == 1 and data["reports"][0]["axiom"] == "rigid"


def test_factorize(capsys):
    code, data = payload(capsys, "factorize", "gamma", "[{2,3}]:1->3")
    assert code == 0
    assert data["active"] == "[{1,2}]:1->2" and data["inert"] == "[{2}|{3}]:2->3"


def test_pushforward(capsys):
    code, data = payload(capsys, "pushforward", "gamma", "[{2}]:1->3", "[{1}]:1->1")
    assert code == 0 and data["pushforward"] == "[{}|{2}|{}]:3->3"


def test_hom_counts(capsys):
    for m in range(4):
        for n in range(4):
            _, data = payload(capsys, "hom", "gamma", str(m), str(n))
            assert data["count"] == (m + 1) ** n


def test_plus_hom(capsys):
    unit = json.dumps({"maps": ["[{1,2}]:1->2"]})
    code, data = payload(capsys, "plus-hom", "gamma", unit, unit, "--list")
    assert code == 0 and data["count"] == len(data["morphisms"]) == 2


def test_free_operad_catalan(capsys, one_binary):
    code, data = payload(capsys, "free-operad", "delta", one_binary, "--bound", "6")
    assert code == 0 and data["counts"] == [1, 1, 2, 5, 14, 42] and not data["truncated"]


def test_free_operad_on_empty_collection(capsys, tmp_path):
    path = tmp_path / "empty.json"
    path.write_text(json.dumps(cli.serialize(operadkit.Collection(gamma(), {}), "collection")))
    _, data = payload(capsys, "free-operad", "gamma", str(path), "--bound", "3")
    assert data["counts"] == [1, 0, 0]


def test_equiv(capsys):
    code, _ = payload(capsys, "equiv", "gamma-plus-omega", "--edges", "4")
    assert code == 1
    code, data = payload(capsys, "equiv", "gamma-plus-omega", "--edges", "4", "--stump-free")
    assert code == 0 and data["report"]["passed"]


def test_export_dot(capsys):
    fig = {"edges": list(range(8)), "root": 0,
           "vertices": [{"out": 0, "in": [1, 2]}, {"out": 1, "in": []}, {"out": 2, "in": [3, 4]},
                        {"out": 3, "in": []}, {"out": 4, "in": [5, 6, 7]}]}
    code, out, _ = run(capsys, "export-dot", "omega", json.dumps(fig))
    assert code == 0 and out.startswith("digraph")
    code, out, _ = run(capsys, "export-dot", "gamma", "3")
    assert code == 0 and out.startswith("digraph")


def test_pretty_output(capsys):
    code, out, _ = run(capsys, "verify", "delta", "--bound", "2", "--axioms", "M", "--pretty")
    assert code == 1 and "FAIL" in out and not out.startswith("{")


@pytest.mark.parametrize("argv", [
    ["verify", "sigma", "--bound", "3"],
    ["verify", "gamma", "--bound", "0"],
    ["verify", "gamma", "--bound", "3", "--axioms", "Q"],
    ["factorize", "gamma", "[{2,3}:1->3"],
    ["factorize", "gamma", "[{2,3}]:1->2"],
    ["equiv", "delta-plus", "--edges", "3"],
    [],
])
def test_usage_errors(capsys, argv):
    code, _, err = run(capsys, *argv)
    assert code == 2


def test_notation_error_has_position(capsys):
    code, _, err = run(capsys, "factorize", "gamma", "[{2,x}]:1->3")
    assert code == 2 and "column" in err


def test_schema_mismatch(capsys, tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({"schema": "momentcat/0", "kind": "collection", "generators": {}}))
    code, _, err = run(capsys, "free-operad", "gamma", str(path), "--bound", "2")
    assert code == 2 and "schema" in err
    with pytest.raises(cli.SchemaError):
        cli.deserialize({"schema": "momentcat/1", "kind": "lrb"}, "dendrix")


def test_round_trip_dendrix():
    d = dendro.from_code((1, ((1, ()), (1, ((1, ()), (1, ((0,), (0,), (0,))))))))
    data = json.loads(json.dumps(cli.serialize(d, "dendrix")))
    assert cli.deserialize(data, "dendrix") == d


def test_round_trip_lrb():
    L = momentkit.braid_face_monoid(3)
    data = json.loads(json.dumps(cli.serialize(L, "lrb")))
    back = cli.deserialize(data, "lrb")
    assert len(back) == 13 and back.table == L.table and back.elements == L.elements


def test_round_trip_operads():
    for C in (gamma(), delta()):
        for make in (operadkit.associative_operad, operadkit.terminal_operad):
            O = make(C, 3)
            data = json.loads(json.dumps(cli.serialize(O, "operad", 3)))
            assert operadkit.operads_equal(O, cli.deserialize(data, "operad", C), 3).passed


def test_lrb_selector(capsys, tmp_path):
    path = tmp_path / "braid.json"
    path.write_text(json.dumps(cli.serialize(momentkit.braid_face_monoid(3), "lrb")))
    code, data = payload(capsys, "verify", f"lrb:{path}", "--bound", "1", "--axioms", "m")
    assert code == 0


def test_deterministic_output(one_binary):
    argv = [sys.executable, "-m", "momentcat.cli", "free-operad", "gamma", one_binary, "--bound", "4"]
    outs = set()
    for threads in ("1", "4", "4"):
        env = {**os.environ, "MOMENTCAT_THREADS": threads}
        outs.add(subprocess.run(argv, capture_output=True, env=env, check=True).stdout)
    assert len(outs) == 1
    argv = [sys.executable, "-m", "momentcat.cli", "verify", "delta", "--bound", "3", "--axioms", "M,m"]
    runs = {subprocess.run(argv, capture_output=True).stdout for _ in range(2)}
    assert len(runs) == 1

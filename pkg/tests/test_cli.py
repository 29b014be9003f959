import json
import subprocess
import sys

import pytest

from posetpoly.cli import RunConfig, main
from posetpoly.errors import BadParams


def run(args, capsys):
    code = main(args)
    out, err = capsys.readouterr()
    return code, out, err


@pytest.fixture
def files(tmp_path):
    chain = tmp_path / "chain3.json"
    chain.write_text(json.dumps({"elements": ["x", "y", "w"], "relations": [["x", "y"], ["y", "w"]]}))
    grid = tmp_path / "grid.json"
    grid.write_text(json.dumps({"elements": ["a", "b", "c", "d"],
                                "relations": [["a", "b"], ["a", "c"], ["b", "d"], ["c", "d"]]}))
    z = tmp_path / "z.json"
    z.write_text(json.dumps({"z": {"a": 1, "b": 1, "c": 1}}))
    half = tmp_path / "half.json"
    half.write_text(json.dumps({"z": {"a": "1/3", "b": "1/3", "c": "1/3", "d": "1/3"}}))
    U = tmp_path / "U.json"
    U.write_text(json.dumps([["0", "0", "1", "0"], ["0", "0", "0", "1"]]))
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    cyc = tmp_path / "cyc.json"
    cyc.write_text(json.dumps({"elements": ["a", "b"], "relations": [["a", "b"], ["b", "a"]]}))
    return {p.stem: str(p) for p in [chain, grid, z, half, U, bad, cyc]}


def test_width_chain(files, capsys):
    code, out, _ = run(["width", "--poset", files["chain3"]], capsys)
    assert code == 0 and json.loads(out)["width"] == 1


def test_enumerate_count(capsys):
    code, out, _ = run(["enumerate", "--grassmann", "2", "4", "--m", "1", "--M", "1"], capsys)
    assert code == 0 and json.loads(out)["count"] == 19


def test_poincare(capsys):
    code, out, _ = run(["poincare", "--grassmann", "3", "6"], capsys)
    report = json.loads(out)
    assert report["graph_closure"]["coefficients"] == [1, 2, 4, 7, 10, 11, 10, 6, 3, 1]


def test_excess_and_member(files, capsys):
    code, out, _ = run(["excess", "--poset", files["grid"], "--z", files["z"], "--m", "1"], capsys)
    assert json.loads(out)["excess"] == 1
    for method in ["flow", "brute"]:
        _, out, _ = run(["member", "--poset", files["grid"], "--z", files["half"], "--m", "1", "--method", method], capsys)
        assert json.loads(out)["member"] is True


def test_decompose_and_partition(files, capsys):
    code, out, _ = run(["decompose", "--poset", files["grid"], "--z", files["z"], "--m", "2"], capsys)
    assert code == 0 and json.loads(out)["antichains"] == [["a"], ["b", "c"]]
    code, out, _ = run(["partition", "--poset", files["chain3"], "--m", "1", "--M", "2"], capsys)
    assert json.loads(out)["antichains"] == [["w"]]


def test_domain_errors_exit_1(files, capsys):
    code, out, err = run(["width", "--poset", files["cyc"]], capsys)
    assert code == 1 and out == ""
    assert json.loads(err)["error"] == "CycleDetected"
    code, _, err = run(["partition", "--poset", files["grid"], "--m", "2"], capsys)
    assert code == 1 and json.loads(err)["error"] == "HypothesisFails"
    code, _, err = run(["excess", "--poset", files["chain3"], "--z", files["z"]], capsys)
    assert code == 1 and json.loads(err)["error"] == "UnknownLabel"
    code, _, err = run(["excess", "--poset", files["grid"], "--z", files["z"], "--method", "brute", "--brute-cap", "2"], capsys)
    assert code == 1 and json.loads(err)["error"] == "BruteSizeExceeded"


def test_malformed_exit_2(files, capsys):
    assert run(["width", "--poset", files["bad"]], capsys)[0] == 2
    assert run(["width", "--poset", "/nonexistent.json"], capsys)[0] == 2
    assert run(["excess", "--poset", files["grid"]], capsys)[0] == 2
    assert run(["fflv", "--m", "1"], capsys)[0] == 2
    with pytest.raises(SystemExit) as exc:
        main(["width", "--m", "x"])
    assert exc.value.code == 2


def test_env_brute_cap(files, capsys, monkeypatch):
    monkeypatch.setenv("POSETPOLY_BRUTE_CAP", "3")
    code, _, err = run(["excess", "--poset", files["grid"], "--z", files["z"], "--method", "brute"], capsys)
    assert code == 1 and json.loads(err)["error"] == "BruteSizeExceeded"


def test_geometry_commands(files, capsys):
    _, out, _ = run(["stratum", "--subspace", files["U"]], capsys)
    assert json.loads(out)["k"] == 2
    _, out, _ = run(["fiber", "--subspace", files["U"]], capsys)
    assert json.loads(out)["proj_dim"] == 3
    _, out, _ = run(["strata", "--grassmann", "2", "4"], capsys)
    assert [s["k"] for s in json.loads(out)["strata"]] == [0, 1, 2]


def test_rep_commands(capsys):
    _, out, _ = run(["dims", "--grassmann", "2", "4", "--m", "1"], capsys)
    report = json.loads(out)
    assert report["lattice_points"] == report["cyclic_span_dim"] == report["weyl_dim"] == 6
    _, out, _ = run(["basis-check", "--grassmann", "2", "4", "--m", "1", "--M", "1"], capsys)
    assert json.loads(out)["ok"] is True
    _, out, _ = run(["relation-check", "--grassmann", "2", "4", "--m", "1", "--M", "1", "--seed", "4"], capsys)
    assert json.loads(out)["seed"] == 4
    _, out, _ = run(["fflv", "--grassmann", "2", "4", "--m", "2"], capsys)
    assert json.loads(out)["count"] == json.loads(out)["weyl_dim"] == 20


def test_poset_emits_loadable_json(capsys, tmp_path):
    _, out, _ = run(["poset", "--grassmann", "2", "5"], capsys)
    path = tmp_path / "r.json"
    path.write_text(out)
    _, out, _ = run(["width", "--poset", str(path)], capsys)
    assert json.loads(out)["width"] == 2


@pytest.mark.parametrize("args", [
    ["relation-check", "--grassmann", "2", "4", "--m", "1", "--M", "1", "--seed", "9"],
    ["enumerate", "--grassmann", "2", "4", "--m", "1", "--M", "1"],
    ["strata", "--grassmann", "3", "6"],
])
def test_byte_identical_subprocess(args):
    cmd = [sys.executable, "-m", "posetpoly", *args]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_run_config():
    with pytest.raises(BadParams):
        RunConfig(brute_cap=0)


def test_verify_exit_status(capsys, monkeypatch):
    from posetpoly import verify
    from posetpoly.verify import CheckResult

    monkeypatch.setattr(verify, "run_all", lambda seed, include_properties: [CheckResult("x", False, "boom")])
    code, out, _ = run(["verify", "--seed", "3"], capsys)
    assert code == 1 and json.loads(out)["seed"] == 3
    monkeypatch.setattr(verify, "run_all", lambda seed, include_properties: [CheckResult("x", True, "fine")])
    assert run(["verify"], capsys)[0] == 0

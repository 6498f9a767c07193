import io
import json
import subprocess
import sys

import pytest

from tropline.cli import load_scene, run_command
from tropline.errors import ParseError, ValidationError

SCENE = {
    "field": "Q",
    "lines": {"L1": "x + y + 1", "L2": "x + t*y + t^3"},
    "points": {"P": {"coords": ["t + t^2", "-1 - t - t^2"], "on": ["L1", "L2"]}},
}


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run_command(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def scene_file(tmp_path):
    path = tmp_path / "scene.json"
    path.write_text(json.dumps(SCENE))
    return str(path)


def test_val():
    code, out, _ = run(["val", "t+t^2"])
    assert code == 0 and json.loads(out) == {"value": "-1"}
    assert json.loads(run(["val", "0"])[1]) == {"value": "-inf"}
    assert json.loads(run(["val", "w*t^2", "--field", "Q(w)"])[1]) == {"value": "-2"}


def test_domain_and_usage_errors():
    code, out, err = run(["val", "3/0"])
    assert code == 1 and out == "" and json.loads(err)["error"] == "ParseError"
    code, _, err = run(["val"])
    assert code == 2 and "expr" in err
    code, _, err = run(["intersect", "x+y"])
    assert code == 2 and "--set" in err
    code, _, err = run(["val", "t", "--seed", "abc"])
    assert code == 2 and "--seed" in err
    code, _, err = run(["nonsense"])
    assert code == 2


def test_intersect_set_worked_pair():
    code, out, _ = run(["intersect", "--set", "x + y + 1", "x + t*y + t^3"])
    report = json.loads(out)["report"]
    assert code == 0
    assert report == {"kind": "finite", "points": [{"point": ["-1", "0"], "multiplicity": 1}], "total_multiplicity": 1}


def test_intersect_infinite_and_stable():
    report = json.loads(run(["intersect", "--set", "x + y + 1", "x + y + t"])[1])["report"]
    assert report["kind"] == "infinite"
    report = json.loads(run(["intersect", "--stable", "x + y + 1", "x + y + t"])[1])["report"]
    assert report["total_multiplicity"] == 1


def test_tropicalize_and_curve():
    obj = json.loads(run(["tropicalize", "x + t*y + t^3"])[1])
    poly = obj["tropicalizations"][0]["polynomial"]
    assert {tuple(m["exp"]): m["coeff"] for m in poly} == {(1, 0): "0", (0, 1): "-1", (0, 0): "-3"}
    obj = json.loads(run(["curve", "x + t*y + t^3"])[1])
    assert obj["curves"][0]["complex"]["vertices"] == [["-3", "-2"]]


def test_seminorm_compare():
    code, out, _ = run(["seminorm", "compare", "--phi1", "x^2", "--phi2", "x^2 + x^3", "--rho=-1/2",
                        "--probe", "x^2 - y", "--probes", "5"])
    obj = json.loads(out)
    assert code == 0 and obj["linear_agreement"] is True
    assert obj["probes"][0]["values"] == ["-inf", "-3/2"]
    assert all(p["agree"] for p in obj["probes"][1:])
    assert obj["witness"]["values"] == ["-inf", "-3/2"]
    code, _, err = run(["seminorm", "compare", "--phi1", "x", "--phi2", "x^2"])
    assert code == 1 and json.loads(err)["error"] == "CancellationRisk"


def test_load_scene(scene_file, tmp_path):
    scene = load_scene(scene_file)
    assert len(scene.lines) == 2 and len(scene.points) == 1
    bad = dict(SCENE, points={"P": {"coords": ["t", "0"], "on": ["L1"]}})
    with pytest.raises(ValidationError, match="L1"):
        load_scene(bad)
    with pytest.raises(ParseError):
        load_scene(dict(SCENE, points={"P": [[{"q": "3/0", "c": "1"}], "0"]}))
    broken = tmp_path / "broken.json"
    broken.write_text('{"lines": {\n  "L1": "x + y" ,,\n}}')
    with pytest.raises(ParseError) as info:
        load_scene(str(broken))
    assert info.value.line == 2


def test_separate_and_transversalize(scene_file):
    obj = json.loads(run(["separate", "--scene", scene_file])[1])
    assert obj["images"] == [["-1", "0"]]
    code, out, _ = run(["transversalize", "--scene", scene_file, "--seed", "3"])
    cert = json.loads(out)
    assert code == 0 and cert["checker"] == []
    assert cert["pairs"][0]["point"] == ["-1", "0"] and cert["pairs"][0]["multiplicity"] == 1
    assert cert["separation"] == [["-1", "0"]]


def test_plot_to_file(scene_file, tmp_path):
    target = tmp_path / "out.svg"
    code, out, _ = run(["plot", "--scene", scene_file, "--out", str(target)])
    assert code == 0 and out == ""
    text = target.read_text()
    assert text.startswith("<?xml") and 'data-label="P"' in text


def test_plot_empty_scene(tmp_path):
    path = tmp_path / "empty.json"
    path.write_text("{}")
    code, _, err = run(["plot", "--scene", str(path)])
    assert code == 1 and json.loads(err)["error"] == "EmptyScene"


def test_seed_flag_beats_environment(scene_file, monkeypatch):
    monkeypatch.setenv("TROPLINE_SEED", "11")
    env_run = json.loads(run(["transversalize", "--scene", scene_file])[1])
    assert env_run["seed"] == 11
    flag_run = json.loads(run(["transversalize", "--scene", scene_file, "--seed", "4"])[1])
    assert flag_run["seed"] == 4
    monkeypatch.setenv("TROPLINE_SEED", "x")
    assert run(["transversalize", "--scene", scene_file])[0] == 2


def test_console_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tropline.cli", "val", "t^(1/2) + 2*t"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and json.loads(proc.stdout) == {"value": "-1/2"}
    proc = subprocess.run([sys.executable, "-m", "tropline.cli", "val", "t +"], capture_output=True, text=True)
    assert proc.returncode == 1

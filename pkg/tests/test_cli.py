import json

import pytest

from peterweyl.cli import load_config, main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr()


def test_group_command(capsys):
    code, out = run(capsys, "group", "--family", "SL2", "--q", "3", "--characters")
    data = json.loads(out.out)
    assert code == 0 and data["order"] == 24 and data["classes"] == 7
    assert len(data["character_table"]) == 7


def test_idempotents_from_flags(capsys):
    code, out = run(capsys, "idempotents", "--family", "SL2", "--q", "2", "--character", "0")
    data = json.loads(out.out)
    assert code == 0 and data["ok"]
    rep = data["reports"][0]
    assert rep["dimensions"]["dim H_Xi"] == 5
    assert [m["degree"] for m in rep["idempotents"]["Xi"]] == [1, 2]


def test_yaml_config(tmp_path, capsys):
    cfg = tmp_path / "run.yaml"
    cfg.write_text("max_conductor: 120\nsections: [dimensions]\nscenarios:\n  - {family: GL2, q: 3, character: [0, 1]}\n")
    out_file = tmp_path / "report.json"
    code, _ = run(capsys, "run", "--config", str(cfg), "--out", str(out_file))
    data = json.loads(out_file.read_text())
    assert code == 0 and data["reports"][0]["dimensions"]["dim H_sigma"] == 1


def test_json_config(tmp_path):
    cfg = tmp_path / "run.json"
    cfg.write_text(json.dumps({"scenarios": [{"family": "SL2", "q": 3, "character": [1], "seed": 4}]}))
    assert load_config(cfg)["scenarios"][0]["seed"] == 4


def test_morita_and_involutions(capsys):
    code, out = run(capsys, "morita", "--family", "SL2", "--q", "2", "--character", "0", "--tables")
    data = json.loads(out.out)
    assert code == 0 and "center_tables" in data["reports"][0]["morita"]
    code, out = run(capsys, "involutions", "--family", "SL2", "--q", "2", "--character", "0", "--action")
    data = json.loads(out.out)
    inv = data["reports"][0]["involutions"]
    assert code == 0 and inv["small involution"] == "bullet"
    assert len(inv["action"]["matrix"]) == 5


def test_affine_command(capsys):
    code, out = run(capsys, "affine", "Th[1]*T[s1]", "--bullet", "--star", "--specialize", "2")
    data = json.loads(out.out)
    assert code == 0
    entry = data["Th[1]*T[s1]"]
    assert entry["Bernstein basis"] == "(1*q^0)*Th[1]T[s1]"
    assert entry["bullet"] == "(1*q^-1)*T[s1s0s1]"
    code, out = run(capsys, "affine", "--length", "4")
    assert code == 0 and json.loads(out.out)["relations"]["theta additive"]


def test_errors_are_reported(capsys):
    code, out = run(capsys, "group", "--family", "GL3", "--q", "3")
    assert code == 2 and "GL3" in out.err
    code, out = run(capsys, "affine", "T[s7]")
    assert code == 2
    with pytest.raises(SystemExit):
        main(["group"])

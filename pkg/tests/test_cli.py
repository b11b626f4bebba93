import json

import pytest

from arlabel.cli import main
from arlabel.harness import parse_csv


def test_run_and_stats(tmp_path, capsys):
    out = tmp_path / "results.csv"
    rc = main(
        [
            "run",
            "--conditions", "angle,situated",
            "--tasks", "identify",
            "--sizes", "10",
            "--trials", "2",
            "--seed", "42",
            "--out", str(out),
        ]
    )
    assert rc == 0
    with open(out, encoding="utf-8", newline="") as fp:
        records = parse_csv(fp)
    assert len(records) == 4

    rc = main(
        [
            "stats",
            "--in", str(out),
            "--by", "condition,task",
            "--friedman", "proxy_time_s",
        ]
    )
    assert rc == 0
    captured = capsys.readouterr().out
    assert "condition=angle" in captured
    assert "friedman(proxy_time_s): chi2=" in captured


def test_stats_rejects_bad_group(tmp_path):
    out = tmp_path / "r.csv"
    main(["run", "--conditions", "angle", "--tasks", "identify",
          "--sizes", "10", "--trials", "1", "--seed", "1", "--out", str(out)])
    assert main(["stats", "--in", str(out), "--by", "answer"]) == 2


def test_scene_and_layout_round_trip(tmp_path, capsys):
    scene_path = tmp_path / "scene.json"
    assert main(["scene", "--size", "10", "--seed", "42", "--out", str(scene_path)]) == 0
    doc = json.loads(scene_path.read_text())
    assert len(doc["objects"]) == 10

    layout_path = tmp_path / "layout.json"
    rc = main(
        [
            "layout",
            "--scene", str(scene_path),
            "--condition", "angle",
            "--yaw", "30",
            "--pitch", "0",
            "--out", str(layout_path),
        ]
    )
    assert rc == 0
    layout = json.loads(layout_path.read_text())
    assert layout["strategy"] == "angle"
    assert len(layout["boxes"]) == 10


def test_scene_prints_without_out(capsys):
    assert main(["scene", "--size", "10", "--seed", "1"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["seed"] == 1


def test_unknown_command_rejected():
    with pytest.raises(SystemExit):
        main(["flarp"])

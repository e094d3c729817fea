import json
import pathlib

import pytest
from click.testing import CliRunner

from cantorsi.cli import main
from cantorsi.construction import RadiiSchedule, build_hierarchy


@pytest.fixture()
def runner():
    return CliRunner()


def test_build_prints_counts_and_persists(runner, tmp_path):
    res = runner.invoke(main, ["build", "--schedule", "128,128",
                               "--out", str(tmp_path)])
    assert res.exit_code == 0, res.output
    assert "level 1: 128 nodes" in res.output
    assert "level 2: 16384 nodes" in res.output
    assert (tmp_path / "tree.json").exists()
    meta = json.loads((tmp_path / "metadata.json").read_text())
    assert meta["schedule"] == [128, 128]
    assert "timestamp" not in json.dumps(meta).lower()


def test_build_depth_zero(runner, tmp_path):
    res = runner.invoke(main, ["build", "--schedule", "128", "--depth", "0",
                               "--out", str(tmp_path)])
    assert res.exit_code == 0
    assert "level 0: 1 nodes" in res.output


def test_invalid_schedule_exits_2(runner):
    res = runner.invoke(main, ["build", "--schedule", "100,128"])
    assert res.exit_code == 2
    assert "violates" in res.output


def test_malformed_schedule_exits_2(runner):
    res = runner.invoke(main, ["verify", "--schedule", "abc"])
    assert res.exit_code == 2


def test_verify_ok(runner):
    res = runner.invoke(main, ["verify", "--schedule", "128,128"])
    assert res.exit_code == 0
    assert "property (c) ok" in res.output


def test_eval_exterior_point(runner):
    res = runner.invoke(main, ["eval", "--schedule", "128", "--depth", "0",
                               "--z", "2,0"])
    assert res.exit_code == 0
    assert "0.375" in res.output


def test_eval_on_support_exits_3(runner):
    tree = build_hierarchy(RadiiSchedule((128,)))
    c = complex(tree.levels[1].centers[0])
    res = runner.invoke(main, ["eval", "--schedule", "128",
                               "--z", f"{c.real},{c.imag}"])
    assert res.exit_code == 3


def test_eval_bad_point_exits_2(runner):
    res = runner.invoke(main, ["eval", "--schedule", "128", "--z", "oops"])
    assert res.exit_code == 2


def test_experiment_ctilde(runner, tmp_path):
    res = runner.invoke(main, ["experiment", "compute-ctilde",
                               "--out", str(tmp_path)])
    assert res.exit_code == 0, res.output
    assert (tmp_path / "compute-ctilde.csv").exists()
    assert (tmp_path / "compute-ctilde.json").exists()


def test_experiment_density_decay_deterministic(runner, tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    for out in (out1, out2):
        res = runner.invoke(main, ["experiment", "density-decay",
                                   "--schedule", "128,256", "--seed", "7",
                                   "--out", str(out), "--threads", "4"])
        assert res.exit_code == 0, res.output
    for name in ("density-decay.csv", "density-decay.json"):
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()


def test_render_node(runner, tmp_path):
    res = runner.invoke(main, ["render", "--what", "node",
                               "--schedule", "128,128",
                               "--out", str(tmp_path)])
    assert res.exit_code == 0
    svg = (tmp_path / "node-0-0.svg").read_text()
    assert svg.startswith("<svg")
    assert "stroke-dasharray" in svg  # the dashed core circle


def test_render_oscillation(runner, tmp_path):
    res = runner.invoke(main, ["render", "--what", "oscillation",
                               "--schedule", "128,128",
                               "--out", str(tmp_path)])
    assert res.exit_code == 0
    svg = (tmp_path / "oscillation.svg").read_text()
    assert "polyline" in svg


def test_config_file(runner, tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"schedule": [128, 128], "out":
                               str(tmp_path / "o")}))
    res = runner.invoke(main, ["verify", "--config", str(cfg)])
    assert res.exit_code == 0

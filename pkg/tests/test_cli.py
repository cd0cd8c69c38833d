import json
import subprocess
import sys
import time

import numpy as np
import pytest

from sparsedom import Cube, Domain, SparseFamily, serialize_family
from sparsedom.cli import load_config, main, ConfigError
from sparsedom.verify import CSV_COLUMNS, SUITES


def write_config(tmp_path, name="cfg.json", **overrides):
    cfg = {
        "dimension": 1,
        "resolution": 64,
        "kernel1": {"kind": "hilbert"},
        "kernel2": {"kind": "hilbert"},
        "experiments": ["reconstruction"],
        "output_dir": str(tmp_path / "out"),
    }
    cfg.update(overrides)
    path = tmp_path / name
    path.write_text(json.dumps(cfg))
    return path


def singleton_family_file(tmp_path):
    dom = Domain(1, 1.0, 5)
    fam = SparseFamily(dom, 1.0, [Cube((0,), 4)], [np.arange(4)])
    path = tmp_path / "single.txt"
    path.write_text(serialize_family(fam))
    return path


def nested_family_file(tmp_path):
    # parent keeps exactly half once the child claims its cells
    dom = Domain(1, 1.0, 5)
    fam = SparseFamily(
        dom,
        0.5,
        [Cube((0,), 16), Cube((0,), 8)],
        [np.arange(8, 16), np.arange(8)],
    )
    path = tmp_path / "nested.txt"
    path.write_text(serialize_family(fam))
    return path


def test_list_suites_enumerates_registry(capsys):
    assert main(["list-suites"]) == 0
    out = capsys.readouterr().out
    for name, spec in SUITES.items():
        assert name in out
        assert spec.description in out
    assert len(out.strip().splitlines()) == len(SUITES)


def test_run_missing_config(tmp_path, capsys):
    assert main(["run", str(tmp_path / "nope.json")]) == 1
    assert "cannot read config file" in capsys.readouterr().err


def test_run_malformed_json_reports_position(tmp_path, capsys):
    path = tmp_path / "bad.json"
    path.write_text('{\n  "dimension": 1,\n  oops\n}\n')
    assert main(["run", str(path)]) == 1
    err = capsys.readouterr().err
    assert "line 3" in err
    assert "column" in err


def test_run_rejects_unknown_key(tmp_path, capsys):
    path = write_config(tmp_path, granularity=7)
    assert main(["run", str(path)]) == 1
    err = capsys.readouterr().err
    assert "config field" in err
    assert "granularity" in err


def test_run_rejects_r_outside_range(tmp_path, capsys):
    path = write_config(tmp_path, r=1.6)
    assert main(["run", str(path)]) == 1
    assert "r outside (1, 3/2]" in capsys.readouterr().err


def test_run_rejects_power_weight_without_exponent(tmp_path, capsys):
    path = write_config(tmp_path, weight={"type": "power"})
    assert main(["run", str(path)]) == 1
    assert "exponent" in capsys.readouterr().err


def test_load_config_fills_defaults(tmp_path):
    path = write_config(tmp_path)
    cfg = load_config(str(path))
    assert cfg["r"] == 1.25
    assert cfg["seeds"] == list(range(20))
    with pytest.raises(ConfigError):
        load_config(str(tmp_path / "absent.json"))


def test_run_empty_experiment_list(tmp_path, capsys):
    path = write_config(tmp_path, experiments=[])
    assert main(["run", str(path)]) == 0
    assert "0 experiments" in capsys.readouterr().out
    run = json.loads((tmp_path / "out" / "run.json").read_text())
    assert run["experiments"] == []
    assert run["config"]["resolution"] == 64


def test_run_smoke_reconstruction(tmp_path, capsys):
    """Small-resolution end-to-end run: reports on disk, echoed config, fast."""
    path = write_config(tmp_path)
    t0 = time.perf_counter()
    assert main(["run", str(path)]) == 0
    assert time.perf_counter() - t0 < 10.0
    out = capsys.readouterr().out
    assert "reconstruction: PASS" in out

    report = json.loads((tmp_path / "out" / "reconstruction.json").read_text())
    assert report["passed"] is True
    assert report["config"]["resolution"] == 64
    assert report["config"]["kernel1"] == {"kind": "hilbert"}
    assert len(report["cases"]) == 20
    assert report["summary"]["max_rel_error"] <= 1e-9

    csv_text = (tmp_path / "out" / "reconstruction.csv").read_text()
    lines = csv_text.strip().splitlines()
    assert lines[0] == ",".join(CSV_COLUMNS)
    assert len(lines) == 1 + len(report["cases"])

    run = json.loads((tmp_path / "out" / "run.json").read_text())
    assert run["experiments"][0]["experiment"] == "reconstruction"
    assert run["experiments"][0]["passed"] is True


def test_run_csv_deterministic(tmp_path):
    """Same config and seeds twice gives byte-identical tables."""
    path_a = write_config(tmp_path, "a.json", output_dir=str(tmp_path / "oa"))
    path_b = write_config(tmp_path, "b.json", output_dir=str(tmp_path / "ob"))
    assert main(["run", str(path_a)]) == 0
    assert main(["run", str(path_b)]) == 0
    csv_a = (tmp_path / "oa" / "reconstruction.csv").read_bytes()
    csv_b = (tmp_path / "ob" / "reconstruction.csv").read_bytes()
    assert csv_a == csv_b


def test_output_dir_env_override(tmp_path, monkeypatch):
    path = write_config(tmp_path, experiments=[])
    override = tmp_path / "elsewhere"
    monkeypatch.setenv("SPARSEDOM_OUTPUT_DIR", str(override))
    assert main(["run", str(path)]) == 0
    assert (override / "run.json").exists()
    assert not (tmp_path / "out").exists()


def test_run_output_dir_not_creatable(tmp_path, capsys):
    blocker = tmp_path / "file"
    blocker.write_text("x")
    path = write_config(tmp_path, experiments=[], output_dir=str(blocker / "sub"))
    assert main(["run", str(path)]) == 1
    assert "cannot create output directory" in capsys.readouterr().err


def test_run_exit_two_on_suite_failure(tmp_path, capsys, monkeypatch):
    from sparsedom.verify import ExperimentReport
    import sparsedom.cli as cli_mod

    def failing(name, cfg):
        return ExperimentReport(name, cfg, [], {}, False, 0.0)

    monkeypatch.setattr(cli_mod, "run_suite", failing)
    path = write_config(tmp_path)
    assert main(["run", str(path)]) == 2
    captured = capsys.readouterr()
    assert "reconstruction: FAIL" in captured.out
    assert "run: FAIL" in captured.err
    # the failing report is still written for inspection
    assert (tmp_path / "out" / "reconstruction.json").exists()


def test_certify_singleton(tmp_path, capsys):
    path = singleton_family_file(tmp_path)
    assert main(["certify", str(path), "--eta", "1.0"]) == 0
    assert "certified: 1 cubes" in capsys.readouterr().out


def test_certify_nested_pair(tmp_path, capsys):
    path = nested_family_file(tmp_path)
    assert main(["certify", str(path), "--eta", "0.5"]) == 0
    capsys.readouterr()
    assert main(["certify", str(path), "--eta", "0.6"]) == 2
    err = capsys.readouterr().err
    assert "violation" in err
    assert "side=16" in err
    assert "0.5" in err


def test_certify_parse_error(tmp_path, capsys):
    path = tmp_path / "junk.txt"
    path.write_text("this is not a family\n")
    assert main(["certify", str(path), "--eta", "0.5"]) == 1
    assert "family parse error" in capsys.readouterr().err


def test_certify_missing_file(tmp_path, capsys):
    assert main(["certify", str(tmp_path / "gone.txt"), "--eta", "0.5"]) == 1
    assert "cannot read family file" in capsys.readouterr().err


def test_module_entry_point(tmp_path):
    proc = subprocess.run(
        [sys.executable, "-m", "sparsedom", "list-suites"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "reconstruction" in proc.stdout

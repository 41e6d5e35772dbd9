"""Config parsing, CSV emission and reproducibility of the scenario
runner."""
from __future__ import annotations

import csv
import json
from pathlib import Path

import pytest

from ptmag import (ConfigError, config_from_dict, disorder_sample,
                   echo_config, parse_config, run_scenario)
from ptmag.scenarios import SCENARIO_DESCRIPTIONS, SCENARIOS


def read_csv(path):
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]


# ---------------------------------------------------------------- parsing

def test_registry_is_complete():
    assert len(SCENARIOS) == 11
    assert set(SCENARIO_DESCRIPTIONS) == set(SCENARIOS)


def test_per_scenario_integration_presets():
    fine = config_from_dict({"scenario": "populations3"})
    assert (fine.evolution.dt, fine.evolution.record_stride) == (1e-5, 100)
    assert fine.cutoff == 3 and fine.evolution.t_final == 0.2

    single = config_from_dict({"scenario": "epscan7"})
    assert (single.evolution.dt, single.evolution.record_stride) == (1e-4, 2000)
    assert single.cutoff == 1

    dense = config_from_dict({"scenario": "purity11"})
    assert dense.evolution.record_stride == 1
    assert dense.weights == (0.25, 0.25, 0.25, 0.25)

    coarse = config_from_dict({"scenario": "decay9"})
    assert coarse.evolution.dt == 5e-5


def test_explicit_keys_override_presets():
    cfg = config_from_dict({"scenario": "populations3", "dt": 2e-5,
                            "t_final": 0.1, "cutoff": 2, "kappa_a": 0.6})
    assert cfg.evolution.dt == 2e-5
    assert cfg.evolution.t_final == 0.1
    assert cfg.cutoff == 2
    assert cfg.params.kappa_a == 0.6


def test_unknown_keys_rejected():
    with pytest.raises(ConfigError, match="unknown config keys"):
        config_from_dict({"scenario": "populations3", "cutofff": 3})
    with pytest.raises(ConfigError, match="unknown scenario"):
        config_from_dict({"scenario": "nope"})
    with pytest.raises(ConfigError, match="scenario"):
        config_from_dict({})


def test_typed_values_enforced():
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "populations3", "dt": "fast"})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "populations3", "cutoff": 2.5})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "populations3", "hermitize": 1})


def test_sweep_needs_all_four_keys():
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "spectrum2", "sweep_variable": "delta"})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "spectrum2", "sweep_variable": "nope",
                          "sweep_min": 0.0, "sweep_max": 1.0,
                          "sweep_steps": 5})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "spectrum2", "sweep_variable": "delta",
                          "sweep_min": 0.0, "sweep_max": 1.0,
                          "sweep_steps": 1})
    cfg = config_from_dict({"scenario": "spectrum2", "sweep_variable": "delta",
                            "sweep_min": -2.0, "sweep_max": 2.0,
                            "sweep_steps": 5})
    assert cfg.sweep.variable == "delta"


def test_weights_restricted_to_purity_scenario():
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "populations3", "weight_0": 1.0})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "purity11", "weight_0": 0.9,
                          "weight_1": 0.9, "weight_2": 0.1, "weight_3": 0.1})
    cfg = config_from_dict({"scenario": "purity11", "weight_0": 0.1,
                            "weight_1": 0.2, "weight_2": 0.3,
                            "weight_3": 0.4})
    assert cfg.weights == (0.1, 0.2, 0.3, 0.4)


def test_bounds_validation():
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "populations3", "cutoff": 0})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "disorder12", "samples": 0})
    with pytest.raises(ConfigError):
        config_from_dict({"scenario": "populations3", "nu_a": -1.0})


def test_echo_round_trips():
    for raw in ({"scenario": "populations3", "t_final": 0.05},
                {"scenario": "spectrum2", "sweep_variable": "g_over_2pi",
                 "sweep_min": 2.0, "sweep_max": 20.0, "sweep_steps": 4},
                {"scenario": "purity11", "weight_0": 0.1, "weight_1": 0.2,
                 "weight_2": 0.3, "weight_3": 0.4},
                {"scenario": "lossy6", "kappa_a": 0.6, "kappa_b": 0.6,
                 "gamma_m": 0.6}):
        cfg = config_from_dict(raw)
        assert config_from_dict(echo_config(cfg)) == cfg


def test_parse_config_reads_json(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps({"scenario": "populations3", "t_final": 0.01}),
                    encoding="utf-8")
    cfg = parse_config(path)
    assert cfg.scenario == "populations3"
    assert cfg.evolution.t_final == 0.01

    bad = tmp_path / "bad.json"
    bad.write_text("not json", encoding="utf-8")
    with pytest.raises(ConfigError):
        parse_config(bad)
    with pytest.raises(ConfigError):
        parse_config(tmp_path / "missing.json")
    arr = tmp_path / "arr.json"
    arr.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(ConfigError):
        parse_config(arr)


# ---------------------------------------------------------------- running

def test_single_quantum_scenario_outputs(tmp_path):
    cfg = config_from_dict({"scenario": "populations3", "t_final": 0.02,
                            "output_dir": str(tmp_path)})
    report = run_scenario(cfg)
    assert report.name == "populations3"
    assert report.runtime_s > 0.0

    header, rows = read_csv(tmp_path / "populations3.csv")
    assert header == ["t_us", "trace", "mean_N", "fidelity_phi1",
                      "coherence", "purity", "pop_000", "pop_100",
                      "pop_010", "pop_001"]
    first = [float(x) for x in rows[0]]
    assert first[0] == 0.0
    assert first[1] == pytest.approx(1.0)
    assert first[9] == pytest.approx(1.0)  # starts in |001>
    last = [float(x) for x in rows[-1]]
    assert last[0] == pytest.approx(0.02)
    assert last[3] > first[3]  # fidelity grows toward the attractor

    with open(tmp_path / "populations3_report.json", encoding="utf-8") as fh:
        blob = json.load(fh)
    assert blob["name"] == "populations3"
    assert set(blob) == {"name", "config", "csv_paths", "summary",
                         "runtime_s"}
    assert blob["summary"]["final_fidelity_phi1"] > 0.5
    assert all(Path(p).exists() for p in blob["csv_paths"])


def test_phase_diagram_scenario_with_sweep(tmp_path):
    cfg = config_from_dict({"scenario": "spectrum2",
                            "sweep_variable": "g_over_2pi",
                            "sweep_min": 6.0, "sweep_max": 70.0,
                            "sweep_steps": 3,
                            "output_dir": str(tmp_path)})
    report = run_scenario(cfg)
    header, rows = read_csv(tmp_path / "spectrum2_phase.csv")
    assert header == ["g_over_2pi_MHz", "delta", "re_w1", "re_w2", "re_w3",
                      "im_w1", "im_w2", "im_w3", "phase"]
    assert len(rows) == 3 * 121
    assert {r[-1] for r in rows} <= {"pt-symmetric", "pt-broken",
                                     "exceptional-point"}

    eps_header, eps_rows = read_csv(tmp_path / "spectrum2_eps.csv")
    assert eps_header == ["g_over_2pi_MHz", "delta_star", "bracket_width"]
    by_g = {}
    for r in eps_rows:
        by_g.setdefault(float(r[0]), []).append(float(r[1]))
    assert sorted(by_g) == [6.0, 10.0, 25.0, 70.0]
    assert by_g[70.0] == pytest.approx([-1.1802, 1.1802], abs=2e-3)
    assert report.summary["exceptional_points"]["g70"] \
        == pytest.approx([-1.1802, 1.1802], abs=2e-3)


def test_disorder_runs_are_reproducible(tmp_path):
    base = {"scenario": "disorder12", "samples": 3, "t_final": 0.05}
    paths = []
    for sub in ("one", "two"):
        cfg = config_from_dict(dict(base, output_dir=str(tmp_path / sub)))
        run_scenario(cfg)
        paths.append(tmp_path / sub / "disorder12_samples.csv")
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_disorder_sample_scales_the_same_deviates():
    cfg = config_from_dict({"scenario": "disorder12", "samples": 4,
                            "t_final": 0.02})
    _, _, rows_half = disorder_sample(cfg, 0.5)
    _, _, rows_full = disorder_sample(cfg, 1.0)
    for (u_half, _, _), (u_full, _, _) in zip(rows_half, rows_full):
        assert u_half == pytest.approx(0.5 * u_full)
    mean_f, mean_c, rows = disorder_sample(cfg, 0.0)
    assert all(u == 0.0 for u, _, _ in rows)
    assert 0.0 < mean_f <= 1.0
    assert mean_c > 0.0

"""End-to-end smoke tests for the python module and the command-line tool.

Expects PYTHONPATH to include the built python package directory, and the
STRELGEN_CLI / STRELGEN_FIXTURES environment variables to point at the
command-line binary and the repository fixtures (ctest sets all three).
"""

import json
import math
import os
import subprocess

import pytest

import strelgen

CLI = os.environ.get("STRELGEN_CLI")
FIXTURES = os.environ.get("STRELGEN_FIXTURES")

needs_cli = pytest.mark.skipif(CLI is None, reason="STRELGEN_CLI not set")
needs_fixtures = pytest.mark.skipif(FIXTURES is None,
                                    reason="STRELGEN_FIXTURES not set")


def small_trace():
    return strelgen.Trace.from_json(json.dumps({
        "meta": {"dt": 0.5, "horizon": 3},
        "colors": ["car", "bus"],
        "agents": [
            {"id": 0, "color": "car", "states": [
                {"x": 0.0, "y": 0.0, "vx": 3.0, "vy": 0.0, "heading": 0.0},
                {"x": 1.5, "y": 0.0, "vx": 4.0, "vy": 0.0, "heading": 0.0},
                {"x": 3.5, "y": 0.0, "vx": 5.0, "vy": 0.0, "heading": 0.0},
            ]},
            {"id": 1, "color": "bus", "states": [
                {"x": 4.0, "y": 0.0, "vx": 0.5, "vy": 0.0, "heading": 0.0},
                {"x": 4.2, "y": 0.0, "vx": 0.5, "vy": 0.0, "heading": 0.0},
                {"x": 4.4, "y": 0.0, "vx": 0.5, "vy": 0.0, "heading": 0.0},
            ]},
        ],
    }))


def euclid_cfg(radius=10.0):
    cfg = strelgen.GraphConfig()
    cfg.radius = radius
    cfg.metric = strelgen.Metric.EUCLID
    return cfg


def test_parse_format_round_trip():
    text = "F[0,1] ((speed > 2)@{car} & (x < 10)@{*})"
    f = strelgen.parse(text)
    assert strelgen.structurally_equal(strelgen.parse(strelgen.format(f)), f)
    core = strelgen.expand_derived(f)
    assert strelgen.structurally_equal(strelgen.expand_derived(core), core)


def test_parse_error_is_typed():
    with pytest.raises(strelgen.StrelgenError):
        strelgen.parse("(x > )@{car}")


def test_monitor_atom_margin():
    f = strelgen.parse("(vx > 1)@{car}")
    r = strelgen.monitor(small_trace(), euclid_cfg(), f, 0, 0)
    assert r.value == pytest.approx(2.0)
    assert r.satisfied()


def test_monitor_agrees_with_oracle():
    tr = small_trace()
    cfg = euclid_cfg()
    f = strelgen.parse(
        "F[0,1] ( (speed > 2)@{car} R[0,6]{euclid} (speed < 1)@{bus} )")
    core = strelgen.expand_derived(f)
    for agent in (0, 1):
        got = strelgen.monitor(tr, cfg, core, 0, agent)
        want = strelgen.monitor_oracle(tr, cfg, f, 0, agent)
        assert got.value == pytest.approx(want.value, abs=1e-9)


def test_smooth_tracks_hard_robustness():
    tr = small_trace()
    cfg = euclid_cfg()
    core = strelgen.expand_derived(strelgen.parse("F[0,1] (vx > 3.5)@{car}"))
    hard = strelgen.monitor(tr, cfg, core, 0, 0).value
    smooth = strelgen.smooth_robustness(tr, cfg, core, 0, 0, beta=1e6)
    assert smooth == pytest.approx(hard, abs=1e-3)


def test_validate_reports_unknown_color():
    issues = strelgen.validate(strelgen.parse("(x > 0)@{tram}"),
                               small_trace(), euclid_cfg())
    assert any("tram" in msg for msg in issues)


def test_decode_zero_latent_is_straight_line():
    ctx, gcfg = strelgen.context_from_json(json.dumps({
        "meta": {"dt": 0.5, "horizon": 5},
        "colors": ["car"],
        "generator": {"latent_dim": 8, "basis_count": 4, "seed": 7,
                      "accel_scale": 0.25},
        "agents": [{"id": 0, "color": "car", "states": [
            {"x": 1.0, "y": 2.0, "vx": 2.0, "vy": 0.0, "heading": 0.0}]}],
    }))
    assert ctx.latent_size(gcfg) == 8
    assert [a.color for a in ctx.agents] == ["car"]
    tr = strelgen.decode(gcfg, ctx, [0.0] * 8)
    xs = [s.x for s in tr.agents[0].states]
    assert xs == pytest.approx([1.0, 2.0, 3.0, 4.0, 5.0])
    assert all(s.vx == pytest.approx(2.0) for s in tr.agents[0].states)


def test_sample_latent_is_deterministic():
    a = strelgen.sample_latent(42, 4)
    b = strelgen.sample_latent(42, 4)
    assert a == b
    assert strelgen.derive_seed(1, 2) == strelgen.derive_seed(1, 2)
    assert strelgen.derive_seed(1, 2) != strelgen.derive_seed(1, 3)


def test_optimize_stops_immediately_when_satisfied():
    ctx, gcfg = strelgen.context_from_json(json.dumps({
        "meta": {"dt": 0.5, "horizon": 4},
        "colors": ["car"],
        "generator": {"latent_dim": 8, "basis_count": 4, "seed": 7,
                      "accel_scale": 0.25},
        "agents": [{"id": 0, "color": "car", "states": [
            {"x": 0.0, "y": 0.0, "vx": 2.0, "vy": 0.0, "heading": 0.0}]}],
    }))
    f = strelgen.expand_derived(strelgen.parse("F[0,1] (vx > 1.5)@{car}"))
    params = strelgen.GuidanceParams()
    z0 = [0.0] * 8
    res = strelgen.optimize(z0, f, gcfg, ctx, euclid_cfg(), params)
    assert res.satisfied
    assert res.steps_used == 0
    assert res.z == z0
    assert res.final_hard_rho == pytest.approx(0.5)


@needs_fixtures
def test_metrics_fixture_reports_two_colliding_agents():
    tr = strelgen.Trace.load(
        os.path.join(FIXTURES, "traces", "metrics_closest_approach.json"))
    rep = strelgen.compute_metrics(tr, 0.9)
    assert rep.potential_collisions == 2
    assert rep.min_pairwise_distance == pytest.approx(0.5)
    parsed = json.loads(rep.to_json())
    assert parsed["potential_collisions"] == 2


@needs_fixtures
def test_experiment_pairs_runs_on_front_fixture():
    with open(os.path.join(FIXTURES, "contexts", "front_context.json")) as fh:
        ctx, gcfg = strelgen.context_from_json(fh.read())
    f = strelgen.expand_derived(strelgen.load_formula(
        os.path.join(FIXTURES, "formulas", "phi_front.strel")))
    cfg = strelgen.GraphConfig.load(
        os.path.join(FIXTURES, "graphs", "front_r10.json"))
    params = strelgen.GuidanceParams()
    params.eta = 0.5
    params.max_steps = 60
    params.max_restarts = 1
    summary = strelgen.run_experiment(f, gcfg, ctx, cfg, params, 3, 7)
    assert summary.runs == 3
    assert len(summary.rho_unguided) == 3
    assert summary.guided_sat_rate >= summary.unguided_sat_rate
    parsed = json.loads(summary.to_json())
    assert parsed["runs"] == 3


def run_cli(args, env_extra=None, **kwargs):
    env = dict(os.environ)
    if env_extra:
        env.update(env_extra)
    return subprocess.run([CLI] + args, capture_output=True, text=True,
                          env=env, **kwargs)


@needs_cli
def test_cli_parse_round_trip(tmp_path):
    path = tmp_path / "f.strel"
    path.write_text("F[0,2] ((speed > 1)@{car} | (x < 0)@{bus})\n")
    out = run_cli(["parse", "--formula", str(path)])
    assert out.returncode == 0
    printed = strelgen.parse(out.stdout.strip())
    assert strelgen.structurally_equal(
        printed, strelgen.parse("F[0,2] ((speed > 1)@{car} | (x < 0)@{bus})"))


@needs_cli
def test_cli_parse_rejects_bad_input(tmp_path):
    path = tmp_path / "bad.strel"
    path.write_text("(x > )@{car}\n")
    out = run_cli(["parse", "--formula", str(path)])
    assert out.returncode == 2
    assert "parse error" in out.stderr


@needs_cli
def test_cli_monitor_exit_codes(tmp_path):
    trace_path = tmp_path / "trace.json"
    trace_path.write_text(small_trace().to_json())
    graph_path = tmp_path / "graph.json"
    graph_path.write_text(json.dumps({
        "connectivity": {"radius": 10.0}, "metric": "euclid",
        "front_half_angle": 1.0472, "min_edge_weight": 1e-6}))
    # Bounds are in seconds: [0,1] at dt 0.5 spans all three trace steps.
    sat = tmp_path / "sat.strel"
    sat.write_text("F[0,1] (vx > 4.5)@{car}\n")
    unsat = tmp_path / "unsat.strel"
    unsat.write_text("G[0,1] (vx > 100)@{car}\n")

    ok = run_cli(["monitor", "--formula", str(sat), "--trace", str(trace_path),
                  "--graph", str(graph_path)])
    assert ok.returncode == 0
    assert "rho" in ok.stdout

    bad = run_cli(["monitor", "--formula", str(unsat), "--trace",
                   str(trace_path), "--graph", str(graph_path)])
    assert bad.returncode == 1

    missing = run_cli(["monitor", "--formula", str(sat), "--trace",
                       str(tmp_path / "nope.json"), "--graph",
                       str(graph_path)])
    assert missing.returncode == 2


@needs_cli
@needs_fixtures
def test_cli_metrics_fixture():
    out = run_cli(["metrics", "--trace",
                   os.path.join(FIXTURES, "traces",
                                "metrics_closest_approach.json"),
                   "--threshold", "0.9"])
    assert out.returncode == 0
    parsed = json.loads(out.stdout)
    assert parsed["potential_collisions"] == 2
    assert parsed["min_pairwise_distance"] == pytest.approx(0.5)


@needs_cli
@needs_fixtures
def test_cli_guide_writes_outputs_and_logs(tmp_path):
    out_trace = tmp_path / "guided.json"
    out_result = tmp_path / "result.json"
    res = run_cli([
        "guide",
        "--formula", os.path.join(FIXTURES, "formulas", "phi_front.strel"),
        "--context", os.path.join(FIXTURES, "contexts", "front_context.json"),
        "--graph", os.path.join(FIXTURES, "graphs", "front_r10.json"),
        "--seed", "3", "--eta", "0.5", "--max-steps", "120",
        "--max-restarts", "2",
        "--out", str(out_trace), "--result", str(out_result),
    ], env_extra={"STRELGEN_LOG": "info"})
    assert res.returncode in (0, 1)
    assert "[strelgen]" in res.stderr
    result = json.loads(out_result.read_text())
    assert "final_hard_rho" in result
    assert result["satisfied"] == (res.returncode == 0)
    guided = strelgen.Trace.load(str(out_trace))
    assert guided.horizon == 13

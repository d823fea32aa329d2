"""Smoke tests for the Python module and the CLI's JSON reports.

BERGMAN_CLI points at the CLI binary (CLI tests are skipped without it);
the module is imported from PYTHONPATH.
"""

import json
import os
import subprocess
from pathlib import Path

import jsonschema
import pytest

import bergman

ROOT = Path(__file__).resolve().parents[2]
SCHEMA = json.loads((ROOT / "schemas" / "report.schema.json").read_text())
FIXTURES = ROOT / "tests" / "fixtures"
CLI = os.environ.get("BERGMAN_CLI")


def validator(ref=None):
    schema = SCHEMA if ref is None else {"$ref": f"#/$defs/{ref}", "$defs": SCHEMA["$defs"]}
    return jsonschema.Draft202012Validator(schema)


def run_cli(*args):
    out = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True, check=True)
    return json.loads(out.stdout)


needs_cli = pytest.mark.skipif(not CLI, reason="BERGMAN_CLI not set")


def test_schema_is_valid():
    jsonschema.Draft202012Validator.check_schema(SCHEMA)


def test_identity_against_plain_python():
    a, b = [0.3 + 0.4j, -0.1j], [-0.5 + 0.2j, 0.6 + 0.0j]
    inner = sum(x * y.conjugate() for x, y in zip(a, b))
    na, nb = sum(abs(x) ** 2 for x in a), sum(abs(x) ** 2 for x in b)
    expected = (1 - na) * (1 - nb) / abs(1 - inner) ** 2
    assert bergman.one_minus_dist_sq(a, b) == pytest.approx(expected, rel=1e-13)
    d = bergman.inv_distance(a, b)
    assert 1 - d * d == pytest.approx(expected, rel=1e-12)
    back = bergman.apply_automorphism(a, bergman.apply_automorphism(a, b))
    assert max(abs(x - y) for x, y in zip(back, b)) < 1e-14


def test_point_outside_ball_is_rejected():
    with pytest.raises(bergman.PreconditionError):
        bergman.inv_distance([1.5], [0.1])
    assert issubclass(bergman.PreconditionError, ValueError)


def test_net_and_interpolation_shapes():
    net = bergman.generate_net(1, 0.7, 4, seed=5)
    validator("sequence").validate(net)
    assert bergman.separation(net) >= 0.7 - 1e-12
    values = bergman.random_values(net, 1, 0.0, seed=2)
    out = bergman.interpolate(net, values, p=1, alpha=0.0)
    validator("params").validate(out["params"])
    validator("solve_report").validate(out["report"])
    assert out["report"]["residual_max"] < 1e-10
    assert out["report"]["te_deviation"] < 1


def test_kernel_norm_matches_closed_form():
    # ||(1 - z conj(a))^-2||_{A^2} = (1 - |a|^2)^-1 on the disk (alpha = 0, p = 2)
    est = bergman.kernel_norm(1, 2, 0.0, 2.0, [0.9])
    validator("estimate").validate(est)
    assert est["value"] == pytest.approx(1 / (1 - 0.81), rel=1e-8)


def test_mills_pair_separates():
    out = bergman.mills_partition([[0, 3.0], [3.0, 0]])
    assert sorted(out["s1"] + out["s2"]) == [0, 1]
    assert len(out["s1"]) == 1
    assert max(out["within"]) <= out["M"] / 2


def test_density_verdict_sides():
    net = bergman.generate_net(1, 0.5, 6, seed=1)
    rep = bergman.seip_density(net, j_max=8)
    validator("density_report").validate(rep)
    low = bergman.density_verdict(net, 2, 0.0, j_max=8)
    high = bergman.density_verdict(net, 2, 50.0, j_max=8)
    assert high["verdict"] == "interpolating"
    assert low["threshold"] < high["threshold"]


@needs_cli
@pytest.mark.parametrize(
    "args",
    [
        ["gen", "--n", 1, "--r", 0.5, "--layers", 3, "--seed", 4],
        ["sep", "--input", FIXTURES / "two_point_seq.json"],
        ["kval", "--input", FIXTURES / "single_point_seq.json"],
        ["mills", "--input", FIXTURES / "mills_pair.json"],
        ["norm", "--input", FIXTURES / "kernel_fn.json", "--p", 2, "--alpha", 0.5],
        ["interp", "--input", FIXTURES / "two_point_seq.json", "--values", FIXTURES / "two_point_values.json"],
        ["duals", "--input", FIXTURES / "two_point_seq.json", "--p", 2],
        ["add-points", "--input", FIXTURES / "two_point_seq.json", "--values", FIXTURES / "two_point_values.json",
         "--extra", FIXTURES / "extra_point.json"],
        ["stability", "--input", FIXTURES / "two_point_seq.json", "--values", FIXTURES / "two_point_values.json"],
    ],
    ids=lambda a: a[0],
)
def test_cli_reports_follow_schema(args):
    validator().validate(run_cli(*args))


@needs_cli
def test_cli_gen_matches_module():
    report = run_cli("gen", "--n", 2, "--r", 0.6, "--layers", 2, "--seed", 9)
    from_module = bergman.generate_net(2, 0.6, 2, seed=9)
    assert report["result"]["points"] == from_module["points"]
    assert report["result"]["meta"] == from_module["meta"]


@needs_cli
def test_cli_density_and_verdict_on_generated_net(tmp_path):
    seq = bergman.generate_net(1, 0.5, 5, seed=3)
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(seq))
    for cmd in ("density", "verdict", "vanish"):
        validator().validate(run_cli(cmd, "--input", path, "--grid", 6, "--p", 2, "--alpha", 1))

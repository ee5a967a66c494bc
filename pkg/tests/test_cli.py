import json
import math

import pytest
from click.testing import CliRunner

from hypercert.cli import main

LOG3 = math.log(3.0)


@pytest.fixture()
def runner():
    return CliRunner()


def invoke(runner, *args, **kwargs):
    return runner.invoke(main, list(args), catch_exceptions=False, **kwargs)


class TestConstants:
    def test_json_values(self, runner):
        result = invoke(runner, "--format", "json", "constants")
        assert result.exit_code == 0
        obj = json.loads(result.output)
        assert 168.601 <= obj["lambda1"] < 168.602
        assert obj["valenceBound"] == 314
        assert 0.73 <= obj["BHalfEps"] < 0.74
        assert set(obj) == {
            "BHalfEps", "bHalfEps", "dHalfEps", "lambda0", "lambda1",
            "lambda1Noncompact", "lambda1CompactP2", "valenceQuotient",
            "valenceBound", "quadratureTolerance",
        }

    def test_human_contains_same_numbers(self, runner):
        json_out = json.loads(invoke(runner, "--format", "json", "constants").output)
        human = invoke(runner, "constants").output
        assert format(json_out["lambda1"], ".17g") in human
        assert format(json_out["bHalfEps"], ".17g") in human

    def test_csv_shape(self, runner):
        result = invoke(runner, "--format", "csv", "constants")
        lines = result.output.strip().splitlines()
        assert lines[0] == "name,value"
        assert len(lines) == 11

    def test_determinism(self, runner):
        a = invoke(runner, "--format", "json", "constants").output
        b = invoke(runner, "--format", "json", "constants").output
        assert a == b


class TestVerify:
    def test_exit_zero_and_certificate(self, runner):
        result = invoke(runner, "--format", "json", "verify")
        assert result.exit_code == 0
        obj = json.loads(result.output)
        assert obj["cellCount"] == 47
        assert obj["certifiedC"] > 0.496
        phis = [c["phiLo"] for c in obj["cells"]]
        assert phis.index(min(phis)) + 1 == 45

    def test_output_file(self, runner, tmp_path):
        target = tmp_path / "cert.json"
        result = invoke(runner, "--format", "json", "--output", str(target), "verify")
        assert result.exit_code == 0
        assert json.loads(target.read_text())["cellCount"] == 47


class TestCertify:
    def test_reference_parameters_succeed(self, runner):
        result = invoke(
            runner, "--format", "json", "certify",
            "--epsilon", "1.0986122886681098", "--R", "2.3472245773362196", "--c", "0.496",
        )
        assert result.exit_code == 0
        assert json.loads(result.output)["certifiedC"] > 0.496

    def test_aliases(self, runner):
        result = invoke(runner, "--format", "json", "certify",
                        "--epsilon", "log3", "--R", "log3-paper", "--c", "0.496")
        assert result.exit_code == 0
        obj = json.loads(result.output)
        assert obj["epsilon"] == pytest.approx(LOG3, abs=1e-15)
        assert obj["R"] == pytest.approx(2 * LOG3 + 0.15, abs=1e-15)

    def test_unreachable_target_exits_one(self, runner):
        result = runner.invoke(main, ["certify", "--epsilon", "log3", "--R", "log3-paper", "--c", "1.0"])
        assert result.exit_code == 1
        assert "witness" in result.output

    def test_invalid_window_exits_two(self, runner):
        result = runner.invoke(main, ["certify", "--epsilon", "1.0", "--R", "1.9", "--c", "0.1"])
        assert result.exit_code == 2

    def test_unparseable_epsilon_exits_two(self, runner):
        result = runner.invoke(main, ["certify", "--epsilon", "ln3", "--R", "2.3", "--c", "0.1"])
        assert result.exit_code == 2


class TestOptimize:
    def test_single_point_grid(self, runner):
        result = invoke(runner, "--format", "json", "optimize",
                        "--epsilon", "log3", "--grid", "log3-paper", "--c-tol", "1e-3")
        assert result.exit_code == 0
        obj = json.loads(result.output)
        assert obj["best"]["valenceBound"] == 314
        assert len(obj["entries"]) == 1

    def test_csv_output(self, runner):
        result = invoke(runner, "--format", "csv", "optimize",
                        "--epsilon", "log3", "--grid", "log3-paper", "--c-tol", "1e-3")
        lines = result.output.strip().splitlines()
        assert lines[0] == "R,certifiedC,valenceBound"
        assert len(lines) == 2


class TestBound:
    def test_general_case(self, runner):
        result = invoke(runner, "--format", "json", "bound",
                        "--volume", "1.0", "--cusped", "false", "--prime", "3")
        obj = json.loads(result.output)
        assert 168.601 <= obj["homologyBound"] < 168.602
        assert obj["coefficientName"] == "lambda1"
        assert obj["smallRankBound"] == 11.0

    def test_noncompact_case(self, runner):
        obj = json.loads(invoke(runner, "--format", "json", "bound",
                                "--volume", "2.0", "--cusped", "true", "--prime", "5").output)
        assert obj["coefficientName"] == "lambda1Noncompact"
        assert 2 * 168.132 <= obj["homologyBound"] < 2 * 168.133

    def test_compact_mod2_case(self, runner):
        obj = json.loads(invoke(runner, "--format", "json", "bound",
                                "--volume", "1.0", "--cusped", "false", "--prime", "2").output)
        assert obj["coefficientName"] == "lambda1CompactP2"

    def test_rank_mode(self, runner):
        result = invoke(runner, "--format", "json", "bound",
                        "--volume", "1.0", "--cusped", "false", "--prime", "3",
                        "--epsilon", "log3", "--R", "log3-paper", "--c", "0.496")
        obj = json.loads(result.output)
        assert obj["valenceBound"] == 314
        assert 168.781 <= obj["rankBound"] < 168.782

    def test_rank_mode_report_file(self, runner, tmp_path):
        target = tmp_path / "report.json"
        result = invoke(runner, "--format", "json", "--output", str(target), "bound",
                        "--volume", "1.0", "--cusped", "false", "--prime", "3",
                        "--epsilon", "log3", "--R", "log3-paper", "--c", "0.496")
        assert result.exit_code == 0
        obj = json.loads(target.read_text())
        assert obj["valenceBound"] == 314
        assert obj["certificate"]["certifiedC"] > 0.496

    def test_invalid_volume_exits_two(self, runner):
        result = runner.invoke(main, ["bound", "--volume", "-1.0"])
        assert result.exit_code == 2

    def test_partial_rank_flags_exit_two(self, runner):
        result = runner.invoke(main, ["bound", "--volume", "1.0", "--epsilon", "log3"])
        assert result.exit_code == 2


class TestMcCheck:
    def test_icecream_defaults_small_sample(self, runner):
        result = invoke(runner, "--format", "json", "--samples", "40000", "--seed", "7",
                        "mc-check", "--shape", "icecream")
        assert result.exit_code == 0
        obj = json.loads(result.output)
        assert obj["within3Sigma"] is True
        assert obj["samples"] == 40000 and obj["seed"] == 7

    def test_cap_with_params(self, runner):
        result = invoke(runner, "--format", "json", "--samples", "40000", "--seed", "3",
                        "mc-check", "--shape", "cap", "--params", "1.0,0.5")
        obj = json.loads(result.output)
        assert obj["closedForm"] == pytest.approx(0.6694232433005802, abs=1e-12)
        assert obj["within3Sigma"] is True

    def test_ball_is_exact(self, runner):
        obj = json.loads(invoke(runner, "--format", "json", "--samples", "1000",
                                "mc-check", "--shape", "ball", "--params", "0.8").output)
        assert obj["deviationSigmas"] == 0.0

    def test_bad_params_exit_two(self, runner):
        result = runner.invoke(main, ["mc-check", "--shape", "lens", "--params", "0.5,0.7,3.0"])
        assert result.exit_code == 2
        result = runner.invoke(main, ["mc-check", "--shape", "cap", "--params", "1.0"])
        assert result.exit_code == 2

    def test_determinism(self, runner):
        args = ["--format", "json", "--samples", "20000", "--seed", "5",
                "mc-check", "--shape", "cone"]
        assert invoke(runner, *args).output == invoke(runner, *args).output

    def test_local_sample_and_seed_flags(self, runner):
        via_group = invoke(runner, "--format", "json", "--samples", "20000", "--seed", "5",
                           "mc-check", "--shape", "cone").output
        via_local = invoke(runner, "--format", "json", "mc-check", "--shape", "cone",
                           "--samples", "20000", "--seed", "5").output
        assert via_group == via_local


class TestQuadratureFailure:
    def test_constants_exits_nonzero(self, runner):
        result = runner.invoke(main, ["--quad-tol", "1e-30", "constants"])
        assert result.exit_code == 1
        assert "quadrature" in result.output.lower()


class TestEnvironmentOverrides:
    def test_format_from_env(self, runner):
        result = runner.invoke(main, ["constants"], env={"HYPERCERT_FORMAT": "json"},
                               catch_exceptions=False)
        obj = json.loads(result.output)
        assert obj["valenceBound"] == 314

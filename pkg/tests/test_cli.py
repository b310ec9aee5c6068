import pytest
import yaml
from click.testing import CliRunner

from src.instance_manager import load_instance, load_model
from src.main import cli

RUNNING_EXAMPLE = "instance-running-example-f5.yaml"


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def instance_path(fixtures_dir):
    return str(fixtures_dir / RUNNING_EXAMPLE)


def test_gen_writes_instance(runner, tmp_path):
    out = tmp_path / "gen.yaml"
    result = runner.invoke(cli, ["gen", "--q", "7", "--n", "5", "--k", "2", "--seed", "3", "--out", str(out)])
    assert result.exit_code == 0, result.output
    instance = load_instance(out)
    assert (instance.q, instance.n, instance.k, instance.seed) == (7, 5, 2, 3)
    assert f"Digest: {instance.digest()}" in result.output


def test_gen_prints_yaml(runner):
    result = runner.invoke(cli, ["gen", "--q", "5", "--n", "4", "--k", "2", "--seed", "1"])
    assert result.exit_code == 0
    assert result.output.startswith("format_version: 1\nconvention: Q=D*P\n")


def test_gen_rejects_composite_field(runner):
    result = runner.invoke(cli, ["gen", "--q", "6", "--n", "4", "--k", "2"])
    assert result.exit_code == 2


def test_invgen(runner):
    result = runner.invoke(cli, ["invgen", "--n", "5", "--k", "2", "--q", "101"])
    assert result.exit_code == 0, result.output
    assert "2 generator(s); predicted k(n-k)-n+1 = 2" in result.output


def test_model_and_verify(runner, tmp_path, instance_path):
    model_path = tmp_path / "model.yaml"
    result = runner.invoke(cli, ["model", instance_path, "--budget", "2", "--out", str(model_path)])
    assert result.exit_code == 0, result.output
    assert "36 equations: 2 invariant(s), 32 permutation constraints" in result.output
    assert len(load_model(model_path).equations) == 36

    result = runner.invoke(cli, ["verify", str(model_path), "--perm", "3,1,4,2"])
    assert result.exit_code == 0, result.output
    assert "All residuals zero" in result.output

    residuals = tmp_path / "residuals.yaml"
    result = runner.invoke(cli, ["verify", str(model_path), "--perm", "2,1,3,4", "--out", str(residuals)])
    assert result.exit_code == 2
    assert "nonzero residual(s)" in result.output
    assert yaml.safe_load(residuals.read_text())["permutation"] == [2, 1, 3, 4]


def test_lazy_model(runner, tmp_path, instance_path):
    model_path = tmp_path / "lazy.yaml"
    result = runner.invoke(cli, ["model", instance_path, "--lazy", "--budget", "1", "--out", str(model_path)])
    assert result.exit_code == 0, result.output
    assert "lazy:" in model_path.read_text()
    result = runner.invoke(cli, ["verify", str(model_path), "--perm", "1,2,3,4"])
    assert result.exit_code == 0


def test_model_expansion_refused(runner, tmp_path):
    out = tmp_path / "big.yaml"
    assert runner.invoke(cli, ["gen", "--q", "101", "--n", "10", "--k", "5", "--seed", "1",
                               "--out", str(out)]).exit_code == 0
    result = runner.invoke(cli, ["model", str(out), "--budget", "1"])
    assert result.exit_code == 3
    assert "--lazy" in result.output


def test_solve(runner, tmp_path, instance_path, fixtures_dir):
    out = tmp_path / "witnesses.yaml"
    result = runner.invoke(cli, ["solve", instance_path, "--out", str(out)])
    assert result.exit_code == 0, result.output
    witnesses = yaml.safe_load(out.read_text())["witnesses"]
    assert {"P": [3, 1, 4, 2], "D": [2, 1, 3, 4]} in witnesses

    result = runner.invoke(cli, ["solve", str(fixtures_dir / "instance-inequivalent-f5.yaml")])
    assert result.exit_code == 0
    assert "0 witness(es) among 24 permutations" in result.output


def test_bench(runner, tmp_path):
    out = tmp_path / "bench.txt"
    result = runner.invoke(cli, ["bench", "--out", str(out)])
    assert result.exit_code == 0, result.output
    assert "Strictly increasing: True" in result.output
    assert "refused" in out.read_text()


def test_selftest_command(runner, fixtures_dir):
    result = runner.invoke(cli, ["selftest", "--fixtures-dir", str(fixtures_dir)])
    assert result.exit_code == 0, result.output
    assert "7/7 checks passed" in result.output


def test_list_fixtures_and_validate(runner, instance_path):
    result = runner.invoke(cli, ["list-fixtures"])
    assert result.exit_code == 0
    assert "Found 2 fixture(s)" in result.output
    result = runner.invoke(cli, ["validate", instance_path])
    assert result.exit_code == 0


def test_check_setup(runner):
    result = runner.invoke(cli, ["check-setup"])
    assert result.exit_code == 0
    assert "Python version" in result.output


def test_config_file(runner, tmp_path, instance_path):
    config = tmp_path / "settings.yaml"
    config.write_text("default_budget: 0\n")
    result = runner.invoke(cli, ["--config", str(config), "model", instance_path])
    assert result.exit_code == 0, result.output
    assert "32 equations: 0 invariant(s)" in result.output

    config.write_text("bench_q: 100\n")
    assert runner.invoke(cli, ["--config", str(config), "check-setup"]).exit_code == 2
    assert runner.invoke(cli, ["--config", str(tmp_path / "none.yaml"), "check-setup"]).exit_code == 4


def test_missing_and_malformed_files(runner, tmp_path):
    assert runner.invoke(cli, ["solve", str(tmp_path / "missing.yaml")]).exit_code == 4
    bad = tmp_path / "bad.yaml"
    bad.write_text("q: [unclosed\n")
    assert runner.invoke(cli, ["model", str(bad)]).exit_code == 4
    bad.write_text("q: 5\nn: 4\n")
    assert runner.invoke(cli, ["model", str(bad)]).exit_code == 2


def test_bad_permutation_argument(runner, tmp_path, instance_path):
    model_path = tmp_path / "model.yaml"
    runner.invoke(cli, ["model", instance_path, "--budget", "1", "--out", str(model_path)])
    assert runner.invoke(cli, ["verify", str(model_path), "--perm", "1,1,2,3"]).exit_code == 2
    assert runner.invoke(cli, ["verify", str(model_path), "--perm", "1,2,3"]).exit_code == 2


def test_gen_is_byte_identical(runner, tmp_path):
    paths = [tmp_path / "a.yaml", tmp_path / "b.yaml"]
    for path in paths:
        runner.invoke(cli, ["gen", "--q", "5", "--n", "4", "--k", "2", "--seed", "42", "--out", str(path)])
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_invgen_dimension_one(runner):
    result = runner.invoke(cli, ["invgen", "--n", "4", "--k", "1"])
    assert result.exit_code == 0, result.output
    assert "0 generator(s); predicted k(n-k)-n+1 = 0" in result.output

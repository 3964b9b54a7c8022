import json

import pytest

from toral_types import cli
from toral_types.oracle import OracleReport


def run(capsys, *argv):
    code = cli.main(list(argv))
    return code, capsys.readouterr().out


@pytest.mark.parametrize("family, rank, count", [("C", "2", 3), ("C", "1", 2), ("A", "3", 4)])
def test_apartment(capsys, family, rank, count):
    code, out = run(capsys, "apartment", family, rank)
    assert code == 0
    assert len(json.loads(out)["vertices"]) == count


def test_apartment_bad_family(capsys):
    code, _ = run(capsys, "apartment", "B", "2")
    assert code == 1


def test_census(capsys):
    code, out = run(capsys, "census", "r2", "--s0", "3/5")
    data = json.loads(out)
    assert code == 0
    assert data["counts"] == {"v0": 1, "v1": 2, "v2": 1}
    assert data["strong_unicity"] is False


def test_census_unramified(capsys):
    code, out = run(capsys, "census", "u½^2", "--s0", "1/10")
    data = json.loads(out)
    assert sorted(data["counts"].values()) == [0, 0, 1]
    assert data["strong_unicity"] is True


def test_census_tsv(capsys):
    code, out = run(capsys, "--format", "tsv", "census", "u½", "r^3", "u0", "--s0", "2/3")
    assert code == 0
    counts = [line.split("\t")[2] for line in out.splitlines()[1:]]
    assert counts == ["0", "1", "3", "3", "1", "0"]


@pytest.mark.parametrize(
    "argv",
    [
        ("census", "r2", "--s0", "0"),
        ("census", "r2"),
        ("census", "r7x", "--s0", "1"),
        ("--format", "svg", "census", "r2", "--s0", "1"),
        ("figure", "r^3", "--s0", "1/10"),
        ("oracle", "remark-orbit", "--q", "4"),
        ("oracle", "remark-orbit", "--N", "3"),
        ("oracle", "fixed-region"),
    ],
)
def test_errors_exit_with_one(capsys, argv):
    code, out = run(capsys, *argv)
    assert code == 1
    assert out == ""


def test_usage_error_exits_with_one():
    with pytest.raises(SystemExit) as e:
        cli.main(["transmogrify"])
    assert e.value.code == 1


def test_figure_to_file(capsys, tmp_path):
    path = tmp_path / "figure.svg"
    code, out = run(capsys, "-o", str(path), "figure", "r2", "--s0", "1/10")
    assert code == 0
    assert out == ""
    assert path.read_text().count("<polygon") == 2


def test_output_dir(capsys, tmp_path):
    code, _ = run(capsys, "--output-dir", str(tmp_path), "census", "r2", "--s0", "3/5")
    files = list(tmp_path.iterdir())
    assert code == 0
    assert len(files) == 1
    assert files[0].name.startswith("census-")
    assert files[0].suffix == ".json"


def test_output_dir_from_environment(capsys, tmp_path, monkeypatch):
    monkeypatch.setenv(cli.OUTPUT_DIR_ENV, str(tmp_path))
    run(capsys, "apartment", "C", "2")
    assert len(list(tmp_path.iterdir())) == 1


def test_output_is_deterministic(capsys, tmp_path):
    for _ in range(2):
        run(capsys, "--output-dir", str(tmp_path), "figure", "r2")
    assert len(list(tmp_path.iterdir())) == 1


def test_config_file(capsys, tmp_path):
    config = tmp_path / "census.env"
    config.write_text("s0=3/5\nformat=tsv\n")
    code, out = run(capsys, "--config", str(config), "census", "r2")
    assert code == 0
    assert out.startswith("vertex_type\tcoordinates\tcount")


def test_explicit_flags_win_over_config(capsys, tmp_path):
    config = tmp_path / "census.env"
    config.write_text("s0=1/10\n")
    _, out = run(capsys, "--config", str(config), "census", "r2", "--s0", "3/5")
    assert json.loads(out)["applicable"] is True


def test_missing_config_file(capsys, tmp_path):
    code, _ = run(capsys, "--config", str(tmp_path / "absent.env"), "apartment", "C", "2")
    assert code == 1


def test_oracle_printed_patterns(capsys):
    code, out = run(capsys, "oracle", "printed-patterns")
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_oracle_remark_orbit(capsys):
    code, out = run(capsys, "oracle", "remark-orbit", "--q", "3", "--N", "6", "--samples", "32")
    data = json.loads(out)
    assert code == 0
    assert list(data)[:6] == ["check", "q", "N", "samples", "verdict", "witnesses"]
    assert data["N"] == 6


def test_oracle_fixed_region(capsys):
    code, out = run(capsys, "oracle", "fixed-region", "r2", "--q", "3", "--N", "6", "--samples", "32")
    assert code == 0
    assert len(json.loads(out)["witnesses"]) == 4


def test_oracle_stabilizer(capsys):
    code, out = run(
        capsys, "oracle", "stabilizer", "--x", "1/4,1/4", "--s", "1/10", "--q", "3", "--N", "6", "--samples", "50"
    )
    assert code == 0
    assert json.loads(out)["verdict"] is True


def test_oracle_stabilizer_sp6_is_repeatable(capsys):
    args = ("oracle", "stabilizer", "--x", "1/2,1/4,0", "--s", "1/10", "--N", "8", "--samples", "300")
    first = run(capsys, *args)
    second = run(capsys, *args)
    assert first == second
    assert first[0] == 0
    assert len(json.loads(first[1])["details"]["vertices"]) == 6


def test_failed_verdict_exits_with_two(capsys, monkeypatch):
    failed = OracleReport(check="printed-patterns", q=0, N=0, samples=0, verdict=False, witnesses=("entry (1,1)",))
    monkeypatch.setattr(cli, "printed_pattern_check", lambda: failed)
    code, out = run(capsys, "oracle", "printed-patterns")
    assert code == 2
    assert json.loads(out)["verdict"] is False

import json
import shutil
from pathlib import Path

import pytest

from domatic.cli import dumps_manifest, main, run_cli, strip_timings

GOLDEN = Path(__file__).parent / "golden"

# (golden file, argv); argv paths are relative to a scratch directory holding the .el inputs
GOLDEN_CASES = [
    ("solve_c8.json", ["solve", "--input", "c8.el", "--epsilon", "1", "--seed", "7"]),
    ("solve_k50.json", ["solve", "--input", "k50.el", "--epsilon", "1", "--seed", "3"]),
    ("naive_k50.json", ["naive", "--input", "k50.el", "--seed", "5"]),
    ("gen_gnp.json", ["gen", "gnp", "--n", "60", "--p", "0.1", "--seed", "11",
                      "--output", "g.el"]),
]


@pytest.fixture
def workdir(tmp_path, monkeypatch):
    for name in ("c8.el", "k50.el"):
        shutil.copy(GOLDEN / name, tmp_path / name)
    monkeypatch.chdir(tmp_path)
    return tmp_path


def run(argv):
    code, manifest = run_cli(argv)
    json.loads(dumps_manifest(manifest))  # always valid JSON
    assert (code == 0) == (manifest["outcome"] == "Success")
    return code, manifest


def canonical(manifest):
    return dumps_manifest(strip_timings(manifest))


class TestGolden:
    @pytest.mark.parametrize("name,argv", GOLDEN_CASES)
    def test_matches_golden(self, workdir, name, argv):
        code, manifest = run(argv)
        assert code == 0
        assert canonical(manifest) == (GOLDEN / name).read_text().strip()

    @pytest.mark.parametrize("name,argv", GOLDEN_CASES)
    def test_repeat_is_identical(self, workdir, name, argv):
        assert canonical(run(argv)[1]) == canonical(run(argv)[1])

    def test_gnp_output_file_stable(self, workdir):
        run(GOLDEN_CASES[-1][1])
        first = Path("g.el").read_text()
        run(GOLDEN_CASES[-1][1])
        assert Path("g.el").read_text() == first

    def test_schema(self, workdir):
        for _, argv in GOLDEN_CASES:
            manifest = run(argv)[1]
            assert {"command", "inputs", "seed", "outcome", "artifacts", "metrics"} <= set(manifest)
            assert "elapsed_ms" in manifest["metrics"]


class TestExamples:
    def test_c8_falls_back_to_baseline(self, workdir):
        code, manifest = run(["solve", "--input", "c8.el", "--epsilon", "1", "--seed", "7"])
        assert code == 0
        assert manifest["metrics"]["stage"] == "baseline"
        assert manifest["metrics"]["partition_size"] == 2

    def test_overlapping_partition(self, workdir):
        Path("p.json").write_text(json.dumps({"classes": [[0, 2, 5], [0, 1, 3, 4, 6, 7]]}))
        code, manifest = run(["verify", "--input", "c8.el", "--partition", "p.json"])
        assert code == 2
        assert manifest["outcome"] == "InvalidPartition"
        assert {"class_index": 1, "reason": "overlap", "vertex": 0} in manifest["metrics"]["violations"]

    def test_bounds_k0(self, workdir):
        code, manifest = run(["bounds", "k0", "--epsilon", "0.5", "--g", "2"])
        assert code == 0
        assert manifest["metrics"]["k_e32"] == 192
        assert manifest["metrics"]["k_e33"] == 49152

    def test_bounds_naive(self, workdir):
        code, manifest = run(["bounds", "naive", "--k", "50"])
        assert code == 0 and manifest["metrics"]["lll_ok"] is True

    def test_oracle(self, workdir):
        assert run(["oracle", "domatic", "--input", "c8.el"])[1]["metrics"]["domatic_number"] == 2
        assert run(["oracle", "gamma", "--input", "c8.el"])[1]["metrics"]["gamma"] == 3


class TestRoundTrip:
    @pytest.mark.parametrize("argv", [
        ["solve", "--input", "k50.el", "--seed", "1", "--output", "part.json"],
        ["solve", "--input", "c8.el", "--output", "part.json"],
        ["naive", "--input", "k50.el", "--seed", "2", "--output", "part.json"],
        ["baseline", "--input", "c8.el", "--output", "part.json"],
        ["baseline", "--input", "k50.el", "--output", "part.json"],
    ])
    def test_written_partition_verifies(self, workdir, argv):
        code, manifest = run(argv)
        assert code == 0 and manifest["artifacts"] == ["part.json"]
        code, manifest = run(["verify", "--input", argv[2], "--partition", "part.json"])
        assert code == 0 and manifest["metrics"]["valid"]

    def test_trials(self, workdir):
        code, manifest = run(["solve", "--input", "k50.el", "--trials", "3", "--seed", "4"])
        assert code == 0
        sizes = [t["partition_size"] for t in manifest["metrics"]["trials"]]
        assert len(sizes) == 3 and manifest["metrics"]["partition_size"] == max(sizes)


class TestExitCodes:
    @pytest.mark.parametrize("argv", [
        [],
        ["frobnicate"],
        ["gen", "gnp", "--n", "10"],
        ["solve"],
        ["solve", "--input", "missing.el"],
        ["gen", "circulant", "--n", "10", "--offsets", "0"],
        ["bounds", "k0", "--epsilon", "1.5", "--g", "2"],
        ["solve", "--seed", "notanumber", "--input", "c8.el"],
    ])
    def test_invalid_input_is_one(self, workdir, argv):
        assert run(argv)[0] == 1

    def test_isolated_vertex_is_one(self, workdir):
        Path("iso.el").write_text("0 1\n2 3\n# vertex 4 is isolated\n3 4\n0 5\n5 6\n6 7\n7 9\n")
        assert run(["solve", "--input", "iso.el"])[0] == 1

    def test_cap_exceeded_is_two(self, workdir, monkeypatch):
        # at k = 50 a bad first sample is rare, so force the cap directly
        from domatic import semirandom
        from domatic.errors import CapExceeded
        from domatic.lll import RunReport

        def capped(g, seed, cap):
            raise CapExceeded("cap", RunReport(seed, {"Avi": cap}, cap, "CapExceeded", []))

        monkeypatch.setattr(semirandom, "naive_domatic", capped)
        code, manifest = run(["naive", "--input", "k50.el", "--cap", "3"])
        assert code == 2 and manifest["outcome"] == "CapExceeded"
        assert manifest["metrics"]["total_resamples"] == 3

    def test_no_feasible_t_is_two(self, workdir):
        code, manifest = run(["bounds", "two-phase", "--k", "10", "--epsilon", "0.1"])
        assert code == 2 and manifest["outcome"] == "NoFeasibleT"

    def test_too_few_colors_is_two(self, workdir):
        assert run(["naive", "--input", "c8.el"])[0] == 2

    def test_degree_check_failed_is_two(self, workdir):
        code, manifest = run(["gen", "witness", "--k", "4", "--g", "2", "--epsilon", "0.5",
                              "--c", "2", "--seed", "1"])
        assert code == 2 and manifest["outcome"] == "DegreeCheckFailed"

    def test_main_prints_one_manifest(self, workdir, capsys):
        assert main(["bounds", "naive", "--k", "50"]) == 0
        lines = capsys.readouterr().out.strip().splitlines()
        assert len(lines) == 1 and json.loads(lines[0])["outcome"] == "Success"

    def test_quiet(self, workdir, capsys):
        main(["bounds", "naive", "--k", "50", "--quiet"])
        assert capsys.readouterr().out == ""


def regenerate() -> None:
    """Rewrite the golden manifests; run from a scratch copy of the inputs."""
    for name, argv in GOLDEN_CASES:
        code, manifest = run_cli(argv)
        assert code == 0, manifest
        (GOLDEN / name).write_text(canonical(manifest) + "\n")


if __name__ == "__main__":
    import os
    import tempfile

    with tempfile.TemporaryDirectory() as tmp:
        for name in ("c8.el", "k50.el"):
            shutil.copy(GOLDEN / name, Path(tmp) / name)
        os.chdir(tmp)
        regenerate()

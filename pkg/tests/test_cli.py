import json
import pathlib

import pytest

from svgreward.cli import main

DATA = pathlib.Path(__file__).parent / "data"


def _read_all(out_dir: pathlib.Path) -> dict[str, bytes]:
    return {
        p.name: p.read_bytes()
        for p in sorted(out_dir.rglob("*"))
        if p.is_file()
    }


class TestEval:
    def test_exit_zero_and_outputs(self, tmp_path, capsys):
        code = main([
            "eval", str(DATA / "candidates.jsonl"),
            "--out-dir", str(tmp_path), "--mock", "--raster-size", "64",
        ])
        assert code == 0
        report = json.loads((tmp_path / "report.json").read_text())
        assert report["n_candidates"] == 3
        assert report["validity_rate_pct"] == pytest.approx(100.0 / 3.0, abs=1e-6)
        lines = (tmp_path / "breakdowns.jsonl").read_text().splitlines()
        assert len(lines) == 3

    def test_missing_file_exit_2(self, tmp_path, capsys):
        code = main(["eval", str(tmp_path / "nope.jsonl"), "--out-dir", str(tmp_path)])
        assert code == 2
        assert capsys.readouterr().err != ""

    def test_invalid_schema_exit_2(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text('{"id": "x"}\n')
        assert main(["eval", str(bad), "--out-dir", str(tmp_path)]) == 2

    def test_remote_unreachable_exit_3(self, tmp_path):
        code = main([
            "eval", str(DATA / "candidates.jsonl"),
            "--out-dir", str(tmp_path),
            "--scorer-url", "http://127.0.0.1:9",
            "--raster-size", "32",
        ])
        assert code == 3

    def test_byte_identical_across_runs_and_jobs(self, tmp_path):
        outs = []
        for name, jobs in (("a", "1"), ("b", "1"), ("c", "8")):
            out = tmp_path / name
            code = main([
                "eval", str(DATA / "candidates.jsonl"), "--out-dir", str(out),
                "--mock", "--raster-size", "64", "--jobs", jobs,
            ])
            assert code == 0
            outs.append(_read_all(out))
        assert outs[0] == outs[1] == outs[2]

    def test_dump_rasters(self, tmp_path):
        code = main([
            "eval", str(DATA / "candidates.jsonl"), "--out-dir", str(tmp_path),
            "--mock", "--raster-size", "32", "--dump-rasters",
        ])
        assert code == 0
        pngs = list((tmp_path / "rasters").glob("*.png"))
        assert len(pngs) == 1  # only the renderable candidate
        assert pngs[0].read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


class TestGrpoSim:
    def test_hand_example_objective_zero(self, tmp_path, capsys):
        code = main([
            "grpo-sim", str(DATA / "groups.jsonl"), "--out-dir", str(tmp_path),
        ])
        assert code == 0
        summary = json.loads((tmp_path / "grpo_summary.json").read_text())
        assert summary["mean_objective"] == pytest.approx(0.0, abs=1e-9)
        rows = [
            json.loads(line)
            for line in (tmp_path / "grpo_results.jsonl").read_text().splitlines()
        ]
        assert rows[0]["group_id"] == "g1"
        assert len(rows[0]["advantages"]) == 2

    def test_mismatched_lengths_exit_2(self, tmp_path):
        bad = tmp_path / "bad.jsonl"
        bad.write_text(
            '{"group_id": "g", "reward": 1.0, "logp_new": [-0.1], '
            '"logp_old": [-0.1, -0.2], "logp_ref": [-0.1]}\n'
        )
        assert main(["grpo-sim", str(bad), "--out-dir", str(tmp_path)]) == 2

    def test_empty_file_exit_2(self, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        assert main(["grpo-sim", str(empty), "--out-dir", str(tmp_path)]) == 2

    def test_single_sample_group_exit_2(self, tmp_path):
        bad = tmp_path / "one.jsonl"
        bad.write_text(
            '{"group_id": "g", "reward": 1.0, "logp_new": [-0.1], '
            '"logp_old": [-0.1], "logp_ref": [-0.1]}\n'
        )
        assert main(["grpo-sim", str(bad), "--out-dir", str(tmp_path)]) == 2


class TestFilter:
    def test_three_triplet_fixture_accepts_one(self, tmp_path, capsys):
        code = main([
            "filter", str(DATA / "triplets.jsonl"), "--out-dir", str(tmp_path),
            "--mock",
        ])
        assert code == 0
        accepted = (tmp_path / "accepted.jsonl").read_text().splitlines()
        assert len(accepted) == 1
        assert json.loads(accepted[0])["id"] == "good_camera"
        verdicts = {
            json.loads(line)["id"]: json.loads(line)
            for line in (tmp_path / "verdicts.jsonl").read_text().splitlines()
        }
        assert verdicts["bad_syntax"]["rejected_at"] == "SyntaxStage"
        assert verdicts["empty_canvas"]["rejected_at"] == "RenderStage"
        assert verdicts["good_camera"]["accepted"] is True
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["n"] == 3

    def test_unreachable_threshold_accepts_none(self, tmp_path):
        code = main([
            "filter", str(DATA / "triplets.jsonl"), "--out-dir", str(tmp_path),
            "--mock", "--threshold", "1.01", "--raster-size", "64",
        ])
        assert code == 0
        accepted = (tmp_path / "accepted.jsonl").read_text().splitlines()
        assert accepted == []

    def test_empty_input_exit_2(self, tmp_path):
        empty = tmp_path / "empty.jsonl"
        empty.write_text("")
        assert main(["filter", str(empty), "--out-dir", str(tmp_path)]) == 2

    def test_remote_unreachable_exit_3(self, tmp_path):
        code = main([
            "filter", str(DATA / "triplets.jsonl"), "--out-dir", str(tmp_path),
            "--scorer-url", "http://127.0.0.1:9", "--raster-size", "32",
        ])
        assert code == 3

    def test_byte_identical_across_runs_and_jobs(self, tmp_path):
        outs = []
        for name, jobs in (("a", "1"), ("b", "8")):
            out = tmp_path / name
            code = main([
                "filter", str(DATA / "triplets.jsonl"), "--out-dir", str(out),
                "--mock", "--jobs", jobs, "--raster-size", "64",
            ])
            assert code == 0
            outs.append(_read_all(out))
        assert outs[0] == outs[1]


class TestStats:
    def test_stats_without_verdicts(self, tmp_path):
        code = main([
            "stats", str(DATA / "triplets.jsonl"), "--out-dir", str(tmp_path),
        ])
        assert code == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["n"] == 3
        assert stats["acceptance_rate"] == 1.0

    def test_stats_with_verdicts(self, tmp_path):
        filter_out = tmp_path / "f"
        main([
            "filter", str(DATA / "triplets.jsonl"), "--out-dir", str(filter_out),
            "--mock",
        ])
        code = main([
            "stats", str(DATA / "triplets.jsonl"),
            "--verdicts", str(filter_out / "verdicts.jsonl"),
            "--out-dir", str(tmp_path),
        ])
        assert code == 0
        stats = json.loads((tmp_path / "stats.json").read_text())
        assert stats["acceptance_rate"] == pytest.approx(1.0 / 3.0, abs=1e-9)


class TestConfigFile:
    def test_config_sections_and_flag_override(self, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text(
            "[weights]\nthink = 0.25\nrender = 0.25\nsemantic = 0.25\naesthetic = 0.25\n"
            "[render]\nraster_size = 32\n"
        )
        out = tmp_path / "out"
        code = main([
            "eval", str(DATA / "candidates.jsonl"), "--out-dir", str(out),
            "--config", str(config), "--mock",
        ])
        assert code == 0
        rows = [
            json.loads(line)
            for line in (out / "breakdowns.jsonl").read_text().splitlines()
        ]
        thinky = next(r for r in rows if r["id"] == "thinky_broken_svg")
        assert thinky["total"] == pytest.approx(0.25, abs=1e-12)

    def test_bad_config_exit_2(self, tmp_path):
        config = tmp_path / "run.ini"
        config.write_text("[nonsense]\nkey = 1\n")
        code = main([
            "eval", str(DATA / "candidates.jsonl"),
            "--out-dir", str(tmp_path), "--config", str(config),
        ])
        assert code == 2

    def test_env_var_sets_scorer_url(self, tmp_path, monkeypatch):
        monkeypatch.setenv("SVGREWARD_SCORER_URL", "http://127.0.0.1:9")
        code = main([
            "eval", str(DATA / "candidates.jsonl"), "--out-dir", str(tmp_path),
            "--raster-size", "32",
        ])
        # env var alone does not force remote mode; default mode stays mock
        assert code == 0

"""Command line contract: exit codes, summaries, and config precedence."""

from __future__ import annotations

import json
import socket

import pytest

from alphamotion.cli import EXIT_IO, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION, main
from alphamotion.config import RunConfig
from alphamotion.dataset import read_manifest

from conftest import write_clip_fixture, write_foreground_fixture


def run(argv: list[str]) -> int:
    return main(argv)


class TestSynth:
    def test_happy_path_writes_manifest(self, sprite_dir, tmp_path):
        out = tmp_path / "data"
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "2", "--seed", "3",
             "--out", str(out)]
        )
        assert code == EXIT_OK
        manifest = read_manifest(out / "manifest.jsonl")
        assert len(manifest.entries) == 2
        assert manifest.extra == {"seed": 3}
        assert manifest.counts["synthetic"] == 2

    def test_json_summary(self, sprite_dir, tmp_path, capsys):
        out = tmp_path / "data"
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "1", "--seed", "0",
             "--out", str(out), "--json-summary"]
        )
        assert code == EXIT_OK
        summary = json.loads(capsys.readouterr().out.strip())
        assert summary["command"] == "synth"
        assert summary["entries"] == 1
        assert summary["counts"]["synthetic"] == 1

    def test_count_zero_is_usage_error(self, sprite_dir, tmp_path):
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "0",
             "--out", str(tmp_path)]
        )
        assert code == EXIT_USAGE

    def test_missing_sprite_dir_is_io_error(self, tmp_path):
        code = run(
            ["synth", "--sprites", str(tmp_path / "nowhere"), "--count", "1",
             "--out", str(tmp_path / "data")]
        )
        assert code == EXIT_IO

    def test_dir_without_usable_pngs_is_io_error(self, tmp_path):
        empty = tmp_path / "sprites"
        empty.mkdir()
        (empty / "broken.png").write_bytes(b"not a png")
        code = run(
            ["synth", "--sprites", str(empty), "--count", "1",
             "--out", str(tmp_path / "data")]
        )
        assert code == EXIT_IO

    def test_missing_required_flag_is_usage_error(self, tmp_path):
        assert run(["synth", "--count", "1"]) == EXIT_USAGE

    def test_flag_overrides_config_file(self, sprite_dir, tmp_path):
        cfg_path = tmp_path / "run.json"
        RunConfig(seed=5, output_root=str(tmp_path / "ignored")).save(cfg_path)
        out = tmp_path / "data"
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "1",
             "--config", str(cfg_path), "--seed", "9", "--out", str(out)]
        )
        assert code == EXIT_OK
        manifest = read_manifest(out / "manifest.jsonl")
        assert manifest.extra == {"seed": 9}
        assert not (tmp_path / "ignored").exists()

    def test_config_file_applies_without_flags(self, sprite_dir, tmp_path):
        out = tmp_path / "from_config"
        cfg_path = tmp_path / "run.json"
        RunConfig(seed=5, output_root=str(out), frame_count=4).save(cfg_path)
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "1",
             "--config", str(cfg_path)]
        )
        assert code == EXIT_OK
        manifest = read_manifest(out / "manifest.jsonl")
        assert manifest.extra == {"seed": 5}
        entry_dir = out / manifest.entries[0].clip_path
        assert (entry_dir / "frame_0003.png").is_file()
        assert not (entry_dir / "frame_0004.png").exists()

    def test_unreadable_config_is_io_error(self, sprite_dir, tmp_path):
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "1",
             "--config", str(tmp_path / "missing.json"), "--out", str(tmp_path / "d")]
        )
        assert code == EXIT_IO

    def test_invalid_config_is_validation_error(self, sprite_dir, tmp_path):
        cfg_path = tmp_path / "run.json"
        cfg_path.write_text('{"frame_count": 0}')
        code = run(
            ["synth", "--sprites", str(sprite_dir), "--count", "1",
             "--config", str(cfg_path), "--out", str(tmp_path / "d")]
        )
        assert code == EXIT_VALIDATION


class TestIngest:
    def test_foreground_moving_added(self, tmp_path, capsys):
        rgb_dir, mask_dir = write_foreground_fixture(tmp_path / "src", step=3)
        out = tmp_path / "data"
        code = run(
            ["ingest", "foreground", "--rgb", str(rgb_dir), "--masks", str(mask_dir),
             "--out", str(out), "--json-summary"]
        )
        assert code == EXIT_OK
        summary = json.loads(capsys.readouterr().out.strip())
        assert summary["added"] == 1 and summary["filtered"] == 0
        manifest = read_manifest(out / "manifest.jsonl")
        assert manifest.counts["foreground"] == 1
        assert manifest.extra["foreground_threshold"] == 1.0

    def test_foreground_static_filtered(self, tmp_path, capsys):
        rgb_dir, mask_dir = write_foreground_fixture(tmp_path / "src", step=0)
        code = run(
            ["ingest", "foreground", "--rgb", str(rgb_dir), "--masks", str(mask_dir),
             "--out", str(tmp_path / "data"), "--json-summary"]
        )
        assert code == EXIT_OK
        summary = json.loads(capsys.readouterr().out.strip())
        assert summary["added"] == 0 and summary["filtered"] == 1

    def test_threshold_flag_recorded(self, tmp_path):
        rgb_dir, mask_dir = write_foreground_fixture(tmp_path / "src", step=3)
        out = tmp_path / "data"
        code = run(
            ["ingest", "foreground", "--rgb", str(rgb_dir), "--masks", str(mask_dir),
             "--out", str(out), "--threshold", "2.5"]
        )
        assert code == EXIT_OK
        assert read_manifest(out / "manifest.jsonl").extra["foreground_threshold"] == 2.5

    def test_game_effect_merges_with_existing_manifest(self, sprite_dir, tmp_path):
        out = tmp_path / "data"
        assert run(
            ["synth", "--sprites", str(sprite_dir), "--count", "1", "--seed", "1",
             "--out", str(out)]
        ) == EXIT_OK
        library = tmp_path / "library"
        library.mkdir()
        write_clip_fixture(library, "clip_a")
        write_clip_fixture(library, "clip_b")
        code = run(["ingest", "game-effect", "--src", str(library), "--out", str(out)])
        assert code == EXIT_OK
        manifest = read_manifest(out / "manifest.jsonl")
        assert manifest.counts == {
            "game_effect": 2, "foreground": 0, "synthetic": 1, "iterated": 0,
        }
        assert manifest.extra == {"seed": 1}

    def test_curated_requires_captions(self, tmp_path):
        assert run(["ingest", "curated", "--src", str(tmp_path)]) == EXIT_USAGE

    def test_foreground_requires_both_dirs(self, tmp_path):
        assert run(["ingest", "foreground", "--rgb", str(tmp_path)]) == EXIT_USAGE

    def test_game_effect_bad_src_is_io_error(self, tmp_path):
        code = run(
            ["ingest", "game-effect", "--src", str(tmp_path / "nowhere"),
             "--out", str(tmp_path / "data")]
        )
        assert code == EXIT_IO

    def test_unknown_kind_is_usage_error(self):
        assert run(["ingest", "mystery"]) == EXIT_USAGE


class TestValidate:
    def test_subset_passes(self, capsys):
        code = run(["validate", "--suites", "control,captions"])
        assert code == EXIT_OK
        out = capsys.readouterr().out
        assert "PASS control_roundtrip" in out
        assert "PASS trigger_mapping" in out
        assert "FAIL" not in out

    def test_json_summary(self, capsys):
        code = run(["validate", "--suites", "compositing", "--json-summary"])
        assert code == EXIT_OK
        lines = capsys.readouterr().out.strip().splitlines()
        summary = json.loads(lines[-1])
        assert summary["failed"] == 0 and summary["failures"] == []

    def test_unknown_suite_is_usage_error(self, capsys):
        assert run(["validate", "--suites", "bogus"]) == EXIT_USAGE

    def test_empty_suite_selection_is_usage_error(self):
        assert run(["validate", "--suites", " , "]) == EXIT_USAGE

    def test_corrupted_schedule_fails_named_check(self, tmp_path, capsys):
        path = tmp_path / "schedule.json"
        path.write_text('{"alpha_bar": [0.5, 0.9]}')
        code = run(["validate", "--suites", "captions", "--schedule", str(path)])
        assert code == EXIT_VALIDATION
        out = capsys.readouterr().out
        assert "FAIL schedule_file" in out

    def test_valid_schedule_passes(self, tmp_path, capsys):
        path = tmp_path / "schedule.json"
        path.write_text('{"alpha_bar": [1.0, 0.9, 0.5]}')
        code = run(["validate", "--suites", "captions", "--schedule", str(path)])
        assert code == EXIT_OK
        assert "PASS schedule_file" in capsys.readouterr().out


class TestServe:
    def test_port_out_of_range_is_usage_error(self):
        assert run(["serve", "--port", "70000"]) == EXIT_USAGE

    def test_busy_port_is_io_error(self):
        holder = socket.socket(socket.AF_INET, socket.SOCK_STREAM)
        holder.bind(("127.0.0.1", 0))
        port = holder.getsockname()[1]
        try:
            code = run(["serve", "--host", "127.0.0.1", "--port", str(port)])
        finally:
            holder.close()
        assert code == EXIT_IO


class TestParser:
    def test_no_command_is_usage_error(self):
        assert run([]) == EXIT_USAGE

    def test_unknown_command_is_usage_error(self):
        assert run(["frobnicate"]) == EXIT_USAGE

from __future__ import annotations

import json

import pytest

from wcescan import serialize_rule, preset_range_ratio, write_ppm
from wcescan.cli import main

from conftest import make_frame


@pytest.fixture
def red_ppm(tmp_path):
    path = tmp_path / "red.ppm"
    write_ppm(make_frame([[(255, 0, 0)] * 4] * 4), path)
    return path


class TestClassify:
    def test_uniform_red_is_bleeding(self, red_ppm, capsys):
        assert main(["classify", str(red_ppm), "--rule", "purity_red"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert lines[0] == "source,rule_id,matching_count,min_count,verdict"
        assert lines[1] == f"{red_ppm},purity_red,16,1,bleeding"

    def test_structured_format(self, red_ppm, capsys):
        assert main(["classify", str(red_ppm), "--rule", "purity_red",
                     "--format", "structured"]) == 0
        record = json.loads(capsys.readouterr().out)
        assert record["verdict"] == "bleeding"
        assert record["matching_count"] == 16

    def test_min_count_flag(self, red_ppm, capsys):
        assert main(["classify", str(red_ppm), "--rule", "purity_red",
                     "--min-count", "17"]) == 0
        assert capsys.readouterr().out.splitlines()[1].endswith(",non_bleeding")

    def test_undecodable_image_exits_2(self, tmp_path, capsys):
        bad = tmp_path / "junk.ppm"
        bad.write_text("hello")
        assert main(["classify", str(bad), "--rule", "purity_red"]) == 2
        assert "error:" in capsys.readouterr().err

    def test_rule_document_path(self, red_ppm, tmp_path, capsys):
        rule_path = tmp_path / "wide.json"
        rule_path.write_text(
            '{"id": "wide", "r": {"lo": 0, "hi": 255}, '
            '"g": {"lo": 0, "hi": 255}, "b": {"lo": 0, "hi": 255}}'
        )
        assert main(["classify", str(red_ppm), "--rule", str(rule_path)]) == 0
        assert ",wide,16,1,bleeding" in capsys.readouterr().out


class TestVolume:
    def test_range_ratio(self, capsys):
        assert main(["volume", "--rule", "range_ratio"]) == 0
        assert capsys.readouterr().out.strip() == "10176"

    def test_purity(self, capsys):
        assert main(["volume", "--rule", "purity_red"]) == 0
        assert capsys.readouterr().out.strip() == "1"

    def test_rule_file(self, tmp_path, capsys):
        rule_path = tmp_path / "r.json"
        rule_path.write_text(serialize_rule(preset_range_ratio()))
        assert main(["volume", "--rule", str(rule_path)]) == 0
        assert capsys.readouterr().out.strip() == "10176"

    def test_unreadable_rule_exits_2(self, capsys):
        assert main(["volume", "--rule", "no/such/rule.json"]) == 2
        assert "cannot read rule" in capsys.readouterr().err

    def test_malformed_rule_exits_2(self, tmp_path, capsys):
        rule_path = tmp_path / "bad.json"
        rule_path.write_text('{"id": "x"}')
        assert main(["volume", "--rule", str(rule_path)]) == 2
        assert "bad rule document" in capsys.readouterr().err


class TestBatch:
    def test_directory_sorted_by_name(self, tmp_path, capsys):
        for name, color in [("b.ppm", (0, 0, 0)), ("a.ppm", (100, 20, 10)), ("c.txt", None)]:
            if color is None:
                (tmp_path / name).write_text("not an image")
            else:
                write_ppm(make_frame([[color]]), tmp_path / name)
        assert main(["batch", str(tmp_path), "--rule", "range_ratio"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 3  # header + two images; .txt not scanned
        assert lines[1].startswith(str(tmp_path / "a.ppm"))
        assert lines[1].endswith(",bleeding")
        assert lines[2].startswith(str(tmp_path / "b.ppm"))

    def test_list_file_order_and_error_slots(self, tmp_path, capsys):
        write_ppm(make_frame([[(100, 20, 10)]]), tmp_path / "x.ppm")
        listing = tmp_path / "list.txt"
        listing.write_text("x.ppm\nmissing.ppm\nx.ppm\n")
        assert main(["batch", str(listing), "--rule", "range_ratio"]) == 0
        lines = capsys.readouterr().out.splitlines()
        assert len(lines) == 4
        assert lines[1].endswith(",bleeding")
        assert "error:" in lines[2]
        assert lines[3].endswith(",bleeding")

    def test_workers_flag_output_identical(self, tmp_path, capsys):
        for i in range(8):
            write_ppm(make_frame([[(i * 30 % 256, 20, 10)]]), tmp_path / f"f{i}.ppm")
        outputs = []
        for workers in ("1", "4"):
            assert main(["batch", str(tmp_path), "--rule", "range_ratio",
                         "--workers", workers]) == 0
            outputs.append(capsys.readouterr().out)
        assert outputs[0] == outputs[1]

    def test_output_file(self, tmp_path, red_ppm):
        out = tmp_path / "records.csv"
        assert main(["batch", str(red_ppm.parent), "--rule", "purity_red",
                     "--output", str(out)]) == 0
        assert out.read_text().startswith("source,rule_id,")

    def test_empty_directory_exits_2(self, tmp_path, capsys):
        assert main(["batch", str(tmp_path), "--rule", "purity_red"]) == 2
        assert "no image files" in capsys.readouterr().err


class TestEval:
    def test_gen_then_eval_round_trip(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        assert main(["gen", "--seed", "42", "--n", "20",
                     "--bleeding-fraction", "0.5", "--out", str(corpus)]) == 0
        capsys.readouterr()

        assert main(["eval", "--manifest", str(corpus / "manifest.csv"),
                     "--rule", "range_ratio"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["accuracy"] == 1.0
        assert report["tp"] == 10 and report["tn"] == 10
        assert report["fp"] == 0 and report["fn"] == 0

        assert main(["eval", "--manifest", str(corpus / "manifest.csv"),
                     "--rule", "purity_red"]) == 0
        report = json.loads(capsys.readouterr().out)
        assert report["predicted_bleeding"] == 0
        assert report["accuracy"] == 0.5

    def test_table_flag(self, tmp_path, capsys):
        corpus = tmp_path / "corpus"
        main(["gen", "--seed", "1", "--n", "4", "--out", str(corpus)])
        capsys.readouterr()
        assert main(["eval", "--manifest", str(corpus / "manifest.csv"),
                     "--rule", "range_ratio", "--table"]) == 0
        out = capsys.readouterr().out
        assert '"rule_id": "range_ratio"' in out
        assert "Classification" in out and "Accuracy" in out

    def test_missing_manifest_exits_2(self, capsys):
        assert main(["eval", "--manifest", "no/manifest.csv",
                     "--rule", "range_ratio"]) == 2
        assert "cannot read manifest" in capsys.readouterr().err

    def test_bad_label_exits_2(self, tmp_path, capsys):
        manifest = tmp_path / "m.csv"
        manifest.write_text("a.ppm,maybe\n")
        assert main(["eval", "--manifest", str(manifest), "--rule", "range_ratio"]) == 2
        assert "unknown label" in capsys.readouterr().err


class TestGen:
    def test_rerun_is_byte_identical(self, tmp_path, capsys):
        for sub in ("a", "b"):
            assert main(["gen", "--seed", "9", "--n", "4", "--out",
                         str(tmp_path / sub)]) == 0
        capsys.readouterr()
        assert (tmp_path / "a" / "manifest.csv").read_bytes() == (
            tmp_path / "b" / "manifest.csv"
        ).read_bytes()
        for i in range(4):
            name = f"frame_{i:05d}.ppm"
            assert (tmp_path / "a" / name).read_bytes() == (
                tmp_path / "b" / name
            ).read_bytes()

    def test_prints_manifest_path(self, tmp_path, capsys):
        assert main(["gen", "--seed", "1", "--n", "2", "--out",
                     str(tmp_path / "c")]) == 0
        assert capsys.readouterr().out.strip().endswith("manifest.csv")

    def test_invalid_n_exits_2(self, tmp_path, capsys):
        assert main(["gen", "--seed", "1", "--n", "1", "--out",
                     str(tmp_path / "c")]) == 2
        assert "at least 2" in capsys.readouterr().err


class TestParsing:
    def test_unknown_command(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["frobnicate"])
        assert exc.value.code == 2

    def test_unknown_flag(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["volume", "--rule", "purity_red", "--loud"])
        assert exc.value.code == 2

    def test_invalid_numeric(self, capsys):
        with pytest.raises(SystemExit) as exc:
            main(["gen", "--seed", "abc", "--n", "4", "--out", "x"])
        assert exc.value.code == 2

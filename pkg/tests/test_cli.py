"""
Command-line tests: exit codes, emitted documents and error reporting
"""

import json
from pathlib import Path

import pytest

from lealc.main import main
from lealc.models.schemas import ModelDocument, TraceDocument
from lealc.syntax.parser import parse_kb, parse_term

# ============================================================================
# check
# ============================================================================


@pytest.mark.parametrize("name, code, first_line", [
    ("example1.kb", 1, "inconsistent: clash between b R y and not b R y"),
    ("example2.kb", 0, "consistent"),
    ("empty.kb", 0, "consistent"),
    ("tbox_demo.kb", 1, "inconsistent: clash between b R y and not b R y"),
])
def test_check_exit_codes(samples_dir, capsys, name: str, code: int, first_line: str) -> None:
    assert main(["check", str(samples_dir / name)]) == code
    assert capsys.readouterr().out.splitlines()[0] == first_line


def test_model_out(samples_dir, tmp_path) -> None:
    target = tmp_path / "model.json"
    assert main(["check", str(samples_dir / "example2.kb"), "--model-out", str(target)]) == 0
    document = ModelDocument.model_validate_json(target.read_text(encoding="utf-8"))
    assert len(document.objects) == 6
    assert len(document.features) == 6
    assert document.box == {"R": [["b", "y"]]}
    assert document.individuals["b"] == "b"


def test_no_model_for_inconsistent_kb(samples_dir, tmp_path) -> None:
    target = tmp_path / "model.json"
    assert main(["check", str(samples_dir / "example1.kb"), "--model-out", str(target)]) == 1
    assert not target.exists()


def test_trace_terms_parse_back(samples_dir, tmp_path) -> None:
    target = tmp_path / "trace.json"
    assert main(["check", str(samples_dir / "example1.kb"), "--trace", str(target)]) == 1
    document = TraceDocument.model_validate_json(target.read_text(encoding="utf-8"))
    signature = parse_kb("\n".join(document.declarations)).signature
    assert document.records
    for record in document.records:
        for text in record.premises + record.added:
            assert str(parse_term(text, signature)) == text


def test_unravel_only_prints_a_parseable_kb(samples_dir, capsys) -> None:
    assert main(["check", str(samples_dir / "tbox_demo.kb"), "--unravel-only"]) == 0
    out = capsys.readouterr().out
    assert "abox b : [R](C & D)" in out.splitlines()
    assert "concept Gci1" in out.splitlines()
    kb = parse_kb(out)
    assert kb.tbox == ()
    assert len(kb.abox) == 4


def test_stats(samples_dir, capsys) -> None:
    assert main(["check", str(samples_dir / "example2.kb"), "--stats"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert "regime: no TBox" in lines
    stats = json.loads("\n".join(lines[lines.index("regime: no TBox") + 1:]))
    assert stats["size"] == 14
    assert stats["steps"] <= stats["bound"]


def test_oracle_cross_check(samples_dir, capsys) -> None:
    assert main(["check", str(samples_dir / "example2.kb"), "--oracle-max", "1"]) == 0
    out = capsys.readouterr().out
    assert "oracle: agree" in out


# ============================================================================
# errors
# ============================================================================


def test_missing_file(tmp_path, capsys) -> None:
    assert main(["check", str(tmp_path / "absent.kb")]) == 2
    assert capsys.readouterr().err.startswith("error:")


def test_parse_error_names_the_line(tmp_path, capsys) -> None:
    path = tmp_path / "bad.kb"
    path.write_text("object b\nabox b : Undeclared\n", encoding="utf-8")
    assert main(["check", str(path)]) == 2
    assert "line 2" in capsys.readouterr().err


def test_cyclic_tbox(tmp_path) -> None:
    path = tmp_path / "cyclic.kb"
    path.write_text("concept A B\ntbox A == B\ntbox B == A\n", encoding="utf-8")
    assert main(["check", str(path)]) == 3


def test_safety_limit_is_an_error(samples_dir) -> None:
    assert main(["check", str(samples_dir / "example1.kb"), "--max-steps", "1"]) == 2


def test_usage_error() -> None:
    assert main(["check"]) == 2


# ============================================================================
# batch and generate
# ============================================================================


def test_batch_over_a_directory(samples_dir, capsys, tmp_path) -> None:
    csv = tmp_path / "summary.csv"
    assert main(["batch", str(samples_dir), "--csv", str(csv)]) == 0
    out = capsys.readouterr().out
    assert "example1.kb" in out and "example2.kb" in out
    assert csv.read_text(encoding="utf-8").startswith("file,verdict,steps")


def test_batch_without_files(capsys) -> None:
    assert main(["batch"]) == 0
    assert capsys.readouterr().out.strip() == "no files"


def test_generate_then_batch(tmp_path, capsys) -> None:
    assert main(["generate", "blocks", "--sizes", "10", "20", "40", "--out", str(tmp_path)]) == 0
    paths = capsys.readouterr().out.split()
    assert [Path(p).name for p in paths] == ["blocks_0010.kb", "blocks_0020.kb", "blocks_0040.kb"]
    assert main(["batch", str(tmp_path)]) == 0
    assert "growth exponent" in capsys.readouterr().out

"""
Batch runs, growth fitting and the generated ABox families
"""

import pandas as pd
import pytest

from lealc.services.batch_service import SUMMARY_COLUMNS, batch_service
from lealc.services.generators import (
    FAMILY_KINDS, abox_family, exhaustive_aboxes, random_suite, small_term_pool, write_family,
)
from lealc.syntax.measures import abox_size
from lealc.syntax.parser import parse_kb


def _summary(sizes, steps, errors=None) -> pd.DataFrame:
    errors = errors or [None] * len(sizes)
    return pd.DataFrame({
        "file": [f"f{i}.kb" for i in range(len(sizes))],
        "verdict": ["consistent"] * len(sizes),
        "steps": steps,
        "terms": steps,
        "size": sizes,
        "bound": [4 * s * s for s in sizes],
        "wall_time": [0.0] * len(sizes),
        "error": errors,
    }, columns=SUMMARY_COLUMNS)


# ============================================================================
# run_batch
# ============================================================================


def test_batch_over_samples(samples_dir) -> None:
    paths = [samples_dir / "example1.kb", samples_dir / "example2.kb"]
    df = batch_service.run_batch(paths, parallelism=2)
    assert list(df.columns) == SUMMARY_COLUMNS
    assert df["verdict"].tolist() == ["inconsistent", "consistent"]
    assert df["error"].isna().all()
    assert batch_service.within_bound(df)


def test_empty_batch() -> None:
    df = batch_service.run_batch([])
    assert df.empty
    assert list(df.columns) == SUMMARY_COLUMNS
    assert batch_service.growth_exponent(df) == (None, None)


def test_bad_file_does_not_abort_the_batch(samples_dir, tmp_path) -> None:
    bad = tmp_path / "bad.kb"
    bad.write_text("abox b : D\n", encoding="utf-8")
    df = batch_service.run_batch([bad, samples_dir / "example2.kb"])
    assert pd.isna(df.loc[0, "verdict"])
    assert df.loc[0, "error"]
    assert df.loc[1, "verdict"] == "consistent"


# ============================================================================
# Growth fit
# ============================================================================


def test_quadratic_growth() -> None:
    sizes = [10, 100, 1000]
    slope, r_squared = batch_service.growth_exponent(_summary(sizes, [s ** 2 for s in sizes]))
    assert slope == pytest.approx(2.0)
    assert r_squared == pytest.approx(1.0)


def test_too_few_rows_to_fit() -> None:
    assert batch_service.growth_exponent(_summary([10, 100], [100, 10000])) == (None, None)


def test_error_rows_are_ignored_by_the_fit() -> None:
    summary = _summary([10, 100, 1000], [100, 10000, 1000000], errors=[None, None, "boom"])
    assert batch_service.growth_exponent(summary) == (None, None)


def test_within_bound_uses_slack() -> None:
    summary = _summary([10], [500])
    assert not batch_service.within_bound(summary, slack=1)
    assert batch_service.within_bound(summary, slack=2)


# ============================================================================
# Generators
# ============================================================================


def test_written_family_parses(tmp_path) -> None:
    paths = write_family(tmp_path, "nested", [10, 20])
    assert [p.name for p in paths] == ["nested_0010.kb", "nested_0020.kb"]
    for path, n in zip(paths, (10, 20)):
        kb = parse_kb(path.read_text(encoding="utf-8"))
        assert abox_size(kb.abox) >= n


def test_random_suite_is_deterministic() -> None:
    assert list(random_suite(5, 10)) == list(random_suite(5, 10))


def test_term_pool() -> None:
    pool = small_term_pool()
    assert len(pool) == 32
    assert len(set(pool)) == 32
    assert len(list(exhaustive_aboxes(max_terms=1))) == 33


@pytest.mark.parametrize("kind", FAMILY_KINDS)
def test_family_reaches_its_size(kind: str) -> None:
    terms, _ = abox_family(kind, 10)
    assert abox_size(terms) >= 10


def test_unknown_family() -> None:
    with pytest.raises(ValueError):
        abox_family("spiral", 10)

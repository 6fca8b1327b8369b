"""
Batch Service
Checks many knowledge-base files concurrently and summarises them in a
table, with a log-log fit of rule applications against ABox size
"""

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Iterable, Optional, Tuple

import numpy as np
import pandas as pd
from scipy import stats

from lealc.core.config import get_settings
from lealc.core.exceptions import LeAlcError
from lealc.models.schemas import BatchRow
from lealc.syntax.parser import parse_kb
from .tableau_service import tableau_service
from .tbox_service import tbox_service

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = ["file", "verdict", "steps", "terms", "size", "bound", "wall_time", "error"]


class BatchService:
    """One independent check per file; a failing file never aborts the batch"""

    @staticmethod
    def check_file(path: Path, max_steps: Optional[int] = None) -> BatchRow:
        started = time.perf_counter()
        try:
            kb = parse_kb(Path(path).read_text(encoding="utf-8"))
            abox, signature, _ = tbox_service.prepare(kb)
            verdict = tableau_service.saturate(abox, signature, max_steps=max_steps, extract=False)
            return BatchRow(
                file=str(path),
                verdict=verdict.status,
                steps=verdict.stats.steps,
                terms=verdict.stats.terms,
                size=verdict.stats.size,
                bound=verdict.stats.bound,
                wall_time=round(time.perf_counter() - started, 6),
            )
        except (LeAlcError, OSError) as e:
            logger.warning(f"Skipping {path}: {e}")
            return BatchRow(file=str(path), wall_time=round(time.perf_counter() - started, 6), error=str(e))

    @staticmethod
    def run_batch(paths: Iterable[Path], parallelism: Optional[int] = None,
                  max_steps: Optional[int] = None) -> pd.DataFrame:
        """Summary table in input order"""
        paths = list(paths)
        if not paths:
            return pd.DataFrame(columns=SUMMARY_COLUMNS)
        workers = parallelism or get_settings().batch_parallelism
        logger.info(f"Checking {len(paths)} files with {workers} workers")
        with ThreadPoolExecutor(max_workers=workers) as executor:
            rows = list(executor.map(lambda p: BatchService.check_file(p, max_steps), paths))

        df = pd.DataFrame([row.model_dump() for row in rows], columns=SUMMARY_COLUMNS)
        df["verdict"] = df["verdict"].map(lambda v: v.value if v is not None else None)
        return df

    @staticmethod
    def growth_exponent(summary: pd.DataFrame) -> Tuple[Optional[float], Optional[float]]:
        """
        Fit log(steps) = k * log(size) + c over the checked rows.
        Returns (k, r_squared), or (None, None) with fewer than three usable rows.
        """
        if summary.empty:
            return None, None
        usable = summary[summary["error"].isna() & (summary["steps"] > 0) & (summary["size"] > 0)]
        if len(usable) < 3 or usable["size"].nunique() < 2:
            return None, None
        try:
            slope, _, r_value, _, _ = stats.linregress(
                np.log(usable["size"].astype(float)), np.log(usable["steps"].astype(float))
            )
            return float(slope), float(r_value ** 2)
        except Exception as e:
            logger.warning(f"Error fitting growth exponent: {e}")
            return None, None

    @staticmethod
    def within_bound(summary: pd.DataFrame, slack: Optional[int] = None) -> bool:
        """Every checked row stays under slack * bound rule applications"""
        slack = get_settings().step_bound_slack if slack is None else slack
        checked = summary[summary["error"].isna()]
        return bool((checked["steps"] <= slack * checked["bound"]).all())


# Singleton instance
batch_service = BatchService()

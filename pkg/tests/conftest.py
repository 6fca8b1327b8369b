"""
Shared fixtures: the sample knowledge bases and a one-call saturation helper
"""

from pathlib import Path
from typing import Callable

import pytest

from lealc.services.tableau_service import Verdict, tableau_service
from lealc.services.tbox_service import tbox_service
from lealc.syntax.parser import parse_kb
from lealc.syntax.terms import KnowledgeBase

SAMPLES_DIR = Path(__file__).resolve().parent.parent / "samples"


@pytest.fixture
def samples_dir() -> Path:
    return SAMPLES_DIR


@pytest.fixture
def load_kb() -> Callable[[str], KnowledgeBase]:
    """Parse a sample file by name"""
    def _load(name: str) -> KnowledgeBase:
        return parse_kb((SAMPLES_DIR / name).read_text(encoding="utf-8"))
    return _load


@pytest.fixture
def example1(load_kb) -> KnowledgeBase:
    return load_kb("example1.kb")


@pytest.fixture
def example2(load_kb) -> KnowledgeBase:
    return load_kb("example2.kb")


@pytest.fixture
def saturate_kb() -> Callable[..., Verdict]:
    def _saturate(kb: KnowledgeBase, **kwargs) -> Verdict:
        abox, signature, _ = tbox_service.prepare(kb)
        return tableau_service.saturate(abox, signature, **kwargs)
    return _saturate

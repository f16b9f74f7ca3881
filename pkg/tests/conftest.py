from __future__ import annotations

import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from mizthf import Signature, parse_signature

CORPUS = Path(__file__).parent.parent / "corpus"


@pytest.fixture(scope="session")
def corpus_sig() -> Signature:
    return parse_signature((CORPUS / "common.sig").read_text())


@pytest.fixture(scope="session")
def corpus_files() -> list[Path]:
    files = sorted(CORPUS.glob("*.mst"))
    assert len(files) >= 10
    return files

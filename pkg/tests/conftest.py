from pathlib import Path

import pytest

from tokeval import load_corpus, load_vocab

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fixture_corpus_path(data_dir) -> Path:
    return data_dir / "fixture.conllu"


@pytest.fixture(scope="session")
def fixture_vocab_path(data_dir) -> Path:
    return data_dir / "fixture_vocab.txt"


@pytest.fixture(scope="session")
def fixture_corpus(fixture_corpus_path):
    return load_corpus([fixture_corpus_path], "xx")


@pytest.fixture(scope="session")
def fixture_vocab(fixture_vocab_path):
    with open(fixture_vocab_path, encoding="utf-8") as handle:
        return load_vocab(handle, "fixture_vocab")

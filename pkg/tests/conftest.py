import pathlib

import pytest

from abduce.parser import parse_kb

ROOT = pathlib.Path(__file__).resolve().parent.parent
CORPUS = ROOT / "corpus"


@pytest.fixture(scope="session")
def corpus_dir() -> pathlib.Path:
    return CORPUS


def load_corpus_kb(name: str):
    return parse_kb((CORPUS / name).read_text(encoding="utf-8"))


@pytest.fixture(scope="session")
def kb1():
    return load_corpus_kb("kb1.kb")


@pytest.fixture(scope="session")
def adder():
    return load_corpus_kb("adder.kb")


@pytest.fixture(scope="session")
def dracula():
    return load_corpus_kb("dracula.kb")


@pytest.fixture(scope="session")
def medical():
    return load_corpus_kb("medical_toy.kb")

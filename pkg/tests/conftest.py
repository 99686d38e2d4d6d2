import json
import pathlib

import pytest

DATA_DIR = pathlib.Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> pathlib.Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def svg_corpus():
    folder = DATA_DIR / "svg"
    labels = json.loads((folder / "labels.json").read_text())
    return {name: (folder / name).read_text() for name in labels}, labels


@pytest.fixture(scope="session")
def complexity_corpus():
    folder = DATA_DIR / "complexity"
    labels = json.loads((folder / "labels.json").read_text())
    return {name: (folder / name).read_text() for name in labels}, labels


@pytest.fixture(scope="session")
def dwt_corpus():
    folder = DATA_DIR / "dwt"
    labels = json.loads((folder / "labels.json").read_text())
    return {name: (folder / name).read_text() for name in labels}, labels

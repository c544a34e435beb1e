"""Testing entrypoint."""

from pathlib import Path

from rankdrop.file_format import load_config
from rankdrop.projective import Config

TEST_DATA = Path(__file__).parent / "test_data"


def load_fixture(name: str) -> Config:
    """Load a configuration stored under test_data."""
    return load_config(TEST_DATA / f"{name}.json")

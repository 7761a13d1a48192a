import pathlib

import numpy as np
import pytest

from depthkit import cli
from depthkit.core import Dataset

DATA_DIR = pathlib.Path(__file__).parent / "data"
BOSTON_CSV = DATA_DIR / "boston_rm_dis_65.csv"


@pytest.fixture(scope="session")
def boston() -> Dataset:
    """First 65 rows of the Boston housing rm/dis columns (see README for
    the public source and the exact ingestion recipe)."""
    return cli.ingest_csv(str(BOSTON_CSV), has_header=True, columns=("rm", "dis"))


def random_dataset(seed: int, n: int, d: int = 2, scale: float = 1.0) -> Dataset:
    rng = np.random.default_rng(seed)
    return Dataset.from_array(scale * rng.normal(size=(n, d)))

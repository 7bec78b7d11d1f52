import os

import pytest

DATA_DIR = os.path.join(os.path.dirname(__file__), "data")


@pytest.fixture
def data_path():
    def get(name):
        return os.path.join(DATA_DIR, name)

    return get

import random

import pytest
from hypothesis import settings

settings.register_profile("repro", derandomize=True, max_examples=60, deadline=None)
settings.load_profile("repro")


@pytest.fixture
def rng():
    return random.Random(20240601)

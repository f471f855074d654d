import random

import pytest
from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def rng():
    return random.Random(20240611)


def random_ints(rng, count, bound=2 ** 20):
    return [rng.randint(-bound, bound) for _ in range(count)]

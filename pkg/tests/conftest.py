import random

import pytest

from lcspheres.complex import relabel


def shuffled(C, rng):
    verts = list(C.vertices)
    images = list(range(1, len(verts) + 1))
    rng.shuffle(images)
    return relabel(C, dict(zip(verts, images)))


@pytest.fixture
def rng():
    return random.Random(12345)

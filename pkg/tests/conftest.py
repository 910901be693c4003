import numpy as np
import pytest

from cryptsteg import ImageBuffer


def random_cover(rng: np.random.Generator, width: int, height: int, channels: int) -> ImageBuffer:
    shape = (height, width) if channels == 1 else (height, width, channels)
    return ImageBuffer.from_array(rng.integers(0, 256, shape, dtype=np.uint8))


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(0xC0FFEE)

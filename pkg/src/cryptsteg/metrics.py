"""Measurements for the two claims the pipeline rests on.

Distortion: how visibly an embed changed the cover (MSE, PSNR against peak
255, and per-bit-plane change counts). Randomness: whether the keystream is
balanced and free of gross serial dependence (monobit and runs z-statistics).
Both report types serialize to line-oriented ``key=value`` text and to JSON.
"""

import json
import math
from dataclasses import asdict, dataclass
from typing import Tuple

import numpy as np

from .errors import PrerequisiteFailed, ShapeMismatch, TooFewBits
from .image_io import ImageBuffer

_PEAK_SQ = 255.0 * 255.0
MIN_TEST_BITS = 100


@dataclass(frozen=True)
class DistortionReport:
    """Byte-level difference summary between a cover and a stego image.

    ``changed_bits_per_plane[j]`` counts samples whose bit j differs
    (j = 0 is the LSB). ``psnr_db`` is +inf exactly when the images are
    identical.
    """

    mse: float
    psnr_db: float
    changed_bytes: int
    changed_bits_per_plane: Tuple[int, ...]

    def to_text(self) -> str:
        lines = [
            f"mse={self.mse:.10g}",
            f"psnr_db={'inf' if math.isinf(self.psnr_db) else f'{self.psnr_db:.4f}'}",
            f"changed_bytes={self.changed_bytes}",
        ]
        lines += [
            f"changed_bits_plane{j}={n}"
            for j, n in enumerate(self.changed_bits_per_plane)
        ]
        return "\n".join(lines)

    def to_json(self) -> str:
        d = asdict(self)
        d["changed_bits_per_plane"] = list(d["changed_bits_per_plane"])
        return json.dumps(d)


@dataclass(frozen=True)
class RandomnessReport:
    """Balance and run statistics of a bit stream.

    ``runs_z`` is NaN when the stream is too unbalanced for the runs test
    to apply (that stream fails the monobit criterion anyway).
    """

    n_bits: int
    ones_fraction: float
    monobit_z: float
    runs_z: float

    def to_text(self) -> str:
        return "\n".join(
            [
                f"n_bits={self.n_bits}",
                f"ones_fraction={self.ones_fraction:.6f}",
                f"monobit_z={self.monobit_z:.4f}",
                f"runs_z={self.runs_z:.4f}",
            ]
        )

    def to_json(self) -> str:
        return json.dumps(asdict(self))


def distortion(cover: ImageBuffer, stego: ImageBuffer) -> DistortionReport:
    """Compare two same-shaped images sample by sample.

    Symmetric in its arguments. PSNR uses peak 255, the only sample depth
    the pipeline supports.
    """
    if (cover.width, cover.height, cover.channels) != (
        stego.width,
        stego.height,
        stego.channels,
    ):
        raise ShapeMismatch(
            f"cover is {cover.width}x{cover.height}x{cover.channels}, "
            f"stego is {stego.width}x{stego.height}x{stego.channels}"
        )
    a = cover.samples
    b = stego.samples
    diff = a.astype(np.float64) - b.astype(np.float64)
    mse = float(np.mean(diff * diff))
    psnr = math.inf if mse == 0.0 else 10.0 * math.log10(_PEAK_SQ / mse)
    xor = np.bitwise_xor(a, b)
    changed = int(np.count_nonzero(xor))
    planes = tuple(
        int(np.count_nonzero(xor & np.uint8(1 << j))) for j in range(8)
    )
    return DistortionReport(mse, psnr, changed, planes)


def monobit_test(bits: np.ndarray) -> float:
    """z-statistic of the ones count against a fair coin.

    z = (ones - n/2) / sqrt(n/4); near zero for a balanced stream.
    """
    n = len(bits)
    if n < MIN_TEST_BITS:
        raise TooFewBits(f"monobit test needs at least {MIN_TEST_BITS} bits")
    ones = int(np.count_nonzero(bits))
    return (ones - n / 2.0) / math.sqrt(n / 4.0)


def runs_test(bits: np.ndarray) -> float:
    """z-statistic of the count of maximal same-symbol runs.

    Large positive means the stream alternates too eagerly, large negative
    means it clumps. Only applicable when the ones fraction is inside
    (0.4, 0.6); outside that the statistic is meaningless and
    PrerequisiteFailed is raised.
    """
    n = len(bits)
    if n < MIN_TEST_BITS:
        raise TooFewBits(f"runs test needs at least {MIN_TEST_BITS} bits")
    p = int(np.count_nonzero(bits)) / n
    if not 0.4 < p < 0.6:
        raise PrerequisiteFailed(
            f"runs test needs ones_fraction in (0.4, 0.6), got {p:.4f}"
        )
    runs = 1 + int(np.count_nonzero(np.diff(bits)))
    expected = 2.0 * n * p * (1.0 - p) + 1.0
    variance = (
        2.0 * n * p * (1.0 - p) * (2.0 * n * p * (1.0 - p) - 1.0) / (n - 1.0)
    )
    return (runs - expected) / math.sqrt(variance)


def randomness_report(bits: np.ndarray) -> RandomnessReport:
    """Run both tests on a stream and collect the results.

    Unlike :func:`runs_test` this never raises on an unbalanced stream; it
    records NaN so the report can still be printed and the caller's
    pass/fail comparison fails naturally.
    """
    n = len(bits)
    ones = int(np.count_nonzero(bits))
    monobit_z = monobit_test(bits)
    try:
        runs_z = runs_test(bits)
    except PrerequisiteFailed:
        runs_z = math.nan
    return RandomnessReport(n, ones / n, monobit_z, runs_z)

"""Lossless raster I/O as flat 8-bit sample buffers.

Covers and stego images live in memory as one flat byte array in row-major,
channel-interleaved order (R,G,B for color). Only formats that preserve
every sample bit are accepted: PNG and BMP in, always PNG out. Lossy inputs
are refused outright since recompression would destroy an LSB payload. No
color management of any kind is applied; sample bytes in are sample bytes
out.
"""

import warnings
from dataclasses import dataclass
from pathlib import Path
from typing import Union

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import DecodeError, InvalidParameter, UnsupportedDepth, UnsupportedFormat

_LOSSLESS = {"PNG", "BMP"}
_NON_8BIT_MODES = {"1", "I", "F", "I;16", "I;16B", "I;16L", "I;16N"}


@dataclass(frozen=True)
class ImageBuffer:
    """Width x height x channels raster of 8-bit samples, flattened.

    ``samples`` holds exactly width*height*channels bytes, row-major and
    channel-interleaved. channels is 1 (gray) or 3 (RGB). Treat instances
    as immutable values; operations that modify pixels return new buffers.
    """

    width: int
    height: int
    channels: int
    samples: np.ndarray

    def __post_init__(self) -> None:
        if self.width < 1 or self.height < 1:
            raise InvalidParameter("image dimensions must be positive")
        if self.channels not in (1, 3):
            raise InvalidParameter("channels must be 1 (gray) or 3 (RGB)")
        if not isinstance(self.samples, np.ndarray) or self.samples.dtype != np.uint8:
            raise InvalidParameter("samples must be a uint8 numpy array")
        expected = self.width * self.height * self.channels
        if self.samples.ndim != 1 or self.samples.size != expected:
            raise InvalidParameter(
                f"samples must be flat with {expected} entries, "
                f"got shape {self.samples.shape}"
            )

    @classmethod
    def from_array(cls, arr: np.ndarray) -> "ImageBuffer":
        """Build from an (h, w) gray or (h, w, c) interleaved uint8 array."""
        if arr.dtype != np.uint8:
            raise InvalidParameter("pixel array must be uint8")
        if arr.ndim == 2:
            h, w = arr.shape
            c = 1
        elif arr.ndim == 3:
            h, w, c = arr.shape
        else:
            raise InvalidParameter(f"expected 2-D or 3-D array, got {arr.ndim}-D")
        return cls(w, h, c, np.ascontiguousarray(arr).reshape(-1))

    def to_array(self) -> np.ndarray:
        """(height, width, channels) view of the samples."""
        return self.samples.reshape(self.height, self.width, self.channels)

    @property
    def total_slots(self) -> int:
        """Number of embeddable byte slots (= number of samples)."""
        return self.samples.size


def load_image(path: Union[str, Path]) -> ImageBuffer:
    """Decode a PNG or BMP file to an 8-bit sample buffer.

    Raises UnsupportedFormat for anything lossy or unrecognized,
    UnsupportedDepth for non-8-bit samples, DecodeError for corrupt files.
    Palette images are expanded to RGB; an alpha channel is stripped with a
    warning (the slot model covers only gray and RGB).
    """
    try:
        img = Image.open(path)
    except UnidentifiedImageError as exc:
        raise DecodeError(f"{path}: not a decodable image") from exc
    fmt = img.format
    if fmt not in _LOSSLESS:
        raise UnsupportedFormat(
            f"{path}: format {fmt or 'unknown'} is not supported; "
            "use PNG or BMP (lossy formats destroy the payload)"
        )
    try:
        img.load()
    except (OSError, SyntaxError) as exc:
        raise DecodeError(f"{path}: corrupt or truncated file") from exc

    mode = img.mode
    if mode in _NON_8BIT_MODES:
        raise UnsupportedDepth(f"{path}: mode {mode} is not 8 bits per sample")
    if mode == "P":
        img = img.convert("RGB")
    elif mode in ("RGBA", "PA"):
        warnings.warn(f"{path}: stripping alpha channel", stacklevel=2)
        img = img.convert("RGB")
    elif mode == "LA":
        warnings.warn(f"{path}: stripping alpha channel", stacklevel=2)
        img = img.convert("L")
    elif mode not in ("L", "RGB"):
        raise UnsupportedDepth(f"{path}: unsupported pixel mode {mode}")

    return ImageBuffer.from_array(np.asarray(img, dtype=np.uint8))


def save_image(img: ImageBuffer, path: Union[str, Path]) -> None:
    """Write the buffer as an 8-bit non-interlaced PNG, regardless of suffix.

    A save/load round trip returns sample-identical data. Raises OSError if
    the file cannot be written.
    """
    arr = img.to_array()
    if img.channels == 1:
        arr = arr[:, :, 0]
    Image.fromarray(arr).save(path, format="PNG")

"""Embedding and extraction of framed payload bits in scheduled byte slots.

Wire format, fixed so independent implementations interoperate:

* frame = 32-bit big-endian payload byte count, then the payload bytes;
* the frame is a bit stream, MSB-first within every byte;
* consecutive groups of k bits land in consecutive scheduled slots, each
  group replacing the slot byte's k low bits (first bit of the group in
  the highest of those k positions);
* a final short group is padded with zero bits in the low positions;
* slot order comes from ``slot_sequence`` over width*height*channels.

The header is not enciphered: the extractor needs the length before it can
hand the payload to the cipher. High bits of scheduled bytes and all
unscheduled bytes pass through unchanged.
"""

from dataclasses import dataclass

import numpy as np

from .errors import CapacityExceeded, InvalidParameter, MalformedHeader
from .image_io import ImageBuffer
from .scheduler import StegoKey, slot_sequence

HEADER_BITS = 32
_MAX_PAYLOAD = 2**32 - 1


@dataclass(frozen=True)
class StegoParams:
    """Embedding depth: how many low bits of each scheduled byte carry data."""

    k: int = 1

    def __post_init__(self) -> None:
        if self.k not in (1, 2, 3, 4):
            raise InvalidParameter("k must be 1, 2, 3 or 4")


def capacity(img: ImageBuffer, params: StegoParams) -> int:
    """Maximum payload bytes this cover can hold after the length header."""
    return max((img.total_slots * params.k - HEADER_BITS) // 8, 0)


def embed(
    cover: ImageBuffer,
    ciphertext: bytes,
    key: StegoKey,
    params: StegoParams,
) -> ImageBuffer:
    """Hide the framed ciphertext in the cover's scheduled slots.

    Pure function of its arguments; the returned buffer has the cover's
    dimensions and differs only in the k low bits of scheduled slots.
    """
    k = params.k
    total = cover.total_slots
    if len(ciphertext) > _MAX_PAYLOAD:
        raise CapacityExceeded("payload exceeds the 32-bit length header")
    frame = len(ciphertext).to_bytes(4, "big") + ciphertext
    n_bits = 8 * len(frame)
    if n_bits > total * k:
        raise CapacityExceeded(
            f"payload of {len(ciphertext)} bytes needs {n_bits} slot bits but "
            f"cover offers {total * k} at k={k} "
            f"(capacity {capacity(cover, params)} bytes)"
        )
    n_groups = -(-n_bits // k)

    bits = np.unpackbits(np.frombuffer(frame, dtype=np.uint8))
    padded = np.zeros(n_groups * k, dtype=np.uint8)
    padded[: bits.size] = bits
    values = _pack_groups(padded, k)

    slots = slot_sequence(key, total, n_groups)
    out = cover.samples.copy()
    keep = np.uint8(0xFF ^ ((1 << k) - 1))
    out[slots] = (out[slots] & keep) | values
    return ImageBuffer(cover.width, cover.height, cover.channels, out)


def extract(stego: ImageBuffer, key: StegoKey, params: StegoParams) -> bytes:
    """Recover the payload embedded by :func:`embed` with the same key and k.

    Blind: needs only the stego image. Raises MalformedHeader when the
    decoded length cannot fit the image, which is the symptom of a wrong
    stego-key, a wrong k, or an image that carries no payload.
    """
    k = params.k
    total = stego.total_slots
    header_groups = -(-HEADER_BITS // k)
    if header_groups > total:
        raise MalformedHeader("image is too small to hold a length header")

    header_slots = slot_sequence(key, total, header_groups)
    header_bits = _unpack_groups(stego.samples[header_slots], k)[:HEADER_BITS]
    length = int.from_bytes(np.packbits(header_bits).tobytes(), "big")
    if length > capacity(stego, params):
        raise MalformedHeader(
            f"decoded payload length {length} exceeds capacity "
            f"{capacity(stego, params)}: wrong stego-key, wrong k, "
            "or not a stego image"
        )

    n_groups = -(-(HEADER_BITS + 8 * length) // k)
    slots = slot_sequence(key, total, n_groups)
    frame_bits = _unpack_groups(stego.samples[slots], k)
    body = frame_bits[HEADER_BITS : HEADER_BITS + 8 * length]
    return np.packbits(body).tobytes()


def _pack_groups(bits: np.ndarray, k: int) -> np.ndarray:
    """Fold consecutive k-bit groups into slot values, MSB first."""
    weights = (1 << np.arange(k - 1, -1, -1)).astype(np.uint8)
    return (bits.reshape(-1, k) * weights).sum(axis=1, dtype=np.uint8)


def _unpack_groups(slot_bytes: np.ndarray, k: int) -> np.ndarray:
    """Spread each byte's k low bits back out, MSB first."""
    shifts = np.arange(k - 1, -1, -1, dtype=np.uint8)
    low = slot_bytes & np.uint8((1 << k) - 1)
    return ((low[:, None] >> shifts) & np.uint8(1)).ravel()

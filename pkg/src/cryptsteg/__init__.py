"""Chaotic stream cipher plus keyed k-LSB image steganography.

Two independent secrets drive the pipeline: a crypto-key (the logistic
map's initial condition) that enciphers the message, and a stego-key (a
64-bit seed) that decides which image byte slots carry the ciphertext.
See the README for the wire format and the security caveats.
"""

from . import errors
from .chaos import (
    DEFAULT_BURN_IN,
    LAMBDA,
    THRESHOLD,
    CryptoKey,
    LogisticState,
    burn_in,
    iterate,
    keystream,
    threshold_bit,
)
from .cipher import bits_to_bytes, bytes_to_bits, decrypt, encrypt, xor_transform
from .image_io import ImageBuffer, load_image, save_image
from .lsb import StegoParams, capacity, embed, extract
from .metrics import (
    DistortionReport,
    RandomnessReport,
    distortion,
    monobit_test,
    randomness_report,
    runs_test,
)
from .scheduler import SplitMix64, StegoKey, slot_sequence

__version__ = "0.1.0"

__all__ = [
    "LAMBDA",
    "THRESHOLD",
    "DEFAULT_BURN_IN",
    "CryptoKey",
    "LogisticState",
    "iterate",
    "threshold_bit",
    "burn_in",
    "keystream",
    "bytes_to_bits",
    "bits_to_bytes",
    "xor_transform",
    "encrypt",
    "decrypt",
    "StegoKey",
    "SplitMix64",
    "slot_sequence",
    "ImageBuffer",
    "load_image",
    "save_image",
    "StegoParams",
    "capacity",
    "embed",
    "extract",
    "DistortionReport",
    "RandomnessReport",
    "distortion",
    "monobit_test",
    "runs_test",
    "randomness_report",
    "errors",
]

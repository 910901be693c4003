"""Binary-additive stream cipher over the chaotic keystream.

Ciphertext is plaintext XOR keystream, so encryption and decryption are the
same operation. Bytes are viewed as bits MSB-first (network order); the
conversion helpers here are the only byte/bit boundary in the core.
"""

import numpy as np

from .chaos import CryptoKey, keystream
from .errors import InvalidParameter, LengthMismatch


def bytes_to_bits(data: bytes) -> np.ndarray:
    """MSB-first bit view of a byte string, as a uint8 array of 0/1."""
    return np.unpackbits(np.frombuffer(data, dtype=np.uint8))


def bits_to_bytes(bits: np.ndarray) -> bytes:
    """Pack an MSB-first bit sequence back into bytes."""
    if len(bits) % 8 != 0:
        raise InvalidParameter("bit length must be a multiple of 8")
    return np.packbits(bits).tobytes()


def xor_transform(data: np.ndarray, ks: np.ndarray) -> np.ndarray:
    """XOR two equal-length bit sequences element-wise."""
    if len(data) != len(ks):
        raise LengthMismatch(
            f"data has {len(data)} bits but keystream has {len(ks)}"
        )
    return np.bitwise_xor(data, ks)


def encrypt(plaintext: bytes, key: CryptoKey) -> bytes:
    """XOR the message with the key's stream; output length equals input.

    Each call draws a fresh stream starting right after burn-in, so two
    messages under one key reuse the same stream (the usual one-time-key
    caveat of additive ciphers applies; see README).
    """
    bits = bytes_to_bits(plaintext)
    return bits_to_bytes(xor_transform(bits, keystream(key, bits.size)))


def decrypt(ciphertext: bytes, key: CryptoKey) -> bytes:
    """Inverse of :func:`encrypt`; the cipher is its own inverse."""
    return encrypt(ciphertext, key)

"""Exception types raised across the cryptsteg library.

Everything derives from :class:`CryptStegError` so callers can catch the
whole family with one clause. Plain OS-level failures (unwritable output
path, disk full) are left as the builtin ``OSError``.
"""


class CryptStegError(Exception):
    """Base class for all cryptsteg errors."""


class InvalidKey(CryptStegError):
    """A crypto-key or stego-key violates its format or value constraints."""


class InvalidParameter(CryptStegError):
    """An argument is outside its documented domain."""


class DegenerateOrbit(CryptStegError):
    """The logistic orbit left the open interval (0, 1)."""


class LengthMismatch(CryptStegError):
    """Two bit sequences that must be equally long are not."""


class CapacityExceeded(CryptStegError):
    """The requested payload does not fit in the cover at the chosen depth."""


class MalformedHeader(CryptStegError):
    """The decoded length header is impossible.

    Raised during extraction; the usual causes are a wrong stego-key, a
    wrong bit depth, or an image that never carried a payload.
    """


class UnsupportedFormat(CryptStegError):
    """The image file format is not lossless (or not recognized as such)."""


class UnsupportedDepth(CryptStegError):
    """The image does not use plain 8-bit samples."""


class DecodeError(CryptStegError):
    """The image file is corrupt or truncated."""


class ShapeMismatch(CryptStegError):
    """Two images being compared do not share dimensions and channels."""


class TooFewBits(CryptStegError):
    """A statistical test was given fewer bits than it needs."""


class PrerequisiteFailed(CryptStegError):
    """A statistical test's applicability gate was not met."""

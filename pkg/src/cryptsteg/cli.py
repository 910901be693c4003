"""Command-line pipeline: encrypt-and-embed, extract-and-decrypt, analyze.

This is the only layer that touches files, stdin/stdout and text encoding;
inline messages are UTF-8 encoded here and nowhere else. Keys arrive via
flags or the CRYPTSTEG_CRYPTO_KEY / CRYPTSTEG_STEGO_KEY environment
variables and are never echoed to any stream.

Exit codes: 0 success, 2 usage error (including malformed keys), 3
capacity or image-format error, 4 extraction failure.
"""

import argparse
import json
import math
import os
import sys
from dataclasses import asdict

from .chaos import CryptoKey, keystream
from .cipher import decrypt, encrypt
from .errors import (
    CapacityExceeded,
    CryptStegError,
    DecodeError,
    InvalidKey,
    InvalidParameter,
    MalformedHeader,
    UnsupportedDepth,
    UnsupportedFormat,
)
from .image_io import load_image, save_image
from .lsb import StegoParams, capacity, embed, extract
from .metrics import distortion, randomness_report
from .scheduler import StegoKey

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAPACITY_FORMAT = 3
EXIT_EXTRACTION = 4

ENV_CRYPTO_KEY = "CRYPTSTEG_CRYPTO_KEY"
ENV_STEGO_KEY = "CRYPTSTEG_STEGO_KEY"

Z_LIMIT = 4.0
MIN_SELFTEST_BITS = 10_000


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cryptsteg",
        description="Encrypt a message with a chaotic stream cipher and hide "
        "it in the low bits of a lossless image.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_embed = sub.add_parser("embed", help="encrypt a message and hide it in a cover image")
    p_embed.add_argument("--cover", required=True, help="cover image (PNG or BMP)")
    p_embed.add_argument("--out", required=True, help="output stego image (always PNG)")
    src = p_embed.add_mutually_exclusive_group()
    src.add_argument("--message", help="inline message text (UTF-8 encoded)")
    src.add_argument("--message-file", help="read the message bytes from a file")
    _add_key_flags(p_embed)
    _add_k_flag(p_embed)

    p_extract = sub.add_parser("extract", help="recover a hidden message from a stego image")
    p_extract.add_argument("--stego", required=True, help="stego image to read")
    p_extract.add_argument("--out", help="write the message bytes here instead of stdout")
    _add_key_flags(p_extract)
    _add_k_flag(p_extract)

    p_analyze = sub.add_parser("analyze", help="report distortion between a cover and a stego image")
    p_analyze.add_argument("--cover", required=True)
    p_analyze.add_argument("--stego", required=True)
    p_analyze.add_argument("--json", action="store_true", help="machine-readable output")

    p_test = sub.add_parser("keystream-test", help="check the crypto-key's bit stream for balance")
    p_test.add_argument("--crypto-key", help=f"decimal key 0.d1..dm (or ${ENV_CRYPTO_KEY})")
    p_test.add_argument("--bits", type=int, default=1_000_000,
                        help="stream length to test, at least 10000 (default 1000000)")
    p_test.add_argument("--json", action="store_true", help="machine-readable output")

    return parser


def _add_key_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--crypto-key", help=f"decimal key 0.d1..dm (or ${ENV_CRYPTO_KEY})")
    p.add_argument("--stego-key", help=f"hex slot-schedule seed (or ${ENV_STEGO_KEY})")


def _add_k_flag(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, choices=(1, 2, 3, 4), default=1,
                   help="low bits used per byte slot; must match on both ends (default 1)")


def _crypto_key(args: argparse.Namespace, parser: argparse.ArgumentParser) -> CryptoKey:
    text = args.crypto_key or os.environ.get(ENV_CRYPTO_KEY)
    if not text:
        parser.error(f"crypto-key required: pass --crypto-key or set {ENV_CRYPTO_KEY}")
    return CryptoKey.parse(text)


def _stego_key(args: argparse.Namespace, parser: argparse.ArgumentParser) -> StegoKey:
    text = args.stego_key or os.environ.get(ENV_STEGO_KEY)
    if not text:
        parser.error(f"stego-key required: pass --stego-key or set {ENV_STEGO_KEY}")
    return StegoKey.parse(text)


def _message_bytes(args: argparse.Namespace) -> bytes:
    if args.message is not None:
        return args.message.encode("utf-8")
    if args.message_file is not None:
        with open(args.message_file, "rb") as fh:
            return fh.read()
    return sys.stdin.buffer.read()


def cmd_embed(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    crypto_key = _crypto_key(args, parser)
    stego_key = _stego_key(args, parser)
    params = StegoParams(args.k)
    cover = load_image(args.cover)
    message = _message_bytes(args)

    ciphertext = encrypt(message, crypto_key)
    stego = embed(cover, ciphertext, stego_key, params)
    save_image(stego, args.out)

    report = distortion(cover, stego)
    cap = capacity(cover, params)
    used_pct = 100.0 * len(ciphertext) / cap if cap else 100.0
    print(f"payload_bytes={len(ciphertext)}")
    print(f"capacity_bytes={cap}")
    print(f"capacity_used_pct={used_pct:.2f}")
    print(f"psnr_db={'inf' if math.isinf(report.psnr_db) else f'{report.psnr_db:.4f}'}")
    print(f"changed_bytes={report.changed_bytes}")
    print(f"stego={args.out}")
    return EXIT_OK


def cmd_extract(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    crypto_key = _crypto_key(args, parser)
    stego_key = _stego_key(args, parser)
    params = StegoParams(args.k)
    stego = load_image(args.stego)

    message = decrypt(extract(stego, stego_key, params), crypto_key)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(message)
    else:
        sys.stdout.buffer.write(message)
        sys.stdout.buffer.flush()
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    report = distortion(load_image(args.cover), load_image(args.stego))
    print(report.to_json() if args.json else report.to_text())
    return EXIT_OK


def cmd_keystream_test(args: argparse.Namespace, parser: argparse.ArgumentParser) -> int:
    if args.bits < MIN_SELFTEST_BITS:
        parser.error(f"--bits must be at least {MIN_SELFTEST_BITS}")
    key = _crypto_key(args, parser)
    report = randomness_report(keystream(key, args.bits))
    passed = abs(report.monobit_z) <= Z_LIMIT and abs(report.runs_z) <= Z_LIMIT
    if args.json:
        payload = asdict(report)
        payload["passed"] = passed
        print(json.dumps(payload))
    else:
        print(report.to_text())
        print(f"result={'PASS' if passed else 'FAIL'}")
    return EXIT_OK if passed else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "embed":
            return cmd_embed(args, parser)
        if args.command == "extract":
            return cmd_extract(args, parser)
        if args.command == "analyze":
            return cmd_analyze(args)
        return cmd_keystream_test(args, parser)
    except (InvalidKey, InvalidParameter) as exc:
        print(f"cryptsteg: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (CapacityExceeded, UnsupportedFormat, UnsupportedDepth, DecodeError) as exc:
        print(f"cryptsteg: {exc}", file=sys.stderr)
        return EXIT_CAPACITY_FORMAT
    except MalformedHeader as exc:
        print(f"cryptsteg: extraction failed: {exc}", file=sys.stderr)
        return EXIT_EXTRACTION
    except OSError as exc:
        print(f"cryptsteg: {exc}", file=sys.stderr)
        return EXIT_CAPACITY_FORMAT
    except CryptStegError as exc:
        print(f"cryptsteg: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

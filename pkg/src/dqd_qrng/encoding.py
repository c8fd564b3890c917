"""Bit stream serialization.

ascii: one '0'/'1' character per bit, no separators.
packed: 8-byte little-endian bit count, then the bits packed LSB-first
within each byte, with the final byte zero-padded.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import ParseError

HEADER = struct.Struct("<Q")
FORMATS = ("ascii", "packed")


def to_ascii(bits) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8)
    return (bits + ord("0")).tobytes()


def from_ascii(data: bytes) -> np.ndarray:
    # A single trailing newline is tolerated so files edited by hand still load.
    if data.endswith(b"\r\n"):
        data = data[:-2]
    elif data.endswith(b"\n"):
        data = data[:-1]
    arr = np.frombuffer(data, dtype=np.uint8)
    bad = np.flatnonzero((arr != ord("0")) & (arr != ord("1")))
    if bad.size:
        raise ParseError(f"invalid character {bytes(arr[bad[:1]])!r} in ascii stream", int(bad[0]))
    return (arr - ord("0")).astype(np.uint8)


def to_packed(bits) -> bytes:
    bits = np.asarray(bits, dtype=np.uint8)
    return HEADER.pack(bits.size) + np.packbits(bits, bitorder="little").tobytes()


def from_packed(data: bytes) -> np.ndarray:
    if len(data) < HEADER.size:
        raise ParseError(f"truncated header: need {HEADER.size} bytes, got {len(data)}", len(data))
    (count,) = HEADER.unpack_from(data)
    payload = np.frombuffer(data, dtype=np.uint8, offset=HEADER.size)
    need = (count + 7) // 8
    if payload.size < need:
        raise ParseError(f"header declares {count} bits but payload is {payload.size} bytes", len(data))
    if payload.size > need:
        raise ParseError(f"{payload.size - need} trailing bytes after payload", HEADER.size + need)
    bits = np.unpackbits(payload, bitorder="little")
    if bits[count:].any():
        raise ParseError("nonzero padding bits in final byte", HEADER.size + need - 1)
    return bits[:count]


def encode(bits, fmt: str) -> bytes:
    if fmt == "ascii":
        return to_ascii(bits)
    if fmt == "packed":
        return to_packed(bits)
    raise ValueError(f"unknown bit format {fmt!r}")


def decode(data: bytes, fmt: str | None = None) -> np.ndarray:
    """Parse ``data``; with ``fmt=None`` the encoding is sniffed."""
    if fmt is None:
        fmt = "ascii" if data and set(data) <= set(b"01\r\n") else "packed"
    if fmt == "ascii":
        return from_ascii(data)
    if fmt == "packed":
        return from_packed(data)
    raise ValueError(f"unknown bit format {fmt!r}")

"""
RTD tensor container.

Layout (little-endian):
    magic    4 bytes  b"RTD1"
    dtype    u8       0 = float32, 1 = complex64 (interleaved re, im float32)
    ndim     u8
    padding  2 bytes  (header is 8 bytes)
    dims     ndim x u64
    payload  row-major values

Real input is stored as float32 and complex input as complex64; arrays already
in those dtypes round-trip bit-exactly.
"""

import os
import struct
from pathlib import Path

import numpy as np

from .errors import RtdFormatError
from .files import atomic_write_bytes

MAGIC = b"RTD1"
MAX_DIM = 2**31

_HEADER = struct.Struct("<4sBB2x")
_DTYPES = {0: np.dtype("<f4"), 1: np.dtype("<c8")}


def encode_tensor(array: np.ndarray) -> bytes:
    """
    Serialize an array to RTD bytes.

    Real arrays are narrowed to float32 and complex arrays to
    complex64; float64 and complex128 inputs lose precision.

    Raises:
        RtdFormatError: For non-numeric dtypes or oversized shapes.
    """
    array = np.asarray(array)
    if array.dtype.kind not in "biufc":
        raise RtdFormatError(f"unsupported dtype {array.dtype}")
    code = 1 if np.iscomplexobj(array) else 0
    if array.ndim > 255:
        raise RtdFormatError(f"too many dimensions: {array.ndim}")
    for dim in array.shape:
        if dim > MAX_DIM:
            raise RtdFormatError(f"dimension {dim} exceeds 2^31")
    payload = np.ascontiguousarray(array, dtype=_DTYPES[code]).tobytes(order="C")
    header = _HEADER.pack(MAGIC, code, array.ndim)
    dims = struct.pack(f"<{array.ndim}Q", *array.shape)
    return header + dims + payload


def decode_tensor(data: bytes) -> np.ndarray:
    """Parse RTD bytes into a writable array."""
    if len(data) < _HEADER.size:
        raise RtdFormatError("truncated header")
    magic, code, ndim = _HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise RtdFormatError(f"bad magic {magic!r}")
    if code not in _DTYPES:
        raise RtdFormatError(f"unknown dtype code {code}")
    offset = _HEADER.size
    if len(data) < offset + 8 * ndim:
        raise RtdFormatError("truncated dimension table")
    shape = struct.unpack_from(f"<{ndim}Q", data, offset)
    offset += 8 * ndim
    for dim in shape:
        if dim > MAX_DIM:
            raise RtdFormatError(f"dimension {dim} exceeds 2^31")
    dtype = _DTYPES[code]
    count = int(np.prod(shape, dtype=np.int64)) if shape else 1
    expected = count * dtype.itemsize
    if len(data) - offset != expected:
        raise RtdFormatError(f"payload has {len(data) - offset} bytes, expected {expected}")
    if count == 0:
        return np.zeros(shape, dtype=dtype)
    return np.frombuffer(data, dtype=dtype, count=count, offset=offset).reshape(shape).copy()


def write_tensor(path: str | os.PathLike[str], tensor: np.ndarray) -> Path:
    """Write `tensor` atomically to `path` in RTD format, narrowed as in `encode_tensor`."""
    return atomic_write_bytes(path, encode_tensor(tensor))


def read_tensor(path: str | os.PathLike[str]) -> np.ndarray:
    """Read an RTD file."""
    return decode_tensor(Path(path).read_bytes())

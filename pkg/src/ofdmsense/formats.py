"""On-disk matrix formats: OMDS binary, CSV text and 8-bit PGM images.

OMDS layout (little-endian)::

    magic    4 bytes  b"OMDS"
    version  u32      1
    rows     u32
    cols     u32
    elem     u8       0 = float32, 1 = complex64 (re, im interleaved)
    payload  row-major
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .errors import UnsupportedFormat
from .microdoppler import Spectrogram

MAGIC = b"OMDS"
VERSION = 1
_HEADER = struct.Struct("<4sIIIB")
HEADER_SIZE = _HEADER.size
FORMATS = ("bin", "csv", "pgm")


def write_bin(matrix: np.ndarray, path) -> None:
    m = np.asarray(matrix)
    if m.ndim != 2:
        raise ValueError("only 2-D matrices can be exported")
    if np.iscomplexobj(m):
        elem, payload = 1, np.ascontiguousarray(m, dtype="<c8")
    else:
        elem, payload = 0, np.ascontiguousarray(m, dtype="<f4")
    with open(path, "wb") as fh:
        fh.write(_HEADER.pack(MAGIC, VERSION, m.shape[0], m.shape[1], elem))
        fh.write(payload.tobytes())


def read_bin(path) -> np.ndarray:
    """Inverse of :func:`write_bin`; returns float32 or complex64."""
    raw = Path(path).read_bytes()
    if len(raw) < HEADER_SIZE:
        raise ValueError(f"{path}: truncated header")
    magic, version, rows, cols, elem = _HEADER.unpack_from(raw)
    if magic != MAGIC or version != VERSION:
        raise ValueError(f"{path}: not an OMDS v{VERSION} file")
    dtype = {0: "<f4", 1: "<c8"}.get(elem)
    if dtype is None:
        raise ValueError(f"{path}: unknown element type {elem}")
    data = np.frombuffer(raw, dtype=dtype, offset=HEADER_SIZE)
    if data.size != rows * cols:
        raise ValueError(f"{path}: payload holds {data.size} values, header says {rows}x{cols}")
    return data.reshape(rows, cols).copy()


def _fmt(x: complex) -> str:
    re, im = repr(float(x.real)), repr(float(x.imag))
    return f"{re}{'' if im.startswith('-') else '+'}{im}j"


def write_csv(matrix: np.ndarray, path) -> None:
    """One matrix row per line; complex entries as ``re+imj``."""
    m = np.asarray(matrix)
    fmt = _fmt if np.iscomplexobj(m) else (lambda v: repr(float(v)))
    with open(path, "w") as fh:
        for row in m:
            fh.write(",".join(fmt(v) for v in row))
            fh.write("\n")


def read_csv(path) -> np.ndarray:
    rows = [line.strip().split(",") for line in Path(path).read_text().splitlines() if line.strip()]
    if any("j" in v for v in rows[0]):
        return np.array([[complex(v) for v in r] for r in rows])
    return np.array([[float(v) for v in r] for r in rows])


def spectrogram_image(spec: Spectrogram, floor_db: float = -40.0) -> np.ndarray:
    """8-bit image of a spectrogram: [floor_db, 0] dB -> [0, 255].

    Rows run from the highest positive Doppler (top) to the most negative, so
    0 Hz sits in the middle; columns are frames.
    """
    from .microdoppler import to_db

    db = spec if spec.db_scaled else to_db(spec, floor_db)
    lo = db.floor_db if db.floor_db is not None else floor_db
    scaled = (np.clip(db.power, lo, 0.0) - lo) / (0.0 - lo) * 255.0
    return np.flipud(np.rint(scaled).astype(np.uint8))


def write_pgm(image: np.ndarray, path) -> None:
    img = np.asarray(image, dtype=np.uint8)
    with open(path, "wb") as fh:
        fh.write(f"P5\n{img.shape[1]} {img.shape[0]}\n255\n".encode("ascii"))
        fh.write(np.ascontiguousarray(img).tobytes())


def read_pgm(path) -> np.ndarray:
    raw = Path(path).read_bytes()
    parts = raw.split(b"\n", 3)
    if parts[0] != b"P5":
        raise ValueError(f"{path}: not a binary PGM")
    w, h = (int(v) for v in parts[1].split())
    return np.frombuffer(parts[3], dtype=np.uint8).reshape(h, w).copy()


def export_matrix(matrix, path, fmt: str, floor_db: float = -40.0) -> Path:
    """Write `matrix` as ``bin``, ``csv`` or ``pgm``.

    ``pgm`` needs a :class:`Spectrogram` (dB or linear); the other formats
    accept arrays or objects with a ``power`` attribute.
    """
    path = Path(path)
    if fmt not in FORMATS:
        raise UnsupportedFormat(f"unknown format {fmt!r}; expected one of {FORMATS}")
    if fmt == "pgm":
        if not isinstance(matrix, Spectrogram):
            raise UnsupportedFormat("pgm export needs a Spectrogram")
        write_pgm(spectrogram_image(matrix, floor_db), path)
        return path
    data = matrix.power if hasattr(matrix, "power") else matrix
    (write_bin if fmt == "bin" else write_csv)(data, path)
    return path

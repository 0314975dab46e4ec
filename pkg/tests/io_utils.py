"""Minimal STL/OBJ parsers for the writers' self round-trip checks."""

import struct

import numpy as np

STL_RECORD = np.dtype([("normal", "<f4", (3,)), ("vertices", "<f4", (3, 3)), ("attr", "<u2")])


def read_stl(data: bytes):
    """Return (header, count, corners) from binary STL bytes."""
    header = data[:80]
    (count,) = struct.unpack("<I", data[80:84])
    records = np.frombuffer(data[84:], dtype=STL_RECORD)
    if len(records) != count:
        raise ValueError(f"triangle count {count} does not match payload {len(records)}")
    return header, count, records["vertices"].astype(np.float64)


def read_obj(text: str):
    """Return (vertices, faces) parsed from OBJ text with 0-based faces."""
    vertices, faces = [], []
    for line in text.splitlines():
        parts = line.split()
        if not parts:
            continue
        if parts[0] == "v":
            vertices.append([float(v) for v in parts[1:4]])
        elif parts[0] == "f":
            faces.append([int(v) - 1 for v in parts[1:4]])
    return np.array(vertices, dtype=float), np.array(faces, dtype=int)


def corners_signed_volume(corners: np.ndarray) -> float:
    """Divergence-theorem volume from (T, 3, 3) triangle corner positions."""
    cross = np.cross(corners[:, 1], corners[:, 2])
    return float(np.einsum("ij,ij->", corners[:, 0], cross) / 6.0)

"""Deterministic mock scoring math.

This is the wire-contract mirror of the evaluation engine's in-process
mock: both sides derive everything from 64-bit FNV-1a over raw payload
bytes, so identical inputs produce identical outputs on any host and in
any process.

Contract (keep in sync with the client):
  * payload = kind name, 0x00, then the request bytes; multiple fields are
    joined with 0x00
  * images contribute width and height as little-endian uint32 followed by
    raw RGBA8 bytes (decoded pixels, not the PNG container)
  * embedding: iterate h -> fnv1a64(h as 8 little-endian bytes); each state
    maps to [-1, 1) via h / 2**63 - 1; the vector is L2-normalized
  * score: (h mod 1000) / 999
"""

from __future__ import annotations

import numpy as np

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

DEFAULT_EMBED_DIM = 64
MOCK_MODEL_ID = "mock-fnv1a-64"


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & _MASK64
    return h


def scoring_payload(kind: str, *fields: bytes) -> bytes:
    return kind.encode("ascii") + b"\x00" + b"\x00".join(fields)


def image_payload(width: int, height: int, rgba: bytes) -> bytes:
    return width.to_bytes(4, "little") + height.to_bytes(4, "little") + rgba


def mock_unit_vector(payload: bytes, dim: int = DEFAULT_EMBED_DIM) -> np.ndarray:
    h = fnv1a64(payload)
    values = np.empty(dim)
    for i in range(dim):
        h = fnv1a64(h.to_bytes(8, "little"))
        values[i] = h / 2.0 ** 63 - 1.0
    norm = float(np.linalg.norm(values))
    if norm < 1e-12:
        values[:] = 0.0
        values[0] = 1.0
        norm = 1.0
    return values / norm


def mock_score(payload: bytes) -> float:
    return (fnv1a64(payload) % 1000) / 999.0

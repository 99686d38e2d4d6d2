"""Neural-scorer client contract with a deterministic in-process mock.

The real embedding/aesthetic/consistency models live behind an HTTP sidecar
(POST /v1/score); this module talks to it in remote mode and replaces it
bit-for-bit reproducibly in mock mode so the whole evaluation stack tests
hermetically.

Mock math (mirrored by the sidecar's mock mode, keep in sync):
  * hash: 64-bit FNV-1a over raw payload bytes
  * payload: kind name, 0x00, then the request bytes; images contribute
    width and height as little-endian uint32 followed by raw RGBA8 bytes;
    multiple fields are joined with 0x00
  * embedding: iterate h -> fnv1a64(h as 8 little-endian bytes), map each
    state to [-1, 1) via h / 2**63 - 1, then L2-normalize
  * score: (h mod 1000) / 999
"""

from __future__ import annotations

import base64
import io
import threading

import numpy as np

from .errors import ScorerUnavailableError
from .svg.model import RasterImage

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3
_MASK64 = 0xFFFFFFFFFFFFFFFF

DEFAULT_EMBED_DIM = 64
MOCK_MODEL_ID = "mock-fnv1a-64"


def fnv1a64(data: bytes) -> int:
    """Standard 64-bit FNV-1a."""
    h = FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * FNV_PRIME) & _MASK64
    return h


def image_payload(raster: RasterImage) -> bytes:
    header = raster.width.to_bytes(4, "little") + raster.height.to_bytes(4, "little")
    return header + raster.tobytes()


def scoring_payload(kind: str, *fields: bytes) -> bytes:
    return kind.encode("ascii") + b"\x00" + b"\x00".join(fields)


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


class ScorerClient:
    """Contract consumed by reward evaluation and the corpus filter."""

    mode = "abstract"

    def embed_text(self, text: str) -> np.ndarray:
        raise NotImplementedError

    def embed_image(self, raster: RasterImage) -> np.ndarray:
        raise NotImplementedError

    def aesthetic(self, raster: RasterImage, prompt: str | None = None) -> float:
        raise NotImplementedError

    def consistency(self, raster: RasterImage, prompt: str, dwt_text: str) -> float:
        raise NotImplementedError


class MockScorerClient(ScorerClient):
    """Deterministic scorer: identical input bytes give identical output on
    any host. Thread-safe; counts calls so tests can assert stage ordering.
    """

    mode = "mock"

    def __init__(self, embed_dim: int = DEFAULT_EMBED_DIM):
        self.embed_dim = embed_dim
        self._lock = threading.Lock()
        self.call_counts = {
            "embed_text": 0,
            "embed_image": 0,
            "aesthetic": 0,
            "consistency": 0,
        }

    def _count(self, kind: str) -> None:
        with self._lock:
            self.call_counts[kind] += 1

    @property
    def total_calls(self) -> int:
        with self._lock:
            return sum(self.call_counts.values())

    def embed_text(self, text: str) -> np.ndarray:
        self._count("embed_text")
        return mock_unit_vector(
            scoring_payload("embed_text", text.encode("utf-8")), self.embed_dim
        )

    def embed_image(self, raster: RasterImage) -> np.ndarray:
        self._count("embed_image")
        return mock_unit_vector(
            scoring_payload("embed_image", image_payload(raster)), self.embed_dim
        )

    def aesthetic(self, raster: RasterImage, prompt: str | None = None) -> float:
        self._count("aesthetic")
        fields = [image_payload(raster)]
        if prompt is not None:
            fields.append(prompt.encode("utf-8"))
        return mock_score(scoring_payload("aesthetic", *fields))

    def consistency(self, raster: RasterImage, prompt: str, dwt_text: str) -> float:
        self._count("consistency")
        payload = scoring_payload(
            "consistency",
            image_payload(raster),
            prompt.encode("utf-8"),
            dwt_text.encode("utf-8"),
        )
        return mock_score(payload)


def raster_to_png_bytes(raster: RasterImage) -> bytes:
    from PIL import Image

    img = Image.frombytes("RGBA", (raster.width, raster.height), raster.tobytes())
    buffer = io.BytesIO()
    img.save(buffer, format="PNG")
    return buffer.getvalue()


def raster_to_png_base64(raster: RasterImage) -> str:
    return base64.b64encode(raster_to_png_bytes(raster)).decode("ascii")


class RemoteScorerClient(ScorerClient):
    """Talks to the scorer sidecar over its JSON wire protocol.

    Transport failures raise ScorerUnavailableError; they are never
    silently converted to zero scores.
    """

    mode = "remote"

    def __init__(self, base_url: str, timeout: float = 30.0):
        self.base_url = base_url.rstrip("/")
        self.timeout = timeout

    def _post(self, request: dict) -> dict:
        import requests

        try:
            response = requests.post(
                self.base_url + "/v1/score", json=request, timeout=self.timeout
            )
        except requests.RequestException as exc:
            raise ScorerUnavailableError(
                f"scorer at {self.base_url} unreachable: {exc}"
            ) from exc
        if response.status_code != 200:
            raise ScorerUnavailableError(
                f"scorer at {self.base_url} returned HTTP {response.status_code}: "
                f"{response.text[:200]}"
            )
        return response.json()

    def _embedding(self, request: dict) -> np.ndarray:
        body = self._post(request)
        embedding = body.get("embedding")
        if embedding is None:
            raise ScorerUnavailableError("scorer response missing embedding")
        return np.asarray(embedding, dtype=float)

    def _score(self, request: dict) -> float:
        body = self._post(request)
        score = body.get("score")
        if score is None:
            raise ScorerUnavailableError("scorer response missing score")
        return float(score)

    def embed_text(self, text: str) -> np.ndarray:
        return self._embedding({"kind": "embed_text", "text": text})

    def embed_image(self, raster: RasterImage) -> np.ndarray:
        return self._embedding(
            {"kind": "embed_image", "image_png_base64": raster_to_png_base64(raster)}
        )

    def aesthetic(self, raster: RasterImage, prompt: str | None = None) -> float:
        request = {
            "kind": "aesthetic",
            "image_png_base64": raster_to_png_base64(raster),
        }
        if prompt is not None:
            request["text"] = prompt
        return self._score(request)

    def consistency(self, raster: RasterImage, prompt: str, dwt_text: str) -> float:
        return self._score(
            {
                "kind": "consistency",
                "image_png_base64": raster_to_png_base64(raster),
                "text": prompt,
                "dwt_text": dwt_text,
            }
        )

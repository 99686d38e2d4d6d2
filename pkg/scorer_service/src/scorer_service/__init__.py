"""Sidecar scoring service: embeddings, aesthetic, and consistency scores
over HTTP, with a deterministic mock mode for hermetic testing."""

from .app import ScoreRequest, create_app
from .hashing import (
    DEFAULT_EMBED_DIM,
    MOCK_MODEL_ID,
    fnv1a64,
    mock_score,
    mock_unit_vector,
)

__version__ = "0.1.0"

"""Corpus-level evaluation metrics.

Covers render-validity and reasoning-coverage rates, mean structural
complexity, Frechet distance between feature distributions, and the
raster-similarity suite (MSE, PSNR, SSIM, embedding cosine). All metrics
are permutation-invariant, so partial results from parallel workers can be
folded in any order.
"""

from __future__ import annotations

import json
import math
import struct
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimensionMismatchError,
    EmptyInputError,
    InputFormatError,
    NumericalFailureError,
)
from .svg.analysis import ComplexityReport, RenderVerdict
from .svg.model import RasterImage

# SSIM constants: 11x11 Gaussian window, sigma 1.5, K1/K2 from the
# canonical formulation, dynamic range 1.0.
_SSIM_WINDOW = 11
_SSIM_SIGMA = 1.5
_SSIM_K1 = 0.01
_SSIM_K2 = 0.03

# Rec. 601 luma weights.
_LUMA = np.array([0.299, 0.587, 0.114])


def approx_token_count(text: str) -> int:
    """Whitespace-token proxy; approximate by construction, never a
    substitute for a real tokenizer."""
    return len(text.split())


def validity_rate(verdicts) -> float:
    """Percentage of verdicts that are renderable."""
    items = list(verdicts)
    if not items:
        raise EmptyInputError("validity_rate needs at least one verdict")
    flags = [v.renderable if isinstance(v, RenderVerdict) else bool(v) for v in items]
    return 100.0 * sum(flags) / len(flags)


def dwt_cover_rate(flags) -> float:
    """Percentage of responses with a structurally valid reasoning trace."""
    items = [bool(f) for f in flags]
    if not items:
        raise EmptyInputError("dwt_cover_rate needs at least one flag")
    return 100.0 * sum(items) / len(items)


def mean_complexity(reports) -> float:
    """Arithmetic mean of per-document complexity totals."""
    items = list(reports)
    if not items:
        raise EmptyInputError("mean_complexity needs at least one report")
    totals = [r.total if isinstance(r, ComplexityReport) else float(r) for r in items]
    return sum(totals) / len(totals)


@dataclass
class FeatureSet:
    """N x D matrix of feature vectors from some embedding source."""

    features: np.ndarray
    source_label: str = ""

    def __post_init__(self):
        self.features = np.asarray(self.features, dtype=float)
        if self.features.ndim != 2:
            raise ValueError("features must be a 2-D matrix")
        if self.features.shape[0] < 2:
            raise ValueError("need at least two feature vectors for covariance")
        if not np.all(np.isfinite(self.features)):
            raise ValueError("features must be finite")


def _sqrtm_psd(matrix: np.ndarray) -> np.ndarray:
    """Symmetric PSD square root via eigendecomposition, eigenvalues
    clamped at zero."""
    sym = (matrix + matrix.T) / 2.0
    try:
        eigvals, eigvecs = np.linalg.eigh(sym)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigendecomposition failed: {exc}") from exc
    eigvals = np.clip(eigvals, 0.0, None)
    return (eigvecs * np.sqrt(eigvals)) @ eigvecs.T


def fid(a: FeatureSet, b: FeatureSet) -> float:
    """Frechet distance between Gaussian fits of two feature sets.

    ||mu_a - mu_b||^2 + Tr(S_a + S_b - 2 (S_a S_b)^(1/2)), with the cross
    term computed from the symmetric product S_a^(1/2) S_b S_a^(1/2) and
    unbiased (N-1) covariances.
    """
    if a.features.shape[1] != b.features.shape[1]:
        raise DimensionMismatchError(
            f"feature dims differ: {a.features.shape[1]} vs {b.features.shape[1]}"
        )
    mu_a = a.features.mean(axis=0)
    mu_b = b.features.mean(axis=0)
    cov_a = np.atleast_2d(np.cov(a.features, rowvar=False, ddof=1))
    cov_b = np.atleast_2d(np.cov(b.features, rowvar=False, ddof=1))

    root_a = _sqrtm_psd(cov_a)
    inner = root_a @ cov_b @ root_a
    sym = (inner + inner.T) / 2.0
    try:
        eigvals = np.linalg.eigvalsh(sym)
    except np.linalg.LinAlgError as exc:
        raise NumericalFailureError(f"eigendecomposition failed: {exc}") from exc
    trace_sqrt = float(np.sum(np.sqrt(np.clip(eigvals, 0.0, None))))

    diff = mu_a - mu_b
    value = float(diff @ diff + np.trace(cov_a) + np.trace(cov_b) - 2.0 * trace_sqrt)
    return max(0.0, value)


def _gaussian_kernel(size: int, sigma: float) -> np.ndarray:
    half = (size - 1) / 2.0
    coords = np.arange(size) - half
    one_d = np.exp(-(coords ** 2) / (2.0 * sigma ** 2))
    kernel = np.outer(one_d, one_d)
    return kernel / kernel.sum()


def _windowed(values: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    from scipy.ndimage import correlate

    return correlate(values, kernel, mode="reflect")


def _to_luma(raster: RasterImage) -> np.ndarray:
    rgba = raster.pixels.astype(float) / 255.0
    alpha = rgba[..., 3:4]
    composited = rgba[..., :3] * alpha + (1.0 - alpha)  # over white
    return composited @ _LUMA


def ssim(a: RasterImage, b: RasterImage) -> float:
    """Structural similarity of the luma planes (white-composited)."""
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError("SSIM inputs must share dimensions")
    x = _to_luma(a)
    y = _to_luma(b)
    kernel = _gaussian_kernel(_SSIM_WINDOW, _SSIM_SIGMA)
    c1 = _SSIM_K1 ** 2
    c2 = _SSIM_K2 ** 2
    mu_x = _windowed(x, kernel)
    mu_y = _windowed(y, kernel)
    var_x = _windowed(x * x, kernel) - mu_x * mu_x
    var_y = _windowed(y * y, kernel) - mu_y * mu_y
    cov_xy = _windowed(x * y, kernel) - mu_x * mu_y
    numerator = (2.0 * mu_x * mu_y + c1) * (2.0 * cov_xy + c2)
    denominator = (mu_x ** 2 + mu_y ** 2 + c1) * (var_x + var_y + c2)
    return float(np.mean(numerator / denominator))


def raster_similarity(
    a: RasterImage,
    b: RasterImage,
    embed_a: np.ndarray | None = None,
    embed_b: np.ndarray | None = None,
) -> dict:
    """MSE / PSNR / SSIM over two equal-size rasters, plus the embedding
    cosine when the caller supplies embeddings.

    MSE runs over all four channels normalized to [0, 1]. PSNR is
    10*log10(1/MSE) with an explicit infinity for identical images.
    """
    if (a.width, a.height) != (b.width, b.height):
        raise DimensionMismatchError(
            f"raster dimensions differ: {a.width}x{a.height} vs {b.width}x{b.height}"
        )
    xa = a.pixels.astype(float) / 255.0
    xb = b.pixels.astype(float) / 255.0
    mse = float(np.mean((xa - xb) ** 2))
    psnr = math.inf if mse == 0.0 else 10.0 * math.log10(1.0 / mse)
    result = {"mse": mse, "psnr": psnr, "ssim": ssim(a, b)}
    if embed_a is not None and embed_b is not None:
        ua = np.asarray(embed_a, dtype=float).ravel()
        ub = np.asarray(embed_b, dtype=float).ravel()
        if ua.shape != ub.shape:
            raise DimensionMismatchError("embedding dims differ")
        denom = float(np.linalg.norm(ua) * np.linalg.norm(ub))
        result["embed_cos"] = float(np.dot(ua, ub) / denom) if denom > 0 else 0.0
    return result


@dataclass
class CandidateRecord:
    """Per-candidate inputs to the aggregate report."""

    renderable: bool
    structurally_valid: bool
    semantic: float
    aesthetic: float
    complexity: ComplexityReport | None = None
    svg_text: str | None = None
    similarity: dict | None = None


@dataclass
class EvalReport:
    n_candidates: int
    validity_rate_pct: float
    dwt_cover_pct: float
    mean_complexity: float
    mean_semantic: float
    mean_aesthetic: float
    fid: float | None = None
    raster_similarity: dict | None = None
    mean_svg_tokens_approx: float | None = None

    def to_dict(self) -> dict:
        out = {
            "n_candidates": self.n_candidates,
            "validity_rate_pct": self.validity_rate_pct,
            "dwt_cover_pct": self.dwt_cover_pct,
            "mean_complexity": self.mean_complexity,
            "mean_semantic": self.mean_semantic,
            "mean_aesthetic": self.mean_aesthetic,
        }
        if self.fid is not None:
            out["fid"] = self.fid
        if self.raster_similarity is not None:
            out["raster_similarity"] = dict(self.raster_similarity)
        if self.mean_svg_tokens_approx is not None:
            # Whitespace proxy, not a real tokenizer.
            out["mean_svg_tokens_approx"] = self.mean_svg_tokens_approx
        return out


def aggregate_report(
    records: list[CandidateRecord],
    features_a: FeatureSet | None = None,
    features_b: FeatureSet | None = None,
) -> EvalReport:
    """Fold per-candidate records into the corpus report.

    The Frechet distance appears only when both feature sets are supplied;
    raster-similarity means only when records carry pairwise similarities.
    """
    if not records:
        raise EmptyInputError("aggregate_report needs at least one record")
    n = len(records)
    complexity_reports = [r.complexity for r in records if r.complexity is not None]
    report = EvalReport(
        n_candidates=n,
        validity_rate_pct=validity_rate([r.renderable for r in records]),
        dwt_cover_pct=dwt_cover_rate([r.structurally_valid for r in records]),
        mean_complexity=(
            mean_complexity(complexity_reports) if complexity_reports else 0.0
        ),
        mean_semantic=sum(r.semantic for r in records) / n,
        mean_aesthetic=sum(r.aesthetic for r in records) / n,
    )
    if features_a is not None and features_b is not None:
        report.fid = fid(features_a, features_b)
    similarities = [r.similarity for r in records if r.similarity is not None]
    if similarities:
        keys = sorted({k for s in similarities for k in s})
        report.raster_similarity = {
            key: sum(s[key] for s in similarities if key in s)
            / sum(1 for s in similarities if key in s)
            for key in keys
        }
    texts = [r.svg_text for r in records if r.svg_text is not None]
    if texts:
        report.mean_svg_tokens_approx = sum(
            approx_token_count(t) for t in texts
        ) / len(texts)
    return report


# ---------------------------------------------------------------------------
# Feature-set file formats

def read_features_jsonl(path, source_label: str = "") -> FeatureSet:
    """One JSON array per line, each a feature vector."""
    rows = []
    try:
        with open(path, "r", encoding="utf-8") as handle:
            for line_no, line in enumerate(handle, 1):
                line = line.strip()
                if not line:
                    continue
                try:
                    row = json.loads(line)
                except json.JSONDecodeError as exc:
                    raise InputFormatError(
                        f"{path}:{line_no}: invalid JSON: {exc}"
                    ) from exc
                if not isinstance(row, list):
                    raise InputFormatError(
                        f"{path}:{line_no}: expected a JSON array"
                    )
                rows.append(row)
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    try:
        return FeatureSet(np.array(rows, dtype=float), source_label or str(path))
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def read_features_binary(path, source_label: str = "") -> FeatureSet:
    """Binary matrix: little-endian uint64 header (D, N) then N*D
    little-endian float64 values, row-major."""
    try:
        with open(path, "rb") as handle:
            header = handle.read(16)
            if len(header) != 16:
                raise InputFormatError(f"{path}: truncated header")
            dim, count = struct.unpack("<QQ", header)
            payload = handle.read()
    except OSError as exc:
        raise InputFormatError(f"cannot read {path}: {exc}") from exc
    expected = dim * count * 8
    if len(payload) != expected:
        raise InputFormatError(
            f"{path}: expected {expected} payload bytes, found {len(payload)}"
        )
    matrix = np.frombuffer(payload, dtype="<f8").reshape(count, dim)
    try:
        return FeatureSet(matrix.copy(), source_label or str(path))
    except ValueError as exc:
        raise InputFormatError(f"{path}: {exc}") from exc


def write_features_binary(path, features: np.ndarray) -> None:
    matrix = np.asarray(features, dtype=float)
    with open(path, "wb") as handle:
        handle.write(struct.pack("<QQ", matrix.shape[1], matrix.shape[0]))
        handle.write(matrix.astype("<f8").tobytes())

"""Acceptance suite: one test per exit criterion, each printing a PASS or
FAIL line (run with `pytest -s tests/test_acceptance.py` to see them).

Tolerances are pinned here and nowhere else. Oracles are independent of the
code paths they check: advantages are re-derived with 50-digit arithmetic,
the Frechet distance against the scalar closed form, the surrogate against
its algebraic envelope.
"""

import functools
import json
import math
import pathlib
import time

import numpy as np
import pytest
from mpmath import mp, mpf

from svgreward.cli import main
from svgreward.dwt import (
    ThinkRewardConfig,
    ThinkRewardMode,
    split_response,
    structural_validity,
    think_reward,
    trace_for,
)
from svgreward.grpo import clipped_surrogate, group_advantages, kl_estimate
from svgreward.metrics import FeatureSet, fid, mean_complexity, validity_rate
from svgreward.pipeline import RejectionStage, Triplet, filter_triplet
from svgreward.reward import RewardWeights, hybrid_reward
from svgreward.scorer import MockScorerClient
from svgreward.svg import check_renderable, count_complexity, parse_svg

DATA = pathlib.Path(__file__).parent / "data"
PAPER_WEIGHTS = RewardWeights(0.1, 0.1, 0.6, 0.2)


def criterion(name: str):
    """Print one [PASS]/[FAIL] line per acceptance criterion."""

    def decorate(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException:
                print(f"[FAIL] {name}")
                raise
            print(f"[PASS] {name}" + (f" ({detail})" if detail else ""))

        return wrapper

    return decorate


def _advantage_oracle(rewards, delta):
    """Arbitrary-precision re-implementation of group standardization."""
    mp.dps = 50
    values = [mpf(float(r)) for r in rewards]
    n = len(values)
    mean = sum(values) / n
    variance = sum((v - mean) ** 2 for v in values) / n
    std = mp.sqrt(variance)
    return [float((v - mean) / (std + mpf(float(delta)))) for v in values]


@criterion("GRPO advantage oracle")
def test_grpo_advantage_oracle():
    start = time.perf_counter()
    rng = np.random.default_rng(12345)
    delta = 1e-4
    worst = 0.0
    for _ in range(1000):
        g = int(rng.integers(2, 9))
        rewards = rng.uniform(0.0, 1.0, size=g)
        got = group_advantages(rewards, delta)
        want = _advantage_oracle(rewards, delta)
        worst = max(worst, float(np.max(np.abs(got - np.asarray(want)))))
    assert worst < 1e-10
    for g in range(2, 9):
        zeros = group_advantages(np.full(g, 0.37), delta)
        assert zeros.tolist() == [0.0] * g
    elapsed = time.perf_counter() - start
    assert elapsed < 5.0
    return f"1000 groups, max abs err {worst:.2e}, {elapsed:.2f}s"


@criterion("Clipped-surrogate table + min envelope")
def test_clipped_surrogate_table_and_envelope():
    assert clipped_surrogate(np.array([1.0]), 0.5, 0.2)[0] == 0.5
    assert clipped_surrogate(np.array([1.5]), 1.0, 0.2)[0] == 1.2
    assert clipped_surrogate(np.array([0.5]), -1.0, 0.2)[0] == -0.8
    rng = np.random.default_rng(777)
    ratios = rng.uniform(0.0, 3.0, size=10_000)
    advantages = rng.normal(size=10_000)
    epsilons = rng.uniform(0.01, 0.99, size=10_000)
    for r, a, e in zip(ratios, advantages, epsilons):
        value = clipped_surrogate(np.array([r]), a, e)[0]
        assert value <= r * a + 1e-15
    return "3 exact values, 10000 draws"


@criterion("KL estimator")
def test_kl_estimator():
    rng = np.random.default_rng(999)
    new = -rng.exponential(size=10_000)
    ref = -rng.exponential(size=10_000)
    estimates = kl_estimate(new, ref)
    assert np.all(estimates >= 0.0)
    # zero iff equal (within 1e-12)
    assert np.all(kl_estimate(new, new) == 0.0)
    unequal = np.abs(new - ref) > 1e-12
    assert np.all(estimates[unequal] > 0.0)
    example = kl_estimate(np.array([math.log(0.5)]), np.array([math.log(0.25)]))[0]
    assert abs(example - 0.193147) < 1e-6
    return f"10000 pairs non-negative, example {example:.6f}"


@criterion("Hybrid reward exactness + invariances")
def test_hybrid_reward_exactness_and_invariances():
    assert hybrid_reward((1, 1, 1, 1), PAPER_WEIGHTS).total == 1.0
    rng = np.random.default_rng(424242)
    for _ in range(1000):
        candidates = [
            (
                float(rng.uniform()), float(rng.integers(0, 2)),
                float(rng.uniform()), float(rng.uniform()),
            )
            for _ in range(int(rng.integers(2, 7)))
        ]
        alpha = float(rng.uniform(0.05, 20.0))
        scaled_weights = PAPER_WEIGHTS.scaled(alpha)
        totals = [hybrid_reward(c, PAPER_WEIGHTS).total for c in candidates]
        scaled = [hybrid_reward(c, scaled_weights).total for c in candidates]
        for t, s in zip(totals, scaled):
            assert s == pytest.approx(alpha * t, rel=1e-12, abs=1e-15)
        assert int(np.argmax(totals)) == int(np.argmax(scaled))
    return "unit total exactly 1.0; 1000 candidate sets"


@criterion("FID oracles")
def test_fid_oracles():
    start = time.perf_counter()
    rng = np.random.default_rng(31337)
    for _ in range(20):
        X = FeatureSet(rng.normal(size=(50, 8)))
        assert fid(X, X) < 1e-6
    worst = 0.0
    for _ in range(1000):
        a = rng.normal(scale=rng.uniform(0.5, 3.0), size=(int(rng.integers(2, 16)), 1))
        b = rng.normal(
            loc=rng.uniform(-2, 2), scale=rng.uniform(0.5, 3.0),
            size=(int(rng.integers(2, 16)), 1),
        )
        closed_form = (a.mean() - b.mean()) ** 2 + (a.std(ddof=1) - b.std(ddof=1)) ** 2
        got = fid(FeatureSet(a), FeatureSet(b))
        worst = max(worst, abs(got - closed_form))
    assert worst < 1e-10
    for _ in range(50):
        a = FeatureSet(rng.normal(size=(12, 6)))
        b = FeatureSet(rng.normal(loc=0.5, size=(17, 6)))
        assert abs(fid(a, b) - fid(b, a)) < 1e-8
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0
    return f"1-D worst err {worst:.2e}, {elapsed:.2f}s"


@criterion("SVG validity corpus")
def test_svg_validity_corpus():
    folder = DATA / "svg"
    labels = json.loads((folder / "labels.json").read_text())
    assert len(labels) == 20
    verdicts = []
    for name, want in labels.items():
        verdict = check_renderable((folder / name).read_text())
        assert verdict.renderable == want["renderable"], name
        stage = verdict.failure_stage.value if verdict.failure_stage else None
        assert stage == want["failure_stage"], name
        verdicts.append(verdict)
    assert validity_rate(verdicts) == 50.0
    return "20 files, 100% agreement, Val% = 50.0"


@criterion("#Complex corpus")
def test_complexity_corpus():
    folder = DATA / "complexity"
    labels = json.loads((folder / "labels.json").read_text())
    assert len(labels) == 10
    reports = []
    expected_totals = []
    for name, want in labels.items():
        report = count_complexity(parse_svg((folder / name).read_text()))
        assert report.total == want["total"], name
        reports.append(report)
        expected_totals.append(want["total"])
    assert mean_complexity(reports) == sum(expected_totals) / len(expected_totals)
    return f"10 files, mean {mean_complexity(reports)}"


@criterion("DwT parsing golden suite")
def test_dwt_golden_suite():
    folder = DATA / "dwt"
    labels = json.loads((folder / "labels.json").read_text())
    assert len(labels) == 12
    binary = ThinkRewardConfig(ThinkRewardMode.BINARY, require_order=True)
    partial = ThinkRewardConfig(ThinkRewardMode.PARTIAL)
    for name, want in labels.items():
        parts = split_response((folder / name).read_text())
        trace = trace_for(parts)
        assert trace.stage_count == want["stage_count"], name
        assert structural_validity(parts, trace) == want["structurally_valid"], name
        assert think_reward(parts, trace, binary) == want["binary_reward"], name
        assert think_reward(parts, trace, partial) == want["partial_reward"], name
    return "12 traces exact"


@criterion("Pipeline stage ordering + CLI fixture")
def test_pipeline_stage_ordering_and_fixture(tmp_path):
    scorer = MockScorerClient()
    syntax = filter_triplet(
        Triplet("s", "p", "<think>plan</think>", "<svg><broken"), scorer, 0.8, 32
    )
    assert syntax.rejected_at is RejectionStage.SYNTAX
    assert scorer.total_calls == 0
    render = filter_triplet(
        Triplet("r", "p", "<think>plan</think>", '<svg viewBox="0 0 9 9"></svg>'),
        scorer, 0.8, 32,
    )
    assert render.rejected_at is RejectionStage.RENDER
    assert scorer.total_calls == 0

    out = tmp_path / "filter"
    code = main([
        "filter", str(DATA / "triplets.jsonl"), "--out-dir", str(out), "--mock",
    ])
    assert code == 0
    accepted = (out / "accepted.jsonl").read_text().splitlines()
    assert len(accepted) == 1
    return "0 scorer calls before stage 3; 1 of 3 accepted"


def _run_tree(tmp_path, name, argv):
    out = tmp_path / name
    assert main(argv + ["--out-dir", str(out)]) == 0
    return {
        p.relative_to(out).as_posix(): p.read_bytes()
        for p in sorted(out.rglob("*")) if p.is_file()
    }


@criterion("Mock-mode determinism")
def test_mock_mode_determinism(tmp_path):
    eval_argv = ["eval", str(DATA / "candidates.jsonl"), "--mock", "--raster-size", "64"]
    runs = [
        _run_tree(tmp_path, "e1", eval_argv + ["--jobs", "1"]),
        _run_tree(tmp_path, "e2", eval_argv + ["--jobs", "1"]),
        _run_tree(tmp_path, "e8", eval_argv + ["--jobs", "8"]),
    ]
    assert runs[0] == runs[1] == runs[2]

    filter_argv = ["filter", str(DATA / "triplets.jsonl"), "--mock", "--raster-size", "64"]
    runs = [
        _run_tree(tmp_path, "f1", filter_argv + ["--jobs", "1"]),
        _run_tree(tmp_path, "f2", filter_argv + ["--jobs", "1"]),
        _run_tree(tmp_path, "f8", filter_argv + ["--jobs", "8"]),
    ]
    assert runs[0] == runs[1] == runs[2]
    return "eval + filter byte-identical across runs/jobs"

"""Command-line entry point.

Subcommands:
  eval      score a candidates JSONL and write report.json + breakdowns.jsonl
  grpo-sim  compute group objectives over logged trajectory log-probs
  filter    run the three-stage corpus filter over triplets
  stats     corpus statistics from triplets (+ optional verdicts)

Exit codes: 0 success, 2 unreadable/invalid input, 3 scorer failure in
remote mode. All outputs are byte-deterministic in mock mode regardless of
--jobs.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .config import CliConfig, load_config
from .errors import InputFormatError, ScorerUnavailableError, SvgRewardError
from .grpo import GrpoConfig, grpo_objective, read_groups_jsonl
from .jsonio import read_jsonl, write_json, write_jsonl
from .metrics import CandidateRecord, aggregate_report
from .pipeline import (
    FilterVerdict,
    RejectionStage,
    corpus_stats,
    filter_triplet,
    read_triplets_jsonl,
    triplet_to_dict,
    verdict_to_dict,
)
from .reward import EvalConfig, evaluate_candidate_detailed
from .scorer import MockScorerClient, RemoteScorerClient, raster_to_png_bytes


def _make_scorer(config: CliConfig):
    if config.scorer_mode == "remote":
        return RemoteScorerClient(config.scorer_url)
    return MockScorerClient(embed_dim=config.embed_dim)


def _out_dir(args) -> Path:
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def _config_from_args(args) -> CliConfig:
    overrides = {
        "weights_think": getattr(args, "weights_think", None),
        "weights_render": getattr(args, "weights_render", None),
        "weights_semantic": getattr(args, "weights_semantic", None),
        "weights_aesthetic": getattr(args, "weights_aesthetic", None),
        "mock": getattr(args, "mock", False),
        "scorer_url": getattr(args, "scorer_url", None),
        "raster_size": getattr(args, "raster_size", None),
        "threshold": getattr(args, "threshold", None),
    }
    return load_config(args.config, overrides)


def _parallel_map(fn, items, jobs: int):
    """Apply fn to items preserving input order."""
    if jobs <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _read_candidates(path) -> list[dict]:
    rows = read_jsonl(path)
    if not rows:
        raise InputFormatError(f"{path}: no candidates found")
    for i, row in enumerate(rows, 1):
        for key in ("id", "prompt", "response"):
            if key not in row:
                raise InputFormatError(f"{path}:{i}: missing field {key!r}")
    ids = [str(r["id"]) for r in rows]
    if len(set(ids)) != len(ids):
        raise InputFormatError(f"{path}: duplicate candidate ids")
    return rows


def cmd_eval(args) -> int:
    config = _config_from_args(args)
    scorer = _make_scorer(config)
    candidates = _read_candidates(args.candidates)
    eval_config = EvalConfig(raster_size=config.raster_size, think=config.think)

    def evaluate(row):
        return evaluate_candidate_detailed(
            str(row["prompt"]), str(row["response"]),
            config.weights, scorer, eval_config,
        )

    evaluations = _parallel_map(evaluate, candidates, args.jobs)

    out = _out_dir(args)
    breakdown_rows = []
    records = []
    for row, ev in zip(candidates, evaluations):
        b = ev.breakdown
        line = {
            "id": str(row["id"]),
            "r_think": b.r_think,
            "r_render": b.r_render,
            "r_semantic": b.r_semantic,
            "r_aesthetic": b.r_aesthetic,
            "total": b.total,
            "renderable": ev.verdict.renderable,
            "structurally_valid": ev.structurally_valid,
            "stage_count": ev.trace.stage_count,
        }
        if ev.verdict.failure_stage is not None:
            line["failure_stage"] = ev.verdict.failure_stage.value
        if ev.complexity is not None:
            line["complexity_total"] = ev.complexity.total
        breakdown_rows.append(line)
        records.append(
            CandidateRecord(
                renderable=ev.verdict.renderable,
                structurally_valid=ev.structurally_valid,
                semantic=b.r_semantic,
                aesthetic=b.r_aesthetic,
                complexity=ev.complexity,
                svg_text=ev.parts.svg_text,
            )
        )
        if args.dump_rasters and ev.verdict.renderable:
            raster_dir = out / "rasters"
            raster_dir.mkdir(exist_ok=True)
            (raster_dir / f"{row['id']}.png").write_bytes(
                raster_to_png_bytes(ev.verdict.raster)
            )

    write_jsonl(out / "breakdowns.jsonl", breakdown_rows)
    write_json(out / "report.json", aggregate_report(records).to_dict())
    return 0


def cmd_grpo_sim(args) -> int:
    config = _config_from_args(args)
    groups = read_groups_jsonl(args.groups)
    results = []
    objectives = []
    for group_id, samples in groups.items():
        try:
            group_config = GrpoConfig(
                group_size=len(samples),
                clip_epsilon=config.grpo.clip_epsilon,
                kl_beta=config.grpo.kl_beta,
                advantage_delta=config.grpo.advantage_delta,
                ema_decay=config.grpo.ema_decay,
            )
        except ValueError as exc:
            raise InputFormatError(f"group {group_id!r}: {exc}") from exc
        step = grpo_objective(samples, group_config)
        objectives.append(step.objective)
        results.append(
            {
                "group_id": group_id,
                "advantages": [float(a) for a in step.advantages],
                "objective": step.objective,
                "per_token_surrogate": [s.tolist() for s in step.per_token_surrogate],
                "per_token_kl": [k.tolist() for k in step.per_token_kl],
            }
        )
    out = _out_dir(args)
    write_jsonl(out / "grpo_results.jsonl", results)
    summary = sum(objectives) / len(objectives)
    write_json(
        out / "grpo_summary.json",
        {"n_groups": len(objectives), "mean_objective": summary},
    )
    print(f"groups: {len(objectives)}  mean objective: {summary:.9g}")
    return 0


def cmd_filter(args) -> int:
    config = _config_from_args(args)
    scorer = _make_scorer(config)
    triplets = read_triplets_jsonl(args.triplets)

    def run(triplet) -> FilterVerdict:
        return filter_triplet(
            triplet, scorer, config.consistency_threshold, config.raster_size
        )

    verdicts = _parallel_map(run, triplets, args.jobs)

    out = _out_dir(args)
    write_jsonl(
        out / "accepted.jsonl",
        [triplet_to_dict(t) for t, v in zip(triplets, verdicts) if v.accepted],
    )
    write_jsonl(
        out / "verdicts.jsonl",
        [verdict_to_dict(t.id, v) for t, v in zip(triplets, verdicts)],
    )
    write_json(out / "stats.json", corpus_stats(triplets, verdicts).to_dict())
    accepted = sum(1 for v in verdicts if v.accepted)
    print(f"accepted {accepted} of {len(triplets)} triplets")
    return 0


def cmd_stats(args) -> int:
    triplets = read_triplets_jsonl(args.triplets)
    if args.verdicts:
        rows = read_jsonl(args.verdicts)
        by_id = {}
        for row in rows:
            if "id" not in row or "accepted" not in row:
                raise InputFormatError(f"{args.verdicts}: verdict rows need id/accepted")
            by_id[str(row["id"])] = row
        verdicts = []
        for t in triplets:
            if t.id not in by_id:
                raise InputFormatError(f"{args.verdicts}: no verdict for id {t.id!r}")
            row = by_id[t.id]
            if bool(row["accepted"]):
                verdicts.append(FilterVerdict(True))
            else:
                try:
                    stage = RejectionStage(row.get("rejected_at", "ConsistencyStage"))
                except ValueError as exc:
                    raise InputFormatError(f"{args.verdicts}: {exc}") from exc
                verdicts.append(FilterVerdict(False, rejected_at=stage))
    else:
        verdicts = [FilterVerdict(True) for _ in triplets]
    stats = corpus_stats(triplets, verdicts).to_dict()
    out = _out_dir(args)
    write_json(out / "stats.json", stats)
    print(f"n={stats['n']} acceptance_rate={stats['acceptance_rate']:.9g}")
    return 0


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", default=None, help="INI config file")
    parser.add_argument("--out-dir", default="out", help="output directory")
    parser.add_argument("--jobs", type=int, default=1, help="parallel workers")
    parser.add_argument("--mock", action="store_true", help="force the mock scorer")
    parser.add_argument("--scorer-url", default=None,
                        help="scorer sidecar base URL (implies remote mode)")
    parser.add_argument("--raster-size", type=int, default=None)
    parser.add_argument("--threshold", type=float, default=None,
                        help="consistency threshold for the filter stage")
    for name in ("think", "render", "semantic", "aesthetic"):
        parser.add_argument(f"--weights-{name}", type=float, default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="svgreward",
        description="Reward computation, GRPO math, corpus filtering, and "
        "evaluation metrics for reasoning-driven SVG generation.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="score candidates and emit the report")
    p_eval.add_argument("candidates", help="JSONL with id/prompt/response")
    p_eval.add_argument("--dump-rasters", action="store_true",
                        help="write PNGs of renderable candidates")
    _add_common(p_eval)
    p_eval.set_defaults(func=cmd_eval)

    p_grpo = sub.add_parser("grpo-sim", help="group objectives over logged log-probs")
    p_grpo.add_argument("groups", help="JSONL with group_id/reward/logp_* fields")
    _add_common(p_grpo)
    p_grpo.set_defaults(func=cmd_grpo_sim)

    p_filter = sub.add_parser("filter", help="three-stage corpus filter")
    p_filter.add_argument("triplets", help="JSONL with id/prompt/dwt/svg")
    _add_common(p_filter)
    p_filter.set_defaults(func=cmd_filter)

    p_stats = sub.add_parser("stats", help="corpus statistics")
    p_stats.add_argument("triplets", help="JSONL with id/prompt/dwt/svg")
    p_stats.add_argument("--verdicts", default=None,
                         help="verdicts JSONL from a previous filter run")
    _add_common(p_stats)
    p_stats.set_defaults(func=cmd_stats)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScorerUnavailableError as exc:
        print(f"scorer error: {exc}", file=sys.stderr)
        return 3
    except SvgRewardError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except Exception as exc:  # never panic to the shell
        print(f"unexpected error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line interface.

Subcommands: index, query, compare, dot, cluster. Every report has a
machine (--json) and a human (aligned text) rendering carrying the same
data; JSON output is deterministic for identical inputs except for the
timings_ms block. Exit codes: 0 success (including empty result sets),
1 operational failure (unparseable probe, incompatible index, invalid
configuration), 2 usage or IO errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from pathlib import Path

from .config import (
    DEFAULT_ALPHA,
    DEFAULT_MAX_PATHS,
    DEFAULT_MIN_BLOCKS,
    DEFAULT_MODE,
    DEFAULT_R,
    DEFAULT_THRESHOLD,
    HASH_NAME,
    MODES,
    NORMALIZATION_VERSION,
    RunConfig,
)
from .cfg_builder import cfg_from_statements, export_dot
from .frontend import MiniProcSyntaxError, normalize_source
from .index_store import (
    FingerprintIndex,
    IndexCompatibilityError,
    IndexFormatError,
    load_index,
)
from .pipeline import index_directory, run_pipeline
from .similarity import classify, pair_report, path_distance_set


def _build_parser() -> argparse.ArgumentParser:
    shared = argparse.ArgumentParser(add_help=False)
    shared.add_argument("--alpha", type=int, default=None,
                        help="max differing bits for two paths to match")
    shared.add_argument("--threshold", type=float, default=None,
                        help="min program score to report (0..1)")
    shared.add_argument("--min-blocks", type=int, default=None,
                        help="drop paths covering fewer real blocks")
    shared.add_argument("--max-paths", type=int, default=None,
                        help="cap on enumerated paths per program")
    shared.add_argument("--mode", choices=MODES, default=None,
                        help="program score: containment or resemblance")
    shared.add_argument("--json", action="store_true", help="emit the JSON report")
    shared.add_argument("--jobs", type=int, default=None,
                        help="parallel fingerprinting workers (env CFGPRINT_JOBS)")

    parser = argparse.ArgumentParser(
        prog="cfgprint",
        description="Clone detection via control-flow path fingerprints",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("index", parents=[shared], help="fingerprint a directory of .mp files")
    p.add_argument("directory")
    p.add_argument("-o", "--out", required=True, help="index file to write (.cdx)")
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("query", parents=[shared], help="rank index entries against a probe file")
    p.add_argument("file")
    p.add_argument("index_path")
    p.set_defaults(func=cmd_query)

    p = sub.add_parser("compare", parents=[shared], help="score two files against each other")
    p.add_argument("left")
    p.add_argument("right")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("dot", parents=[shared], help="emit the control-flow graph in DOT")
    p.add_argument("file")
    p.add_argument("-o", "--out", default=None, help="output path (default: stdout)")
    p.set_defaults(func=cmd_dot)

    p = sub.add_parser("cluster", parents=[shared], help="group mutually similar index entries")
    p.add_argument("index_path")
    p.set_defaults(func=cmd_cluster)

    return parser


def _resolve_jobs(args: argparse.Namespace) -> int:
    if args.jobs is not None:
        jobs = args.jobs
    else:
        raw = os.environ.get("CFGPRINT_JOBS")
        if raw is None:
            return 1
        try:
            jobs = int(raw)
        except ValueError:
            raise UsageError(f"CFGPRINT_JOBS must be an integer, got {raw!r}")
    if jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {jobs}")
    return jobs


class UsageError(Exception):
    pass


def _config_echo(config: RunConfig) -> dict:
    return {
        "alpha": config.alpha,
        "threshold": config.threshold,
        "min_blocks": config.min_blocks,
        "max_paths": config.max_paths,
        "mode": config.mode,
        "r": config.r,
        "hash": HASH_NAME,
        "normalization": NORMALIZATION_VERSION,
    }


def _emit(report: dict, text_lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))


def _fmt_timings(timings: dict) -> str:
    return " ".join(f"{k}={v:.2f}" for k, v in sorted(timings.items()))


def _config_line(config: RunConfig) -> str:
    return (
        f"config: alpha={config.alpha} threshold={config.threshold:g} "
        f"min_blocks={config.min_blocks} max_paths={config.max_paths} "
        f"mode={config.mode} r={config.r} hash={HASH_NAME} "
        f"normalization={NORMALIZATION_VERSION}"
    )


# -- index ---------------------------------------------------------------


def cmd_index(args: argparse.Namespace) -> int:
    config = RunConfig(
        alpha=args.alpha if args.alpha is not None else DEFAULT_ALPHA,
        threshold=args.threshold if args.threshold is not None else DEFAULT_THRESHOLD,
        min_blocks=args.min_blocks if args.min_blocks is not None else DEFAULT_MIN_BLOCKS,
        max_paths=args.max_paths if args.max_paths is not None else DEFAULT_MAX_PATHS,
        mode=args.mode if args.mode is not None else DEFAULT_MODE,
    )
    config.validate()
    jobs = _resolve_jobs(args)

    build = index_directory(args.directory, config, jobs=jobs)
    for program_id, diagnostic in build.skipped:
        print(f"skipped {program_id}: {diagnostic}", file=sys.stderr)

    t0 = time.perf_counter()
    build.index.save(args.out)
    build.timings_ms["write"] = (time.perf_counter() - t0) * 1000.0

    report = {
        "report": "index",
        "directory": str(args.directory),
        "out_path": str(args.out),
        "indexed": len(build.index.records),
        "skipped": [{"program_id": pid, "error": msg} for pid, msg in build.skipped],
        "unscoreable": build.unscoreable,
        "config": _config_echo(config),
        "timings_ms": build.timings_ms,
    }
    lines = [
        f"indexed {report['indexed']} programs from {args.directory} into {args.out}",
        _config_line(config),
        f"skipped: {len(build.skipped)}",
    ]
    lines += [f"  {pid}: {msg}" for pid, msg in build.skipped]
    lines.append(f"unscoreable: {len(build.unscoreable)}")
    lines += [f"  {pid}" for pid in build.unscoreable]
    lines.append(f"timings_ms: {_fmt_timings(build.timings_ms)}")
    _emit(report, lines, args.json)
    return 0


# -- query ---------------------------------------------------------------


def _query_config(args: argparse.Namespace, index: FingerprintIndex) -> RunConfig:
    """Merge flags with the index header. Fingerprint-shaping values
    must agree with the header when given explicitly."""
    stamp = index.config_stamp
    if args.min_blocks is not None and args.min_blocks != stamp.min_blocks:
        raise IndexCompatibilityError(
            f"incompatible index configuration: --min-blocks {args.min_blocks} "
            f"vs index min_blocks {stamp.min_blocks}"
        )
    config = RunConfig(
        alpha=args.alpha if args.alpha is not None else stamp.alpha,
        threshold=args.threshold if args.threshold is not None else DEFAULT_THRESHOLD,
        min_blocks=stamp.min_blocks,
        max_paths=args.max_paths if args.max_paths is not None else DEFAULT_MAX_PATHS,
        mode=args.mode if args.mode is not None else DEFAULT_MODE,
        r=stamp.r,
    )
    config.validate()
    return config


def _candidate_json(candidate) -> dict:
    return {
        "program_id": candidate.program_id,
        "score": candidate.score.value,
        "matched_count": candidate.score.matched_count,
        "denominator": candidate.score.denominator,
        "grade": candidate.grade,
        "evidence": [
            {"probe": p, "record": r, "distance": d}
            for p, r, d in candidate.matched_path_evidence
        ],
    }


def cmd_query(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    index = load_index(args.index_path)
    t_load = (time.perf_counter() - t0) * 1000.0
    config = _query_config(args, index)

    source = Path(args.file).read_text(encoding="utf-8")
    # if the probe file is itself indexed, adopt the record's id so the
    # scan skips the trivial self-match
    probe_path = str(Path(args.file).resolve())
    probe_id = next(
        (
            pid
            for pid, record in index.records.items()
            if record.source_path and str(Path(record.source_path).resolve()) == probe_path
        ),
        None,
    )
    if probe_id is None:
        # a record that merely shares the probe's name is a real
        # candidate, not a self-match; pick an id no record uses
        probe_id = str(args.file)
        while probe_id in index.records:
            probe_id = "probe:" + probe_id
    result = run_pipeline(source, probe_id, config)
    probe = result.program

    timings = dict(result.timings_ms)
    timings["load"] = t_load

    warnings = []
    if probe.truncated:
        warnings.append(probe.program_id)

    if not probe.scoreable:
        report = {
            "report": "query",
            "query_id": probe.program_id,
            "probe_unscoreable": True,
            "candidates": [],
            "truncation_warnings": warnings,
            "config": _config_echo(config),
            "timings_ms": timings,
        }
        lines = [
            f"query {args.file} against {args.index_path}",
            _config_line(config),
            "probe has no surviving paths at this min_blocks; nothing to score",
            "0 candidates",
            f"timings_ms: {_fmt_timings(timings)}",
        ]
        _emit(report, lines, args.json)
        return 0

    t1 = time.perf_counter()
    candidates = index.query(probe, config.alpha, config.threshold, config.mode)
    timings["scan"] = (time.perf_counter() - t1) * 1000.0

    for c in candidates:
        if index.records[c.program_id].truncated and c.program_id not in warnings:
            warnings.append(c.program_id)

    report = {
        "report": "query",
        "query_id": probe.program_id,
        "probe_unscoreable": False,
        "candidates": [_candidate_json(c) for c in candidates],
        "truncation_warnings": warnings,
        "config": _config_echo(config),
        "timings_ms": timings,
    }
    lines = [
        f"query {args.file} against {args.index_path}",
        _config_line(config),
        f"{len(candidates)} candidates",
    ]
    for rank, c in enumerate(candidates, 1):
        lines.append(
            f"  {rank}. {c.program_id} score={c.score.value:.4f} grade={c.grade} "
            f"matched={c.score.matched_count}/{c.score.denominator}"
        )
        lines += [
            f"       probe {p} ~ record {r} d={d}"
            for p, r, d in c.matched_path_evidence
        ]
    lines.append(
        "truncation warnings: " + (", ".join(warnings) if warnings else "none")
    )
    lines.append(f"timings_ms: {_fmt_timings(timings)}")
    _emit(report, lines, args.json)
    return 0


# -- compare -------------------------------------------------------------


def cmd_compare(args: argparse.Namespace) -> int:
    config = RunConfig(
        alpha=args.alpha if args.alpha is not None else DEFAULT_ALPHA,
        threshold=args.threshold if args.threshold is not None else DEFAULT_THRESHOLD,
        min_blocks=args.min_blocks if args.min_blocks is not None else DEFAULT_MIN_BLOCKS,
        max_paths=args.max_paths if args.max_paths is not None else DEFAULT_MAX_PATHS,
        mode=args.mode if args.mode is not None else DEFAULT_MODE,
    )
    config.validate()

    results = {}
    timings: dict[str, float] = {}
    for side, path in (("left", args.left), ("right", args.right)):
        source = Path(path).read_text(encoding="utf-8")
        results[side] = run_pipeline(source, str(path), config)
        for stage, ms in results[side].timings_ms.items():
            timings[f"{side}_{stage}"] = ms
    a, b = results["left"].program, results["right"].program

    base = {
        "report": "compare",
        "left": a.program_id,
        "right": b.program_id,
        "config": _config_echo(config),
    }

    if not a.scoreable or not b.scoreable:
        bad = [fp.program_id for fp in (a, b) if not fp.scoreable]
        report = {
            **base,
            "verdict": "unscoreable",
            "unscoreable": bad,
            "timings_ms": timings,
        }
        lines = [
            f"compare {args.left} ~ {args.right}",
            _config_line(config),
            "verdict: unscoreable (no surviving paths in: " + ", ".join(bad) + ")",
            f"timings_ms: {_fmt_timings(timings)}",
        ]
        _emit(report, lines, args.json)
        return 0

    t0 = time.perf_counter()
    containment = pair_report(a, b, config.alpha, "containment")
    resemblance = pair_report(a, b, config.alpha, "resemblance")
    pair_set = path_distance_set(a, b)
    timings["score"] = (time.perf_counter() - t0) * 1000.0

    na, nb = pair_set.size_a, pair_set.size_b
    matrix = [
        list(pair_set.distances[i * nb : (i + 1) * nb]) for i in range(na)
    ]
    row_hex = [format(bits, "016x") for bits in a.bits]
    col_hex = [format(bits, "016x") for bits in b.bits]
    path_grades = [
        {"probe": row_hex[i], "distance": min(matrix[i]), "grade": classify(min(matrix[i]))}
        for i in range(na)
    ]

    report = {
        **base,
        "verdict": "scored",
        "containment": {
            "score": containment.score.value,
            "matched_count": containment.score.matched_count,
            "denominator": containment.score.denominator,
        },
        "resemblance": {
            "score": resemblance.score.value,
            "matched_count": resemblance.score.matched_count,
            "denominator": resemblance.score.denominator,
        },
        "grade": classify(containment.min_distance),
        "row_fingerprints": row_hex,
        "col_fingerprints": col_hex,
        "distance_matrix": matrix,
        "path_grades": path_grades,
        "truncation_warnings": [fp.program_id for fp in (a, b) if fp.truncated],
        "timings_ms": timings,
    }

    lines = [
        f"compare {args.left} ~ {args.right}",
        _config_line(config),
        "verdict: scored",
        f"containment: {containment.score.value:.4f} "
        f"(matched {containment.score.matched_count}/{containment.score.denominator}, "
        f"alpha={config.alpha})",
        f"resemblance: {resemblance.score.value:.4f} "
        f"(matched {resemblance.score.matched_count}/{resemblance.score.denominator}, "
        f"alpha={config.alpha})",
        f"grade: {report['grade']}",
        f"distance matrix ({na} left paths x {nb} right paths):",
        "           " + " ".join(h[:8] for h in col_hex),
    ]
    for i in range(na):
        lines.append(
            f"  {row_hex[i][:8]} " + " ".join(f"{d:8d}" for d in matrix[i])
        )
    lines.append("path grades:")
    lines += [
        f"  {g['probe']} min_distance={g['distance']} {g['grade']}"
        for g in path_grades
    ]
    warn = report["truncation_warnings"]
    lines.append("truncation warnings: " + (", ".join(warn) if warn else "none"))
    lines.append(f"timings_ms: {_fmt_timings(timings)}")
    _emit(report, lines, args.json)
    return 0


# -- dot -----------------------------------------------------------------


def cmd_dot(args: argparse.Namespace) -> int:
    source = Path(args.file).read_text(encoding="utf-8")
    statements = normalize_source(source)
    dot = export_dot(cfg_from_statements(statements))
    if args.out is None:
        sys.stdout.write(dot)
    else:
        Path(args.out).write_text(dot, encoding="utf-8")
    return 0


# -- cluster -------------------------------------------------------------


def cmd_cluster(args: argparse.Namespace) -> int:
    t0 = time.perf_counter()
    index = load_index(args.index_path)
    t_load = (time.perf_counter() - t0) * 1000.0
    stamp = index.config_stamp
    alpha = args.alpha if args.alpha is not None else stamp.alpha
    threshold = args.threshold if args.threshold is not None else DEFAULT_THRESHOLD
    mode = args.mode if args.mode is not None else DEFAULT_MODE
    config = RunConfig(
        alpha=alpha, threshold=threshold, min_blocks=stamp.min_blocks,
        mode=mode, r=stamp.r,
    )
    config.validate()

    t1 = time.perf_counter()
    groups = index.cluster(alpha, threshold, mode)
    timings = {"load": t_load, "cluster": (time.perf_counter() - t1) * 1000.0}

    report = {
        "report": "cluster",
        "index_path": str(args.index_path),
        "groups": [
            {"members": list(g.members), "mean_score": g.mean_score} for g in groups
        ],
        "config": _config_echo(config),
        "timings_ms": timings,
    }
    lines = [
        f"cluster {args.index_path}",
        _config_line(config),
        f"{len(groups)} groups",
    ]
    for i, g in enumerate(groups, 1):
        lines.append(f"  group {i} (mean score {g.mean_score:.4f}):")
        lines += [f"    {m}" for m in g.members]
    lines.append(f"timings_ms: {_fmt_timings(timings)}")
    _emit(report, lines, args.json)
    return 0


# -- entry ---------------------------------------------------------------


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except MiniProcSyntaxError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (IndexFormatError, IndexCompatibilityError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (FileNotFoundError, NotADirectoryError, IsADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

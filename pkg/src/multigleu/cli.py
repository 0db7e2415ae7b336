"""Batch command-line front end.

Two subcommands: ``score`` evaluates a line-aligned corpus under the
multi-reference aggregation strategies (optionally with a paired bootstrap
comparison), and ``curve`` sweeps the number of references from 1 to k and
reports the corpus score per strategy at each step.

Input files are UTF-8 plain text, one segment per line, line-aligned across
the source, hypothesis, and every reference file. An empty (or
whitespace-only) line in a reference file means that annotator provided no
correction for that segment; segments left with no references at all are
excluded from corpus averages and reported as skipped.

Exit codes: 0 success, 1 usage error, 2 input validation error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import sys
from functools import partial
from multiprocessing import Pool

from . import __version__
from .aggregate import (
    MERGED,
    SELECT_BEST,
    SIMPLE_AVERAGE,
    STRATEGIES,
    WEIGHTED_AVERAGE,
    Segment,
    StrategyConfig,
    score_segment,
)
from .bleu import sentence_bleu
from .corpus import (
    corpus_score,
    incremental_curve,
    macro_average,
    paired_bootstrap,
    score_segments,
)
from .ngrams import profile
from .report import emit_json, emit_tsv
from .textnorm import tokenize

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_IO = 3

SINGLE_REF = "single_ref"

# CLI spelling -> canonical strategy id
_STRATEGY_NAMES = {
    "select-best": SELECT_BEST,
    "average": SIMPLE_AVERAGE,
    "weighted": WEIGHTED_AVERAGE,
    "merged": MERGED,
    "single": SINGLE_REF,
}


class CorpusFormatError(Exception):
    """Input files fail validation (alignment, encoding, empty corpus)."""


def read_lines(path: str) -> list[str]:
    """Read a UTF-8 text file as a list of lines (no trailing newline)."""
    with open(path, "rb") as fh:
        raw = fh.read()
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise CorpusFormatError(
            f"{path}: invalid UTF-8 at byte offset {exc.start}"
        ) from exc
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return [line[:-1] if line.endswith("\r") else line for line in lines]


def load_corpus(
    source_path: str, hypothesis_path: str, reference_paths: list[str]
) -> list[Segment]:
    """Load a line-aligned corpus into segments.

    Line i of every file belongs to segment i; all files must have the same
    number of lines. Empty reference lines are dropped from that segment's
    reference list (partial annotation), so a segment may end up with no
    references.
    """
    sources = read_lines(source_path)
    hypotheses = read_lines(hypothesis_path)
    ref_columns = [read_lines(p) for p in reference_paths]

    counts = {source_path: len(sources), hypothesis_path: len(hypotheses)}
    counts.update(
        (p, len(col)) for p, col in zip(reference_paths, ref_columns)
    )
    if len(set(counts.values())) > 1:
        detail = ", ".join(f"{p}: {n} lines" for p, n in counts.items())
        raise CorpusFormatError(f"line counts do not match across files ({detail})")

    segments = []
    for i, (src, hyp) in enumerate(zip(sources, hypotheses)):
        refs = tuple(col[i] for col in ref_columns if col[i].strip())
        segments.append(Segment(src, hyp, refs))
    return segments


def _score_or_none(segment: Segment, config: StrategyConfig):
    return score_segment(segment, config) if segment.references else None


def _score_all(segments: list[Segment], config: StrategyConfig, jobs: int):
    if jobs > 1 and len(segments) > 1:
        with Pool(jobs) as pool:
            chunk = max(1, len(segments) // (jobs * 8))
            return pool.map(partial(_score_or_none, config=config), segments, chunk)
    return score_segments(segments, config)


def _bleu_or_none(segment: Segment, config: StrategyConfig):
    if not segment.references:
        return None
    hyp = profile(tokenize(segment.hypothesis, config.mode), config.max_order)
    refs = [
        profile(tokenize(r, config.mode), config.max_order)
        for r in segment.references
    ]
    return sentence_bleu(hyp, refs, config.max_order).value


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # usage errors exit 1, not argparse's 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="multigleu",
        description="Multi-reference fluency evaluation for grammatical "
        "error correction.",
        epilog="Exit codes: 0 success, 1 usage error, 2 input validation "
        "error, 3 I/O error.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--source", required=True, help="source (uncorrected) file")
        p.add_argument("--hypothesis", required=True, help="system output file")
        p.add_argument(
            "--ref",
            action="append",
            required=True,
            metavar="PATH",
            help="reference file; repeat for multiple references",
        )
        p.add_argument("--order", type=int, default=4, help="max n-gram order")
        p.add_argument(
            "--tau", type=float, default=1.0, help="softmax temperature (weighted)"
        )
        p.add_argument("--mode", choices=("word", "char"), default="word")
        p.add_argument("--format", choices=("json", "tsv"), default="json")
        p.add_argument("--output", help="write the report here instead of stdout")
        p.add_argument(
            "--jobs", type=int, default=1, help="parallel scoring processes"
        )
        p.add_argument("--seed", type=int, help="seed for randomized procedures")

    score = sub.add_parser(
        "score", help="score a corpus under the aggregation strategies"
    )
    add_common(score)
    score.add_argument(
        "--strategy",
        choices=(*_STRATEGY_NAMES, "all"),
        default="all",
        help="strategies to report ('single' = first reference file only)",
    )
    score.add_argument(
        "--metric",
        choices=("gleu", "bleu"),
        default="gleu",
        help="bleu scores against all references with max-clipped counts "
        "and ignores --source/--strategy/--tau",
    )
    score.add_argument(
        "--per-segment", action="store_true", help="include the per-segment table"
    )
    score.add_argument(
        "--bootstrap",
        type=int,
        metavar="N",
        help="paired bootstrap iterations (requires --seed and --compare)",
    )
    score.add_argument(
        "--compare",
        metavar="STRATEGY:STRATEGY",
        help="strategy pair for the bootstrap test, e.g. merged:average",
    )

    curve = sub.add_parser(
        "curve", help="corpus scores as references are added from 1 to k"
    )
    add_common(curve)
    curve.add_argument("--k-max", type=int, required=True, help="largest k")
    curve.add_argument(
        "--permute-refs",
        action="store_true",
        help="shuffle each segment's references per trial (requires --seed)",
    )
    curve.add_argument(
        "--trials", type=int, default=1, help="trials to average with --permute-refs"
    )
    return parser


def _validate(args: argparse.Namespace) -> str | None:
    if args.order < 1:
        return "--order must be >= 1"
    if args.tau <= 0:
        return "--tau must be > 0"
    if args.jobs < 1:
        return "--jobs must be >= 1"
    if args.command == "score":
        wants_bootstrap = args.bootstrap is not None or args.compare is not None
        if wants_bootstrap:
            if args.metric == "bleu":
                return "--bootstrap compares gleu strategies; not available with --metric bleu"
            if args.bootstrap is None or args.compare is None or args.seed is None:
                return "--bootstrap, --seed, and --compare must be given together"
            if args.bootstrap < 1:
                return "--bootstrap must be >= 1"
            parts = args.compare.split(":")
            if len(parts) != 2 or not all(p in _STRATEGY_NAMES for p in parts):
                names = "|".join(_STRATEGY_NAMES)
                return f"--compare expects two of {names} joined by ':'"
    else:
        if args.k_max < 1:
            return "--k-max must be >= 1"
        if args.trials < 1:
            return "--trials must be >= 1"
        if args.permute_refs and args.seed is None:
            return "--permute-refs requires --seed"
    return None


def _config(args: argparse.Namespace) -> StrategyConfig:
    return StrategyConfig(
        strategy=MERGED, tau=args.tau, max_order=args.order, mode=args.mode
    )


def _corpus_entry(value: float, n_segments: int, n_skipped: int) -> dict:
    return {"score": value, "n_segments": n_segments, "n_skipped": n_skipped}


def _config_echo(args: argparse.Namespace, strategies: list[str]) -> dict:
    echo = {
        "command": args.command,
        "metric": getattr(args, "metric", "gleu"),
        "strategies": strategies,
        "order": args.order,
        "tau": args.tau,
        "mode": args.mode,
        "seed": args.seed,
        "source": args.source,
        "hypothesis": args.hypothesis,
        "references": list(args.ref),
    }
    if args.command == "score":
        echo["bootstrap"] = args.bootstrap
        echo["compare"] = args.compare
    else:
        echo["k_max"] = args.k_max
        echo["permute_refs"] = args.permute_refs
        echo["trials"] = args.trials
    return echo


def _segment_rows_json(results) -> list[dict]:
    rows = []
    for i, res in enumerate(results):
        row: dict = {"index": i}
        if res is None:
            row["n_references"] = 0
            rows.append(row)
            continue
        detail = res.merged_detail
        row.update(
            {
                "n_references": len(res.per_reference),
                SELECT_BEST: res.per_strategy[SELECT_BEST],
                SIMPLE_AVERAGE: res.per_strategy[SIMPLE_AVERAGE],
                WEIGHTED_AVERAGE: res.per_strategy[WEIGHTED_AVERAGE],
                MERGED: res.per_strategy[MERGED],
                "per_reference": list(res.per_reference),
                "selected_index": res.selected_index,
                "weights": list(res.weights),
                "merged_bp": detail.bp,
                "merged_ref_length": detail.ref_length_used,
                "merged_precisions": [
                    [t.numerator, t.denominator] for t in detail.precisions
                ],
            }
        )
        rows.append(row)
    return rows


def _run_score(args: argparse.Namespace) -> bytes:
    segments = load_corpus(args.source, args.hypothesis, args.ref)
    config = _config(args)

    if args.metric == "bleu":
        values = [_bleu_or_none(seg, config) for seg in segments]
        scored = [v for v in values if v is not None]
        if not scored:
            raise CorpusFormatError("no segment has any reference")
        entry = _corpus_entry(
            macro_average(scored), len(scored), len(values) - len(scored)
        )
        report = {
            "version": __version__,
            "config": _config_echo(args, ["bleu"]),
            "n_segments": entry["n_segments"],
            "n_skipped": entry["n_skipped"],
            "corpus": {"bleu": entry},
        }
        if args.per_segment:
            if args.format == "tsv":
                rows = [
                    [i, len(seg.references), "NA" if v is None else v]
                    for i, (seg, v) in enumerate(zip(segments, values))
                ]
                return emit_tsv(["index", "n_references", "bleu"], rows)
            report["segments"] = [
                {"index": i, "n_references": len(seg.references)}
                if v is None
                else {"index": i, "n_references": len(seg.references), "bleu": v}
                for i, (seg, v) in enumerate(zip(segments, values))
            ]
        if args.format == "tsv":
            return emit_tsv(
                ["strategy", "score", "n_segments", "n_skipped"],
                [["bleu", entry["score"], entry["n_segments"], entry["n_skipped"]]],
            )
        return emit_json(report)

    selected = (
        list(_STRATEGY_NAMES.values())
        if args.strategy == "all"
        else [_STRATEGY_NAMES[args.strategy]]
    )
    results = _score_all(segments, config, args.jobs)
    if all(r is None for r in results):
        raise CorpusFormatError("no segment has any reference")

    single_results = None
    if SINGLE_REF in selected or (
        args.compare is not None and "single" in args.compare.split(":")
    ):
        first_ref_segments = load_corpus(args.source, args.hypothesis, args.ref[:1])
        single_results = _score_all(first_ref_segments, config, args.jobs)

    corpus_section: dict = {}
    for strategy in selected:
        if strategy == SINGLE_REF:
            values = [
                r.per_strategy[MERGED] for r in single_results if r is not None
            ]
            if not values:
                raise CorpusFormatError(
                    "single-reference baseline: first reference file has no entries"
                )
            corpus_section[SINGLE_REF] = _corpus_entry(
                macro_average(values), len(values), len(single_results) - len(values)
            )
        else:
            cs = corpus_score(results, strategy)
            corpus_section[strategy] = _corpus_entry(
                cs.value, cs.n_segments, cs.n_skipped
            )

    n_skipped = sum(1 for r in results if r is None)
    report = {
        "version": __version__,
        "config": _config_echo(args, selected),
        "n_segments": len(results) - n_skipped,
        "n_skipped": n_skipped,
        "corpus": corpus_section,
    }

    if args.bootstrap is not None:
        vec_by_name = {}
        for name in args.compare.split(":"):
            strategy = _STRATEGY_NAMES[name]
            source = single_results if strategy == SINGLE_REF else results
            key = MERGED if strategy == SINGLE_REF else strategy
            vec_by_name[name] = [
                None if r is None else r.per_strategy[key] for r in source
            ]
        name_a, name_b = args.compare.split(":")
        paired = [
            (a, b)
            for a, b in zip(vec_by_name[name_a], vec_by_name[name_b])
            if a is not None and b is not None
        ]
        if len(paired) < 2:
            raise CorpusFormatError(
                "bootstrap comparison needs at least 2 segments scored by both sides"
            )
        result = paired_bootstrap(
            [p[0] for p in paired],
            [p[1] for p in paired],
            iterations=args.bootstrap,
            seed=args.seed,
        )
        report["bootstrap"] = {
            "compare": args.compare,
            "n_segments": len(paired),
            "mean_delta": result.mean_delta,
            "p_value": result.p_value,
            "iterations": result.iterations,
            "seed": result.seed,
        }

    if args.format == "tsv":
        if args.per_segment:
            rows = []
            for i, res in enumerate(results):
                if res is None:
                    rows.append([i, 0, "NA", "NA", "NA", "NA", ""])
                else:
                    rows.append(
                        [
                            i,
                            len(res.per_reference),
                            res.per_strategy[SELECT_BEST],
                            res.per_strategy[SIMPLE_AVERAGE],
                            res.per_strategy[WEIGHTED_AVERAGE],
                            res.per_strategy[MERGED],
                            list(res.per_reference),
                        ]
                    )
            return emit_tsv(
                [
                    "index",
                    "n_references",
                    SELECT_BEST,
                    SIMPLE_AVERAGE,
                    WEIGHTED_AVERAGE,
                    MERGED,
                    "per_reference",
                ],
                rows,
            )
        rows = [
            [strategy, entry["score"], entry["n_segments"], entry["n_skipped"]]
            for strategy, entry in corpus_section.items()
        ]
        return emit_tsv(["strategy", "score", "n_segments", "n_skipped"], rows)

    if args.per_segment:
        report["segments"] = _segment_rows_json(results)
    return emit_json(report)


def _run_curve(args: argparse.Namespace) -> bytes:
    segments = load_corpus(args.source, args.hypothesis, args.ref)
    if all(not seg.references for seg in segments):
        raise CorpusFormatError("no segment has any reference")
    config = _config(args)
    points = incremental_curve(
        segments,
        config,
        k_max=args.k_max,
        permute_refs=args.permute_refs,
        trials=args.trials,
        seed=args.seed,
    )
    if args.format == "tsv":
        rows = [
            [p.k, *(p.per_strategy[s] for s in STRATEGIES)] for p in points
        ]
        return emit_tsv(["k", *STRATEGIES], rows)
    report = {
        "version": __version__,
        "config": _config_echo(args, list(STRATEGIES)),
        "curve": [
            {"k": p.k, **{s: p.per_strategy[s] for s in STRATEGIES}} for p in points
        ],
    }
    return emit_json(report)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    message = _validate(args)
    if message is not None:
        print(f"{parser.prog}: error: {message}", file=sys.stderr)
        return EXIT_USAGE

    try:
        payload = _run_score(args) if args.command == "score" else _run_curve(args)
        if args.output:
            with open(args.output, "wb") as fh:
                fh.write(payload)
        else:
            sys.stdout.buffer.write(payload)
            sys.stdout.buffer.flush()
    except CorpusFormatError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except OSError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

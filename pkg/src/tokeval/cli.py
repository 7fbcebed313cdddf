"""Command-line front end: JSON/CSV reports, plot data, and optional figures."""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from .analysis import correlation_matrix, load_manifest
from .conllu import load_corpus
from .errors import HubError, TokevalError
from .hub import DEFAULT_BASE_URL, default_cache_dir, fetch_vocab
from .metrics import DEFAULT_BIN_WIDTH, sentence_length_histogram, tokenizer_report
from .serialize import json_text
from .vocabtools import REMAP_MODES, overlap, prune_vocab, remap_plan
from .wordpiece import TokenizerConfig, load_vocab, write_vocab

EXIT_OK = 0
EXIT_PARSE = 1
EXIT_IO = 2
EXIT_NETWORK = 3


def _add_corpus_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--corpus",
        nargs="+",
        action="extend",
        required=True,
        metavar="PATH",
        help="CoNLL-U file(s); multiple files concatenate in order",
    )
    parser.add_argument(
        "--language", default="und", help="language tag recorded in the output"
    )


def _add_vocab_options(parser: argparse.ArgumentParser, prefix: str = "") -> None:
    group = parser.add_mutually_exclusive_group(required=True)
    group.add_argument(f"--{prefix}vocab", metavar="PATH", help="vocab.txt file")
    group.add_argument(
        f"--{prefix}model-id", metavar="ID", help="hub model id to fetch and cache"
    )


def _add_tokenizer_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--lowercase", action="store_true", help="case-fold words")
    parser.add_argument(
        "--strip-accents", action="store_true", help="drop combining marks after NFD"
    )
    parser.add_argument(
        "--continuation-prefix", default="##", help="non-initial piece marker"
    )


def _add_output_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--output", default="-", metavar="PATH", help="output file, or - for stdout"
    )


def _add_hub_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--base-url", default=DEFAULT_BASE_URL, help="vocabulary hub base URL"
    )
    parser.add_argument(
        "--cache-dir",
        default=None,
        help=f"vocab cache directory (default: $TOKEVAL_CACHE_DIR or {default_cache_dir()})",
    )


def _config_from(args) -> TokenizerConfig:
    return TokenizerConfig(lowercase=args.lowercase, strip_accents=args.strip_accents)


def _resolve_vocab(args, attr: str = "vocab", id_attr: str = "model_id"):
    path = getattr(args, attr)
    if path is None:
        model_id = getattr(args, id_attr)
        path = fetch_vocab(model_id, base_url=args.base_url, cache_dir=args.cache_dir)
        name = model_id
    else:
        name = Path(path).stem
    with open(path, encoding="utf-8") as handle:
        return load_vocab(handle, name, continuation_prefix=args.continuation_prefix)


def _write_output(text: str, output: str) -> None:
    if output == "-":
        sys.stdout.write(text)
    else:
        with open(output, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)


def cmd_stats(args) -> int:
    corpus = load_corpus(args.corpus, args.language)
    vocab = _resolve_vocab(args)
    report = tokenizer_report(
        corpus,
        vocab,
        _config_from(args),
        bin_width=args.bin_width,
        workers=args.workers,
    )
    _write_output(json_text(report.to_dict()), args.output)
    if args.figures:
        from .plots import save_report_figures

        save_report_figures(report, Path(args.figures))
    return EXIT_OK


def cmd_histogram(args) -> int:
    corpus = load_corpus(args.corpus, args.language)
    vocab = _resolve_vocab(args)
    model_hist, reference_hist = sentence_length_histogram(
        corpus, vocab, _config_from(args), bin_width=args.bin_width
    )
    bins = sorted(set(model_hist) | set(reference_hist))
    lines = ["bin_start,model_count,reference_count"]
    for b in bins:
        lines.append(f"{b * args.bin_width},{model_hist.get(b, 0)},{reference_hist.get(b, 0)}")
    _write_output("\n".join(lines) + "\n", args.output)
    if args.figures:
        from .plots import save_length_histogram_figure

        save_length_histogram_figure(
            model_hist,
            reference_hist,
            args.bin_width,
            Path(args.figures) / "sentence_lengths.png",
            title=f"Sentence lengths: {args.language} / {vocab.name}",
        )
    return EXIT_OK


def cmd_compare(args) -> int:
    with open(args.vocab_a, encoding="utf-8") as handle:
        vocab_a = load_vocab(handle, Path(args.vocab_a).stem)
    with open(args.vocab_b, encoding="utf-8") as handle:
        vocab_b = load_vocab(handle, Path(args.vocab_b).stem)
    result = overlap(vocab_a, vocab_b)
    _write_output(json_text(result.to_dict()), args.output)
    return EXIT_OK


def cmd_correlate(args) -> int:
    manifest = load_manifest(args.manifest)
    matrix = correlation_matrix(
        manifest,
        exclude_languages=args.exclude,
        average_submeasures=args.average_submeasures,
    )
    if args.format == "json":
        _write_output(json_text(matrix.to_dict()), args.output)
    else:
        _write_output(matrix.to_csv(), args.output)
    return EXIT_OK


def cmd_prune(args) -> int:
    corpus = load_corpus(args.corpus, args.language)
    vocab = _resolve_vocab(args)
    pruned = prune_vocab(vocab, corpus, _config_from(args), workers=args.workers)
    if args.output == "-":
        write_vocab(pruned, sys.stdout)
    else:
        with open(args.output, "w", encoding="utf-8", newline="") as handle:
            write_vocab(pruned, handle)
    return EXIT_OK


def cmd_remap(args) -> int:
    with open(args.old_vocab, encoding="utf-8") as handle:
        old = load_vocab(handle, Path(args.old_vocab).stem)
    with open(args.new_vocab, encoding="utf-8") as handle:
        new = load_vocab(handle, Path(args.new_vocab).stem)
    plan = remap_plan(old, new, args.mode)
    _write_output(json_text(plan.to_dict()), args.output)
    return EXIT_OK


def cmd_fetch(args) -> int:
    path = fetch_vocab(args.model_id, base_url=args.base_url, cache_dir=args.cache_dir)
    sys.stdout.write(str(path) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tokeval",
        description="Tokenizer-quality statistics, vocabulary surgery, and correlation analysis",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    stats = sub.add_parser("stats", help="full tokenizer report over a corpus")
    _add_corpus_options(stats)
    _add_vocab_options(stats)
    _add_tokenizer_options(stats)
    _add_hub_options(stats)
    stats.add_argument("--bin-width", type=int, default=DEFAULT_BIN_WIDTH)
    stats.add_argument(
        "--workers",
        type=int,
        default=os.cpu_count() or 1,
        help="sentence partitions for the metric pass (output independent of N)",
    )
    stats.add_argument("--figures", metavar="DIR", help="also render PNG figures here")
    _add_output_option(stats)
    stats.set_defaults(func=cmd_stats)

    histogram = sub.add_parser("histogram", help="sentence-length distribution CSV")
    _add_corpus_options(histogram)
    _add_vocab_options(histogram)
    _add_tokenizer_options(histogram)
    _add_hub_options(histogram)
    histogram.add_argument("--bin-width", type=int, default=DEFAULT_BIN_WIDTH)
    histogram.add_argument("--figures", metavar="DIR", help="also render a PNG figure here")
    _add_output_option(histogram)
    histogram.set_defaults(func=cmd_histogram)

    compare = sub.add_parser("compare", help="vocabulary overlap")
    compare.add_argument("vocab_a", metavar="VOCAB_A")
    compare.add_argument("vocab_b", metavar="VOCAB_B")
    _add_output_option(compare)
    compare.set_defaults(func=cmd_compare)

    correlate = sub.add_parser("correlate", help="factor-vs-score Spearman matrix")
    correlate.add_argument("--manifest", required=True, metavar="PATH")
    correlate.add_argument(
        "--exclude",
        action="append",
        default=[],
        metavar="LANG",
        help="drop a language before correlating (repeatable)",
    )
    correlate.add_argument(
        "--average-submeasures",
        action="store_true",
        help="pool task columns sharing a prefix (udp_uas + udp_las, say)",
    )
    correlate.add_argument("--format", choices=("csv", "json"), default="csv")
    _add_output_option(correlate)
    correlate.set_defaults(func=cmd_correlate)

    prune = sub.add_parser("prune", help="drop vocabulary tokens a corpus never emits")
    _add_corpus_options(prune)
    _add_vocab_options(prune)
    _add_tokenizer_options(prune)
    _add_hub_options(prune)
    prune.add_argument(
        "--workers", type=int, default=os.cpu_count() or 1, help="emission-scan partitions"
    )
    _add_output_option(prune)
    prune.set_defaults(func=cmd_prune)

    remap = sub.add_parser("remap", help="embedding remap plan between two vocabularies")
    remap.add_argument("old_vocab", metavar="OLD_VOCAB")
    remap.add_argument("new_vocab", metavar="NEW_VOCAB")
    remap.add_argument("--mode", choices=REMAP_MODES, required=True)
    _add_output_option(remap)
    remap.set_defaults(func=cmd_remap)

    fetch = sub.add_parser("fetch", help="download and cache a model's vocab file")
    fetch.add_argument("--model-id", required=True)
    _add_hub_options(fetch)
    fetch.set_defaults(func=cmd_fetch)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except HubError as exc:
        print(f"network error: {exc}", file=sys.stderr)
        return EXIT_NETWORK
    except (TokevalError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

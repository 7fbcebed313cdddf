"""Figure rendering for the report path: PNG files next to the delimited output."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .metrics import TokenizerReport


def _length_axes(ax, model_hist: dict[int, int], reference_hist: dict[int, int], bin_width: int):
    bins = sorted(set(model_hist) | set(reference_hist))
    starts = [b * bin_width for b in bins]
    width = bin_width * 0.4
    ax.bar(
        [s for s in starts],
        [reference_hist.get(b, 0) for b in bins],
        width=width,
        align="edge",
        label="reference words",
        color="#4878d0",
    )
    ax.bar(
        [s + width for s in starts],
        [model_hist.get(b, 0) for b in bins],
        width=width,
        align="edge",
        label="model pieces",
        color="#ee854a",
    )
    ax.set_xlabel("sentence length")
    ax.set_ylabel("sentences")
    ax.legend()


def save_length_histogram_figure(
    model_hist: dict[int, int],
    reference_hist: dict[int, int],
    bin_width: int,
    out_path: Path,
    title: str = "",
) -> Path:
    """Render the model-vs-reference sentence length distribution."""
    fig, ax = plt.subplots(figsize=(7, 4))
    _length_axes(ax, model_hist, reference_hist, bin_width)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(out_path, dpi=150)
    plt.close(fig)
    return out_path


def save_report_figures(report: TokenizerReport, out_dir: Path) -> list[Path]:
    """Render the standard figures for one report; returns the written paths."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    label = f"{report.language_tag} / {report.vocab_name}"
    written = []

    written.append(
        save_length_histogram_figure(
            report.sentence_length_histogram,
            report.reference_length_histogram,
            report.bin_width,
            out_dir / "sentence_lengths.png",
            title=f"Sentence lengths: {label}",
        )
    )

    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 4))
    ax1.bar(["fertility"], [report.fertility], color="#4878d0")
    ax1.axhline(1.0, color="gray", linestyle="--", linewidth=1)
    ax1.set_ylabel("pieces per word")
    ax2.bar(
        ["continued", "unk pieces", "unk words"],
        [
            report.continuation_proportion,
            report.unk_token_proportion,
            report.unk_word_proportion,
        ],
        color=["#ee854a", "#6acc64", "#d65f5f"],
    )
    ax2.set_ylim(0, 1)
    ax2.set_ylabel("proportion")
    fig.suptitle(f"Tokenizer metrics: {label}")
    fig.tight_layout()
    path = out_dir / "metrics.png"
    fig.savefig(path, dpi=150)
    plt.close(fig)
    written.append(path)
    return written

"""Single-pass tokenizer-quality statistics over a corpus.

All metric state is integer counts; ratios are derived once at the end, so
partitioned passes merge exactly and the output is bit-identical for any
worker count.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .conllu import Corpus, Sentence
from .errors import EmptyCorpusError
from .wordpiece import TokenizerConfig, Vocabulary, tokenize_word

DEFAULT_BIN_WIDTH = 5


@dataclass
class PartialCounts:
    """Mergeable integer state of one metric pass."""

    word_count: int = 0
    subword_count: int = 0
    continued_word_count: int = 0
    unk_piece_count: int = 0
    unk_word_count: int = 0
    sentence_count: int = 0
    model_hist: Counter = field(default_factory=Counter)
    reference_hist: Counter = field(default_factory=Counter)

    def merge(self, other: "PartialCounts") -> "PartialCounts":
        """Fold another partial state into this one (commutative, associative)."""
        self.word_count += other.word_count
        self.subword_count += other.subword_count
        self.continued_word_count += other.continued_word_count
        self.unk_piece_count += other.unk_piece_count
        self.unk_word_count += other.unk_word_count
        self.sentence_count += other.sentence_count
        self.model_hist.update(other.model_hist)
        self.reference_hist.update(other.reference_hist)
        return self


@dataclass(frozen=True)
class TokenizerReport:
    """All per-corpus tokenizer metrics plus the raw counts behind them."""

    fertility: float
    continuation_proportion: float
    unk_token_proportion: float
    unk_word_proportion: float
    word_count: int
    subword_count: int
    continued_word_count: int
    unk_piece_count: int
    unk_word_count: int
    sentence_count: int
    bin_width: int
    sentence_length_histogram: dict[int, int]
    reference_length_histogram: dict[int, int]
    vocab_name: str
    language_tag: str

    def to_dict(self) -> dict:
        """JSON-ready dict: snake_case keys, histograms as sorted [bin, count] pairs."""
        return {
            "language_tag": self.language_tag,
            "vocab_name": self.vocab_name,
            "word_count": self.word_count,
            "subword_count": self.subword_count,
            "continued_word_count": self.continued_word_count,
            "unk_piece_count": self.unk_piece_count,
            "unk_word_count": self.unk_word_count,
            "sentence_count": self.sentence_count,
            "fertility": self.fertility,
            "continuation_proportion": self.continuation_proportion,
            "unk_token_proportion": self.unk_token_proportion,
            "unk_word_proportion": self.unk_word_proportion,
            "bin_width": self.bin_width,
            "sentence_length_histogram": [
                [b, c] for b, c in sorted(self.sentence_length_histogram.items())
            ],
            "reference_length_histogram": [
                [b, c] for b, c in sorted(self.reference_length_histogram.items())
            ],
        }


def count_sentences(
    sentences: Iterable[Sentence],
    vocab: Vocabulary,
    config: TokenizerConfig,
    bin_width: int = DEFAULT_BIN_WIDTH,
) -> PartialCounts:
    """Tokenize every word once and accumulate the integer metric state.

    Repeated word forms hit a per-pass cache, which on natural corpora is
    where almost all of the time goes.
    """
    if bin_width < 1:
        raise ValueError("bin_width must be >= 1")
    counts = PartialCounts()
    unk_id = vocab.unk_id
    cache: dict[str, tuple[int, int, bool]] = {}
    for sentence in sentences:
        sentence_pieces = 0
        for word in sentence.words:
            stats = cache.get(word.form)
            if stats is None:
                tokenized = tokenize_word(word.form, vocab, config)
                unk_pieces = sum(1 for p in tokenized.pieces if p == unk_id)
                stats = (tokenized.piece_count, unk_pieces, tokenized.is_unknown)
                cache[word.form] = stats
            piece_count, unk_pieces, is_unknown = stats
            counts.word_count += 1
            counts.subword_count += piece_count
            if piece_count >= 2:
                counts.continued_word_count += 1
            counts.unk_piece_count += unk_pieces
            if is_unknown:
                counts.unk_word_count += 1
            sentence_pieces += piece_count
        counts.sentence_count += 1
        counts.model_hist[sentence_pieces // bin_width] += 1
        counts.reference_hist[len(sentence.words) // bin_width] += 1
    return counts


def _partition(sentences: Sequence[Sentence], parts: int) -> list[Sequence[Sentence]]:
    parts = max(1, min(parts, len(sentences)))
    size, extra = divmod(len(sentences), parts)
    chunks = []
    start = 0
    for i in range(parts):
        end = start + size + (1 if i < extra else 0)
        chunks.append(sentences[start:end])
        start = end
    return chunks


def corpus_counts(
    corpus: Corpus,
    vocab: Vocabulary,
    config: TokenizerConfig,
    bin_width: int = DEFAULT_BIN_WIDTH,
    workers: int = 1,
) -> PartialCounts:
    """Run the metric pass, optionally partitioned across workers.

    The merge is over integer counts only, so the result does not depend on
    the worker count.
    """
    if workers <= 1 or corpus.sentence_count <= 1:
        return count_sentences(corpus.sentences, vocab, config, bin_width)
    chunks = _partition(corpus.sentences, workers)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        partials = list(
            pool.map(lambda chunk: count_sentences(chunk, vocab, config, bin_width), chunks)
        )
    merged = PartialCounts()
    for partial in partials:
        merged.merge(partial)
    return merged


def _nonempty_counts(corpus, vocab, config, bin_width=DEFAULT_BIN_WIDTH, workers=1):
    if corpus.word_count == 0:
        raise EmptyCorpusError("metrics are undefined over an empty corpus")
    return corpus_counts(corpus, vocab, config, bin_width, workers)


def fertility(corpus: Corpus, vocab: Vocabulary, config: TokenizerConfig) -> float:
    """Mean number of subword pieces per reference word (UNK words count 1)."""
    counts = _nonempty_counts(corpus, vocab, config)
    return counts.subword_count / counts.word_count


def continuation_proportion(
    corpus: Corpus, vocab: Vocabulary, config: TokenizerConfig
) -> float:
    """Fraction of words split into at least two pieces."""
    counts = _nonempty_counts(corpus, vocab, config)
    return counts.continued_word_count / counts.word_count


def unk_proportions(
    corpus: Corpus, vocab: Vocabulary, config: TokenizerConfig
) -> tuple[float, float]:
    """(UNK pieces / all pieces, fully-unknown words / all words)."""
    counts = _nonempty_counts(corpus, vocab, config)
    return (
        counts.unk_piece_count / counts.subword_count,
        counts.unk_word_count / counts.word_count,
    )


def sentence_length_histogram(
    corpus: Corpus,
    vocab: Vocabulary,
    config: TokenizerConfig,
    bin_width: int = DEFAULT_BIN_WIDTH,
) -> tuple[dict[int, int], dict[int, int]]:
    """Histogram sentence lengths in pieces (model) and in words (reference).

    Bin b covers [b * bin_width, (b + 1) * bin_width); both histograms sum
    to the sentence count.
    """
    counts = corpus_counts(corpus, vocab, config, bin_width)
    return dict(counts.model_hist), dict(counts.reference_hist)


def report_from_counts(
    counts: PartialCounts,
    vocab_name: str,
    language_tag: str,
    bin_width: int = DEFAULT_BIN_WIDTH,
) -> TokenizerReport:
    """Derive the ratio fields from merged integer counts."""
    if counts.word_count == 0:
        raise EmptyCorpusError("metrics are undefined over an empty corpus")
    return TokenizerReport(
        fertility=counts.subword_count / counts.word_count,
        continuation_proportion=counts.continued_word_count / counts.word_count,
        unk_token_proportion=counts.unk_piece_count / counts.subword_count,
        unk_word_proportion=counts.unk_word_count / counts.word_count,
        word_count=counts.word_count,
        subword_count=counts.subword_count,
        continued_word_count=counts.continued_word_count,
        unk_piece_count=counts.unk_piece_count,
        unk_word_count=counts.unk_word_count,
        sentence_count=counts.sentence_count,
        bin_width=bin_width,
        sentence_length_histogram=dict(counts.model_hist),
        reference_length_histogram=dict(counts.reference_hist),
        vocab_name=vocab_name,
        language_tag=language_tag,
    )


def tokenizer_report(
    corpus: Corpus,
    vocab: Vocabulary,
    config: TokenizerConfig,
    bin_width: int = DEFAULT_BIN_WIDTH,
    workers: int = 1,
) -> TokenizerReport:
    """Compute every metric in one pass over the corpus."""
    counts = _nonempty_counts(corpus, vocab, config, bin_width, workers)
    return report_from_counts(counts, vocab.name, corpus.language_tag, bin_width)

"""Tokenizer-quality analysis over CoNLL-U corpora."""

from .analysis import (
    CorrelationCell,
    CorrelationMatrix,
    Manifest,
    ManifestRecord,
    correlation_matrix,
    load_manifest,
    relative_change,
    spearman,
)
from .conllu import Corpus, Sentence, Word, load_corpus, parse_conllu
from .errors import (
    ConlluParseError,
    EmptyCorpusError,
    HubError,
    HubUnavailableError,
    IntegrityError,
    ManifestError,
    ModelNotFoundError,
    RemapError,
    TokevalError,
    UndefinedCorrelationError,
    VocabFormatError,
)
from .hub import CacheEntry, fetch_vocab, read_cache_entry
from .metrics import (
    PartialCounts,
    TokenizerReport,
    continuation_proportion,
    corpus_counts,
    count_sentences,
    fertility,
    report_from_counts,
    sentence_length_histogram,
    tokenizer_report,
    unk_proportions,
)
from .vocabtools import (
    OverlapResult,
    RemapEntry,
    RemapPlan,
    emitted_token_ids,
    overlap,
    prune_vocab,
    remap_plan,
)
from .wordpiece import (
    TokenizedWord,
    TokenizerConfig,
    Vocabulary,
    load_vocab,
    normalize_word,
    tokenize_word,
    wordpiece_segment,
    write_vocab,
)

__version__ = "0.1.0"

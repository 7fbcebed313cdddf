"""Cross-vocabulary analysis: overlap, corpus-driven pruning, embedding remap plans."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .conllu import Corpus
from .errors import EmptyCorpusError, RemapError
from .metrics import _partition
from .wordpiece import TokenizerConfig, Vocabulary, tokenize_word

REMAP_MODES = ("paper", "shared-copy")


@dataclass(frozen=True)
class OverlapResult:
    name_a: str
    name_b: str
    size_a: int
    size_b: int
    shared: int

    @property
    def proportion_a_in_b(self) -> float:
        return self.shared / self.size_a

    def to_dict(self) -> dict:
        return {
            "name_a": self.name_a,
            "name_b": self.name_b,
            "size_a": self.size_a,
            "size_b": self.size_b,
            "shared": self.shared,
            "proportion_a_in_b": self.proportion_a_in_b,
        }


@dataclass(frozen=True)
class RemapEntry:
    new_id: int
    token: str
    action: str  # "copy" | "random"
    old_id: int | None = None


@dataclass(frozen=True)
class RemapPlan:
    """Per-new-vocab-id embedding initialization instructions."""

    mode: str
    entries: tuple[RemapEntry, ...]

    @property
    def copy_count(self) -> int:
        return sum(1 for e in self.entries if e.action == "copy")

    def to_dict(self) -> dict:
        entries = []
        for e in self.entries:
            item: dict = {"new_id": e.new_id, "token": e.token, "action": e.action}
            if e.old_id is not None:
                item["old_id"] = e.old_id
            entries.append(item)
        return {"mode": self.mode, "entries": entries}


def overlap(vocab_a: Vocabulary, vocab_b: Vocabulary) -> OverlapResult:
    """Exact string-set intersection; proportion is relative to vocab_a."""
    shared = len(set(vocab_a.tokens) & set(vocab_b.tokens))
    return OverlapResult(vocab_a.name, vocab_b.name, len(vocab_a), len(vocab_b), shared)


def emitted_token_ids(
    corpus: Corpus,
    vocab: Vocabulary,
    config: TokenizerConfig,
    workers: int = 1,
) -> set[int]:
    """Ids of every token emitted at least once when tokenizing the corpus."""

    def scan(sentences) -> set[int]:
        emitted: set[int] = set()
        cache: dict[str, tuple[int, ...]] = {}
        for sentence in sentences:
            for word in sentence.words:
                pieces = cache.get(word.form)
                if pieces is None:
                    pieces = tokenize_word(word.form, vocab, config).pieces
                    cache[word.form] = pieces
                emitted.update(pieces)
        return emitted

    if workers <= 1 or corpus.sentence_count <= 1:
        return scan(corpus.sentences)
    chunks = _partition(corpus.sentences, workers)
    with ThreadPoolExecutor(max_workers=len(chunks)) as pool:
        merged: set[int] = set()
        for part in pool.map(scan, chunks):
            merged |= part
        return merged


def prune_vocab(
    vocab: Vocabulary,
    corpus: Corpus,
    config: TokenizerConfig,
    workers: int = 1,
) -> Vocabulary:
    """Drop every token the corpus tokenization never emits.

    Special tokens are always retained and relative order is preserved, so
    ids re-compact to 0..n-1 and the output is a valid vocab.txt. Removal
    cannot change greedy decisions on the pruning corpus: a token that was
    never the longest match is never missed, so re-tokenizing yields the
    same piece sequences.
    """
    if corpus.word_count == 0:
        raise EmptyCorpusError("cannot prune against an empty corpus")
    keep_ids = emitted_token_ids(corpus, vocab, config, workers)
    kept = [
        token
        for i, token in enumerate(vocab.tokens)
        if i in keep_ids or token in vocab.special_tokens
    ]
    return Vocabulary(
        kept,
        name=f"{vocab.name}-pruned",
        continuation_prefix=vocab.continuation_prefix,
        special_tokens=vocab.special_tokens,
        unk_token=vocab.unk_token,
    )


def remap_plan(old_vocab: Vocabulary, new_vocab: Vocabulary, mode: str) -> RemapPlan:
    """Plan embedding-row initialization for swapping to a new vocabulary.

    Mode "paper" copies only the special-token rows from the old vocabulary
    and marks every other new id for random init; mode "shared-copy"
    additionally copies every token string present in both vocabularies.
    """
    if mode not in REMAP_MODES:
        raise ValueError(f"mode must be one of {REMAP_MODES}, got {mode!r}")
    for token in sorted(new_vocab.special_tokens):
        if token not in new_vocab:
            raise RemapError(f"special token {token!r} missing from new vocabulary")
        if token not in old_vocab:
            raise RemapError(f"special token {token!r} missing from old vocabulary")
    entries = []
    for new_id, token in enumerate(new_vocab.tokens):
        copy = token in new_vocab.special_tokens or (
            mode == "shared-copy" and token in old_vocab
        )
        if copy:
            entries.append(RemapEntry(new_id, token, "copy", old_vocab.id_of(token)))
        else:
            entries.append(RemapEntry(new_id, token, "random"))
    return RemapPlan(mode, tuple(entries))

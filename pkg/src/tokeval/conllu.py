"""CoNLL-U ingestion: reference-tokenized corpora for the metric passes."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator

from .errors import ConlluParseError

COLUMN_COUNT = 10

_WORD_ID = re.compile(r"^[0-9]+$")
_RANGE_ID = re.compile(r"^[0-9]+-[0-9]+$")
_EMPTY_NODE_ID = re.compile(r"^[0-9]+\.[0-9]+$")
_SENT_ID = re.compile(r"^#\s*sent_id\s*=\s*(.*)$")


@dataclass(frozen=True, slots=True)
class Word:
    """A syntactic word: FORM plus its 1-based position in the sentence."""

    form: str
    index: int

    def __post_init__(self):
        if not self.form:
            raise ValueError("word form must be non-empty")
        if self.index < 1:
            raise ValueError("word index must be a positive integer")


@dataclass(frozen=True, slots=True)
class Sentence:
    words: tuple[Word, ...]
    source_id: str | None = None

    def __post_init__(self):
        if not self.words:
            raise ValueError("sentence must contain at least one word")
        if self.words[0].index != 1:
            raise ValueError("word indices must start at 1")
        for prev, cur in zip(self.words, self.words[1:]):
            if cur.index <= prev.index:
                raise ValueError("word indices must be strictly increasing")

    def __len__(self) -> int:
        return len(self.words)


@dataclass(frozen=True, slots=True)
class Corpus:
    sentences: tuple[Sentence, ...]
    language_tag: str

    @property
    def word_count(self) -> int:
        return sum(len(s) for s in self.sentences)

    @property
    def sentence_count(self) -> int:
        return len(self.sentences)


def _iter_text_lines(stream: Iterable[str] | Iterable[bytes]) -> Iterator[str]:
    for raw in stream:
        yield raw.decode("utf-8") if isinstance(raw, bytes) else raw


def parse_conllu(stream: Iterable[str] | Iterable[bytes], language_tag: str) -> Corpus:
    """Parse a CoNLL-U text or byte stream into a Corpus.

    Only plain integer-id rows become words; multiword-token range rows
    (id "3-4") and empty nodes (id "5.1") are skipped, since the integer
    rows carry the annotators' word segmentation. Blocks that yield no
    word rows produce no sentence. Empty input yields an empty Corpus.
    """
    sentences: list[Sentence] = []
    words: list[Word] = []
    sent_id: str | None = None

    def flush():
        nonlocal words, sent_id
        if words:
            sentences.append(Sentence(tuple(words), sent_id))
        words = []
        sent_id = None

    line_number = 0
    for line_number, line in enumerate(_iter_text_lines(stream), start=1):
        line = line.rstrip("\r\n")
        if line_number == 1:
            line = line.lstrip("﻿")
        if not line.strip():
            flush()
            continue
        if line.startswith("#"):
            match = _SENT_ID.match(line)
            if match:
                sent_id = match.group(1).strip() or None
            continue
        columns = line.split("\t")
        if len(columns) != COLUMN_COUNT:
            raise ConlluParseError(
                f"expected {COLUMN_COUNT} tab-separated columns, got {len(columns)}",
                line_number,
            )
        row_id, form = columns[0], columns[1]
        if _RANGE_ID.match(row_id) or _EMPTY_NODE_ID.match(row_id):
            continue
        if not _WORD_ID.match(row_id):
            raise ConlluParseError(f"unrecognized token id {row_id!r}", line_number)
        index = int(row_id)
        if not form:
            raise ConlluParseError("empty FORM column", line_number)
        if not words and index != 1:
            raise ConlluParseError(f"first word id of a sentence must be 1, got {index}", line_number)
        if words and index <= words[-1].index:
            raise ConlluParseError(
                f"word ids must be strictly increasing ({words[-1].index} then {index})",
                line_number,
            )
        words.append(Word(form, index))
    flush()
    return Corpus(tuple(sentences), language_tag)


def load_corpus(paths: Iterable[str | Path], language_tag: str) -> Corpus:
    """Parse and concatenate one or more CoNLL-U files, in path order."""
    sentences: list[Sentence] = []
    for path in paths:
        with open(path, encoding="utf-8") as handle:
            try:
                sentences.extend(parse_conllu(handle, language_tag).sentences)
            except ConlluParseError as exc:
                raise ConlluParseError(f"{path}: {exc}") from exc
    return Corpus(tuple(sentences), language_tag)

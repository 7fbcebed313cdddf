"""BERT-style vocabularies and greedy longest-match-first subword tokenization."""

from __future__ import annotations

import unicodedata
from dataclasses import dataclass
from typing import Iterable

from .errors import VocabFormatError

DEFAULT_SPECIAL_TOKENS = frozenset({"[CLS]", "[SEP]", "[PAD]", "[UNK]", "[MASK]"})
DEFAULT_UNK_TOKEN = "[UNK]"
DEFAULT_CONTINUATION_PREFIX = "##"

_CJK_RANGES = (
    (0x4E00, 0x9FFF),
    (0x3400, 0x4DBF),
    (0x20000, 0x2A6DF),
    (0x2A700, 0x2B73F),
    (0x2B740, 0x2B81F),
    (0x2B820, 0x2CEAF),
    (0xF900, 0xFAFF),
    (0x2F800, 0x2FA1F),
)


class Vocabulary:
    """Ordered subword inventory; line index in vocab.txt = token id.

    Immutable after construction and safe to share across threads.
    """

    def __init__(
        self,
        tokens: Iterable[str],
        name: str,
        continuation_prefix: str = DEFAULT_CONTINUATION_PREFIX,
        special_tokens: Iterable[str] | None = None,
        unk_token: str = DEFAULT_UNK_TOKEN,
    ):
        self.tokens: tuple[str, ...] = tuple(tokens)
        self.name = name
        self.continuation_prefix = continuation_prefix
        self.special_tokens = (
            frozenset(special_tokens) if special_tokens is not None else DEFAULT_SPECIAL_TOKENS
        )
        self.unk_token = unk_token
        self._ids: dict[str, int] = {}
        for i, token in enumerate(self.tokens):
            if token in self._ids:
                raise VocabFormatError(
                    f"duplicate token {token!r} at ids {self._ids[token]} and {i}"
                )
            self._ids[token] = i
        if unk_token not in self._ids:
            raise VocabFormatError(
                f"vocabulary {name!r} is missing the unknown token {unk_token!r}"
            )

    def __len__(self) -> int:
        return len(self.tokens)

    def __contains__(self, token: str) -> bool:
        return token in self._ids

    def id_of(self, token: str) -> int:
        return self._ids[token]

    @property
    def unk_id(self) -> int:
        return self._ids[self.unk_token]

    def __repr__(self) -> str:
        return f"Vocabulary({self.name!r}, size={len(self.tokens)})"


def load_vocab(
    stream: Iterable[str] | Iterable[bytes],
    name: str,
    continuation_prefix: str = DEFAULT_CONTINUATION_PREFIX,
    special_tokens: Iterable[str] | None = None,
    unk_token: str = DEFAULT_UNK_TOKEN,
) -> Vocabulary:
    """Read a vocab.txt stream: one UTF-8 token per line, id = zero-based line index.

    Trailing blank lines are tolerated; a blank line before further tokens is an
    error because it would shift every subsequent id.
    """
    tokens: list[str] = []
    blanks_seen = 0
    for raw in stream:
        if isinstance(raw, bytes):
            raw = raw.decode("utf-8")
        token = raw.rstrip("\r\n")
        if not tokens and token.startswith("﻿"):
            token = token.lstrip("﻿")
        if token == "":
            blanks_seen += 1
            continue
        if blanks_seen:
            raise VocabFormatError(f"blank vocabulary line before token {token!r}")
        tokens.append(token)
    if not tokens:
        raise VocabFormatError(f"vocabulary {name!r} is empty")
    return Vocabulary(tokens, name, continuation_prefix, special_tokens, unk_token)


def write_vocab(vocab: Vocabulary, stream) -> None:
    """Write a vocabulary in vocab.txt format (one token per line)."""
    for token in vocab.tokens:
        stream.write(token + "\n")


@dataclass(frozen=True, slots=True)
class TokenizerConfig:
    """Per-word normalization and matching switches.

    Casing and accent handling are explicit per model, never inferred from
    the vocabulary file. Uncased setups typically want both ``lowercase``
    and ``strip_accents``.
    """

    lowercase: bool = False
    strip_accents: bool = False
    max_chars_per_word: int = 100
    isolate_punctuation: bool = True
    isolate_cjk: bool = True

    def __post_init__(self):
        if self.max_chars_per_word < 1:
            raise ValueError("max_chars_per_word must be >= 1")


@dataclass(frozen=True, slots=True)
class TokenizedWord:
    source: str
    pieces: tuple[int, ...]
    is_unknown: bool

    @property
    def piece_count(self) -> int:
        return len(self.pieces)


def _is_punctuation(char: str) -> bool:
    # ASCII symbol ranges count as punctuation even where Unicode says
    # otherwise, matching the convention BERT vocabularies were built with.
    cp = ord(char)
    if 33 <= cp <= 47 or 58 <= cp <= 64 or 91 <= cp <= 96 or 123 <= cp <= 126:
        return True
    return unicodedata.category(char).startswith("P")


def _is_cjk(char: str) -> bool:
    cp = ord(char)
    return any(lo <= cp <= hi for lo, hi in _CJK_RANGES)


def _is_control(char: str) -> bool:
    if char in ("\t", "\n", "\r"):
        return False
    return unicodedata.category(char).startswith("C")


def _is_whitespace(char: str) -> bool:
    if char in (" ", "\t", "\n", "\r"):
        return True
    return unicodedata.category(char) == "Zs"


def normalize_word(word: str, config: TokenizerConfig) -> list[str]:
    """Split one reference word into fragments ready for subword matching.

    Control characters are dropped and in-word whitespace separates
    fragments; optional case folding, accent stripping (NFD decomposition,
    combining marks removed), punctuation isolation, and CJK-ideograph
    isolation follow. Concatenating the fragments reproduces the normalized
    word. Falls back to the raw word as a single fragment if normalization
    removes everything.
    """
    if not word:
        raise ValueError("word must be non-empty")

    cleaned: list[str] = []
    for char in word:
        cp = ord(char)
        if cp == 0 or cp == 0xFFFD or _is_control(char):
            continue
        cleaned.append(" " if _is_whitespace(char) else char)
    text = "".join(cleaned)

    if config.isolate_cjk:
        text = "".join(f" {c} " if _is_cjk(c) else c for c in text)

    fragments: list[str] = []
    for chunk in text.split():
        if config.lowercase:
            chunk = chunk.lower()
        if config.strip_accents:
            chunk = "".join(
                c
                for c in unicodedata.normalize("NFD", chunk)
                if unicodedata.category(c) != "Mn"
            )
        if config.isolate_punctuation:
            run: list[str] = []
            for char in chunk:
                if _is_punctuation(char):
                    if run:
                        fragments.append("".join(run))
                        run = []
                    fragments.append(char)
                else:
                    run.append(char)
            if run:
                fragments.append("".join(run))
        elif chunk:
            fragments.append(chunk)

    if not fragments:
        return [word]
    return fragments


def wordpiece_segment(
    fragment: str, vocab: Vocabulary, config: TokenizerConfig
) -> tuple[int, ...] | None:
    """Greedy longest-match-first segmentation of one fragment.

    At each position the longest vocabulary entry matching the remaining
    text wins; entries at non-initial positions must carry the continuation
    prefix. Returns None when no entry matches at some position or the
    fragment exceeds ``max_chars_per_word`` (the fragment maps to UNK).
    """
    if not fragment:
        raise ValueError("fragment must be non-empty")
    if len(fragment) > config.max_chars_per_word:
        return None
    prefix = vocab.continuation_prefix
    pieces: list[int] = []
    start = 0
    n = len(fragment)
    while start < n:
        end = n
        match = None
        while start < end:
            candidate = fragment[start:end]
            if start > 0:
                candidate = prefix + candidate
            if candidate in vocab:
                match = candidate
                break
            end -= 1
        if match is None:
            return None
        pieces.append(vocab.id_of(match))
        start = end
    return tuple(pieces)


def tokenize_word(word: str, vocab: Vocabulary, config: TokenizerConfig) -> TokenizedWord:
    """Tokenize one reference word: normalization, then per-fragment matching.

    A word is unknown only when it normalizes to a single fragment that
    cannot be segmented. Multi-fragment words keep their mixed piece lists,
    with each unsegmentable fragment contributing one UNK piece.
    """
    fragments = normalize_word(word, config)
    pieces: list[int] = []
    unknown_fragments = 0
    for fragment in fragments:
        segmented = wordpiece_segment(fragment, vocab, config)
        if segmented is None:
            pieces.append(vocab.unk_id)
            unknown_fragments += 1
        else:
            pieces.extend(segmented)
    is_unknown = len(fragments) == 1 and unknown_fragments == 1
    return TokenizedWord(word, tuple(pieces), is_unknown)

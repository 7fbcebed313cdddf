"""Shared constructors and randomized-input generators for the test suite."""

from __future__ import annotations

import random

from tokeval import Corpus, Sentence, TokenizerConfig, Vocabulary, Word

SPECIALS = ["[PAD]", "[UNK]", "[CLS]", "[SEP]", "[MASK]"]


def make_corpus(*sentences: list[str], language_tag: str = "xx") -> Corpus:
    """Corpus from plain lists of word strings."""
    built = []
    for words in sentences:
        built.append(Sentence(tuple(Word(w, i + 1) for i, w in enumerate(words))))
    return Corpus(tuple(built), language_tag)


def make_vocab(*tokens: str, name: str = "test", prefix: str = "##") -> Vocabulary:
    """Vocabulary with the five standard specials prepended."""
    return Vocabulary([*SPECIALS, *tokens], name, continuation_prefix=prefix)


def surfaces(vocab: Vocabulary, pieces) -> list[str]:
    return [vocab.tokens[p] for p in pieces]


ALPHABET = "abcde"


def random_vocab(rng: random.Random, alphabet: str = ALPHABET) -> Vocabulary:
    tokens = list(SPECIALS)
    seen = set(tokens)
    # singles give partial coverage; multi-char entries create real splits
    for ch in alphabet:
        if rng.random() < 0.7:
            for tok in (ch, "##" + ch):
                if rng.random() < 0.9 and tok not in seen:
                    tokens.append(tok)
                    seen.add(tok)
    for _ in range(rng.randint(3, 12)):
        body = "".join(rng.choice(alphabet) for _ in range(rng.randint(2, 4)))
        tok = ("##" if rng.random() < 0.5 else "") + body
        if tok not in seen:
            tokens.append(tok)
            seen.add(tok)
    return Vocabulary(tokens, "random", continuation_prefix="##")


def random_word(rng: random.Random, alphabet: str = ALPHABET) -> str:
    if rng.random() < 0.1:
        return rng.choice([".", ",", "!", "?"])
    return "".join(rng.choice(alphabet) for _ in range(rng.randint(1, 7)))


def random_corpus(rng: random.Random, alphabet: str = ALPHABET) -> Corpus:
    sentences = []
    for _ in range(rng.randint(1, 8)):
        sentences.append([random_word(rng, alphabet) for _ in range(rng.randint(1, 8))])
    return make_corpus(*sentences)


def random_config(rng: random.Random) -> TokenizerConfig:
    return TokenizerConfig(
        lowercase=rng.random() < 0.3,
        strip_accents=rng.random() < 0.3,
        max_chars_per_word=rng.choice([4, 100]),
        isolate_punctuation=rng.random() < 0.8,
        isolate_cjk=rng.random() < 0.8,
    )

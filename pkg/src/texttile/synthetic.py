"""Synthetic documents with known subtopic seams, for tests and experiments."""
from __future__ import annotations

import random

from .ingest import load_stopwords, normalize_word

_ONSETS = ["b", "d", "f", "g", "k", "l", "m", "n", "p", "r", "s", "t", "v", "z", "br", "gl", "tr", "pl", "st", "kr"]
_VOWELS = ["a", "e", "i", "o", "u"]
_CODAS = ["", "n", "r", "l", "m", "x", "k"]
FILLER = ["the", "of", "and", "a", "to", "in", "is", "that", "it", "was", "for", "on", "with", "as", "by"]


def pseudo_vocabularies(rng: random.Random, n_topics: int, size: int) -> list[list[str]]:
    """Disjoint vocabularies of invented words whose normalized forms are all distinct."""
    stop = load_stopwords()
    seen: set[str] = set()
    vocabs = []
    for _ in range(n_topics):
        vocab = []
        while len(vocab) < size:
            word = "".join(rng.choice(_ONSETS) + rng.choice(_VOWELS) for _ in range(rng.randint(2, 3)))
            word += rng.choice(_CODAS)
            norm = normalize_word(word)
            if norm in seen or word in stop or norm in stop:
                continue
            seen.add(norm)
            vocab.append(word)
        vocabs.append(vocab)
    return vocabs


def _paragraph(rng: random.Random, vocab: list[str], n_words: int, filler_rate: float) -> str:
    words = [rng.choice(FILLER) if rng.random() < filler_rate else rng.choice(vocab) for _ in range(n_words)]
    sentences, i = [], 0
    while i < len(words):
        n = rng.randint(8, 16)
        chunk = words[i:i + n]
        sentences.append(" ".join(chunk).capitalize() + ".")
        i += n
    return " ".join(sentences)


def topic_document(
    rng: random.Random,
    paragraphs_per_topic: tuple[int, ...] = (4, 4),
    vocab_size: int = 40,
    total_words: int = 500,
    filler_rate: float = 0.3,
) -> tuple[str, list[int]]:
    """Build a document whose topics use disjoint vocabularies.

    Returns the text and the 0-based paragraph-gap indices of the topic seams.
    """
    vocabs = pseudo_vocabularies(rng, len(paragraphs_per_topic), vocab_size)
    n_paras = sum(paragraphs_per_topic)
    mean_len = total_words / n_paras
    paras, seams = [], []
    for vocab, count in zip(vocabs, paragraphs_per_topic):
        for _ in range(count):
            n = max(5, round(rng.uniform(0.75, 1.25) * mean_len))
            paras.append(_paragraph(rng, vocab, n, filler_rate))
        seams.append(len(paras) - 1)
    return "\n\n".join(paras) + "\n", seams[:-1]


def two_topic_corpus(n_docs: int = 50, seed: int = 0, **kwargs) -> list[tuple[str, int]]:
    """``n_docs`` two-topic documents (4 + 4 paragraphs by default) with their seam gap."""
    rng = random.Random(seed)
    out = []
    for _ in range(n_docs):
        text, seams = topic_document(rng, **kwargs)
        out.append((text, seams[0]))
    return out

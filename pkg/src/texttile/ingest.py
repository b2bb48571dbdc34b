"""Text ingestion: paragraphs, normalized tokens, token-sequences and the term table.

A document is cut into fixed-size pseudo-sentences ("token-sequences") of ``w``
word tokens each. Gap ``g`` sits between sequence ``g`` and ``g + 1``. Paragraph
breaks are recorded by snapping each break's token offset to the nearest gap.
"""
from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

from nltk.stem.porter import PorterStemmer

from .errors import EmptyDocument, NoTokens

DEFAULT_W = 20

_PARAGRAPH_BREAK = re.compile(r"\n[ \t\r\f\v]*\n\s*")
# letters only; digits, underscores and punctuation separate tokens
_WORD = re.compile(r"[^\W\d_]+(?:['’][^\W\d_]+)*")

_stemmer = PorterStemmer(mode=PorterStemmer.ORIGINAL_ALGORITHM)


@dataclass(frozen=True)
class RawDocument:
    text: str
    source_name: str = "<text>"

    @classmethod
    def from_path(cls, path: str | Path) -> "RawDocument":
        path = Path(path)
        return cls(path.read_text(encoding="utf-8"), str(path))


@dataclass(frozen=True)
class TokenSequence:
    index: int
    tokens: tuple[str, ...]
    term_counts: Mapping[str, int]

    def __len__(self) -> int:
        return len(self.tokens)


@dataclass(frozen=True)
class TokenizedDocument:
    """Token-sequences plus the paragraph structure projected onto sequence gaps.

    Attributes
    ----------
    sequences : tuple of TokenSequence
    paragraph_gaps : tuple of int
        Sorted sequence-gap indices that coincide with a paragraph break.
    w : int
        Tokens per sequence.
    num_paragraphs : int
    gap_paragraph : dict
        Maps each entry of ``paragraph_gaps`` to the paragraph-gap index ``p``
        (0-based; boundary after paragraph ``p``) that was snapped onto it.
    break_offsets : tuple of int
        Token offset of every paragraph break, indexed by paragraph-gap index.
    """

    sequences: tuple[TokenSequence, ...]
    paragraph_gaps: tuple[int, ...]
    w: int
    num_paragraphs: int
    gap_paragraph: Mapping[int, int] = field(default_factory=dict)
    break_offsets: tuple[int, ...] = ()

    @property
    def num_sequences(self) -> int:
        return len(self.sequences)

    @property
    def num_gaps(self) -> int:
        return len(self.sequences) - 1


@dataclass(frozen=True)
class TermTable:
    """Sparse postings ``term -> ((sequence index, frequency), ...)``."""

    postings: Mapping[str, tuple[tuple[int, int], ...]]
    num_sequences: int

    def __contains__(self, term: str) -> bool:
        return term in self.postings

    def total(self, term: str) -> int:
        return sum(f for _, f in self.postings.get(term, ()))


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file (one term per line, ``#`` comments). ``None`` loads the bundled list."""
    if path is None:
        text = resources.files("texttile").joinpath("data/stopwords.txt").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip().lower()
        if line:
            words.add(line)
    return frozenset(words)


def split_paragraphs(doc: RawDocument | str) -> list[str]:
    text = doc.text if isinstance(doc, RawDocument) else doc
    if not text.strip():
        raise EmptyDocument()
    parts = _PARAGRAPH_BREAK.split(text.replace("\r\n", "\n"))
    return [p.strip() for p in parts if p.strip()]


@lru_cache(maxsize=65536)
def stem(word: str) -> str:
    """Porter-stem ``word`` repeatedly until it stops changing."""
    prev, cur = None, word
    while cur != prev:
        prev, cur = cur, _stemmer.stem(cur, to_lowercase=False)
    return cur


@lru_cache(maxsize=65536)
def normalize_word(surface: str) -> str:
    """Lowercase, drop a possessive, and stem; repeated until nothing changes."""
    prev, word = None, surface.lower().replace("’", "'")
    while word != prev:
        prev = word
        if word.endswith("'s"):
            word = word[:-2]
        word = word.rstrip("'")
        word = stem(word) if word else word
    return word


@lru_cache(maxsize=16)
def _stopword_forms(stopwords: frozenset[str]) -> frozenset[str]:
    # A token is a stopword if its surface or normalized form hits the list or
    # its normalized image, so no stopword can leak into the term table.
    return stopwords | frozenset(normalize_word(w) for w in stopwords)


def normalize_tokens(paragraph: str, stopwords: Iterable[str]) -> list[tuple[str, bool]]:
    if not isinstance(stopwords, frozenset):
        stopwords = frozenset(stopwords)
    forms = _stopword_forms(stopwords)
    out = []
    for m in _WORD.finditer(paragraph):
        surface = m.group().lower().replace("’", "'")
        term = normalize_word(surface)
        if not term:
            continue
        out.append((term, not (surface in forms or term in forms)))
    return out


def _nearest_gap(offset: int, w: int, num_gaps: int) -> int:
    """Gap index whose token offset ``(g + 1) * w`` is closest to ``offset``; ties go left."""
    q, r = divmod(offset, w)
    g = q - 1 if r <= w - r else q
    return min(max(g, 0), num_gaps - 1)


def build_token_sequences(
    paragraphs: Sequence[Sequence[tuple[str, bool]]],
    w: int = DEFAULT_W,
    count_stopwords: bool = True,
) -> TokenizedDocument:
    """Chunk the concatenated paragraph tokens into sequences of ``w`` tokens.

    With ``count_stopwords=False`` stopword tokens are dropped before chunking,
    so ``w`` counts content tokens only.
    """
    if w < 1:
        raise ValueError(f"w must be >= 1, got {w}")
    tokens: list[tuple[str, bool]] = []
    break_offsets = []
    for i, para in enumerate(paragraphs):
        tokens.extend(t for t in para if count_stopwords or t[1])
        if i < len(paragraphs) - 1:
            break_offsets.append(len(tokens))
    if not tokens:
        raise NoTokens()

    sequences = []
    for idx, start in enumerate(range(0, len(tokens), w)):
        chunk = tokens[start:start + w]
        counts = Counter(term for term, content in chunk if content)
        sequences.append(TokenSequence(idx, tuple(t for t, _ in chunk), dict(counts)))

    num_gaps = len(sequences) - 1
    gap_paragraph: dict[int, int] = {}
    if num_gaps > 0:
        best: dict[int, int] = {}
        for p, offset in enumerate(break_offsets):
            g = _nearest_gap(offset, w, num_gaps)
            dist = abs(offset - (g + 1) * w)
            if g not in best or dist < best[g]:
                best[g] = dist
                gap_paragraph[g] = p
    return TokenizedDocument(
        sequences=tuple(sequences),
        paragraph_gaps=tuple(sorted(gap_paragraph)),
        w=w,
        num_paragraphs=len(paragraphs),
        gap_paragraph=gap_paragraph,
        break_offsets=tuple(break_offsets),
    )


def build_term_table(doc: TokenizedDocument) -> TermTable:
    postings: dict[str, list[tuple[int, int]]] = {}
    for seq in doc.sequences:
        for term, freq in seq.term_counts.items():
            postings.setdefault(term, []).append((seq.index, freq))
    return TermTable({t: tuple(p) for t, p in postings.items()}, len(doc.sequences))


def tokenize(
    text: str | RawDocument,
    w: int = DEFAULT_W,
    stopwords: Iterable[str] | None = None,
    count_stopwords: bool = True,
) -> TokenizedDocument:
    """Run split_paragraphs, normalize_tokens and build_token_sequences in one go."""
    stopwords = load_stopwords() if stopwords is None else frozenset(stopwords)
    paragraphs = split_paragraphs(text)
    return build_token_sequences(
        [normalize_tokens(p, stopwords) for p in paragraphs], w, count_stopwords
    )

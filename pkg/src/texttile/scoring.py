"""Gap scoring: block cosine comparison, lexical chains, and average smoothing."""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Sequence

from .errors import RangeError, TooShort
from .ingest import TermTable

DEFAULT_K = 6
DEFAULT_WINDOW = 3
DEFAULT_ROUNDS = 1
DEFAULT_HIATUS = 5
DEFAULT_MIN_CHAIN = 2


class SeriesKind(str, Enum):
    RAW_BLOCK = "raw_block"
    RAW_CHAIN = "raw_chain"
    SMOOTHED = "smoothed"
    DEPTH = "depth"


class BlockExtent(str, Enum):
    K = "k"
    K_PLUS_1 = "k_plus_1"


class ChainScoring(str, Enum):
    SPANNING = "spanning"
    EVENTS = "events"


@dataclass(frozen=True)
class GapSeries:
    values: tuple[float, ...]
    kind: SeriesKind

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self):
        return iter(self.values)

    def __getitem__(self, i):
        return self.values[i]


@dataclass(frozen=True)
class BlockConfig:
    k: int = DEFAULT_K
    extent: BlockExtent = BlockExtent.K

    def __post_init__(self):
        if self.k < 1:
            raise ValueError(f"blocksize k must be >= 1, got {self.k}")
        object.__setattr__(self, "extent", BlockExtent(self.extent))


@dataclass(frozen=True)
class ChainConfig:
    hiatus: int = DEFAULT_HIATUS
    min_length: int = DEFAULT_MIN_CHAIN
    scoring: ChainScoring = ChainScoring.SPANNING

    def __post_init__(self):
        if self.hiatus < 1:
            raise ValueError(f"hiatus must be >= 1, got {self.hiatus}")
        if self.min_length < 2:
            raise ValueError(f"min_length must be >= 2, got {self.min_length}")
        object.__setattr__(self, "scoring", ChainScoring(self.scoring))


def block_vector(table: TermTable, lo: int, hi: int) -> dict[str, int]:
    """Term frequencies summed over sequences ``lo..hi`` inclusive."""
    if not 0 <= lo <= hi < table.num_sequences:
        raise RangeError(f"block [{lo}, {hi}] outside 0..{table.num_sequences - 1}")
    vec: dict[str, int] = {}
    for term, posts in table.postings.items():
        total = 0
        for idx, freq in posts:
            if idx > hi:
                break
            if idx >= lo:
                total += freq
        if total:
            vec[term] = total
    return vec


def cosine(v1: Mapping[str, float], v2: Mapping[str, float]) -> float:
    """Cosine of two sparse weight vectors; 0.0 if either is empty."""
    if not v1 or not v2:
        return 0.0
    if len(v2) < len(v1):
        v1, v2 = v2, v1
    dot = math.fsum(w * v2[t] for t, w in v1.items() if t in v2)
    if dot == 0.0:
        return 0.0
    n1 = math.fsum(w * w for w in v1.values())
    n2 = math.fsum(w * w for w in v2.values())
    return min(1.0, dot / math.sqrt(n1 * n2))


def block_spans(num_sequences: int, k: int, extent: BlockExtent | str = BlockExtent.K):
    """Inclusive ``(left_lo, left_hi, right_lo, right_hi)`` per gap, truncated at the edges."""
    span = k if BlockExtent(extent) is BlockExtent.K else k + 1
    last = num_sequences - 1
    return [
        (max(0, i - span + 1), i, i + 1, min(last, i + span))
        for i in range(num_sequences - 1)
    ]


def block_similarity_series(table: TermTable, cfg: BlockConfig = BlockConfig()) -> GapSeries:
    if table.num_sequences < 2:
        raise TooShort()
    # prefix sums keep each block vector O(vocabulary) regardless of k
    dense = {}
    for term, posts in table.postings.items():
        row = [0] * (table.num_sequences + 1)
        for idx, freq in posts:
            row[idx + 1] = freq
        for j in range(1, len(row)):
            row[j] += row[j - 1]
        dense[term] = row

    def vec(lo, hi):
        out = {}
        for term, row in dense.items():
            c = row[hi + 1] - row[lo]
            if c:
                out[term] = c
        return out

    values = tuple(
        cosine(vec(llo, lhi), vec(rlo, rhi))
        for llo, lhi, rlo, rhi in block_spans(table.num_sequences, cfg.k, cfg.extent)
    )
    return GapSeries(values, SeriesKind.RAW_BLOCK)


def extract_chains(table: TermTable, cfg: ChainConfig = ChainConfig()) -> list[tuple[str, int, int]]:
    """Split each term's occurrences into runs with no hiatus wider than ``cfg.hiatus``.

    Returns ``(term, start, end)`` triples, sorted by term then start. Runs with
    fewer than ``cfg.min_length`` occurring sequences are dropped.
    """
    chains = []
    for term in sorted(table.postings):
        idxs = [idx for idx, _ in table.postings[term]]
        run_start = 0
        for j in range(1, len(idxs) + 1):
            if j == len(idxs) or idxs[j] - idxs[j - 1] > cfg.hiatus:
                if j - run_start >= cfg.min_length:
                    chains.append((term, idxs[run_start], idxs[j - 1]))
                run_start = j
    return chains


def chain_score_series(
    chains: Sequence[tuple],
    num_sequences: int,
    scoring: ChainScoring | str = ChainScoring.SPANNING,
) -> GapSeries:
    """Per-gap chain cohesion; low values mark likely boundaries.

    ``spanning`` counts chains crossing gap ``i`` (start <= i < end). ``events``
    scores ``len(chains)`` minus the chains that end at ``i`` or start at ``i + 1``.
    """
    if num_sequences < 2:
        raise TooShort()
    n = num_sequences - 1
    spans = [(c[-2], c[-1]) for c in chains]
    if ChainScoring(scoring) is ChainScoring.SPANNING:
        diff = [0] * (n + 1)
        for start, end in spans:
            lo, hi = start, min(end - 1, n - 1)
            if lo <= hi:
                diff[lo] += 1
                diff[hi + 1] -= 1
        values, run = [], 0
        for i in range(n):
            run += diff[i]
            values.append(float(run))
    else:
        events = [0] * n
        for start, end in spans:
            if end < n:
                events[end] += 1
            if 0 < start <= n:
                events[start - 1] += 1
        values = [float(len(spans) - e) for e in events]
    return GapSeries(tuple(values), SeriesKind.RAW_CHAIN)


def smooth(
    series: GapSeries | Sequence[float],
    window: int = DEFAULT_WINDOW,
    rounds: int = DEFAULT_ROUNDS,
) -> GapSeries:
    """Moving average with a window that shrinks at the series edges."""
    if window < 1 or window % 2 == 0:
        raise ValueError(f"window must be odd and >= 1, got {window}")
    if rounds < 0:
        raise ValueError(f"rounds must be >= 0, got {rounds}")
    vals = list(series.values if isinstance(series, GapSeries) else series)
    half = (window - 1) // 2
    n = len(vals)
    for _ in range(rounds):
        out = []
        for i in range(n):
            win = vals[max(0, i - half):i + half + 1]
            # clamp rounding so a mean never leaves its window's range
            out.append(min(max(math.fsum(win) / len(win), min(win)), max(win)))
        vals = out
    return GapSeries(tuple(vals), SeriesKind.SMOOTHED)

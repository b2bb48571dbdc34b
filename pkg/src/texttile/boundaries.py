"""Boundary identification from a smoothed gap series.

Depth scores measure how far a gap sits below the peaks on either side of it.
Gaps whose depth clears ``mean - stddev / 2`` become boundaries, deepest first,
subject to a minimum separation, and are then moved to paragraph breaks.
"""
from __future__ import annotations

import statistics
from dataclasses import dataclass, replace
from typing import Sequence

from .config import Method, RunConfig
from .errors import NoParagraphGaps
from .ingest import TokenizedDocument, build_term_table
from .scoring import (
    BlockConfig,
    ChainConfig,
    GapSeries,
    block_similarity_series,
    chain_score_series,
    extract_chains,
    smooth,
)


@dataclass(frozen=True)
class DepthSeries:
    depths: tuple[float, ...]
    mean: float
    stddev: float

    @property
    def cutoff(self) -> float:
        return self.mean - self.stddev / 2

    def __len__(self) -> int:
        return len(self.depths)


@dataclass(frozen=True)
class Boundary:
    paragraph: int  # boundary after paragraph `paragraph` (0-based)
    gap: int  # source token-sequence gap
    depth: float


@dataclass(frozen=True)
class Segmentation:
    boundaries: tuple[int, ...]
    details: tuple[Boundary, ...]
    params: dict
    raw: GapSeries
    smoothed: GapSeries
    depth: DepthSeries
    selected_gaps: tuple[int, ...]


def depth_scores(series: GapSeries | Sequence[float], strict: bool = False) -> DepthSeries:
    """Depth of every gap below its nearest left and right peaks.

    The scan from gap ``i`` continues while the values keep rising (or stay
    level, unless ``strict``); a strict local maximum therefore scores 0.
    """
    v = list(series)
    n = len(v)
    if strict:
        climbs = lambda nxt, cur: nxt > cur  # noqa: E731
    else:
        climbs = lambda nxt, cur: nxt >= cur  # noqa: E731
    depths = []
    for i in range(n):
        j = i
        while j > 0 and climbs(v[j - 1], v[j]):
            j -= 1
        left = v[j]
        j = i
        while j < n - 1 and climbs(v[j + 1], v[j]):
            j += 1
        right = v[j]
        depths.append((left - v[i]) + (right - v[i]))
    if not depths:
        return DepthSeries((), 0.0, 0.0)
    return DepthSeries(tuple(depths), statistics.fmean(depths), statistics.pstdev(depths))


def _ranked_acceptance(depths: DepthSeries, min_separation: int) -> list[int]:
    cutoff = depths.cutoff
    order = sorted(range(len(depths.depths)), key=lambda g: (-depths.depths[g], g))
    accepted: list[int] = []
    for g in order:
        d = depths.depths[g]
        # a zero-depth gap sits on a peak, never in a valley
        if d <= cutoff or d <= 0.0:
            break
        if all(abs(g - a) > min_separation for a in accepted):
            accepted.append(g)
    return accepted


def select_boundaries(depths: DepthSeries, min_separation: int = 3) -> list[int]:
    """Greedy deepest-first selection above the cutoff; returns ascending gap indices."""
    if min_separation < 0:
        raise ValueError("min_separation must be >= 0")
    return sorted(_ranked_acceptance(depths, min_separation))


def nearest_paragraph_gap(gap: int, paragraph_gaps: Sequence[int]) -> int:
    if not paragraph_gaps:
        raise NoParagraphGaps()
    return min(paragraph_gaps, key=lambda p: (abs(p - gap), p))


def snap_to_paragraphs(gaps: Sequence[int], doc: TokenizedDocument) -> list[int]:
    """Move sequence gaps to the nearest paragraph break; returns sorted paragraph-gap indices."""
    if doc.num_paragraphs < 2 or not doc.paragraph_gaps:
        raise NoParagraphGaps()
    return sorted({doc.gap_paragraph[nearest_paragraph_gap(g, doc.paragraph_gaps)] for g in gaps})


def score_series(doc: TokenizedDocument, cfg: RunConfig = RunConfig()) -> GapSeries:
    table = build_term_table(doc)
    if cfg.method is Method.BLOCKS:
        return block_similarity_series(table, BlockConfig(cfg.k, cfg.block_extent))
    chain_cfg = ChainConfig(cfg.chain_hiatus, cfg.chain_min_length, cfg.chain_scoring)
    return chain_score_series(extract_chains(table, chain_cfg), table.num_sequences, chain_cfg.scoring)


def segment(
    doc: TokenizedDocument,
    method: Method | str | None = None,
    cfg: RunConfig | None = None,
) -> Segmentation:
    cfg = cfg or RunConfig()
    if method is not None:
        cfg = replace(cfg, method=Method(method))
    if doc.num_paragraphs < 2 or not doc.paragraph_gaps:
        raise NoParagraphGaps()
    raw = score_series(doc, cfg)
    smoothed = smooth(raw, cfg.smoothing_window, cfg.smoothing_rounds)
    depth = depth_scores(smoothed, strict=cfg.strict_peaks)
    accepted = _ranked_acceptance(depth, cfg.min_separation)

    details = {}
    for g in accepted:
        p = doc.gap_paragraph[nearest_paragraph_gap(g, doc.paragraph_gaps)]
        if p not in details:
            details[p] = Boundary(p, g, depth.depths[g])
    params = replace(cfg, w=doc.w).echo()
    return Segmentation(
        boundaries=tuple(sorted(details)),
        details=tuple(details[p] for p in sorted(details)),
        params=params,
        raw=raw,
        smoothed=smoothed,
        depth=depth,
        selected_gaps=tuple(sorted(accepted)),
    )

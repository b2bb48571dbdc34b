"""Run configuration shared by the pipeline and the CLI."""
from __future__ import annotations

from dataclasses import asdict, dataclass
from enum import Enum

from .ingest import DEFAULT_W
from .scoring import (
    DEFAULT_HIATUS,
    DEFAULT_K,
    DEFAULT_MIN_CHAIN,
    DEFAULT_ROUNDS,
    DEFAULT_WINDOW,
    BlockExtent,
    ChainScoring,
)

DEFAULT_MIN_SEPARATION = 3


class Method(str, Enum):
    BLOCKS = "blocks"
    CHAINS = "chains"


@dataclass(frozen=True)
class RunConfig:
    w: int = DEFAULT_W
    k: int = DEFAULT_K
    method: Method = Method.BLOCKS
    smoothing_window: int = DEFAULT_WINDOW
    smoothing_rounds: int = DEFAULT_ROUNDS
    min_separation: int = DEFAULT_MIN_SEPARATION
    stopword_path: str | None = None
    seed: int = 0
    block_extent: BlockExtent = BlockExtent.K
    chain_hiatus: int = DEFAULT_HIATUS
    chain_min_length: int = DEFAULT_MIN_CHAIN
    chain_scoring: ChainScoring = ChainScoring.SPANNING
    strict_peaks: bool = False
    count_stopwords: bool = True

    def __post_init__(self):
        for name, enum in (("method", Method), ("block_extent", BlockExtent), ("chain_scoring", ChainScoring)):
            object.__setattr__(self, name, enum(getattr(self, name)))
        if self.w < 1 or self.k < 1:
            raise ValueError("w and k must be >= 1")
        if self.min_separation < 0:
            raise ValueError("min_separation must be >= 0")

    def echo(self) -> dict:
        """Plain-valued parameter dict, in field order."""
        return {key: (v.value if isinstance(v, Enum) else v) for key, v in asdict(self).items()}

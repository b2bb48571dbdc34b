"""TextTiling: split expository text into multi-paragraph subtopic segments."""

__version__ = "0.1.0"

from .boundaries import DepthSeries, Segmentation, depth_scores, segment, select_boundaries, snap_to_paragraphs
from .config import Method, RunConfig
from .errors import (
    EmptyDocument,
    JudgeFileError,
    MissingSentenceCounts,
    NoParagraphGaps,
    NoTokens,
    RangeError,
    TextTileError,
    TooShort,
)
from .evaluation import (
    EvalReport,
    GoldBoundaries,
    JudgeSet,
    merge_short_paragraphs,
    precision_recall,
    random_baseline,
    true_boundaries,
)
from .ingest import RawDocument, TermTable, TokenizedDocument, build_term_table, tokenize
from .scoring import BlockConfig, ChainConfig, GapSeries, block_similarity_series, cosine, smooth

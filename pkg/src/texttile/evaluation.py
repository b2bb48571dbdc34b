"""Evaluation against reader judgments.

Gold boundaries are the paragraph gaps marked by at least ``threshold`` judges.
Hypotheses are scored by precision and recall, optionally allowing a match one
paragraph away, and compared with a random-placement baseline.
"""
from __future__ import annotations

import re
import statistics
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import JudgeFileError, MissingSentenceCounts

DEFAULT_THRESHOLD = 3
DEFAULT_RATE = 0.41
DEFAULT_TRIALS = 10_000
SHORT_PARAGRAPH = 3
# trials per independently seeded random stream
_CHUNK = 1000

_SENTENCE_END = re.compile(r"[.!?]+(?=[\s\"')\]]|$)")


@dataclass(frozen=True)
class JudgeSet:
    num_paragraph_gaps: int
    marks: Mapping[str, frozenset[int]]
    sentence_counts: tuple[int, ...] | None = None

    def __post_init__(self):
        for judge, gaps in self.marks.items():
            bad = [g for g in gaps if not 0 <= g < self.num_paragraph_gaps]
            if bad:
                raise ValueError(f"judge {judge!r} marks gaps outside 0..{self.num_paragraph_gaps - 1}: {bad}")
        if self.sentence_counts is not None and len(self.sentence_counts) != self.num_paragraph_gaps + 1:
            raise ValueError(
                f"{len(self.sentence_counts)} sentence counts for {self.num_paragraph_gaps + 1} paragraphs"
            )

    def votes(self) -> list[int]:
        counts = [0] * self.num_paragraph_gaps
        for gaps in self.marks.values():
            for g in gaps:
                counts[g] += 1
        return counts


@dataclass(frozen=True)
class GoldBoundaries:
    gaps: frozenset[int]
    threshold: int

    def __len__(self) -> int:
        return len(self.gaps)

    def __iter__(self):
        return iter(sorted(self.gaps))


@dataclass(frozen=True)
class EvalReport:
    precision: float
    recall: float
    correct: float
    inserted: float
    deleted: float
    slack: int = 0
    matches: tuple[tuple[int, int], ...] = field(default=(), compare=False)

    def format(self, digits: int = 3) -> str:
        def n(x):
            return str(int(x)) if float(x).is_integer() else f"{x:.2f}"

        return (
            f"precision {self.precision:.{digits}f} recall {self.recall:.{digits}f} "
            f"C {n(self.correct)} I {n(self.inserted)} D {n(self.deleted)}"
        )


def count_sentences(paragraph: str) -> int:
    """Sentence count by terminal punctuation; a paragraph without any counts as one."""
    return max(1, len(_SENTENCE_END.findall(paragraph.strip())))


def merge_gap_map(judges: JudgeSet) -> tuple[JudgeSet, dict[int, int | None]]:
    """Merge short paragraphs into a neighbour, returning the new set and an old->new gap map.

    A paragraph with at most three sentences joins the neighbour across whichever
    of its two gaps has more votes (ties go to the following neighbour). The
    removed gap's marks move to the short paragraph's other gap. Paragraphs are
    visited once, left to right. Removed gaps with no surviving partner map to None.
    """
    if judges.sentence_counts is None:
        raise MissingSentenceCounts()
    counts = list(judges.sentence_counts)
    # owner[g] = current gap position that original gap g now feeds into
    owner: list[int | None] = list(range(judges.num_paragraph_gaps))
    marks = {j: set(g) for j, g in judges.marks.items()}

    def votes(gap):
        return sum(gap in m for m in marks.values())

    def remove_gap(gap, target):
        for m in marks.values():
            if gap in m:
                m.discard(gap)
                if target is not None:
                    m.add(target)
            shifted = {g - 1 if g > gap else g for g in m}
            m.clear()
            m.update(shifted)
        for i, o in enumerate(owner):
            if o == gap:
                owner[i] = target
            if owner[i] is not None and owner[i] > gap:
                owner[i] -= 1

    pos = 0
    while pos < len(counts):
        if counts[pos] > SHORT_PARAGRAPH or len(counts) == 1:
            pos += 1
            continue
        left = pos - 1 if pos > 0 else None
        right = pos if pos < len(counts) - 1 else None
        forward = right is not None and (left is None or votes(right) >= votes(left))
        if forward:
            remove_gap(right, left)
            counts[pos:pos + 2] = [counts[pos] + counts[pos + 1]]
            pos += 1
        else:
            remove_gap(left, right)
            counts[pos - 1:pos + 1] = [counts[pos - 1] + counts[pos]]
    merged = JudgeSet(len(counts) - 1, {j: frozenset(m) for j, m in marks.items()}, tuple(counts))
    return merged, dict(enumerate(owner))


def merge_short_paragraphs(judges: JudgeSet) -> JudgeSet:
    return merge_gap_map(judges)[0]


def remap_gaps(gaps: Iterable[int], gap_map: Mapping[int, int | None]) -> set[int]:
    return {gap_map[g] for g in gaps if gap_map.get(g) is not None}


def true_boundaries(judges: JudgeSet, threshold: int = DEFAULT_THRESHOLD) -> GoldBoundaries:
    if threshold < 1:
        raise ValueError("threshold must be >= 1")
    return GoldBoundaries(frozenset(g for g, v in enumerate(judges.votes()) if v >= threshold), threshold)


def _gold_set(gold) -> frozenset[int]:
    return gold.gaps if isinstance(gold, GoldBoundaries) else frozenset(gold)


def precision_recall(hypothesis: Iterable[int], gold: GoldBoundaries | Iterable[int], slack: int = 0) -> EvalReport:
    """Score a hypothesis against gold gaps with one-to-one, nearest-first matching."""
    if slack not in (0, 1):
        raise ValueError("slack must be 0 or 1")
    hyp = sorted(set(hypothesis))
    ref = sorted(_gold_set(gold))
    pairs = sorted(
        ((abs(h - g), h, g) for h in hyp for g in ref if abs(h - g) <= slack)
    )
    used_h, used_g, matches = set(), set(), []
    for _, h, g in pairs:
        if h not in used_h and g not in used_g:
            used_h.add(h)
            used_g.add(g)
            matches.append((h, g))
    c = len(matches)
    return EvalReport(
        precision=c / len(hyp) if hyp else 0.0,
        recall=c / len(ref) if ref else 0.0,
        correct=c,
        inserted=len(hyp) - c,
        deleted=len(ref) - c,
        slack=slack,
        matches=tuple(sorted(matches)),
    )


def random_baseline(
    num_gaps: int,
    gold: GoldBoundaries | Iterable[int],
    rate: float = DEFAULT_RATE,
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
) -> EvalReport:
    """Average slack-0 scores of hypotheses that mark each gap independently with probability ``rate``.

    Trials are drawn in fixed-size chunks, each from its own child of
    ``SeedSequence(seed)``, so chunks can be computed in any order.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if not 0.0 <= rate <= 1.0:
        raise ValueError("rate must lie in [0, 1]")
    gold_mask = np.zeros(num_gaps, dtype=bool)
    gold_mask[sorted(_gold_set(gold))] = True
    n_gold = int(gold_mask.sum())
    n_chunks = -(-trials // _CHUNK)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    prec_sum = rec_sum = c_sum = h_sum = 0.0
    for i, child in enumerate(children):
        size = min(_CHUNK, trials - i * _CHUNK)
        hyp = np.random.default_rng(child).random((size, num_gaps)) < rate
        n_hyp = hyp.sum(axis=1)
        correct = (hyp & gold_mask).sum(axis=1)
        prec_sum += np.divide(correct, n_hyp, out=np.zeros(size), where=n_hyp > 0).sum()
        if n_gold:
            rec_sum += (correct / n_gold).sum()
        c_sum += correct.sum()
        h_sum += n_hyp.sum()
    c = c_sum / trials
    return EvalReport(
        precision=float(prec_sum / trials),
        recall=float(rec_sum / trials),
        correct=float(c),
        inserted=float(h_sum / trials - c),
        deleted=float(n_gold - c),
        slack=0,
    )


def aggregate(reports: Sequence[EvalReport]) -> dict[str, float]:
    """Mean and population standard deviation of per-text precision and recall."""
    p = [r.precision for r in reports]
    r = [r.recall for r in reports]
    return {
        "precision_mean": statistics.fmean(p),
        "precision_sd": statistics.pstdev(p),
        "recall_mean": statistics.fmean(r),
        "recall_sd": statistics.pstdev(r),
    }


def _int_list(text: str, lineno: int, what: str) -> list[int]:
    items = [t for t in re.split(r"[,\s]+", text.strip()) if t]
    try:
        return [int(t) for t in items]
    except ValueError:
        raise JudgeFileError(lineno, f"expected comma-separated integers for {what}, got {text.strip()!r}")


def parse_judges(text: str) -> JudgeSet:
    """Parse the ``judge_id: g1,g2,...`` format with optional ``gaps:`` and ``sentences:`` lines."""
    num_gaps = None
    sentences = None
    marks: dict[str, frozenset[int]] = {}
    lines: dict[str, int] = {}
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or not key:
            raise JudgeFileError(lineno, f"expected 'id: g1,g2,...', got {line!r}")
        if key == "gaps":
            vals = _int_list(rest, lineno, "gaps")
            if len(vals) != 1 or vals[0] < 0:
                raise JudgeFileError(lineno, "gaps takes one non-negative integer")
            num_gaps = vals[0]
        elif key == "sentences":
            sentences = _int_list(rest, lineno, "sentences")
            if any(c < 0 for c in sentences):
                raise JudgeFileError(lineno, "sentence counts must be non-negative")
            lines["sentences"] = lineno
        else:
            if key in marks:
                raise JudgeFileError(lineno, f"duplicate judge id {key!r}")
            gaps = _int_list(rest, lineno, f"judge {key!r}")
            if any(g < 0 for g in gaps):
                raise JudgeFileError(lineno, "gap indices must be non-negative")
            marks[key] = frozenset(gaps)
            lines[key] = lineno
    if num_gaps is None:
        if sentences is not None:
            num_gaps = len(sentences) - 1
        else:
            num_gaps = max((max(m) + 1 for m in marks.values() if m), default=0)
    for judge, gaps in marks.items():
        if any(g >= num_gaps for g in gaps):
            raise JudgeFileError(lines[judge], f"judge {judge!r} marks a gap >= {num_gaps}")
    if sentences is not None and len(sentences) != num_gaps + 1:
        raise JudgeFileError(
            lines["sentences"], f"expected {num_gaps + 1} sentence counts, got {len(sentences)}"
        )
    return JudgeSet(num_gaps, marks, tuple(sentences) if sentences is not None else None)


def load_judges(path: str | Path) -> JudgeSet:
    return parse_judges(Path(path).read_text(encoding="utf-8"))


def parse_hypothesis(text: str) -> set[int]:
    """Gap indices separated by newlines, commas or spaces (the ``tile --quiet`` output)."""
    out = set()
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0]
        if line.strip():
            out.update(_int_list(line, lineno, "hypothesis"))
    return out

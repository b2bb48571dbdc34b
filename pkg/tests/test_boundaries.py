import random
import statistics

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import depth_oracle
from texttile.boundaries import (
    DepthSeries,
    depth_scores,
    nearest_paragraph_gap,
    segment,
    select_boundaries,
    snap_to_paragraphs,
)
from texttile.config import DEFAULT_MIN_SEPARATION, RunConfig
from texttile.errors import NoParagraphGaps
from texttile.evaluation import precision_recall
from texttile.ingest import build_token_sequences, tokenize
from texttile.synthetic import topic_document

ALPHA = "alpha beta gamma delta epsilon zeta theta iota kappa lambda".split()
EARTH = "river mountain forest valley ocean desert island glacier canyon meadow".split()


def cycled(words, n_paragraphs, length):
    return [" ".join(words[i % len(words)] for i in range(length)) for _ in range(n_paragraphs)]


def two_halves(n_paragraphs=3, length=200):
    return "\n\n".join(cycled(ALPHA, n_paragraphs, length) + cycled(EARTH, n_paragraphs, length))


def test_monotone_series_last_gap_zero():
    assert depth_scores([0.1, 0.2, 0.3, 0.4]).depths[-1] == 0.0


def test_depth_worked_example():
    d = depth_scores([0.2, 0.5, 0.3, 0.1, 0.4]).depths
    assert d[3] == pytest.approx((0.5 - 0.1) + (0.4 - 0.1), abs=1e-15)
    assert d[3] == pytest.approx(0.7, abs=1e-12)


def test_strict_local_max_scores_zero():
    assert depth_scores([0.1, 0.6, 0.2, 0.9, 0.3]).depths[1] == 0.0
    assert depth_scores([0.1, 0.6, 0.2, 0.9, 0.3]).depths[3] == 0.0


def test_plateau_continues_scan():
    values = [0.9, 0.5, 0.5, 0.2, 0.8]
    assert depth_scores(values).depths[3] == pytest.approx(0.7 + 0.6)
    # strict scanning stops at the plateau and sees a lower left peak
    assert depth_scores(values, strict=True).depths[3] == pytest.approx(0.3 + 0.6)


def test_depth_statistics_are_population():
    ds = depth_scores([0.2, 0.5, 0.3, 0.1, 0.4])
    assert ds.mean == pytest.approx(statistics.fmean(ds.depths))
    assert ds.stddev == pytest.approx(statistics.pstdev(ds.depths))


def test_default_min_separation():
    assert DEFAULT_MIN_SEPARATION == 3
    assert RunConfig().min_separation == 3


def test_equal_depths_select_nothing():
    ds = depth_scores([0.5] * 6)
    assert ds.depths == (0.0,) * 6
    assert select_boundaries(ds, 3) == []
    assert select_boundaries(DepthSeries((0.3,) * 6, 0.3, 0.0), 0) == []


def test_greedy_selection_example():
    depths = [1, 0, 0, 0, 0, 0.9]
    mean = sum(depths) / 6
    sd = (sum((d - mean) ** 2 for d in depths) / 6) ** 0.5
    # hand values: mean 0.3167, population sd 0.4488, cutoff 0.0923
    assert mean == pytest.approx(0.31667, abs=1e-5)
    assert sd == pytest.approx(0.44876, abs=1e-5)
    ds = DepthSeries(tuple(map(float, depths)), mean, sd)
    assert ds.cutoff == pytest.approx(0.09229, abs=1e-5)
    assert select_boundaries(ds, 3) == [0, 5]


def test_separation_blocks_close_candidates():
    ds = DepthSeries((0.0, 1.0, 0.0, 0.9, 0.0, 0.0, 0.0, 0.8), 0.3375, 0.0)
    assert select_boundaries(ds, 3) == [1, 7]
    assert select_boundaries(ds, 1) == [1, 3, 7]


def test_nearest_paragraph_gap():
    assert nearest_paragraph_gap(17, [10, 18, 25]) == 18
    assert nearest_paragraph_gap(14, [10, 18]) == 10


def test_snap_dedups():
    para = lambda n: [("x", True)] * n  # noqa: E731
    doc = build_token_sequences([para(200), para(200), para(200)], 20)
    assert doc.paragraph_gaps == (9, 19)
    assert snap_to_paragraphs([8, 10], doc) == [0]
    assert snap_to_paragraphs([8, 18, 14], doc) == [0, 1]


def test_snap_single_paragraph():
    doc = build_token_sequences([[("x", True)] * 100], 20)
    with pytest.raises(NoParagraphGaps):
        snap_to_paragraphs([2], doc)


def test_segment_two_halves_single_boundary():
    for method in ("blocks", "chains"):
        seg = segment(tokenize(two_halves()), method)
        assert seg.boundaries == (2,)


def test_segment_single_paragraph_errors():
    with pytest.raises(NoParagraphGaps):
        segment(tokenize(" ".join(ALPHA * 20)))


def test_segment_records_params():
    seg = segment(tokenize(two_halves()), cfg=RunConfig(k=4))
    assert seg.params["k"] == 4
    assert seg.params["method"] == "blocks"
    assert seg.params["w"] == 20
    assert list(seg.params)[:6] == ["w", "k", "method", "smoothing_window", "smoothing_rounds", "min_separation"]


def test_nine_subtopic_outline():
    # nine subtopics of uneven length over 21 paragraphs
    outline = (3, 2, 3, 4, 1, 3, 2, 2, 1)
    text, seams = topic_document(random.Random(21), outline, total_words=2100)
    assert seams == [2, 4, 7, 11, 12, 15, 17, 19]
    for method in ("blocks", "chains"):
        seg = segment(tokenize(text), method)
        report = precision_recall(seg.boundaries, seams, slack=1)
        assert report.recall > 0.5


series = st.lists(st.integers(0, 16).map(lambda x: x / 16), min_size=1, max_size=50)


@given(series)
def test_depth_matches_oracle(values):
    assert list(depth_scores(values).depths) == depth_oracle(values)


@given(series)
def test_depths_nonnegative(values):
    assert all(d >= 0 for d in depth_scores(values).depths)


@given(series, st.integers(-4, 4), st.integers(0, 5))
def test_shift_invariance(values, c, sep):
    shifted = [v + c for v in values]
    a = depth_scores(values)
    b = depth_scores(shifted)
    # dyadic values keep the shifted arithmetic exact
    assert b.depths == a.depths
    assert select_boundaries(a, sep) == select_boundaries(b, sep)


@given(series, st.integers(0, 6))
def test_selection_separation(values, sep):
    chosen = select_boundaries(depth_scores(values), sep)
    assert chosen == sorted(chosen)
    assert all(b - a > sep for a, b in zip(chosen, chosen[1:]))


def test_segment_deterministic():
    text, _ = topic_document(random.Random(5))
    a = segment(tokenize(text))
    b = segment(tokenize(text))
    assert repr(a) == repr(b)

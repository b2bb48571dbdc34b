import math
import random
from collections import Counter

import pytest
from hypothesis import given
from hypothesis import strategies as st

from oracles import block_series_oracle, chains_oracle, cosine_oracle, span_crossing_oracle
from texttile.errors import RangeError, TooShort
from texttile.ingest import TermTable, build_term_table, build_token_sequences
from texttile.scoring import (
    DEFAULT_K,
    BlockConfig,
    BlockExtent,
    ChainConfig,
    ChainScoring,
    GapSeries,
    SeriesKind,
    block_similarity_series,
    block_spans,
    block_vector,
    chain_score_series,
    cosine,
    extract_chains,
    smooth,
)


def table_from_counts(seqs):
    postings = {}
    for i, counts in enumerate(seqs):
        for t, f in sorted(counts.items()):
            postings.setdefault(t, []).append((i, f))
    return TermTable({t: tuple(p) for t, p in postings.items()}, len(seqs))


def test_block_vector_sum():
    table = table_from_counts([{"a": 2}, {"a": 1, "b": 1}])
    assert block_vector(table, 0, 1) == {"a": 3, "b": 1}


def test_block_vector_single():
    assert block_vector(table_from_counts([{"a": 2}]), 0, 0) == {"a": 2}


def test_block_vector_whole_document_recount():
    rng = random.Random(3)
    tokens = [rng.choice("abcdefg") for _ in range(60)]
    doc = build_token_sequences([[(t, True) for t in tokens]], 10)
    assert doc.num_sequences == 6
    assert block_vector(build_term_table(doc), 0, 5) == dict(Counter(tokens))


@pytest.mark.parametrize("lo,hi", [(-1, 0), (0, 2), (1, 0)])
def test_block_vector_range_error(lo, hi):
    with pytest.raises(RangeError):
        block_vector(table_from_counts([{"a": 1}, {"a": 1}]), lo, hi)


def test_cosine_identical():
    assert cosine({"a": 3, "b": 1}, {"a": 3, "b": 1}) == pytest.approx(1.0, abs=1e-15)


def test_cosine_disjoint():
    assert cosine({"a": 1}, {"b": 1}) == 0.0


def test_cosine_worked_example():
    # dot 2*1 + 1*3 = 5; norms 5 and 10
    assert cosine({"a": 2, "b": 1}, {"a": 1, "b": 3}) == pytest.approx(5 / math.sqrt(50), abs=1e-12)
    assert 5 / math.sqrt(50) == pytest.approx(0.70711, abs=5e-6)


def test_cosine_empty_is_zero():
    assert cosine({}, {"a": 1}) == 0.0
    assert cosine({}, {}) == 0.0


sparse = st.dictionaries(st.sampled_from("abcdefghijklmnop"), st.integers(1, 9), max_size=12)


@given(sparse, sparse)
def test_cosine_symmetric_and_bounded(a, b):
    assert cosine(a, b) == cosine(b, a)
    assert 0.0 <= cosine(a, b) <= 1.0


@given(sparse, sparse, st.sampled_from([0.5, 2, 3, 7.25, 1e3]))
def test_cosine_scale_invariant(a, b, c):
    scaled = {t: w * c for t, w in a.items()}
    assert abs(cosine(scaled, b) - cosine(a, b)) < 1e-12


def test_default_k():
    assert DEFAULT_K == 6
    assert BlockConfig().k == 6


def test_identical_sequences_k1():
    series = block_similarity_series(table_from_counts([{"a": 2, "b": 1}] * 2), BlockConfig(1))
    assert series.kind is SeriesKind.RAW_BLOCK
    assert series.values == pytest.approx((1.0,), abs=1e-15)


def test_too_short():
    with pytest.raises(TooShort):
        block_similarity_series(table_from_counts([{"a": 1}]))


def test_block_series_matches_oracle_k2():
    rng = random.Random(11)
    seqs = [[rng.choice("abcdef") for _ in range(rng.randint(0, 6))] for _ in range(8)]
    table = table_from_counts([Counter(s) for s in seqs])
    got = block_similarity_series(table, BlockConfig(2)).values
    expected = block_series_oracle(seqs, 2)
    assert len(got) == 7
    assert max(abs(g - e) for g, e in zip(got, expected)) < 1e-12


def test_block_extent_k_plus_1():
    spans = block_spans(10, 2, BlockExtent.K_PLUS_1)
    assert spans[4] == (2, 4, 5, 7)
    assert block_spans(10, 2)[4] == (3, 4, 5, 6)


@pytest.mark.parametrize("k", [1, 2, 3])
def test_participation_count(k):
    n = 20
    uses = Counter()
    for llo, lhi, rlo, rhi in block_spans(n, k):
        uses.update(range(llo, lhi + 1))
        uses.update(range(rlo, rhi + 1))
    for s in range(k, n - k):
        assert uses[s] == 2 * k


def test_chains_example():
    table = table_from_counts([{"x": 1} if i in {1, 2, 3, 8, 9} else {} for i in range(10)])
    assert extract_chains(table, ChainConfig(hiatus=2, min_length=2)) == [("x", 1, 3), ("x", 8, 9)]
    assert chains_oracle([1, 2, 3, 8, 9], 2, 2) == [(1, 3), (8, 9)]


def test_single_occurrence_no_chain():
    assert extract_chains(table_from_counts([{"x": 4}, {}]), ChainConfig()) == []


def test_single_run():
    table = table_from_counts([{"x": 1}] * 3)
    assert extract_chains(table, ChainConfig(hiatus=5)) == [("x", 0, 2)]


def test_chain_config_validation():
    with pytest.raises(ValueError):
        ChainConfig(hiatus=0)
    with pytest.raises(ValueError):
        ChainConfig(min_length=1)


def test_chain_scores_examples():
    # span-crossing counts by hand: (0,3) crosses gaps 0,1,2
    assert chain_score_series([("t", 0, 3)], 5).values == (1, 1, 1, 0)
    assert chain_score_series([], 5).values == (0, 0, 0, 0)
    assert chain_score_series([("a", 0, 1), ("b", 2, 4)], 5).values == (1, 0, 1, 1)
    assert span_crossing_oracle([(0, 1), (2, 4)], 5) == [1, 0, 1, 1]


def test_chain_event_scoring():
    # both events (a ends at sequence 1, b starts at 2) land on gap 1
    got = chain_score_series([("a", 0, 1), ("b", 2, 4)], 5, ChainScoring.EVENTS).values
    assert got == (2, 0, 2, 2)


spans = st.lists(
    st.tuples(st.integers(0, 29), st.integers(1, 10)).map(lambda t: ("t", t[0], min(29, t[0] + t[1]))),
    max_size=25,
)


@given(spans)
def test_chain_series_bounded(chains):
    values = chain_score_series(chains, 30).values
    assert values == tuple(span_crossing_oracle([c[1:] for c in chains], 30))
    assert all(0 <= v <= len(chains) for v in values)
    events = chain_score_series(chains, 30, ChainScoring.EVENTS).values
    assert all(0 <= v <= len(chains) for v in events)


def test_smooth_defaults():
    assert smooth([0.0, 1.0, 0.0]).values == pytest.approx((0.5, 1 / 3, 0.5), abs=1e-15)


def test_smooth_constant():
    assert smooth([0.4] * 4, 3, 2).values == (0.4,) * 4


def test_smooth_zero_rounds():
    out = smooth(GapSeries((1.0, 2.0), SeriesKind.RAW_BLOCK), 3, 0)
    assert out.values == (1.0, 2.0)
    assert out.kind is SeriesKind.SMOOTHED


@pytest.mark.parametrize("window", [0, 2, -1])
def test_smooth_bad_window(window):
    with pytest.raises(ValueError):
        smooth([1.0], window)


series_st = st.lists(st.floats(0, 1, allow_nan=False), min_size=1, max_size=40)


@given(series_st, st.sampled_from([1, 3, 5, 7]), st.integers(0, 3))
def test_smooth_range_contracts(values, window, rounds):
    out = smooth(values, window, rounds).values
    assert len(out) == len(values)
    assert max(out) <= max(values) + 1e-15
    assert min(out) >= min(values) - 1e-15


@given(st.lists(st.integers(0, 9), min_size=1, max_size=20), st.sampled_from([3, 5]))
def test_smooth_conserves_interior_mass(core, window):
    # nonzero mass kept two half-windows from either edge so no window is clipped
    pad = [0] * (window - 1)
    values = [float(v) for v in pad + core + pad]
    out = smooth(values, window, 1).values
    assert math.fsum(out) == pytest.approx(math.fsum(values), abs=1e-9)

"""Command-line interface: ``texttile {tile,scores,distrib,eval}``.

All gap and paragraph indices are 0-based. Paragraph-gap ``p`` is the boundary
after paragraph ``p`` (paragraphs counted from 0); sequence-gap ``g`` lies
between token-sequences ``g`` and ``g + 1``.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from . import __version__
from .boundaries import Segmentation, segment
from .config import RunConfig
from .errors import TextTileError
from .evaluation import (
    DEFAULT_RATE,
    DEFAULT_THRESHOLD,
    DEFAULT_TRIALS,
    JudgeSet,
    count_sentences,
    load_judges,
    merge_gap_map,
    parse_hypothesis,
    precision_recall,
    random_baseline,
    remap_gaps,
    true_boundaries,
)
from .ingest import (
    RawDocument,
    build_term_table,
    build_token_sequences,
    load_stopwords,
    normalize_tokens,
    normalize_word,
    split_paragraphs,
)

STOPWORDS_ENV = "TEXTTILE_STOPWORDS"

_EPILOG = (
    "Indices are 0-based: 'boundary after paragraph p' means the gap between "
    "paragraphs p and p+1 counting from 0, the same numbering judge files use."
)


def _config_parent() -> argparse.ArgumentParser:
    d = RunConfig()
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("tiling parameters")
    g.add_argument("--w", type=int, default=d.w, help="tokens per token-sequence (default %(default)s)")
    g.add_argument("--k", type=int, default=d.k, help="blocksize in token-sequences (default %(default)s)")
    g.add_argument("--method", choices=["blocks", "chains"], default=d.method.value,
                   help="gap scoring method (default %(default)s)")
    g.add_argument("--window", type=int, default=d.smoothing_window, dest="smoothing_window",
                   help="smoothing window, odd (default %(default)s)")
    g.add_argument("--rounds", type=int, default=d.smoothing_rounds, dest="smoothing_rounds",
                   help="smoothing rounds (default %(default)s)")
    g.add_argument("--min-separation", type=int, default=d.min_separation,
                   help="token-sequences required between boundaries (default %(default)s)")
    g.add_argument("--stopwords", dest="stopword_path", default=None,
                   help=f"stopword file; overrides ${STOPWORDS_ENV} and the bundled list")
    g.add_argument("--seed", type=int, default=d.seed, help="random seed (default %(default)s)")
    g.add_argument("--block-extent", choices=["k", "k_plus_1"], default=d.block_extent.value,
                   help="sequences per block: k, or k+1 (default %(default)s)")
    g.add_argument("--chain-hiatus", type=int, default=d.chain_hiatus,
                   help="largest sequence gap inside one chain (default %(default)s)")
    g.add_argument("--chain-min-length", type=int, default=d.chain_min_length,
                   help="fewest occurrences forming a chain (default %(default)s)")
    g.add_argument("--chain-scoring", choices=["spanning", "events"], default=d.chain_scoring.value,
                   help="chain gap score (default %(default)s)")
    g.add_argument("--strict-peaks", action="store_true", help="stop peak scans at plateaus")
    g.add_argument("--w-counts", choices=["all", "content"], default="all",
                   help="whether w counts all tokens or content tokens only (default %(default)s)")
    return p


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="texttile", description="TextTiling subtopic segmentation.",
                                     epilog=_EPILOG)
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)
    parent = _config_parent()
    fmt = argparse.RawDescriptionHelpFormatter

    p = sub.add_parser("tile", parents=[parent], help="print segment boundaries", epilog=_EPILOG,
                       formatter_class=fmt)
    p.add_argument("path")
    p.add_argument("--quiet", action="store_true", help="print paragraph-gap indices only")
    p.add_argument("--echo", action="store_true", help="print a parameter line first")

    p = sub.add_parser("scores", parents=[parent], help="per-gap score table (TSV)", epilog=_EPILOG,
                       formatter_class=fmt)
    p.add_argument("path")

    p = sub.add_parser("distrib", parents=[parent], help="term distribution across token-sequences",
                       epilog=_EPILOG, formatter_class=fmt)
    p.add_argument("path")
    sel = p.add_mutually_exclusive_group()
    sel.add_argument("--terms", help="comma-separated terms to show")
    sel.add_argument("--top", type=int, help="show the N most frequent content terms (default 20)")

    p = sub.add_parser("eval", parents=[parent], help="precision/recall against judge marks",
                       epilog=_EPILOG, formatter_class=fmt)
    p.add_argument("path", nargs="?", help="document to tile for the hypothesis")
    p.add_argument("--hypothesis", help="file of paragraph-gap indices")
    p.add_argument("--judges", required=True, help="judge file ('id: g1,g2,...' per line)")
    p.add_argument("--threshold", type=int, default=DEFAULT_THRESHOLD,
                   help="judge votes needed for a gold boundary (default %(default)s)")
    p.add_argument("--slack", type=int, choices=[0, 1], default=0,
                   help="paragraphs a boundary may be off by (default %(default)s)")
    p.add_argument("--baseline", type=float, nargs="?", const=DEFAULT_RATE, default=None,
                   help=f"also run the random baseline at this rate (default rate {DEFAULT_RATE})")
    p.add_argument("--trials", type=int, default=DEFAULT_TRIALS, help="baseline trials (default %(default)s)")
    p.add_argument("--merge-short", action="store_true",
                   help="merge paragraphs of three or fewer sentences before scoring")
    return parser


def _config(args) -> RunConfig:
    return RunConfig(
        w=args.w, k=args.k, method=args.method, smoothing_window=args.smoothing_window,
        smoothing_rounds=args.smoothing_rounds, min_separation=args.min_separation,
        stopword_path=args.stopword_path, seed=args.seed, block_extent=args.block_extent,
        chain_hiatus=args.chain_hiatus, chain_min_length=args.chain_min_length,
        chain_scoring=args.chain_scoring, strict_peaks=args.strict_peaks,
        count_stopwords=args.w_counts == "all",
    )


def _stopwords(cfg: RunConfig) -> frozenset[str]:
    return load_stopwords(cfg.stopword_path or os.environ.get(STOPWORDS_ENV) or None)


def _ingest(path: str, cfg: RunConfig):
    raw = RawDocument.from_path(path)
    paragraphs = split_paragraphs(raw)
    stop = _stopwords(cfg)
    doc = build_token_sequences([normalize_tokens(p, stop) for p in paragraphs], cfg.w, cfg.count_stopwords)
    return paragraphs, doc


def _tile(path: str, cfg: RunConfig) -> tuple[list[str], Segmentation]:
    paragraphs, doc = _ingest(path, cfg)
    return paragraphs, segment(doc, cfg=cfg)


def cmd_tile(args, out) -> int:
    cfg = _config(args)
    _, seg = _tile(args.path, cfg)
    if args.echo:
        out.write("# " + " ".join(f"{k}={v}" for k, v in seg.params.items()) + "\n")
    for b in seg.details:
        if args.quiet:
            out.write(f"{b.paragraph}\n")
        else:
            out.write(f"boundary after paragraph {b.paragraph} (gap {b.gap}, depth {b.depth:.6f})\n")
    return 0


def cmd_scores(args, out) -> int:
    cfg = _config(args)
    _, seg = _tile(args.path, cfg)
    chosen = set(seg.selected_gaps)
    out.write("gap\traw\tsmoothed\tdepth\tis_boundary\n")
    for g, (r, s, d) in enumerate(zip(seg.raw, seg.smoothed, seg.depth.depths)):
        out.write(f"{g}\t{r:.6f}\t{s:.6f}\t{d:.6f}\t{int(g in chosen)}\n")
    return 0


def _ruler(n: int, step: int = 5) -> str:
    cells = [" "] * n
    for s in range(step, n, step):
        label = str(s)
        for i, ch in enumerate(label):
            pos = s - len(label) + 1 + i
            if 0 <= pos < n:
                cells[pos] = ch
    return "".join(cells)


def format_distribution(table, terms: list[str]) -> str:
    """Distribution matrix: total, term, then one digit per token-sequence (blank = 0, capped at 9)."""
    n = table.num_sequences
    totals = {t: table.total(t) for t in terms}
    tw = max([len(str(v)) for v in totals.values()] + [1])
    lw = max([len(t) for t in terms] + [len("Sequence :") - tw - 1])
    prefix = tw + 1 + lw + 1
    rule = "-" * (prefix + n)
    ruler = "Sequence :".ljust(prefix) + _ruler(n)
    lines = [rule, ruler.rstrip(), rule]
    for t in terms:
        cells = [" "] * n
        for idx, freq in table.postings.get(t, ()):
            cells[idx] = str(min(freq, 9))
        lines.append(f"{totals[t]:>{tw}} {t:<{lw}} {''.join(cells)}".rstrip())
    lines += [rule, ruler.rstrip(), rule]
    return "\n".join(lines) + "\n"


def cmd_distrib(args, out) -> int:
    cfg = _config(args)
    _, doc = _ingest(args.path, cfg)
    table = build_term_table(doc)
    if args.terms:
        terms = []
        for surface in (s.strip() for s in args.terms.split(",")):
            if not surface:
                continue
            term = normalize_word(surface)
            if term not in table:
                sys.stderr.write(f"warning: unknown term {surface!r}\n")
                continue
            if term not in terms:
                terms.append(term)
    else:
        top = 20 if args.top is None else args.top
        terms = sorted(table.postings, key=lambda t: (-table.total(t), t))[:top]
    out.write(format_distribution(table, terms))
    return 0


def cmd_eval(args, out) -> int:
    cfg = _config(args)
    judges: JudgeSet = load_judges(args.judges)
    if args.path is None and args.hypothesis is None:
        raise TextTileError("eval needs a document path or --hypothesis file")
    paragraphs = None
    if args.hypothesis is not None:
        hyp = parse_hypothesis(Path(args.hypothesis).read_text(encoding="utf-8"))
    else:
        paragraphs, seg = _tile(args.path, cfg)
        if len(paragraphs) - 1 != judges.num_paragraph_gaps:
            raise TextTileError(
                f"judge file covers {judges.num_paragraph_gaps} gaps but the document has {len(paragraphs) - 1}"
            )
        hyp = set(seg.boundaries)
    bad = sorted(g for g in hyp if not 0 <= g < judges.num_paragraph_gaps)
    if bad:
        raise TextTileError(f"hypothesis gaps outside 0..{judges.num_paragraph_gaps - 1}: {bad}")
    if args.merge_short:
        if judges.sentence_counts is None and paragraphs is not None:
            judges = JudgeSet(judges.num_paragraph_gaps, judges.marks,
                              tuple(count_sentences(p) for p in paragraphs))
        judges, gap_map = merge_gap_map(judges)
        hyp = remap_gaps(hyp, gap_map)
    gold = true_boundaries(judges, args.threshold)
    out.write(precision_recall(hyp, gold, args.slack).format() + "\n")
    if args.baseline is not None:
        base = random_baseline(judges.num_paragraph_gaps, gold, args.baseline, args.trials, cfg.seed)
        out.write(f"baseline rate {args.baseline:g} trials {args.trials} {base.format()}\n")
    return 0


COMMANDS = {"tile": cmd_tile, "scores": cmd_scores, "distrib": cmd_distrib, "eval": cmd_eval}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return COMMANDS[args.command](args, sys.stdout)
    except ValueError as exc:  # TextTileError and config validation
        sys.stderr.write(f"texttile: {exc}\n")
        return 1
    except (OSError, UnicodeDecodeError) as exc:
        sys.stderr.write(f"texttile: cannot read input: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())

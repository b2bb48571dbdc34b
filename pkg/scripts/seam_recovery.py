"""Seam recovery on generated two-topic documents, for both scoring methods.

    python scripts/seam_recovery.py --docs 50 --seed 0
"""
import argparse
import time

from texttile import RunConfig, segment, tokenize
from texttile.evaluation import aggregate, precision_recall
from texttile.synthetic import two_topic_corpus


def run(corpus, cfg):
    hits = 0
    reports = []
    for text, seam in corpus:
        seg = segment(tokenize(text, cfg.w), cfg=cfg)
        hits += seam in seg.boundaries
        reports.append(precision_recall(seg.boundaries, {seam}, slack=0))
    return hits, aggregate(reports)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--docs", type=int, default=50)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--k", type=int, nargs="+", default=[6])
    args = ap.parse_args()

    corpus = two_topic_corpus(args.docs, seed=args.seed)
    print("method\tk\thits\tprecision\trecall\tseconds")
    for method in ("blocks", "chains"):
        for k in args.k:
            start = time.perf_counter()
            hits, agg = run(corpus, RunConfig(method=method, k=k))
            elapsed = time.perf_counter() - start
            print(f"{method}\t{k}\t{hits}/{len(corpus)}\t{agg['precision_mean']:.3f}\t"
                  f"{agg['recall_mean']:.3f}\t{elapsed:.2f}")


if __name__ == "__main__":
    main()

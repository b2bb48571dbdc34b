"""Random-baseline precision and recall across boundary rates and gold densities.

    python scripts/baseline_table.py --gaps 20 --trials 10000
"""
import argparse

from texttile.evaluation import DEFAULT_TRIALS, random_baseline


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--gaps", type=int, default=20)
    ap.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--rates", type=float, nargs="+", default=[0.2, 0.41, 0.6])
    ap.add_argument("--gold", type=int, nargs="+", default=[4, 8, 12])
    args = ap.parse_args()

    print("rate\tgold\tprecision\trecall")
    for rate in args.rates:
        for n_gold in args.gold:
            gold = {round(i * args.gaps / n_gold) for i in range(n_gold)}
            report = random_baseline(args.gaps, gold, rate, args.trials, args.seed)
            print(f"{rate:.2f}\t{len(gold)}\t{report.precision:.3f}\t{report.recall:.3f}")


if __name__ == "__main__":
    main()

"""Observed order of convergence under grid halving.

For each grid size the solution is read off at t = 1/4, 1/2, 3/4 and the
rate p is estimated from three consecutive levels.  The rate creeps up
toward 1 + alpha as dt shrinks, so it is reported at the middle level of
each triple.

    python3 demos/convergence_table.py [--alpha 0.5] [--lam -3] [--max-n 2048]
"""

import argparse

from fracsl import ProblemSpec, run_study


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--alpha", type=float, default=0.5)
    ap.add_argument("--lam", type=float, default=-3.0)
    ap.add_argument("--min-n", type=int, default=128)
    ap.add_argument("--max-n", type=int, default=2048)
    args = ap.parse_args()

    n_list = []
    n = args.min_n
    while n <= args.max_n:
        n_list.append(n)
        n *= 2

    spec = ProblemSpec(args.alpha, args.lam)
    records = run_study(spec, n_list)

    print(f"alpha = {args.alpha:g}, lambda = {args.lam:g}, q = 0; expected p near {1 + args.alpha:g}\n")
    header = "dt        " + "".join(f"{'f(' + str(r.probe) + ')':>16}{'p':>7}" for r in records)
    print(header)
    print("-" * len(header))
    for level, n in enumerate(n_list):
        row = f"1/{n:<7} "
        for rec in records:
            p = rec.rates[level - 1] if 0 < level < len(n_list) - 1 else None
            row += f"{rec.values[level]:>16.8f}" + (f"{p:>7.3f}" if p is not None else f"{'-':>7}")
        print(row)


if __name__ == "__main__":
    main()

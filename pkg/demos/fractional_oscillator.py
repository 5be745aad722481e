"""Fractional oscillator: q = 0, several orders and spectral parameters.

With alpha = 1 the problem is the classical f'' + lam f = 0 and the solution
is a sine.  Lowering alpha damps and shifts the oscillation; a more negative
lam packs more half-waves into [0, 1].  The script prints a coarse table of
each curve and, when matplotlib is installed, writes a 2x2 panel figure.

    python3 demos/fractional_oscillator.py [--n 1024] [--save oscillator.png]
"""

import argparse

import numpy as np

from fracsl import ProblemSpec, solve

LAMBDAS = (-3.0, -10.0, -20.0, -25.0)
ALPHAS = (0.4, 0.6, 0.8, 1.0)


def curves(n):
    out = {}
    for lam in LAMBDAS:
        for alpha in ALPHAS:
            out[lam, alpha] = solve(ProblemSpec(alpha, lam), n)
    return out


def print_table(results, n):
    cols = np.arange(0, n + 1, n // 8)
    for lam in LAMBDAS:
        print(f"\nlambda = {lam:g}")
        print("alpha  " + " ".join(f"{c / n:>8.3f}" for c in cols))
        for alpha in ALPHAS:
            vals = results[lam, alpha].values[cols]
            print(f"{alpha:<5.2f}  " + " ".join(f"{v:>8.4f}" for v in vals))


def plot(results, path):
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fig, axes = plt.subplots(2, 2, figsize=(9, 7), sharex=True)
    for ax, lam in zip(axes.flat, LAMBDAS):
        for alpha in ALPHAS:
            sol = results[lam, alpha]
            ax.plot(sol.t, sol.values, label=f"alpha={alpha:g}")
        ax.set_title(f"lambda = {lam:g}")
        ax.axhline(0, color="0.7", lw=0.5)
    axes[0, 0].legend(fontsize=8)
    for ax in axes[1]:
        ax.set_xlabel("t")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    print(f"\nwrote {path}")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=1024)
    ap.add_argument("--save", default=None, help="write a PNG (needs matplotlib)")
    args = ap.parse_args()

    results = curves(args.n)
    print_table(results, args.n)
    if args.save:
        plot(results, args.save)


if __name__ == "__main__":
    main()

"""A look at the discrete fractional integrals on their own.

Applies the left and right weight tables to phi(t) = cos(t) + t and compares
against the direct product-integration reference.  Halving dt should cut
the error by roughly 2**(1 + alpha).  The last part checks that the
composition matrix agrees with applying the two integrals one after the other.
"""

import numpy as np

from fracsl import (
    OracleConfig,
    apply_left_integral,
    apply_right_integral,
    composition_matrix,
    direct_left_integral,
    make_grid,
    make_weights,
)


def phi(t):
    return np.cos(t) + t


def left_errors(alpha, ns):
    errs = []
    for n in ns:
        grid = make_grid(n)
        cfg = OracleConfig.for_grid(n)
        ref = np.array([direct_left_integral(phi, alpha, t, cfg) for t in grid.nodes])
        got = apply_left_integral(phi(grid.nodes), make_weights(alpha, grid))
        errs.append(np.abs(got - ref).max())
    return np.array(errs)


def main():
    ns = [16, 32, 64, 128]
    print("max error of the discrete left integral, phi = cos(t) + t\n")
    print("alpha   " + "".join(f"{'n=' + str(n):>12}" for n in ns) + "   observed order")
    for alpha in (0.25, 0.5, 0.75, 1.0):
        errs = left_errors(alpha, ns)
        order = np.log2(errs[-2] / errs[-1])
        print(f"{alpha:<6g}  " + "".join(f"{e:>12.3e}" for e in errs) + f"   {order:.3f} (1+alpha = {1 + alpha:g})")

    alpha, n = 0.6, 200
    ws = make_weights(alpha, make_grid(n))
    x = make_grid(n).nodes
    nested = apply_left_integral(apply_right_integral(phi(x), ws), ws)
    diff = np.abs(composition_matrix(ws) @ phi(x) - nested).max()
    print(f"\ncomposition matrix vs nested application (alpha={alpha}, n={n}): {diff:.2e}")


if __name__ == "__main__":
    main()

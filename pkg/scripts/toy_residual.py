"""Residual of the toy model against its expansion, with and without a t^3 log t term."""

import math


from heatlab import verify as vf
from heatlab.acceptance import toy_residual


def main(alpha=0.3, beta=0.1):
    ts = [0.04, 0.02, 0.01, 0.005]
    res = [toy_residual(alpha, beta, t) for t in ts]
    for t, r, r_next in zip(ts, res, res[1:] + [None]):
        order = "" if r_next is None else f"  order {math.log2(abs(r / r_next)):.3f}"
        print(f"t={t:6.3f}  residual={r: .3e}  residual/t^3={r / t ** 3: .4f}{order}")
    grid = vf.geometric_grid(0.005, 0.08)
    fit = vf.fit_expansion([(t, toy_residual(alpha, beta, t)) for t in grid],
                           [(3, 1), (3, 0), (4, 1), (4, 0)])
    print(f"fitted t^3 log t coefficient {fit.coefficient(3, True):.6f}, t^3 coefficient {fit.coefficient(3):.6f}")


if __name__ == "__main__":
    main()

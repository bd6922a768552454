"""Gap between the annulus traces and the AB disk trace as the inner radius shrinks.

Each mode contributes about 2 s R^(2s) with s = |m - nu|, so the gap decays
like R^(2 min s); the fitted exponent is printed next to that prediction.
"""

import argparse

import numpy as np

from heatlab import heattrace as ht, spectra


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--nu", type=float, default=0.3)
    parser.add_argument("--t", type=float, default=1.0)
    args = parser.parse_args()
    Rs = 10.0 ** -np.arange(1, 7)
    disk = ht.ab_disk_closed(args.nu, args.t)
    s_min = min(args.nu, 1 - args.nu)
    for cls in (spectra.AnnulusPartial, spectra.AnnulusFull):
        gaps = [abs(ht.annulus_trace(cls(args.nu, R), args.t).value - disk) for R in Rs]
        print(cls.kind)
        for R, g in zip(Rs, gaps):
            print(f"  R={R:8.1e}  gap={g:.3e}")
        slope = np.polyfit(np.log(Rs[2:]), np.log(gaps[2:]), 1)[0]
        print(f"  fitted exponent {slope:.3f}, predicted 2 min|m - nu| = {2 * s_min:.3f}")


if __name__ == "__main__":
    main()

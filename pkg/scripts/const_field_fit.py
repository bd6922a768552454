"""Fit the constant-field relative trace and compare with E(b), F(b) and -b^2/2."""

import argparse


from heatlab import asymptotics as asy, heattrace as ht, verify as vf


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--b", type=float, nargs="+", default=[0.25, 0.5, 1.0, 2.0])
    args = parser.parse_args()
    ts = vf.geometric_grid(0.005, 0.2)
    basis = [(1, 0), (2, 0), (3, 1), (3, 0), (4, 1), (4, 0), (5, 1), (5, 0)]
    print(f"{'b':>6} {'E(b)':>14} {'fit t':>14} {'F(b)':>14} {'fit t^2':>14} {'t^3 log t':>12} {'-b^2/2':>9}")
    for b in args.b:
        fit = vf.fit_function(lambda t: ht.const_field_relative_trace(b, t).value, ts, basis)
        A, _ = vf.extract_relative_log_coefficient(b)
        print(f"{b:6.3f} {asy.const_field_E(b):14.9f} {fit.coefficient(1):14.9f} {asy.const_field_F(b):14.9f} "
              f"{fit.coefficient(2):14.9f} {A:12.7f} {-b * b / 2:9.5f}")
    lin, quad = asy.const_field_sum_coefficients()
    print(f"small-b coefficients of sum(lambda - mu): linear {lin:.10f}, quadratic {quad:.10f}")


if __name__ == "__main__":
    main()

"""Decay of the finite-T fixed-point summand toward its surviving term at fixed theta."""
import argparse
import math

from eqmorse.character import Character
from eqmorse.geometry import FixedPoint
from eqmorse.oscillator import limit_gap


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--weights", type=int, nargs="+", default=[2, -1])
    ap.add_argument("--theta", type=float, default=0.9)
    ap.add_argument("--T", type=float, nargs="+", default=[1, 2, 4, 8, 16])
    args = ap.parse_args()
    p = FixedPoint("p", tuple(args.weights), Character.one())
    prev = None
    for T in args.T:
        g = limit_gap(p, T, args.theta)
        rate = "" if prev is None else f"  rate {-(math.log(g) - math.log(prev[1])) / (T - prev[0]):.4f}"
        print(f"T {T:>6.2f}  gap {g:.4e}{rate}")
        prev = (T, g)
    print(f"expected rate 2*min|lam| = {2 * min(abs(w) for w in args.weights)}")


if __name__ == "__main__":
    main()

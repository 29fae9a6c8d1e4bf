"""Sweep CP^1 line bundles: Atiyah-Bott match, strong verdicts on both sides, weak bounds."""
import argparse

from eqmorse.geometry import atiyah_bott_series, cp1_model, verify_strong, verify_weak


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--kmin", type=int, default=-3)
    ap.add_argument("--kmax", type=int, default=10)
    ap.add_argument("--lam0", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--order", type=int, default=64)
    args = ap.parse_args()
    print(f"{'lam0':>4} {'k':>4} {'dim H0':>6} {'dim H1':>6} {'AB':>4} {'strong-':>7} {'strong+':>7} {'weak':>4}")
    for lam0 in args.lam0:
        for k in range(args.kmin, args.kmax + 1):
            model, coh = cp1_model(k, lam0)
            ab = (atiyah_bott_series(model, args.order) - coh.euler_character()).is_zero
            sm = verify_strong(model, coh, "minus", args.order).passed
            sp = verify_strong(model, coh, "plus", args.order).passed
            weak = all(verify_weak(model, coh, d, side, args.order).passed
                       for d in range(2) for side in ("minus", "plus"))
            h0, h1 = (int(h.dimension()) for h in coh.by_degree)
            print(f"{lam0:>4} {k:>4} {h0:>6} {h1:>6} {ab!s:>4} {sm!s:>7} {sp!s:>7} {weak!s:>4}")


if __name__ == "__main__":
    main()

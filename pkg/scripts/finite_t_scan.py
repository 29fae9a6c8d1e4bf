"""Distance of the finite-T series from its T -> inf limit, against e^{-2 lam_min T}."""
import argparse
import math

from eqmorse.geometry import (
    cp1_model,
    distance_to_limit,
    min_weight_magnitude,
    product_cohomology,
    product_model,
    verify_finite_T,
)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--k", type=int, default=2)
    ap.add_argument("--lam0", type=int, default=1)
    ap.add_argument("--product", type=int, default=None, metavar="K2",
                    help="multiply by a second CP^1 with bundle O(K2)")
    ap.add_argument("--T", type=float, nargs="+", default=[0.5, 1, 2, 4, 8, 16])
    ap.add_argument("--order", type=int, default=64)
    args = ap.parse_args()
    model, coh = cp1_model(args.k, args.lam0)
    if args.product is not None:
        other, coh2 = cp1_model(args.product)
        model, coh = product_model(model, other), product_cohomology(coh, coh2)
    lam = min_weight_magnitude(model)
    print(f"lam_min = {lam}")
    print(f"{'T':>6} {'distance':>12} {'d * e^(2 lam T)':>16} {'min Q_T':>12} {'pass':>5}")
    for T in args.T:
        d = distance_to_limit(model, T, args.order)
        v = verify_finite_T(model, coh, T, args.order)
        low = min((c for q in v.Q.coeffs for c in q.coeffs), default=0.0)
        print(f"{T:>6.2f} {d:>12.4e} {d * math.exp(2 * lam * T):>16.6f} {low:>12.3e} {v.passed!s:>5}")


if __name__ == "__main__":
    main()

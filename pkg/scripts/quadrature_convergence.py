"""Relative error of the polar kernel quadrature as the node count doubles."""
import argparse

from eqmorse.oscillator import kernel_trace_quadrature, scalar_trace


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--lam", type=int, default=1)
    ap.add_argument("--T", type=float, default=1.0)
    ap.add_argument("--theta", type=float, default=0.5)
    ap.add_argument("--max-nodes", type=int, default=128)
    args = ap.parse_args()
    ref = scalar_trace(args.lam, args.T, args.theta)
    print(f"closed form {ref.real:.15f}{ref.imag:+.3e}i")
    n = 2
    while n <= args.max_nodes:
        tv = kernel_trace_quadrature(args.lam, args.T, args.theta, nodes=n)
        print(f"nodes {n:>4}  rel err {abs(tv.value - ref) / abs(ref):.3e}  tail {tv.tail_bound:.1e}")
        n *= 2


if __name__ == "__main__":
    main()

"""a_s over a doubling ladder of prime limits, with the step-to-tail-bound ratio."""
import argparse

from jacobi_moments.arith import euler_a_s


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--s", type=float, nargs="+", default=[0.5, 1.0, 2.0, 3.0])
    ap.add_argument("--start", type=int, default=15_625)
    ap.add_argument("--steps", type=int, default=6)
    args = ap.parse_args()
    for s in args.s:
        prev = None
        for k in range(args.steps + 1):
            r = euler_a_s(s, args.start * 2**k)
            ratio = "" if prev is None else f"  step/bound {abs(r.log_value - prev.log_value) / prev.tail_bound:.3f}"
            print(f"s={s:g} P={r.prime_limit:>9d} a_s={r.value:.15f} tail<= {r.tail_bound:.2e}{ratio}")
            prev = r


if __name__ == "__main__":
    main()

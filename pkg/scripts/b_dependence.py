"""Monte Carlo E[exp(-t M_N)] at fixed a for several b.

If the limit law depends on a only, the rows agree within their standard
errors, up to the O(1/N) finite-size drift.
"""
import argparse
import json

from jacobi_moments.painleve import b_dependence


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--a", type=float, default=1.5)
    ap.add_argument("--b", type=float, nargs="+", default=[-0.5, 0.5, 2.0, 5.0])
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--t", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    ap.add_argument("--reps", type=int, default=20_000)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--json", action="store_true", help="print the raw table as JSON")
    args = ap.parse_args()
    table = b_dependence(args.a, args.b, args.n, args.t, args.reps, args.seed)
    if args.json:
        print(json.dumps(table, indent=2))
        return
    print("b".rjust(6) + "".join(f"  f({t:g})".rjust(20) for t in table["t"]))
    for row in table["rows"]:
        cells = "".join(f"{f:.5f} +- {se:.5f}".rjust(20) for f, se in zip(row["f"], row["se"]))
        print(f"{row['b']:6g}{cells}")


if __name__ == "__main__":
    main()

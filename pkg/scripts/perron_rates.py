"""Empirical growth rates of Q_n, P_n at every conjugate and decay of R_n, next to
the characteristic-root predictions, as JSON lines."""

import argparse
import json
import sys
from fractions import Fraction

from shiftlog.asymptotics import perron_report
from shiftlog.inputs import parse_beta, parse_rational_list

DEFAULT_BETAS = ["poly:-2,1", "field:-2,0,1;expr=-6-5*Y;root=near:1.41421", "poly:4,0,1;root=near:2i"]


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--beta", action="append", help="compact beta (repeatable)")
    ap.add_argument("--x", default="0,1/3")
    ap.add_argument("--nmax", type=int, default=2000)
    ap.add_argument("--jmax", type=int, default=12)
    args = ap.parse_args()
    for text in args.beta or DEFAULT_BETAS:
        num = parse_beta(text).resolve(128).number
        for x in parse_rational_list(args.x):
            rep = perron_report(num, Fraction(x), args.nmax, args.jmax)
            print(json.dumps(dict(rep.to_dict(), beta=text)))
    return 0


if __name__ == "__main__":
    sys.exit(main())

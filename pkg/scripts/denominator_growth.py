"""Track log(kappa_n(1, x))/n against log Delta(1, x) and against the lcm constant
of the progression (q/phi(q)) * sum_{j<=q, (j,q)=1} 1/j."""

import argparse
import math
import sys
from fractions import Fraction

from shiftlog.exact import d_n, kappa_n
from shiftlog.inputs import parse_rational_list
from shiftlog.measure import compute_Delta


def lcm_constant(q: int) -> float:
    units = [j for j in range(1, q + 1) if math.gcd(j, q) == 1]
    return q / len(units) * sum(1 / j for j in units)


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--x", default="1/3,1/5,2/7")
    ap.add_argument("--n", default="250,500,1000,2000,3000,6000")
    args = ap.parse_args()
    ns = [int(v) for v in args.n.split(",")]
    print("x,n,log_kappa_over_n,log_Delta,log_d_over_n,lcm_constant,rel_gap")
    for x in map(Fraction, parse_rational_list(args.x)):
        ld = float(compute_Delta(1, x).log(128).mid)
        c = lcm_constant(x.denominator)
        for n in ns:
            lk = math.log(kappa_n(1, x, n)) / n
            dn = math.log(d_n(x, n)) / n
            print(f"{x},{n},{lk:.6f},{ld:.6f},{dn:.6f},{c:.6f},{abs(lk - ld) / ld:.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())

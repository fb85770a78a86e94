#!/usr/bin/env python3
"""Write the first N nontrivial zeta-zero ordinates with zeta'(rho).

Output format: one `gamma re_zprime im_zprime` line per zero, ascending.
Requires mpmath.
"""
import argparse
import sys

import mpmath


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("count", type=int)
    parser.add_argument("--dps", type=int, default=30)
    parser.add_argument("--no-derivative", action="store_true")
    parser.add_argument("--start", type=int, default=1, help="first zero index; skips the header when > 1")
    args = parser.parse_args()

    mpmath.mp.dps = args.dps
    out = sys.stdout
    if args.start == 1:
        out.write(f"# first {args.count} zeta zeros, mpmath {mpmath.__version__}, dps={args.dps}\n")
        out.write("# gamma re_zeta'(rho) im_zeta'(rho)\n" if not args.no_derivative else "# gamma\n")
    digits = args.dps - 5
    for n in range(args.start, args.count + 1):
        rho = mpmath.zetazero(n)
        gamma = mpmath.nstr(rho.imag, digits, strip_zeros=False)
        if args.no_derivative:
            out.write(f"{gamma}\n")
            continue
        zp = mpmath.zeta(rho, derivative=1)
        out.write(f"{gamma} {mpmath.nstr(zp.real, digits)} {mpmath.nstr(zp.imag, digits)}\n")
        out.flush()
    return 0


if __name__ == "__main__":
    raise SystemExit(main())

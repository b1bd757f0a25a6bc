#!/usr/bin/env python3
"""Regenerate the packaged table of Riemann zeta zero ordinates.

Usage: python tools/generate_zero_table.py [count] [out_path]
"""
import sys

import mpmath


def main() -> None:
    count = int(sys.argv[1]) if len(sys.argv) > 1 else 100
    out = sys.argv[2] if len(sys.argv) > 2 else "src/lfunlab/data/zeta_zeros_100.txt"
    mpmath.mp.dps = 25
    ordinates = [mpmath.zetazero(k).imag for k in range(1, count + 1)]
    # completeness: the list is complete below the next zero; leave headroom
    nxt = mpmath.zetazero(count + 1).imag
    completeness = float(mpmath.floor(nxt * 100) / 100) - 0.01
    lines = [
        "# ordinates of the first %d nontrivial zeros of the Riemann zeta function" % count,
        "# (critical-line form 1/2 + i*gamma); computed with mpmath.zetazero at 25 digits",
        "completeness_T=%s" % completeness,
    ]
    lines += [mpmath.nstr(g, 18) for g in ordinates]
    with open(out, "w") as fh:
        fh.write("\n".join(lines) + "\n")
    print(f"wrote {count} ordinates to {out} (completeness_T={completeness})")


if __name__ == "__main__":
    main()

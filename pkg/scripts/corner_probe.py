"""Probe corner closure for two indeterminates over UT2(GF(2)) under a few derivation choices.

    python3 scripts/corner_probe.py [--degree 3] [--literal]
"""

import argparse

from diffpoly.derivation import inner_derivation, zero_derivation
from diffpoly.multivar import MContext, corner_closure_report
from diffpoly.rings import gf, triangular


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--degree", type=int, default=3)
    ap.add_argument("--literal", action="store_true", help="count constants in the complement as well")
    args = ap.parse_args()
    U = triangular(gf(2), 2)
    zero = zero_derivation(U)
    choices = {
        "zero, zero": [zero, zero],
        "zero, inner e12": [zero, inner_derivation(U, U.element("e12"))],
        "inner e12, zero": [inner_derivation(U, U.element("e12")), zero],
        "inner e11, inner e12": [inner_derivation(U, U.element("e11")), inner_derivation(U, U.element("e12"))],
    }
    for name, derivations in choices.items():
        ctx = MContext(U, derivations)
        for J in ([0], [1]):
            r = corner_closure_report(ctx, J, args.degree, args.literal)
            corner = ",".join(f"x{i + 1}" for i in J)
            for side, check in (("S_J*C", r.left), ("C*S_J", r.right)):
                line = f"{name:<22} corner {corner:<3} {side}  {'pass' if check else 'fail'}"
                if not check:
                    left, right, product, term = check.witness
                    line += f"  ({left}) * ({right}) = {product}, stray term {term}"
                print(line)


if __name__ == "__main__":
    main()

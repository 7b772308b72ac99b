"""Run the invariant suite on every corpus instance and print one line per instance.

    python3 scripts/corpus_sweep.py [--dmax 3]
"""

import argparse
import time

from diffpoly.analyzer import quasi_duo, verify_instance
from diffpoly.corpus import CORPUS


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dmax", type=int, default=3)
    args = ap.parse_args()
    failed = 0
    print(f"{'instance':<20} {'order':>5} {'verdict':>7} {'checks':>6} {'failed':>6} {'ms':>8}")
    for inst in CORPUS:
        start = time.perf_counter()
        S = inst.ore_ring()
        verdict = quasi_duo(S.base, S.delta).quasi_duo
        results = verify_instance(S, args.dmax)
        bad = [name for name, check in results if not check]
        ms = (time.perf_counter() - start) * 1000
        print(f"{inst.name:<20} {S.base.order:>5} {'yes' if verdict else 'no':>7} {len(results):>6} {len(bad):>6} {ms:>8.0f}")
        for name in bad:
            print(f"    failed: {name}")
        failed += bool(bad) or verdict != inst.expected
    return 1 if failed else 0


if __name__ == "__main__":
    raise SystemExit(main())

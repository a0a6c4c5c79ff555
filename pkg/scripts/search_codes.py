"""Search for the tabulated codes and save the ones found.

Files are written as ``N-r-d-q.txt`` so they can be passed back through
``resist-cert tables --code-dir``.
"""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from resistcert._guards import GuardError
from resistcert.arrays import corollary_gate, format_code, min_distance, search_code
from resistcert.tables import TABLE_II


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", default="codes")
    p.add_argument("--budget", type=int, default=200_000)
    args = p.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for (m, _), (n, r, d, q) in sorted(TABLE_II.items()):
        start = time.perf_counter()
        try:
            code = search_code(n, q, d, r, args.budget)
        except GuardError as exc:
            print(f"({n},{r},{d})_{q}: skipped, {exc}")
            continue
        took = time.perf_counter() - start
        if code is None:
            print(f"({n},{r},{d})_{q}: not found within {args.budget} nodes ({took:.1f}s)")
            continue
        path = out / f"{n}-{r}-{d}-{q}.txt"
        path.write_text(format_code(code))
        print(f"({n},{r},{d})_{q}: found, d={min_distance(code)}, "
              f"gate m={corollary_gate(code)} (table m={m}), {took:.1f}s -> {path}")


if __name__ == "__main__":
    main()

"""Re-run all three existence tables and print a per-cell summary."""

from __future__ import annotations

import argparse
import json
import time

from resistcert.tables import reproduce_tables


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--code-dir", default=None, help="directory of N-r-d-q.txt code files")
    p.add_argument("--budget", type=int, default=50_000, help="search node budget per code")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--json", action="store_true", help="dump the full reports")
    args = p.parse_args()
    reports = []
    for which in ("I", "II", "III"):
        start = time.perf_counter()
        rep = reproduce_tables(which, args.code_dir, args.budget, args.workers)
        reports.append(rep)
        print(f"Table {which}: {rep['summary']}  ({time.perf_counter() - start:.1f}s)")
        for cell in rep["cells"]:
            note = cell.get("via") or cell.get("reason", "")
            print(f"  m={cell['m']} N={cell['N']:<2} {cell['listed']!s:<14} "
                  f"{cell['status']:<10} {note}")
    if args.json:
        print(json.dumps(reports, indent=2))


if __name__ == "__main__":
    main()

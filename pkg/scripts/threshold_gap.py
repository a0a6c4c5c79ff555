"""Compare the closed-form n-3 gate with the exact 2-qubit PSD boundary.

For each N the exact boundary is found by solving det(M0) = 0, and the
state is certified on both sides of it.  States between the exact boundary
and the closed-form gate are rejected by the family constructor but still
certify when built directly.
"""

from __future__ import annotations

import argparse
from fractions import Fraction

from resistcert.certifier import certify_dicke_strong
from resistcert.dicke import DickeCombo
from resistcert.families import exact_boundary_n3, threshold_ratio_n3


def outcome(n: int, a2: Fraction) -> str:
    return certify_dicke_strong(DickeCombo(n, {0: a2, n - 3: 1}), n - 3).outcome.value


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-n", type=int, default=14)
    args = p.parse_args()
    print(f"{'N':>3} {'gate':>10} {'exact':>8} {'below exact':>13} {'at exact':>10} {'midway':>10}")
    for n in range(7, args.max_n + 1):
        gate, exact = threshold_ratio_n3(n), exact_boundary_n3(n)
        assert exact == Fraction(3, n * (n - 4))
        print(f"{n:>3} {str(gate):>10} {str(exact):>8} {outcome(n, exact * Fraction(99, 100)):>13} "
              f"{outcome(n, exact):>10} {outcome(n, (gate + exact) / 2):>10}")


if __name__ == "__main__":
    main()

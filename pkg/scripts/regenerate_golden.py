"""Rewrite the golden certificates under tests/golden/.

Run after an intentional change to the certificate format, then review the
diff before committing.
"""

from __future__ import annotations

import argparse
from pathlib import Path

from resistcert.arrays import builtin_ca_10_7_3_3, parse_code
from resistcert.certifier import certify_code_resistant, certify_dicke_strong, emit_certificate
from resistcert.dicke import DickeCombo
from resistcert.families import psi_n_minus_4

PARITY = "000\n011\n101\n110\n"
REPETITION = "0000\n0011\n1111\n"


def golden_certificates() -> dict[str, str]:
    n4 = psi_n_minus_4(7, 1, 1)
    subject = {"family": "n-4", "a2": n4.a2, "b2": n4.b2}
    return {
        "dicke_n4_N7_m3_certified.json": certify_dicke_strong(n4.combo(), 3, subject),
        "dicke_n4_N7_m2_refuted.json": certify_dicke_strong(n4.combo(), 2, subject),
        "dicke_N5_gap_m2_inconclusive.json": certify_dicke_strong(DickeCombo(5, {0: 1, 3: 1}), 2),
        "code_builtin_m2_certified.json": certify_code_resistant(builtin_ca_10_7_3_3(), None, 2),
        "code_repetition_m1_refuted.json":
            certify_code_resistant(parse_code(REPETITION, 2), None, 1, strict=False),
        "code_parity_m1_inconclusive.json":
            certify_code_resistant(parse_code(PARITY, 2), None, 1, strict=False),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--dir", default=Path(__file__).resolve().parent.parent / "tests" / "golden")
    args = p.parse_args()
    out = Path(args.dir)
    out.mkdir(parents=True, exist_ok=True)
    for name, cert in golden_certificates().items():
        (out / name).write_text(emit_certificate(cert))
        print(f"{cert.outcome.value:13s} {name}")


if __name__ == "__main__":
    main()

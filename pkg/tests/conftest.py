"""Independent oracles shared by the test modules.

These deliberately avoid the library's fast paths: determinants by the
Leibniz sum, characteristic coefficients by enumerating principal minors,
Dicke reductions by expanding the projector and tracing it out party by party
with plain loops.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, permutations, product

import numpy as np
import pytest

# filled by test_acceptance, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def det_permutation(m) -> Fraction:
    n = len(m)
    total = Fraction(0)
    for perm in permutations(range(n)):
        inversions = sum(perm[i] > perm[j] for i in range(n) for j in range(i + 1, n))
        term = Fraction(1)
        for i, p in enumerate(perm):
            term *= m[i][p]
            if not term:
                break
        total += -term if inversions % 2 else term
    return total


def principal_minor_sums(m) -> list[Fraction]:
    n = len(m)
    out = [Fraction(1)]
    for size in range(1, n + 1):
        out.append(sum((det_permutation([[m[i][j] for j in idx] for i in idx])
                        for idx in combinations(range(n), size)), Fraction(0)))
    return out


def min_eigenvalue(m) -> float:
    return float(np.linalg.eigvalsh(np.array([[float(v) for v in row] for row in m])).min())


def dicke_projector_dense(n: int, i: int) -> dict:
    ones = [bits for bits in product((0, 1), repeat=n) if sum(bits) == i]
    return {(x, y): Fraction(1) for x in ones for y in ones}


def trace_out_loops(entries: dict, n: int, lost) -> dict:
    lost = sorted(lost)
    keep = [p for p in range(n) if p not in lost]
    out: dict = {}
    for (x, y), v in entries.items():
        if any(x[p] != y[p] for p in lost):
            continue
        key = (tuple(x[p] for p in keep), tuple(y[p] for p in keep))
        out[key] = out.get(key, Fraction(0)) + v
    return {k: v for k, v in out.items() if v}


def brute_dicke_reduction(n: int, i: int, k: int) -> dict:
    """Normalized reduction of |D^n_i> onto the first k qubits, dense dict."""
    red = trace_out_loops(dicke_projector_dense(n, i), n, range(k, n))
    total = sum(v for (x, y), v in red.items() if x == y)
    return {key: v / total for key, v in red.items()}


@pytest.fixture
def builtin_code():
    from resistcert.arrays import builtin_ca_10_7_3_3
    return builtin_ca_10_7_3_3()

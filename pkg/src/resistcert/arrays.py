"""Classical codes and critical arrays.

A ``CodeArray`` is an ``r x N`` array over ``{0..q-1}`` with distinct rows.
It is read either as an ``(N, r, d)_q`` code or as a candidate
``CA(r, N, q, k)``: every ``k`` columns show no repeated ``k``-tuple while
every ``k-1`` columns show some repeated ``(k-1)``-tuple.

Code file format: one codeword per line.  For ``q <= 10`` symbols are
contiguous digits (``0120``); otherwise whitespace-separated integers.
Blank lines and lines starting with ``#`` are skipped.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

import numpy as np

from ._guards import GuardError, size_limit
from .core import PureVector, SystemShape, to_fraction

log = logging.getLogger(__name__)

BUILTIN_NAME = "ca10-7-3-3"

_CA_10_7_3_3 = """\
0000000
0012211
0120121
0201112
1011120
1101201
1110012
2022102
2202021
2220210
"""


class CodeFormatError(ValueError):
    pass


@dataclass(frozen=True)
class CodeArray:
    q: int
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(int(s) for s in row) for row in self.rows)
        if self.q < 2:
            raise CodeFormatError("alphabet size must be at least 2")
        if len(rows) < 2:
            raise CodeFormatError("need at least two rows")
        width = len(rows[0])
        if width < 1 or any(len(r) != width for r in rows):
            raise CodeFormatError("ragged rows")
        for r in rows:
            if any(s < 0 or s >= self.q for s in r):
                raise CodeFormatError(f"row {r} has a symbol outside 0..{self.q - 1}")
        if len(set(rows)) != len(rows):
            raise CodeFormatError("duplicate rows")
        object.__setattr__(self, "rows", rows)

    @property
    def r(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0])


@dataclass(frozen=True)
class CAParams:
    r: int
    n: int
    q: int
    k: int


@dataclass(frozen=True)
class CAReport:
    ok: bool
    reason: str = ""
    columns: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def parse_code(text: str, q: int) -> CodeArray:
    if q < 2:
        raise CodeFormatError("alphabet size must be at least 2")
    rows = []
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        try:
            if q <= 10 and not any(c.isspace() for c in line):
                rows.append(tuple(int(c) for c in line))
            else:
                rows.append(tuple(int(tok) for tok in line.split()))
        except ValueError:
            raise CodeFormatError(f"line {lineno}: not a codeword: {line!r}") from None
    return CodeArray(q, tuple(rows))


def format_code(code: CodeArray) -> str:
    sep = "" if code.q <= 10 else " "
    return "".join(sep.join(str(s) for s in row) + "\n" for row in code.rows)


def builtin_ca_10_7_3_3() -> CodeArray:
    return parse_code(_CA_10_7_3_3, 3)


def builtin(name: str) -> CodeArray:
    if name != BUILTIN_NAME:
        raise KeyError(f"unknown builtin array {name!r}")
    return builtin_ca_10_7_3_3()


def hamming(x: Sequence[int], y: Sequence[int]) -> int:
    return sum(a != b for a, b in zip(x, y))


def min_distance(code: CodeArray) -> int:
    return min(hamming(x, y) for x, y in combinations(code.rows, 2))


def _first_repeat(code: CodeArray, cols: Sequence[int]):
    seen = set()
    for row in code.rows:
        key = tuple(row[c] for c in cols)
        if key in seen:
            return key
        seen.add(key)
    return None


def is_critical_array(code: CodeArray, k: int) -> CAReport:
    if not 1 <= k <= code.n:
        raise ValueError(f"need 1 <= k <= {code.n}")
    for cols in combinations(range(code.n), k):
        tup = _first_repeat(code, cols)
        if tup is not None:
            return CAReport(False, f"{k}-tuple {tup} repeats", cols)
    # k-1 = 0: the empty tuple repeats as soon as there are two rows
    for cols in combinations(range(code.n), k - 1):
        if _first_repeat(code, cols) is None:
            return CAReport(False, f"no repeated {k - 1}-tuple", cols)
    return CAReport(True)


def critical_strength(code: CodeArray) -> int | None:
    """Smallest ``k`` for which the array is a ``k``-critical array."""
    for k in range(1, code.n + 1):
        if is_critical_array(code, k):
            return k
    return None


def code_to_ca_params(code: CodeArray) -> CAParams | None:
    d = min_distance(code)
    if code.r > code.q ** (code.n - d):
        return CAParams(code.r, code.n, code.q, code.n - d + 1)
    return None


def corollary_gate(code: CodeArray) -> int | None:
    """Resistance level guaranteed for codes with ``N <= 2d-2`` and ``r > q^(N-d)``."""
    d = min_distance(code)
    if code.n <= 2 * d - 2 and code.r > code.q ** (code.n - d):
        return code.n - d
    return None


def state_from_array(code: CodeArray, coeffs: Sequence | None = None) -> PureVector:
    coeffs = [1] * code.r if coeffs is None else [to_fraction(c) for c in coeffs]
    if len(coeffs) != code.r:
        raise ValueError(f"need {code.r} coefficients, got {len(coeffs)}")
    if any(c == 0 for c in coeffs):
        raise ValueError("every coefficient must be nonzero")
    return PureVector(SystemShape(code.n, code.q), dict(zip(code.rows, coeffs)))


def linear_oa(q: int, k: int, n: int) -> CodeArray:
    """``OA(q^k, n, q, k)`` from polynomials of degree < k over a prime field.

    Columns are evaluations at ``0..q-1`` followed by the leading coefficient
    (the point at infinity), so ``n <= q + 1``.  For ``q = 3, k = 2, n = 4``
    and a row indexed by ``(x, y)`` this gives ``(x, x+y, x+2y, y)``.
    """
    if any(q % p == 0 for p in range(2, int(q ** 0.5) + 1)) or q < 2:
        raise ValueError("q must be prime")
    if not 1 <= k <= n <= q + 1:
        raise ValueError(f"need 1 <= k <= n <= q+1, got k={k}, n={n}")
    rows = []
    for poly in product(range(q), repeat=k):
        # poly[0] constant term ... poly[k-1] leading coefficient
        row = [sum(c * pow(t, e, q) for e, c in enumerate(poly)) % q for t in range(min(n, q))]
        if n == q + 1:
            row.append(poly[-1])
        rows.append(tuple(row))
    return CodeArray(q, tuple(rows))


def search_code(n: int, q: int, d: int, r_target: int, budget: int = 200_000) -> CodeArray | None:
    """Depth-first search for ``r_target`` words at pairwise distance ``>= d``.

    Vectors are visited in lexicographic order, so the first branch is the
    greedy lexicode; the search backtracks from there until ``budget`` nodes
    have been expanded.  Returns None when nothing was found within budget,
    which says nothing about existence.

    Symmetry breaking: any code can be relabeled column by column so that,
    with rows sorted, each column introduces its symbols in increasing order.
    A word is therefore only tried if every symbol is at most one more than
    the largest symbol already used in its column.  In particular the first
    word is all zeros.
    """
    space = q ** n
    if space > size_limit():
        raise GuardError(f"search space q^N = {space} exceeds guard {size_limit()}")
    if r_target < 1:
        raise ValueError("r_target must be positive")
    words = np.array(list(product(range(q), repeat=n)), dtype=np.int8)
    chosen: list[int] = []
    colmax = [np.full(n, -1, dtype=np.int8)]

    def level(cands: np.ndarray):
        ok = (words[cands] <= colmax[-1] + 1).all(axis=1)
        return [cands, np.flatnonzero(ok), 0]

    expanded = 0
    stack = [level(np.arange(space))]
    while stack and len(chosen) < r_target:
        frame = stack[-1]
        cands, allowed, ptr = frame
        if ptr >= len(allowed) or len(chosen) + len(cands) - allowed[ptr] < r_target:
            stack.pop()
            if chosen:
                chosen.pop()
                colmax.pop()
            continue
        if expanded >= budget:
            log.info("search_code(%d,%d,%d,%d): budget exhausted", n, q, d, r_target)
            return None
        expanded += 1
        pos = int(allowed[ptr])
        frame[2] = ptr + 1
        w = int(cands[pos])
        chosen.append(w)
        colmax.append(np.maximum(colmax[-1], words[w]))
        rest = cands[pos + 1:]
        stack.append(level(rest[(words[rest] != words[w]).sum(axis=1) >= d]))
    if len(chosen) < r_target:
        return None
    code = CodeArray(q, tuple(tuple(int(s) for s in words[i]) for i in chosen))
    assert min_distance(code) >= d and code.r >= r_target
    return code


def load_code(path, q: int) -> CodeArray:
    with open(path) as fh:
        return parse_code(fh.read(), q)


def agreeing_pairs(code: CodeArray, cols: Iterable[int]) -> list[tuple[int, int]]:
    """Row-index pairs ``(i, j)``, ``i < j``, that agree on every column in ``cols``."""
    cols = tuple(cols)
    return [(i, j) for i, j in combinations(range(code.r), 2)
            if all(code.rows[i][c] == code.rows[j][c] for c in cols)]

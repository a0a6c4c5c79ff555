"""Exact rational multi-qudit states and operators.

Everything here works over ``fractions.Fraction`` and sparse dictionaries
keyed by computational-basis labels (tuples of symbols).  States are kept
unnormalized: every verdict downstream (PSD, diagonality, witness sign) is
invariant under positive scaling, so square-root normalizations never need
to be formed.

Party indices are 0-based throughout.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence, Union

from ._guards import GuardError, size_limit

Label = tuple[int, ...]
Matrix = tuple[tuple[Fraction, ...], ...]


def to_fraction(x) -> Fraction:
    """Coerce ``x`` to an exact rational.

    Accepts ints, Fractions and strings such as ``"3/7"`` or ``"-2"``.
    Floats are rejected since they would silently carry rounding error.
    """
    if isinstance(x, bool):
        raise TypeError("bool is not an exact scalar")
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, float):
        raise TypeError(f"floats are not accepted as exact scalars (got {x!r})")
    if isinstance(x, str):
        s = x.strip()
        if not s or any(c in s for c in ".eE"):
            raise ValueError(f"not a rational literal: {x!r}")
        return Fraction(s)
    raise TypeError(f"cannot convert {type(x).__name__} to an exact scalar")


def format_fraction(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class SystemShape:
    n_parties: int
    local_dim: int

    def __post_init__(self):
        if self.n_parties < 1:
            raise ValueError("need at least one party")
        if self.local_dim < 2:
            raise ValueError("local dimension must be at least 2")

    def check_label(self, label: Sequence[int]) -> Label:
        label = tuple(int(s) for s in label)
        if len(label) != self.n_parties:
            raise ValueError(f"label {label} has length {len(label)}, expected {self.n_parties}")
        if any(s < 0 or s >= self.local_dim for s in label):
            raise ValueError(f"label {label} has a symbol outside 0..{self.local_dim - 1}")
        return label


@dataclass(frozen=True)
class PureVector:
    shape: SystemShape
    amplitudes: Mapping[Label, Fraction]

    def __post_init__(self):
        amps = {}
        for label, amp in self.amplitudes.items():
            amp = to_fraction(amp)
            if amp:
                amps[self.shape.check_label(label)] = amp
        if not amps:
            raise ValueError("zero vector")
        object.__setattr__(self, "amplitudes", MappingProxyType(amps))

    def norm2(self) -> Fraction:
        return sum((a * a for a in self.amplitudes.values()), Fraction(0))


@dataclass(frozen=True)
class DenseOperator:
    """Real symmetric operator stored sparsely as ``{(ket, bra): value}``."""

    shape: SystemShape
    entries: Mapping[tuple[Label, Label], Fraction] = field(default_factory=dict)

    def __post_init__(self):
        limit = size_limit()
        clean = {}
        for (x, y), v in self.entries.items():
            v = to_fraction(v)
            if v:
                clean[(self.shape.check_label(x), self.shape.check_label(y))] = v
        if len(clean) > limit:
            raise GuardError(f"operator has {len(clean)} nonzeros, guard is {limit}")
        for (x, y), v in clean.items():
            if clean.get((y, x)) != v:
                raise ValueError(f"operator is not symmetric at {x}, {y}")
        object.__setattr__(self, "entries", MappingProxyType(clean))

    def entry(self, x: Label, y: Label) -> Fraction:
        return self.entries.get((tuple(x), tuple(y)), Fraction(0))

    def trace(self) -> Fraction:
        return sum((v for (x, y), v in self.entries.items() if x == y), Fraction(0))

    def is_diagonal(self) -> bool:
        return all(x == y for x, y in self.entries)

    def off_diagonal(self) -> list[tuple[Label, Label]]:
        return sorted((x, y) for x, y in self.entries if x != y)

    def support(self) -> list[Label]:
        labels = {x for x, _ in self.entries}
        return sorted(labels)

    def scaled(self, factor) -> DenseOperator:
        factor = to_fraction(factor)
        return DenseOperator(self.shape, {k: factor * v for k, v in self.entries.items()})

    def __add__(self, other: DenseOperator) -> DenseOperator:
        if other.shape != self.shape:
            raise ValueError("shape mismatch")
        acc = defaultdict(Fraction, self.entries)
        for k, v in other.entries.items():
            acc[k] += v
        return DenseOperator(self.shape, acc)

    def to_matrix(self, labels: Sequence[Label] | None = None) -> tuple[list[Label], Matrix]:
        """Materialize the operator on ``labels`` (default: its support).

        Rows and columns outside the support are identically zero, so
        restricting to the support never changes positivity.
        """
        labels = self.support() if labels is None else [tuple(l) for l in labels]
        if len(labels) ** 2 > size_limit():
            raise GuardError(f"dense materialization of order {len(labels)} exceeds guard")
        index = {l: i for i, l in enumerate(labels)}
        rows = [[Fraction(0)] * len(labels) for _ in labels]
        for (x, y), v in self.entries.items():
            if x in index and y in index:
                rows[index[x]][index[y]] = v
        return labels, tuple(tuple(r) for r in rows)


def outer(psi: PureVector) -> DenseOperator:
    """|psi><psi| for a real unnormalized vector."""
    items = list(psi.amplitudes.items())
    return DenseOperator(psi.shape, {(x, y): ax * ay for x, ax in items for y, ay in items})


def _check_parties(shape: SystemShape, parties: Iterable[int]) -> set[int]:
    parties = {int(p) for p in parties}
    bad = [p for p in parties if p < 0 or p >= shape.n_parties]
    if bad:
        raise IndexError(f"party index out of range: {sorted(bad)}")
    return parties


def partial_trace(rho: DenseOperator, lost: Iterable[int]) -> DenseOperator:
    """Trace out the parties in ``lost``.

    Retained parties keep their ascending original order.
    """
    lost = _check_parties(rho.shape, lost)
    if len(lost) >= rho.shape.n_parties:
        raise ValueError("cannot trace out every party")
    if not lost:
        return rho
    keep = [p for p in range(rho.shape.n_parties) if p not in lost]
    gone = sorted(lost)
    acc: dict[tuple[Label, Label], Fraction] = defaultdict(Fraction)
    for (x, y), v in rho.entries.items():
        if all(x[p] == y[p] for p in gone):
            acc[(tuple(x[p] for p in keep), tuple(y[p] for p in keep))] += v
    return DenseOperator(SystemShape(len(keep), rho.shape.local_dim), acc)


def partial_transpose(rho: DenseOperator, party: Union[int, Iterable[int]]) -> DenseOperator:
    """Transpose the local factor of one party (or of each party in a set)."""
    parties = _check_parties(rho.shape, [party] if isinstance(party, int) else party)
    out = {}
    for (x, y), v in rho.entries.items():
        nx, ny = list(x), list(y)
        for p in parties:
            nx[p], ny[p] = y[p], x[p]
        out[(tuple(nx), tuple(ny))] = v
    return DenseOperator(rho.shape, out)


def as_symmetric(rows: Sequence[Sequence]) -> Matrix:
    m = tuple(tuple(to_fraction(v) for v in row) for row in rows)
    n = len(m)
    if any(len(row) != n for row in m):
        raise ValueError("matrix is not square")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                raise ValueError(f"matrix is not symmetric at ({i}, {j})")
    return m


def char_coefficients(rows: Sequence[Sequence]) -> list[Fraction]:
    """Return ``[e_0, e_1, ..., e_n]`` where ``e_i`` is the sum of the
    ``i x i`` principal minors, i.e. ``det(tI - M) = sum (-1)^i e_i t^(n-i)``.

    Faddeev-LeVerrier on the integer matrix obtained by clearing
    denominators, then rescaled back.
    """
    m = as_symmetric(rows)
    n = len(m)
    if n == 0:
        return [Fraction(1)]
    scale = lcm(*(v.denominator for row in m for v in row))
    a = [[int(v * scale) for v in row] for row in m]
    # c[j] is the coefficient of t^j in det(tI - A)
    c = [Fraction(0)] * (n + 1)
    c[n] = Fraction(1)
    mk = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        # mk <- A @ mk + c[n-k+1] * I
        prod = [[sum((a[i][l] * mk[l][j] for l in range(n) if mk[l][j]), Fraction(0))
                 for j in range(n)] for i in range(n)]
        for i in range(n):
            prod[i][i] += c[n - k + 1]
        mk = prod
        tr = sum((a[i][l] * mk[l][i] for i in range(n) for l in range(n) if mk[l][i]), Fraction(0))
        c[n - k] = -tr / k
    return [(-1) ** i * c[n - i] / Fraction(scale) ** i for i in range(n + 1)]


def negative_coefficient(rows: Sequence[Sequence]) -> tuple[int, Fraction] | None:
    """First ``(i, e_i)`` with ``e_i < 0``, or None when the matrix is PSD."""
    for i, e in enumerate(char_coefficients(rows)):
        if e < 0:
            return i, e
    return None


def is_psd(rows: Sequence[Sequence]) -> bool:
    """Exact PSD test: a real symmetric matrix is PSD iff every elementary
    symmetric function of its eigenvalues is nonnegative."""
    return negative_coefficient(rows) is None


def operator_is_psd(rho: DenseOperator) -> bool:
    _, m = rho.to_matrix()
    return is_psd(m)


def quadratic_form(m, v) -> Fraction:
    """``v^T M v`` for a DenseOperator with ``v: {label: value}``, or for a
    square matrix with ``v`` a sequence or ``{index: value}`` mapping."""
    if isinstance(m, DenseOperator):
        vec = {}
        for label, val in v.items():
            val = to_fraction(val)
            if val:
                vec[m.shape.check_label(label)] = val
        return sum((m.entry(x, y) * vx * vy for x, vx in vec.items() for y, vy in vec.items()),
                   Fraction(0))
    rows = as_symmetric(m)
    n = len(rows)
    if isinstance(v, Mapping):
        vec = {int(i): to_fraction(val) for i, val in v.items()}
        if any(i < 0 or i >= n for i in vec):
            raise ValueError("vector index outside matrix dimension")
    else:
        if len(v) != n:
            raise ValueError(f"vector length {len(v)} does not match matrix order {n}")
        vec = {i: to_fraction(val) for i, val in enumerate(v)}
    return sum((rows[i][j] * vi * vj for i, vi in vec.items() for j, vj in vec.items()),
               Fraction(0))

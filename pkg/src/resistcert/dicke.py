"""Dicke-basis algebra: expansion, exact reduction weights, k-mixture test
and the two Hankel matrices of a Dicke-diagonal mixture.

Superpositions are stored by squared magnitudes only.  Every quantity used
downstream depends on ``|c_i|^2`` alone once the cross terms vanish, and
this keeps boundary values such as ``a^2 = 3/7 b^2`` rational.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb
from types import MappingProxyType
from typing import Mapping

from ._guards import MAX_BINOMIAL_N, GuardError
from .core import DenseOperator, Matrix, PureVector, SystemShape, to_fraction


class KMixtureError(ValueError):
    """The gap condition fails, so cross terms may survive the reduction."""


@lru_cache(maxsize=None)
def binom(n: int, k: int) -> int:
    if n > MAX_BINOMIAL_N:
        raise GuardError(f"binomial with n={n} above guard {MAX_BINOMIAL_N}")
    if k < 0 or k > n or n < 0:
        return 0
    return comb(n, k)


@dataclass(frozen=True)
class DickeCombo:
    """``sum_i c_i |D^N_i>`` held as ``weights[i] = |c_i|^2``."""

    n_qubits: int
    weights: Mapping[int, Fraction]

    def __post_init__(self):
        w = {}
        for i, b in self.weights.items():
            i, b = int(i), to_fraction(b)
            if not 0 <= i <= self.n_qubits:
                raise ValueError(f"Dicke index {i} outside 0..{self.n_qubits}")
            if b < 0:
                raise ValueError(f"weight for index {i} is negative")
            if b:
                w[i] = b
        if len(w) < 2:
            raise ValueError("a combination needs at least two nonzero weights")
        object.__setattr__(self, "weights", MappingProxyType(dict(sorted(w.items()))))

    @property
    def support(self) -> list[int]:
        return list(self.weights)

    def scaled(self, factor) -> DickeCombo:
        factor = to_fraction(factor)
        return DickeCombo(self.n_qubits, {i: factor * b for i, b in self.weights.items()})


@dataclass(frozen=True)
class DickeMixture:
    """``sum_s coeffs[s] |D^k_s><D^k_s|``; the trace is ``sum(coeffs)``."""

    k: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(to_fraction(c) for c in self.coeffs)
        if self.k < 1:
            raise ValueError("mixture needs at least one qubit")
        if len(coeffs) != self.k + 1:
            raise ValueError(f"expected {self.k + 1} coefficients, got {len(coeffs)}")
        object.__setattr__(self, "coeffs", coeffs)

    def trace(self) -> Fraction:
        return sum(self.coeffs, Fraction(0))

    def scaled(self, factor) -> DickeMixture:
        factor = to_fraction(factor)
        return DickeMixture(self.k, tuple(factor * c for c in self.coeffs))


@dataclass(frozen=True)
class HankelPair:
    m0: Matrix
    m1: Matrix


def weight_labels(n: int, i: int) -> list[tuple[int, ...]]:
    """All length-``n`` bitstrings of Hamming weight ``i``, lexicographic."""
    out = []
    for ones in combinations(range(n), i):
        bits = [0] * n
        for p in ones:
            bits[p] = 1
        out.append(tuple(bits))
    return sorted(out)


def dicke_expand(n: int, i: int) -> tuple[PureVector, int]:
    """Unnormalized ``|D^n_i>`` with unit amplitudes, plus its squared norm."""
    if not 0 <= i <= n:
        raise ValueError(f"Dicke index {i} outside 0..{n}")
    vec = PureVector(SystemShape(n, 2), {x: 1 for x in weight_labels(n, i)})
    return vec, binom(n, i)


def reduce_dicke(n: int, i: int, k: int) -> DickeMixture:
    """Reduction of ``|D^n_i><D^n_i|`` onto any ``k`` qubits.

    The weight on ``|D^k_s>`` is the hypergeometric probability of seeing
    ``s`` ones among ``k`` positions.
    """
    if not 1 <= k < n:
        raise ValueError(f"need 1 <= k < n, got k={k}, n={n}")
    if not 0 <= i <= n:
        raise ValueError(f"Dicke index {i} outside 0..{n}")
    total = binom(n, i)
    return DickeMixture(k, tuple(Fraction(binom(k, s) * binom(n - k, i - s), total)
                                 for s in range(k + 1)))


def is_k_mixture(combo: DickeCombo, k: int) -> bool:
    """Gap condition: distinct supported indices differ by more than ``k``.

    Sufficient, not necessary, for every ``k``-reduction to be Dicke-diagonal.
    """
    if k < 1:
        raise ValueError("k must be positive")
    support = combo.support
    return all(j - i > k for i, j in zip(support, support[1:]))


def reduce_combo(combo: DickeCombo, k: int) -> DickeMixture:
    if not is_k_mixture(combo, k):
        raise KMixtureError(
            f"support {combo.support} violates the gap condition for k={k}")
    acc = [Fraction(0)] * (k + 1)
    for i, b in combo.weights.items():
        for s, c in enumerate(reduce_dicke(combo.n_qubits, i, k).coeffs):
            acc[s] += b * c
    return DickeMixture(k, tuple(acc))


def moments(mix: DickeMixture) -> list[Fraction]:
    return [c / binom(mix.k, s) for s, c in enumerate(mix.coeffs)]


def hankel(mix: DickeMixture) -> HankelPair:
    a = moments(mix)
    m0, m1 = mix.k // 2, (mix.k + 1) // 2
    return HankelPair(
        m0=tuple(tuple(a[i + j] for j in range(m0 + 1)) for i in range(m0 + 1)),
        m1=tuple(tuple(a[i + j + 1] for j in range(m1)) for i in range(m1)),
    )


def mixture_operator(mix: DickeMixture) -> DenseOperator:
    """The mixture written out in the computational basis of ``k`` qubits."""
    entries = {}
    for s, c in enumerate(mix.coeffs):
        if not c:
            continue
        w = c / binom(mix.k, s)
        labels = weight_labels(mix.k, s)
        for x in labels:
            for y in labels:
                entries[(x, y)] = w
    return DenseOperator(SystemShape(mix.k, 2), entries)


def reduce_mixture(mix: DickeMixture, j: int) -> DickeMixture:
    """Trace a Dicke-diagonal mixture on ``k`` qubits down to ``j < k``."""
    if not 1 <= j < mix.k:
        raise ValueError(f"need 1 <= j < {mix.k}, got {j}")
    acc = [Fraction(0)] * (j + 1)
    for s, c in enumerate(mix.coeffs):
        if c:
            for t, w in enumerate(reduce_dicke(mix.k, s, j).coeffs):
                acc[t] += c * w
    return DickeMixture(j, tuple(acc))

"""The three Dicke-superposition families and their coefficient conditions.

* ``n-3``: weights on ``{0, N-3}``, N >= 7, gated by the closed-form bound
  ``a2 >= 6(2N-5) / (N(N-1)(N-4)) * b2``;
* ``n-4``: weights on ``{1, N-1}``, N >= 7, any positive pair;
* ``n-5``: weights on ``{1, 7, N}``, N >= 13, with ``a2`` pinned so that the
  4-qubit ``M1`` is singular and ``c2`` a margin above the root of the
  4-qubit ``det(M0)``.

All coefficients are squared magnitudes.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .core import to_fraction
from .dicke import DickeCombo, DickeMixture, binom, hankel, reduce_dicke


class Family(str, enum.Enum):
    N_MINUS_3 = "n-3"
    N_MINUS_4 = "n-4"
    N_MINUS_5 = "n-5"

    @property
    def offset(self) -> int:
        return int(self.value[2:])

    @property
    def min_n(self) -> int:
        return 13 if self is Family.N_MINUS_5 else 7


class FamilyError(ValueError):
    pass


class ThresholdError(FamilyError):
    def __init__(self, msg: str, shortfall: Fraction):
        super().__init__(msg)
        self.shortfall = shortfall


@dataclass(frozen=True)
class FamilySpec:
    family: Family
    n: int
    a2: Fraction
    b2: Fraction
    c2: Fraction | None = None

    @property
    def m(self) -> int:
        """Resistance level the family is built for."""
        return self.n - self.family.offset

    def combo(self) -> DickeCombo:
        if self.family is Family.N_MINUS_3:
            return DickeCombo(self.n, {0: self.a2, self.n - 3: self.b2})
        if self.family is Family.N_MINUS_4:
            return DickeCombo(self.n, {1: self.a2, self.n - 1: self.b2})
        return DickeCombo(self.n, {1: self.a2, 7: self.b2, self.n: self.c2})


def _need_n(family: Family, n: int) -> None:
    if n < family.min_n:
        raise FamilyError(f"family {family.value} needs N >= {family.min_n}, got {n}")


def threshold_ratio_n3(n: int) -> Fraction:
    _need_n(Family.N_MINUS_3, n)
    return Fraction(6 * (2 * n - 5), n * (n - 1) * (n - 4))


def exact_boundary_n3(n: int) -> Fraction:
    """Smallest ``a2/b2`` with a PSD 2-qubit ``M0``.

    Diagnostic only: construction is gated on :func:`threshold_ratio_n3`.
    The determinant is affine in ``a2``.
    """
    _need_n(Family.N_MINUS_3, n)

    def det_m0(a2):
        return det_cofactor(hankel(_weighted_reduction(n, {0: a2, n - 3: 1}, 2)).m0)

    d0, d1 = det_m0(Fraction(0)), det_m0(Fraction(1))
    return -d0 / (d1 - d0)


def _weighted_reduction(n: int, weights: dict[int, Fraction], k: int) -> DickeMixture:
    # sum of per-index reductions; callers guarantee the gap condition
    acc = [Fraction(0)] * (k + 1)
    for i, b in weights.items():
        if b:
            for s, c in enumerate(reduce_dicke(n, i, k).coeffs):
                acc[s] += b * c
    return DickeMixture(k, tuple(acc))


def psi_n_minus_3(n: int, a2, b2) -> FamilySpec:
    a2, b2 = to_fraction(a2), to_fraction(b2)
    bound = threshold_ratio_n3(n) * b2
    if b2 <= 0:
        raise FamilyError("b2 must be positive")
    if a2 < bound:
        raise ThresholdError(f"a2 = {a2} is below the bound {bound} by {bound - a2}",
                             bound - a2)
    return FamilySpec(Family.N_MINUS_3, n, a2, b2)


def psi_n_minus_4(n: int, a2, b2) -> FamilySpec:
    _need_n(Family.N_MINUS_4, n)
    a2, b2 = to_fraction(a2), to_fraction(b2)
    if a2 <= 0 or b2 <= 0:
        raise FamilyError("a2 and b2 must both be positive")
    return FamilySpec(Family.N_MINUS_4, n, a2, b2)


def a2_relation_n5(n: int) -> Fraction:
    """``a2/b2`` that makes the 4-qubit ``M1`` singular."""
    _need_n(Family.N_MINUS_5, n)
    return Fraction(binom(n - 4, 5) * n * (n - 3), 30 * binom(n, 7))


def det_cofactor(m) -> Fraction:
    n = len(m)
    if n == 1:
        return Fraction(m[0][0])
    total = Fraction(0)
    for j in range(n):
        if m[0][j]:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * m[0][j] * det_cofactor(minor)
    return total


def _m0_four(n: int, a2: Fraction, b2: Fraction, c2: Fraction):
    return hankel(_weighted_reduction(n, {1: a2, 7: b2, n: c2}, 4)).m0


def c2_lower_bound(n: int, a2, b2) -> Fraction:
    """Root of ``det M0`` for the 4-qubit reduction, as a function of ``c2``.

    ``c2`` only enters the bottom-right corner, so the determinant is affine
    in it with slope equal to the leading 2x2 minor.
    """
    a2, b2 = to_fraction(a2), to_fraction(b2)
    if a2 != a2_relation_n5(n) * b2:
        raise FamilyError(f"a2 = {a2} does not satisfy a2 = {a2_relation_n5(n)} * b2")
    d0 = det_cofactor(_m0_four(n, a2, b2, Fraction(0)))
    d1 = det_cofactor(_m0_four(n, a2, b2, Fraction(1)))
    slope = d1 - d0
    assert slope > 0, f"nonpositive slope {slope} for N={n}"
    return -d0 / slope


def psi_n_minus_5(n: int, b2, margin=2, c2=None) -> FamilySpec:
    _need_n(Family.N_MINUS_5, n)
    b2 = to_fraction(b2)
    if b2 <= 0:
        raise FamilyError("b2 must be positive")
    a2 = a2_relation_n5(n) * b2
    if c2 is None:
        margin = to_fraction(margin)
        if margin <= 1:
            raise FamilyError("margin must exceed 1")
        c2 = margin * c2_lower_bound(n, a2, b2)
    c2 = to_fraction(c2)
    if c2 <= 0:
        raise FamilyError("c2 must be positive")
    return FamilySpec(Family.N_MINUS_5, n, a2, b2, c2)
